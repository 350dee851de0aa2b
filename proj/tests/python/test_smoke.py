# Copyright 2026 The bettiforge Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import math

import networkx as nx
import numpy as np
import pytest

import bettiforge as bf


def test_kpartite_betti():
    for m, k in [(2, 2), (3, 2), (2, 3), (3, 3)]:
        g = bf.gen_kpartite(m, k)
        assert g.n == m * k
        assert bf.clique_count(g, k) == m**k
        assert bf.betti_exact(g, k) == (m - 1) ** k


def test_json_round_trip():
    g = bf.gen_erdos_renyi(9, 0.4, 3)
    text = g.to_json()
    data = json.loads(text)
    assert set(data) == {"n", "edges"}
    assert bf.Graph.from_json(text) == g


def test_erdos_renyi_matches_networkx_cycle_rank():
    # beta_0 and beta_1 of a flag complex without triangles: cycle rank of the graph.
    for seed in range(5):
        g = bf.gen_erdos_renyi(12, 0.15, seed)
        ng = nx.Graph()
        ng.add_nodes_from(range(g.n))
        ng.add_edges_from(g.edges)
        triangles = sum(nx.triangles(ng).values()) // 3
        if triangles:
            continue
        rank = ng.number_of_edges() - ng.number_of_nodes() + nx.number_connected_components(ng)
        assert bf.betti_exact(g, 2) == rank
        assert bf.betti_exact(g, 1) == nx.number_connected_components(ng)


def test_spectrum_gap():
    s = bf.spectrum(bf.gen_kpartite(3, 2), 2)
    assert s.has_gap
    assert s.gap == pytest.approx(3.0, abs=1e-8)
    assert s.nullity == 4


def test_projected_block_is_scaled_dirac_square_root():
    g = bf.gen_kpartite(2, 2)
    block = np.asarray(bf.projected_block(g, 2))
    assert np.allclose(block, block.T, atol=1e-12)
    evals = np.linalg.eigvalsh(block * g.n)
    # Dirac eigenvalues square to Laplacian eigenvalues.
    assert np.allclose(np.sort(np.round(evals**2, 8)) % 2, 0.0)


def test_resource_anchor_order_of_magnitude():
    e = bf.total_toffoli(bf.kpartite_params(16, 16, 0.05, 0.05), bf.KaiserMode.REFINED)
    assert 8e10 / 5 <= e.total_toffoli <= 8e10 * 5


def test_sweep_csv_header():
    csv = bf.sweep_kpartite_csv(4, [8, 12, 16])
    lines = csv.strip().split("\n")
    assert lines[0].startswith("n,k,m,toffoli_total")
    assert len(lines) == 4


def test_dicke_worked_example():
    run = bf.dicke_threshold_run([0b0110, 0b1110, 0b0111, 0b0010], 2, 4)
    assert run.success
    assert run.bits == [0, 1, 1, 1]
    assert not bf.dicke_threshold_run([0b0110, 0b1110, 0b0110, 0b0010], 2, 4).success


def test_filter_on_four_cycle():
    g = bf.gen_kpartite(2, 2)
    ell = bf.filter_degree_for_graph(g, 2, 1e-3)
    f = bf.apply_filter_to_state(g, 2, ell, 1e-3)
    assert f.a2 == pytest.approx(0.25, abs=1e-6)


def test_qae_is_seed_reproducible():
    a = bf.amplitude_estimate_sim(0.3, 0.01, 0.05, 11)
    b = bf.amplitude_estimate_sim(0.3, 0.01, 0.05, 11)
    assert a.estimate == b.estimate
    assert abs(a.estimate - 0.3) < 0.05


def test_dequantize_four_cycle():
    cfg = bf.PIMCConfig()
    cfg.slices = 1
    cfg.samples = 4000
    cfg.seed = 5
    r = bf.dequantize(bf.gen_kpartite(2, 2), 2, cfg)
    assert abs(r.estimate - 1.0 / 6.0) <= 4 * r.stderr
    assert r.D >= 1


def test_desk_scale_error():
    with pytest.raises(bf.DeskScaleError):
        bf.walk_spectrum(bf.gen_complete(10), 2)


def test_verify_criterion_one():
    r = bf.verify(1)
    assert r["pass"]
    assert all(c[1] for c in r["checks"])
