// Copyright 2026 The bettiforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "bettiforge/homology.h"

namespace bettiforge {
namespace {

// Rank over GF(p) for a large prime; equals the rational rank barring
// p-torsion, which small clique complexes do not have.
int64_t rank_mod_p(IntMatrix m) {
    const int64_t p = 2147483647;
    auto mod = [&](int64_t v) { return ((v % p) + p) % p; };
    auto inv = [&](int64_t a) {
        int64_t r = 1, e = p - 2;
        a = mod(a);
        while (e) {
            if (e & 1) r = (__int128)r * a % p;
            a = (__int128)a * a % p;
            e >>= 1;
        }
        return r;
    };
    for (int i = 0; i < m.rows(); i++)
        for (int j = 0; j < m.cols(); j++) m(i, j) = mod(m(i, j));
    int64_t rank = 0;
    for (int c = 0; c < m.cols() && rank < m.rows(); c++) {
        int piv = -1;
        for (int r = rank; r < m.rows(); r++) {
            if (m(r, c) != 0) {
                piv = r;
                break;
            }
        }
        if (piv < 0) continue;
        m.row(piv).swap(m.row(rank));
        int64_t iv = inv(m(rank, c));
        for (int r = 0; r < m.rows(); r++) {
            if (r == rank || m(r, c) == 0) continue;
            int64_t f = (__int128)m(r, c) * iv % p;
            for (int j = 0; j < m.cols(); j++) m(r, j) = mod(m(r, j) - (__int128)f * m(rank, j) % p);
        }
        rank++;
    }
    return rank;
}

int64_t oracle_betti(const Graph &g, int k) {
    CliqueComplex cx = build_clique_complex(g, k);
    int64_t dim = (int64_t)cx.level(k).size();
    if (dim == 0) return 0;
    int64_t down = k >= 2 ? rank_mod_p(boundary_matrix(cx, k - 2).dense()) : 0;
    int64_t up = cx.level(k + 1).empty() ? 0 : rank_mod_p(boundary_matrix(cx, k - 1).dense());
    return dim - down - up;
}

TEST(Homology, BoundaryOfBoundaryVanishes) {
    for (uint64_t seed = 0; seed < 5; seed++) {
        Graph g = gen_erdos_renyi(9, 0.7, seed);
        CliqueComplex cx = build_clique_complex(g, 5);
        for (int d = 0; d + 2 <= 4; d++) {
            if (cx.level(d + 3).empty()) break;
            IntMatrix prod = boundary_matrix(cx, d).dense() * boundary_matrix(cx, d + 1).dense();
            EXPECT_EQ(prod.cwiseAbs().maxCoeff(), 0) << "seed " << seed << " d " << d;
        }
    }
}

TEST(Homology, ExactRankMatchesModularOracle) {
    for (uint64_t seed = 0; seed < 12; seed++) {
        Graph g = gen_erdos_renyi(8 + (int)(seed % 3), 0.5, 100 + seed);
        for (int k = 1; k <= 4; k++) {
            EXPECT_EQ(betti_exact(g, k), oracle_betti(g, k)) << "seed " << seed << " k " << k;
        }
    }
}

TEST(Homology, EulerCharacteristic) {
    for (uint64_t seed = 0; seed < 8; seed++) {
        Graph g = gen_erdos_renyi(9, 0.6, seed);
        CliqueComplex cx = build_clique_complex(g, 9);
        int64_t chi_cells = 0, chi_betti = 0;
        for (int s = 1; s <= 9; s++) {
            int64_t sign = s % 2 ? 1 : -1;
            chi_cells += sign * (int64_t)cx.level(s).size();
            chi_betti += sign * betti_exact(g, s);
        }
        EXPECT_EQ(chi_cells, chi_betti);
    }
}

TEST(Homology, KnownSpaces) {
    std::vector<std::pair<int, int>> cyc;
    for (int i = 0; i < 6; i++) cyc.push_back({std::min(i, (i + 1) % 6), std::max(i, (i + 1) % 6)});
    Graph c6(6, cyc);
    EXPECT_EQ(betti_exact(c6, 1), 1);
    EXPECT_EQ(betti_exact(c6, 2), 1);
    for (int s = 2; s <= 6; s++) EXPECT_EQ(betti_exact(gen_complete(6), s), 0);
    EXPECT_EQ(betti_exact(gen_complete(6), 1), 1);
    // octahedron boundary is a 2-sphere
    EXPECT_EQ(betti_vector(gen_kpartite(2, 3), 3), (std::vector<int64_t>{1, 0, 1, 0}));
}

TEST(Homology, LaplacianNullityEqualsBetti) {
    for (uint64_t seed = 0; seed < 10; seed++) {
        Graph g = gen_erdos_renyi(8, 0.55, 200 + seed);
        for (int k = 1; k <= 3; k++) {
            if (enumerate_cliques(g, k).empty()) continue;
            EXPECT_EQ(spectrum(g, k).nullity, betti_exact(g, k));
        }
    }
}

TEST(Homology, LaplacianIsDiracSquaredBlock) {
    Graph g = gen_erdos_renyi(7, 0.6, 5);
    CliqueComplex cx = build_clique_complex(g, 3);
    DiracOperator d = dirac(cx, 2);
    IntMatrix sq = d.matrix * d.matrix;
    IntMatrix block = sq.block(d.offsets[1], d.offsets[1], d.sizes[1], d.sizes[1]);
    EXPECT_EQ(block, laplacian(cx, 2));
}

TEST(Homology, KpartiteSpectrum) {
    for (int m = 2; m <= 3; m++) {
        for (int k = 2; k <= 3; k++) {
            SpectralSummary s = spectrum(gen_kpartite(m, k), k);
            EXPECT_NEAR(s.gap, m, 1e-8);
            EXPECT_NEAR(s.top, k * m, 1e-8);
        }
    }
}

TEST(Homology, KunnethJoin) {
    Graph a = gen_kpartite(2, 2);
    Graph b = gen_kpartite(3, 1);
    auto ra = to_reduced(betti_vector(a, 4));
    auto rb = to_reduced(betti_vector(b, 4));
    // reduced homology of a join: sum over i + j = d - 1 of ra_i rb_j
    std::vector<int64_t> want(7, 0);
    for (size_t i = 0; i < ra.size(); i++)
        for (size_t j = 0; j < rb.size(); j++)
            if (i + j + 1 < want.size()) want[i + j + 1] += ra[i] * rb[j];
    auto got = to_reduced(betti_vector(graph_join(a, b), 6));
    for (size_t d = 0; d < got.size(); d++) EXPECT_EQ(got[d], want[d]) << d;
    auto conv = kunneth_convolve(ra, rb);
    for (size_t d = 0; d < std::min(conv.size(), got.size()); d++) EXPECT_EQ(conv[d], got[d]);
}

TEST(Homology, DeltaApproxBracketsExact) {
    Graph g = gen_kpartite(3, 2);
    EXPECT_EQ(betti_delta_approx(g, 2, 0.5), 4);
    EXPECT_GE(betti_delta_approx(g, 2, 3.5), 4);
}

}  // namespace
}  // namespace bettiforge
