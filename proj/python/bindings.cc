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

#include <cmath>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bettiforge/amplitude.h"
#include "bettiforge/dequantizer.h"
#include "bettiforge/dicke.h"
#include "bettiforge/filter.h"
#include "bettiforge/graph_io.h"
#include "bettiforge/homology.h"
#include "bettiforge/qubitization.h"
#include "bettiforge/resources.h"
#include "bettiforge/verify.h"

namespace py = pybind11;
using namespace bettiforge;

PYBIND11_MODULE(_bettiforge, m) {
    m.doc() = "clique-complex Betti numbers, quantum resource estimates and simulators";

    py::register_exception<DeskScaleError>(m, "DeskScaleError");

    py::class_<Graph>(m, "Graph")
        .def(py::init<int, std::vector<std::pair<int, int>>>(), py::arg("n"), py::arg("edges"))
        .def_property_readonly("n", &Graph::n)
        .def_property_readonly("edges", &Graph::edges)
        .def("edge_count", &Graph::edge_count)
        .def("has_edge", &Graph::has_edge)
        .def("to_json", [](const Graph &g) { return graph_to_json(g); })
        .def_static("from_json", &graph_from_json)
        .def("__eq__", &Graph::operator==)
        .def("__repr__", [](const Graph &g) {
            return "<Graph n=" + std::to_string(g.n()) + " edges=" + std::to_string(g.edge_count()) + ">";
        });

    m.def("gen_kpartite", &gen_kpartite, py::arg("m"), py::arg("k"));
    m.def("gen_erdos_renyi", &gen_erdos_renyi, py::arg("n"), py::arg("p"), py::arg("seed"));
    m.def("gen_complete", &gen_complete, py::arg("n"));
    m.def("graph_from_spec", &graph_from_spec, py::arg("spec"));
    m.def("rips_graph", [](int n, int k, double threshold) { return rips_graph(gen_rips_points(n, k), threshold); },
          py::arg("n"), py::arg("k"), py::arg("threshold") = 1.0);
    m.def("clique_count", [](const Graph &g, int k) { return enumerate_cliques(g, k).size(); }, py::arg("g"),
          py::arg("k"));

    m.def("betti_exact", py::overload_cast<const Graph &, int>(&betti_exact), py::arg("g"), py::arg("k"),
          "beta_{k-1} of the clique complex from exact ranks of the boundary maps");
    py::class_<SpectralSummary>(m, "SpectralSummary")
        .def_readonly("eigenvalues", &SpectralSummary::eigenvalues)
        .def_readonly("dimension", &SpectralSummary::dimension)
        .def_readonly("nullity", &SpectralSummary::nullity)
        .def_readonly("has_gap", &SpectralSummary::has_gap)
        .def_readonly("gap", &SpectralSummary::gap)
        .def_readonly("top", &SpectralSummary::top)
        .def_readonly("kappa", &SpectralSummary::kappa);
    m.def("spectrum", &spectrum, py::arg("g"), py::arg("k"));

    py::enum_<KaiserMode>(m, "KaiserMode")
        .value("ASYMPTOTIC", KaiserMode::kAsymptotic)
        .value("REFINED", KaiserMode::kRefined);
    py::class_<ResourceParams>(m, "ResourceParams")
        .def_static("make", &ResourceParams::make, py::arg("n"), py::arg("k"), py::arg("edge_count"),
                    py::arg("clique_count"), py::arg("betti"), py::arg("lambda_min"), py::arg("r"),
                    py::arg("delta"), py::arg("c") = 8)
        .def_readwrite("n", &ResourceParams::n)
        .def_readwrite("k", &ResourceParams::k)
        .def_readwrite("edge_count", &ResourceParams::edge_count)
        .def_readwrite("clique_count", &ResourceParams::clique_count)
        .def_readwrite("betti", &ResourceParams::betti)
        .def_readwrite("lambda_min", &ResourceParams::lambda_min);
    py::class_<ResourceEstimate>(m, "ResourceEstimate")
        .def_readonly("total_toffoli", &ResourceEstimate::total_toffoli)
        .def_readonly("closed_form_toffoli", &ResourceEstimate::closed_form_toffoli)
        .def_readonly("prep_toffoli", &ResourceEstimate::prep_toffoli)
        .def_readonly("filter_toffoli", &ResourceEstimate::filter_toffoli)
        .def_readonly("chebyshev_degree", &ResourceEstimate::chebyshev_degree)
        .def_readonly("breakdown", &ResourceEstimate::breakdown);
    m.def("kpartite_params", &kpartite_params, py::arg("m"), py::arg("k"), py::arg("r"), py::arg("delta"),
          py::arg("c") = 8);
    m.def("total_toffoli", &total_toffoli, py::arg("params"), py::arg("mode") = KaiserMode::kAsymptotic);
    m.def("chebyshev_degree", &chebyshev_degree, py::arg("epsilon"), py::arg("lambda_min"), py::arg("lambda"));
    m.def(
        "sweep_kpartite_csv",
        [](int k, const std::vector<int> &ns, double r, double delta, KaiserMode mode) {
            return sweep_csv(sweep_kpartite(k, ns, r, delta, mode));
        },
        py::arg("k"), py::arg("n_list"), py::arg("r") = 0.05, py::arg("delta") = 0.05,
        py::arg("mode") = KaiserMode::kAsymptotic);

    py::class_<ThresholdRun>(m, "ThresholdRun")
        .def_readonly("bits", &ThresholdRun::bits)
        .def_readonly("threshold", &ThresholdRun::threshold)
        .def_readonly("selected", &ThresholdRun::selected)
        .def_readonly("success", &ThresholdRun::success);
    m.def("dicke_threshold_run", &dicke_threshold_run, py::arg("seeds"), py::arg("k"), py::arg("n_seed"));
    py::class_<DickeStats>(m, "DickeStats")
        .def_readonly("n_seed", &DickeStats::n_seed)
        .def_readonly("failures", &DickeStats::failures)
        .def_readonly("failure_rate", &DickeStats::failure_rate)
        .def_readonly("sigma", &DickeStats::sigma)
        .def_readonly("exact_failure", &DickeStats::exact_failure);
    m.def("dicke_success_prob", &dicke_success_prob, py::arg("n"), py::arg("k"), py::arg("c"), py::arg("trials"),
          py::arg("seed"), py::call_guard<py::gil_scoped_release>());

    py::class_<WalkSpectrum>(m, "WalkSpectrum")
        .def_readonly("hamiltonian_eigs", &WalkSpectrum::hamiltonian_eigs)
        .def_readonly("walk_eigs", &WalkSpectrum::walk_eigs)
        .def_readonly("max_relation_error", &WalkSpectrum::max_relation_error)
        .def_readonly("max_eigvec_error", &WalkSpectrum::max_eigvec_error)
        .def_readonly("max_perp_leak", &WalkSpectrum::max_perp_leak)
        .def_readonly("max_full_spectrum_distance", &WalkSpectrum::max_full_spectrum_distance);
    m.def(
        "walk_spectrum",
        [](const Graph &g, int k, bool full) {
            BlockEncoding be = build_block_encoding(g, k);
            return walk_spectrum(be, build_walk(be), full);
        },
        py::arg("g"), py::arg("k"), py::arg("full") = false);
    m.def(
        "projected_block", [](const Graph &g, int k) { return projected_block(build_block_encoding(g, k)); },
        py::arg("g"), py::arg("k"));

    py::class_<FilterResult>(m, "FilterResult")
        .def_readonly("ell", &FilterResult::ell)
        .def_readonly("betti", &FilterResult::betti)
        .def_readonly("a2", &FilterResult::a2)
        .def_readonly("target", &FilterResult::target)
        .def_readonly("max_suppression", &FilterResult::max_suppression)
        .def_readonly("eigenvalues", &FilterResult::eigenvalues)
        .def_readonly("factors", &FilterResult::factors);
    m.def("apply_filter_to_state", &apply_filter_to_state, py::arg("g"), py::arg("k"), py::arg("ell"),
          py::arg("epsilon"));
    m.def("filter_degree_for_graph", &filter_degree_for_graph, py::arg("g"), py::arg("k"), py::arg("epsilon"));

    py::class_<QaeResult>(m, "QaeResult")
        .def_readonly("estimate", &QaeResult::estimate)
        .def_readonly("outcome", &QaeResult::outcome)
        .def_readonly("N", &QaeResult::N)
        .def_readonly("alpha", &QaeResult::alpha);
    m.def("amplitude_estimate_sim", &amplitude_estimate_sim, py::arg("a"), py::arg("epsilon"), py::arg("delta"),
          py::arg("seed"), py::arg("mode") = KaiserMode::kAsymptotic);
    py::class_<QaeTrials>(m, "QaeTrials")
        .def_readonly("N", &QaeTrials::N)
        .def_readonly("alpha", &QaeTrials::alpha)
        .def_readonly("failures", &QaeTrials::failures)
        .def_readonly("failure_rate", &QaeTrials::failure_rate)
        .def_readonly("sigma", &QaeTrials::sigma)
        .def_readonly("exact_failure", &QaeTrials::exact_failure);
    m.def("amplitude_estimate_trials", &amplitude_estimate_trials, py::arg("a"), py::arg("epsilon"),
          py::arg("delta"), py::arg("trials"), py::arg("seed"), py::arg("mode") = KaiserMode::kAsymptotic,
          py::call_guard<py::gil_scoped_release>());

    py::class_<PipelineResult>(m, "PipelineResult")
        .def_readonly("target", &PipelineResult::target)
        .def_readonly("estimate", &PipelineResult::estimate)
        .def_readonly("confidence", &PipelineResult::confidence)
        .def_readonly("ell", &PipelineResult::ell)
        .def_readonly("filtered_norm2", &PipelineResult::filtered_norm2);
    m.def("end_to_end_normalized_betti", &end_to_end_normalized_betti, py::arg("g"), py::arg("k"), py::arg("r"),
          py::arg("delta"), py::arg("seed"));

    py::class_<PIMCConfig>(m, "PIMCConfig")
        .def(py::init<>())
        .def_readwrite("t", &PIMCConfig::t)
        .def_readwrite("slices", &PIMCConfig::slices)
        .def_readwrite("samples", &PIMCConfig::samples)
        .def_readwrite("burn_in", &PIMCConfig::burn_in)
        .def_readwrite("thin", &PIMCConfig::thin)
        .def_readwrite("chains", &PIMCConfig::chains)
        .def_readwrite("seed", &PIMCConfig::seed)
        .def_readwrite("max_span", &PIMCConfig::max_span);
    py::class_<PIMCResult>(m, "PIMCResult")
        .def_readonly("estimate", &PIMCResult::estimate)
        .def_readonly("stderr", &PIMCResult::std_error)
        .def_readonly("acceptance_rate", &PIMCResult::acceptance_rate)
        .def_readonly("autocorr_time", &PIMCResult::autocorr_time)
        .def_readonly("D", &PIMCResult::D)
        .def_readonly("r_T", &PIMCResult::r_T)
        .def_readonly("t", &PIMCResult::t)
        .def_readonly("target", &PIMCResult::target)
        .def_readonly("exact_mean", &PIMCResult::exact_mean);
    m.def(
        "dequantize",
        [](const Graph &g, int k, PIMCConfig cfg) {
            if (cfg.t <= 0) {
                cfg.t = std::log(1000.0) / penalized_operator(g, k).gamma_min;
            }
            py::gil_scoped_release release;
            return estimate_normalized_betti(g, k, cfg);
        },
        py::arg("g"), py::arg("k"), py::arg("config") = PIMCConfig{},
        "estimate beta / C(n,k); t <= 0 picks ln(1000) / gamma_min");
    m.def("penalized_kernel_dimension",
          [](const Graph &g, int k) { return penalized_kernel_dimension(penalized_operator(g, k)); }, py::arg("g"),
          py::arg("k"));

    m.def(
        "verify",
        [](int id, uint64_t seed) {
            CriterionResult r;
            {
                py::gil_scoped_release release;
                r = run_criterion(id, seed);
            }
            py::list checks;
            for (const auto &c : r.checks) {
                checks.append(py::make_tuple(c.what, c.pass, c.value));
            }
            py::dict d;
            d["id"] = r.id;
            d["name"] = r.name;
            d["pass"] = r.pass;
            d["seconds"] = r.seconds;
            d["checks"] = checks;
            return d;
        },
        py::arg("criterion"), py::arg("seed") = 20260101);
}
