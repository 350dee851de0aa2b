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

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "bettiforge/amplitude.h"
#include "bettiforge/dequantizer.h"
#include "bettiforge/dicke.h"
#include "bettiforge/filter.h"
#include "bettiforge/graph_io.h"
#include "bettiforge/homology.h"
#include "bettiforge/qubitization.h"
#include "bettiforge/resources.h"
#include "bettiforge/verify.h"

using nlohmann::ordered_json;
using namespace bettiforge;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitDeskScale = 3;

struct GraphSource {
    std::string gen;
    std::string file;

    void attach(CLI::App *app) {
        auto *g = app->add_option("--gen", gen, "generator spec, e.g. kpartite:3,2 er:60,0.1,7 rips:12,2 complete:5");
        auto *f = app->add_option("--graph", file, "graph JSON file {\"n\", \"edges\"}");
        g->excludes(f);
    }
    bool given() const {
        return !gen.empty() || !file.empty();
    }
    Graph load() const {
        if (!gen.empty()) {
            return graph_from_spec(gen);
        }
        if (!file.empty()) {
            return read_graph_file(file);
        }
        throw std::invalid_argument("need exactly one of --gen or --graph");
    }
    void record(ordered_json &cfg) const {
        if (!gen.empty()) {
            cfg["gen"] = gen;
        } else {
            cfg["graph"] = file;
        }
    }
};

std::string out_path;

void emit_text(const std::string &text, const std::string &path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::invalid_argument("cannot write " + path);
    }
    f << text;
}

void emit_json(const ordered_json &j) {
    emit_text(j.dump(2) + "\n", out_path);
}

void emit_csv(const std::string &csv, const ordered_json &cfg) {
    emit_text(csv, out_path);
    if (!out_path.empty() && out_path != "-") {
        emit_text(cfg.dump(2) + "\n", out_path + ".config.json");
    }
}

ordered_json nullable(bool ok, double v) {
    return ok && std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

std::vector<int> parse_range(const std::string &spec) {
    std::vector<int> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) {
        size_t used = 0;
        int v = std::stoi(item, &used);
        if (used != item.size()) {
            throw std::invalid_argument("bad range " + spec);
        }
        parts.push_back(v);
    }
    if (parts.size() == 1) {
        return parts;
    }
    if (parts.size() != 3 || parts[2] < 1 || parts[1] < parts[0]) {
        throw std::invalid_argument("range must be a:b:step with a <= b and step >= 1");
    }
    std::vector<int> out;
    for (int v = parts[0]; v <= parts[1]; v += parts[2]) {
        out.push_back(v);
    }
    return out;
}

KaiserMode mode_of(bool refined) {
    return refined ? KaiserMode::kRefined : KaiserMode::kAsymptotic;
}

ordered_json estimate_json(const ResourceEstimate &e) {
    ordered_json j;
    j["total_toffoli"] = e.total_toffoli;
    j["closed_form_toffoli"] = e.closed_form_toffoli;
    j["prep_toffoli"] = e.prep_toffoli;
    j["filter_toffoli"] = e.filter_toffoli;
    j["dicke_toffoli"] = e.dicke_toffoli;
    j["clique_reflect_toffoli"] = e.clique_reflect_toffoli;
    j["block_encode_toffoli"] = e.block_encode_toffoli;
    j["step_toffoli"] = e.step_toffoli;
    j["chebyshev_degree"] = e.chebyshev_degree;
    j["amp_est_steps"] = e.amp_est_steps;
    j["amp_amp_steps"] = e.amp_amp_steps;
    j["overlap_est_steps"] = e.overlap_est_steps;
    j["kaiser_mode"] = e.kaiser_mode;
    ordered_json b = ordered_json::object();
    for (const auto &[key, value] : e.breakdown) {
        b[key] = value;
    }
    j["breakdown"] = b;
    return j;
}

// kpartite:m,k without enumerating cliques; nullopt for other families.
std::optional<std::pair<int, int>> kpartite_spec(const std::string &gen) {
    if (gen.rfind("kpartite:", 0) != 0) {
        return std::nullopt;
    }
    int m = 0, k = 0;
    char tail = 0;
    if (std::sscanf(gen.c_str() + 9, "%d,%d%c", &m, &k, &tail) != 2) {
        throw std::invalid_argument("kpartite spec is kpartite:m,k");
    }
    return std::make_pair(m, k);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"bettiforge: clique-complex Betti numbers, quantum resource estimates and simulators"};
    app.require_subcommand(1);
    app.add_option("-o,--out", out_path, "output file (default stdout)");

    // generate
    GraphSource gen_src;
    auto *generate = app.add_subcommand("generate", "write a graph in canonical JSON");
    gen_src.attach(generate);

    // betti
    GraphSource betti_src;
    int betti_k = 2;
    auto *betti = app.add_subcommand("betti", "exact Betti number and Laplacian spectrum on k-cliques");
    betti_src.attach(betti);
    betti->add_option("--k", betti_k, "clique size (reports beta_{k-1})")->required();

    // estimate
    GraphSource est_src;
    int est_n = 0, est_k = 0, est_c = 8;
    double est_edges = 0, est_cliques = 0, est_betti = 0, est_gap = 0, est_r = 0.05, est_delta = 0.05;
    bool est_refined = false;
    auto *estimate = app.add_subcommand("estimate", "Toffoli count of the quantum algorithm");
    est_src.attach(estimate);
    estimate->add_option("--n", est_n, "vertex count");
    estimate->add_option("--k", est_k, "clique size")->required();
    estimate->add_option("--edges", est_edges, "edge count");
    estimate->add_option("--cliques", est_cliques, "k-clique count");
    estimate->add_option("--betti", est_betti, "Betti number");
    estimate->add_option("--gap", est_gap, "smallest nonzero Laplacian eigenvalue");
    estimate->add_option("--r", est_r, "relative precision");
    estimate->add_option("--delta", est_delta, "failure probability");
    estimate->add_option("--c", est_c, "Dicke seed-width factor");
    estimate->add_flag("--refined-kaiser", est_refined, "pick N from the Kaiser tail integral");

    // sweep
    std::string sweep_family = "kpartite", sweep_n;
    int sweep_k = 0;
    double sweep_r = 0.05, sweep_delta = 0.05;
    bool sweep_refined = false;
    auto *sweep = app.add_subcommand("sweep", "resource sweep over n as CSV");
    sweep->add_option("--family", sweep_family, "graph family")->check(CLI::IsMember({"kpartite"}));
    sweep->add_option("--k", sweep_k, "clique size")->required();
    sweep->add_option("--n", sweep_n, "a:b:step")->required();
    sweep->add_option("--r", sweep_r, "relative precision");
    sweep->add_option("--delta", sweep_delta, "failure probability");
    sweep->add_flag("--refined-kaiser", sweep_refined, "pick N from the Kaiser tail integral");

    // simulate
    auto *simulate = app.add_subcommand("simulate", "state-vector and distribution simulators");
    simulate->require_subcommand(1);
    int dk_n = 64, dk_k = 8, dk_c = 8;
    int64_t dk_trials = 1000000;
    uint64_t sim_seed = 1;
    auto *sim_dicke = simulate->add_subcommand("dicke", "threshold Dicke preparation failure rate");
    sim_dicke->add_option("--n", dk_n, "registers");
    sim_dicke->add_option("--k", dk_k, "Hamming weight");
    sim_dicke->add_option("--c", dk_c, "seed-width factor");
    sim_dicke->add_option("--trials", dk_trials, "Monte-Carlo trials");
    sim_dicke->add_option("--seed", sim_seed, "seed");

    GraphSource walk_src;
    int walk_k = 2;
    bool walk_full = false;
    auto *sim_walk = simulate->add_subcommand("walk", "block encoding and walk operator spectrum");
    walk_src.attach(sim_walk);
    sim_walk->add_option("--k", walk_k, "clique size")->required();
    sim_walk->add_flag("--full", walk_full, "also run a full eigen-solve of W");

    GraphSource filt_src;
    int filt_k = 2;
    double filt_eps = 1e-3;
    int64_t filt_ell = -1;
    auto *sim_filter = simulate->add_subcommand("filter", "Chebyshev filter on the clique state");
    filt_src.attach(sim_filter);
    sim_filter->add_option("--k", filt_k, "clique size")->required();
    sim_filter->add_option("--eps", filt_eps, "suppression target");
    sim_filter->add_option("--ell", filt_ell, "filter degree (default from the spectral gap)");

    double qae_a = 0.3, qae_eps = 0.01, qae_delta = 0.05;
    int64_t qae_trials = 1;
    bool qae_refined = false;
    auto *sim_qae = simulate->add_subcommand("qae", "Kaiser-window amplitude estimation");
    sim_qae->add_option("--a", qae_a, "amplitude in [0, 1]");
    sim_qae->add_option("--eps", qae_eps, "additive error");
    sim_qae->add_option("--delta", qae_delta, "failure probability");
    sim_qae->add_option("--trials", qae_trials, "independent runs");
    sim_qae->add_option("--seed", sim_seed, "seed");
    sim_qae->add_flag("--refined-kaiser", qae_refined, "pick N from the Kaiser tail integral");

    GraphSource pipe_src;
    int pipe_k = 2;
    double pipe_r = 0.1, pipe_delta = 0.1;
    auto *sim_pipe = simulate->add_subcommand("pipeline", "end-to-end normalized Betti estimate");
    pipe_src.attach(sim_pipe);
    sim_pipe->add_option("--k", pipe_k, "clique size")->required();
    sim_pipe->add_option("--r", pipe_r, "relative precision");
    sim_pipe->add_option("--delta", pipe_delta, "failure probability");
    sim_pipe->add_option("--seed", sim_seed, "seed");

    // dequantize
    GraphSource dq_src;
    int dq_n = 0, dq_k = 2;
    PIMCConfig dq;
    dq.slices = 1;
    double dq_t = -1;
    auto *dequant = app.add_subcommand("dequantize", "path-integral Monte Carlo estimate of beta / C(n,k)");
    dq_src.attach(dequant);
    dequant->add_option("--n", dq_n, "without a graph: complete k-partite graph on n vertices");
    dequant->add_option("--k", dq_k, "clique size")->required();
    dequant->add_option("--t", dq_t, "imaginary time (default ln(1000) / gamma_min)");
    dequant->add_option("--slices", dq.slices, "Trotter slices r_T; 0 uses the worst-case bound");
    dequant->add_option("--samples", dq.samples, "samples");
    dequant->add_option("--burn-in", dq.burn_in, "burn-in steps per chain");
    dequant->add_option("--thin", dq.thin, "steps between samples");
    dequant->add_option("--seed", dq.seed, "seed");
    dequant->add_option("--chains", dq.chains, "parallel chains");
    dequant->add_option("--max-span", dq.max_span, "longest refilled window, 0 for the whole path");

    // verify
    bool v_props = false, v_dicke = false, v_toy = false, v_all = false, v_quiet = false;
    std::vector<int> v_ids;
    uint64_t v_seed = 20260101;
    auto *verify = app.add_subcommand("verify", "run acceptance criteria");
    verify->add_flag("--props", v_props, "K(m,k) propositions and the Rips construction");
    verify->add_flag("--dicke", v_dicke, "Dicke threshold examples and failure rate");
    verify->add_flag("--dequant-toy", v_toy, "dequantizer on K(2,2) and K(2,3)");
    verify->add_option("--criterion", v_ids, "criterion id (repeatable)")->check(CLI::Range(1, kCriterionCount));
    verify->add_flag("--all", v_all, "every criterion");
    verify->add_flag("--quiet", v_quiet, "one line per criterion");
    verify->add_option("--seed", v_seed, "seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    try {
        if (*generate) {
            Graph g = gen_src.load();
            emit_text(graph_to_json(g), out_path);
            if (!out_path.empty() && out_path != "-") {
                ordered_json cfg = {{"subcommand", "generate"}};
                gen_src.record(cfg);
                emit_text(cfg.dump(2) + "\n", out_path + ".config.json");
            }
            return 0;
        }

        if (*betti) {
            Graph g = betti_src.load();
            ordered_json cfg = {{"subcommand", "betti"}, {"k", betti_k}};
            betti_src.record(cfg);
            int64_t b = betti_exact(g, betti_k);
            int64_t cl = (int64_t)enumerate_cliques(g, betti_k).size();
            ordered_json j = {{"config", cfg}, {"n", g.n()}, {"k", betti_k}, {"cl_k", cl}, {"betti", b}};
            if (cl > 0 && cl <= kMaxDenseDimension) {
                SpectralSummary s = spectrum(g, betti_k);
                j["gap"] = nullable(s.has_gap, s.gap);
                j["gamma_max"] = s.top;
                j["kappa"] = nullable(s.has_gap, s.kappa);
            } else {
                j["gap"] = nullptr;
                j["gamma_max"] = nullptr;
                j["kappa"] = nullptr;
            }
            emit_json(j);
            return 0;
        }

        if (*estimate) {
            ordered_json cfg = {{"subcommand", "estimate"}, {"k", est_k}, {"r", est_r}, {"delta", est_delta},
                                {"c", est_c},           {"refined_kaiser", est_refined}};
            ResourceParams p;
            if (est_src.given()) {
                est_src.record(cfg);
                auto kp = est_src.gen.empty() ? std::nullopt : kpartite_spec(est_src.gen);
                if (kp && kp->second == est_k) {
                    p = kpartite_params(kp->first, kp->second, est_r, est_delta, est_c);
                } else {
                    Graph g = est_src.load();
                    SpectralSummary s = spectrum(g, est_k);
                    if (!s.has_gap) {
                        throw std::invalid_argument("Laplacian has no nonzero eigenvalue");
                    }
                    p = ResourceParams::make(g.n(), est_k, (double)g.edge_count(),
                                             (double)enumerate_cliques(g, est_k).size(),
                                             (double)betti_exact(g, est_k), s.gap, est_r, est_delta, est_c);
                }
            } else {
                cfg["n"] = est_n;
                cfg["edges"] = est_edges;
                cfg["cliques"] = est_cliques;
                cfg["betti"] = est_betti;
                cfg["gap"] = est_gap;
                p = ResourceParams::make(est_n, est_k, est_edges, est_cliques, est_betti, est_gap, est_r, est_delta,
                                         est_c);
            }
            p.validate();
            ordered_json params = {{"n", p.n},         {"k", p.k},           {"edges", p.edge_count},
                                   {"cliques", p.clique_count}, {"betti", p.betti}, {"lambda_min", p.lambda_min},
                                   {"lambda", p.lambda}, {"r1", p.r1}, {"r2", p.r2}, {"r3", p.r3},
                                   {"delta1", p.delta1}, {"delta2", p.delta2}};
            ordered_json j = {{"config", cfg}, {"params", params}};
            j.update(estimate_json(total_toffoli(p, mode_of(est_refined))));
            emit_json(j);
            return 0;
        }

        if (*sweep) {
            std::vector<std::string> warnings;
            auto rows = sweep_kpartite(sweep_k, parse_range(sweep_n), sweep_r, sweep_delta, mode_of(sweep_refined),
                                       &warnings);
            for (const auto &w : warnings) {
                std::cerr << "warning: " << w << "\n";
            }
            ordered_json cfg = {{"subcommand", "sweep"}, {"family", sweep_family}, {"k", sweep_k}, {"n", sweep_n},
                                {"r", sweep_r},          {"delta", sweep_delta},   {"refined_kaiser", sweep_refined}};
            emit_csv(sweep_csv(rows), cfg);
            return 0;
        }

        if (*sim_dicke) {
            DickeStats s = dicke_success_prob(dk_n, dk_k, dk_c, dk_trials, sim_seed);
            ordered_json cfg = {{"subcommand", "simulate dicke"}, {"n", dk_n}, {"k", dk_k}, {"c", dk_c},
                                {"trials", dk_trials},            {"seed", sim_seed}};
            emit_json({{"config", cfg},
                       {"n_seed", s.n_seed},
                       {"failures", s.failures},
                       {"failure_rate", s.failure_rate},
                       {"sigma", s.sigma},
                       {"exact_failure", s.exact_failure}});
            return 0;
        }

        if (*sim_walk) {
            Graph g = walk_src.load();
            BlockEncoding be = build_block_encoding(g, walk_k);
            WalkSpectrum ws = walk_spectrum(be, build_walk(be), walk_full);
            ordered_json cfg = {{"subcommand", "simulate walk"}, {"k", walk_k}, {"full", walk_full}};
            walk_src.record(cfg);
            ordered_json phases = ordered_json::array();
            for (const auto &mu : ws.walk_eigs) {
                phases.push_back(std::arg(mu));
            }
            emit_json({{"config", cfg},
                       {"dimension", be.dimension},
                       {"lambda", be.lambda},
                       {"hamiltonian_eigs", ws.hamiltonian_eigs},
                       {"walk_phases", phases},
                       {"max_relation_error", ws.max_relation_error},
                       {"max_eigvec_error", ws.max_eigvec_error},
                       {"max_perp_leak", ws.max_perp_leak},
                       {"max_full_spectrum_distance", nullable(walk_full, ws.max_full_spectrum_distance)}});
            return 0;
        }

        if (*sim_filter) {
            Graph g = filt_src.load();
            int64_t ell = filt_ell >= 0 ? filt_ell : filter_degree_for_graph(g, filt_k, filt_eps);
            FilterResult f = apply_filter_to_state(g, filt_k, ell, filt_eps);
            ordered_json cfg = {{"subcommand", "simulate filter"}, {"k", filt_k}, {"eps", filt_eps}, {"ell", ell}};
            filt_src.record(cfg);
            emit_json({{"config", cfg},
                       {"clique_count", f.clique_count},
                       {"betti", f.betti},
                       {"a2", f.a2},
                       {"target", f.target},
                       {"max_suppression", f.max_suppression},
                       {"eigenvalues", f.eigenvalues},
                       {"factors", f.factors}});
            return 0;
        }

        if (*sim_qae) {
            ordered_json cfg = {{"subcommand", "simulate qae"}, {"a", qae_a},         {"eps", qae_eps},
                                {"delta", qae_delta},           {"trials", qae_trials}, {"seed", sim_seed},
                                {"refined_kaiser", qae_refined}};
            if (qae_trials <= 1) {
                QaeResult q = amplitude_estimate_sim(qae_a, qae_eps, qae_delta, sim_seed, mode_of(qae_refined));
                emit_json({{"config", cfg}, {"estimate", q.estimate}, {"outcome", q.outcome}, {"N", q.N},
                           {"alpha", q.alpha}});
            } else {
                QaeTrials t =
                    amplitude_estimate_trials(qae_a, qae_eps, qae_delta, qae_trials, sim_seed, mode_of(qae_refined));
                emit_json({{"config", cfg},
                           {"N", t.N},
                           {"alpha", t.alpha},
                           {"failures", t.failures},
                           {"failure_rate", t.failure_rate},
                           {"sigma", t.sigma},
                           {"exact_failure", t.exact_failure}});
            }
            return 0;
        }

        if (*sim_pipe) {
            Graph g = pipe_src.load();
            PipelineResult p = end_to_end_normalized_betti(g, pipe_k, pipe_r, pipe_delta, sim_seed);
            ordered_json cfg = {{"subcommand", "simulate pipeline"}, {"k", pipe_k}, {"r", pipe_r},
                                {"delta", pipe_delta},                {"seed", sim_seed}};
            pipe_src.record(cfg);
            emit_json({{"config", cfg},
                       {"clique_count", p.clique_count},
                       {"betti", p.betti},
                       {"target", p.target},
                       {"a0", p.a0},
                       {"amp_rounds", p.amp_rounds},
                       {"a0_hat", p.a0_hat},
                       {"amplified_hat", p.amplified_hat},
                       {"ell", p.ell},
                       {"filter_epsilon", p.filter_epsilon},
                       {"filtered_norm2", p.filtered_norm2},
                       {"af_hat", p.af_hat},
                       {"qae1_steps", p.qae1_steps},
                       {"qae2_steps", p.qae2_steps},
                       {"estimate", p.estimate},
                       {"confidence", p.confidence}});
            return 0;
        }

        if (*dequant) {
            ordered_json cfg = {{"subcommand", "dequantize"}, {"k", dq_k}};
            Graph g;
            if (dq_src.given()) {
                dq_src.record(cfg);
                g = dq_src.load();
            } else {
                if (dq_k < 1 || dq_n % dq_k != 0 || dq_n / dq_k < 1) {
                    throw std::invalid_argument("without --graph, --n must be a positive multiple of --k");
                }
                cfg["n"] = dq_n;
                g = gen_kpartite(dq_n / dq_k, dq_k);
            }
            PenalizedOperator op = penalized_operator(g, dq_k);
            OneSparseDecomposition decomp = one_sparse_decompose(op.matrix);
            dq.t = dq_t >= 0 ? dq_t : std::log(1000.0) / op.gamma_min;
            cfg.update({{"t", dq.t}, {"slices", dq.slices}, {"samples", dq.samples}, {"burn_in", dq.burn_in},
                        {"thin", dq.thin}, {"seed", dq.seed}, {"chains", dq.chains}, {"max_span", dq.max_span}});
            PIMCResult r = estimate_normalized_betti(op, decomp, dq);
            emit_json({{"config", cfg},
                       {"estimate", r.estimate},
                       {"stderr", r.std_error},
                       {"acceptance_rate", r.acceptance_rate},
                       {"autocorr_time", r.autocorr_time},
                       {"D", r.D},
                       {"r_T", r.r_T},
                       {"sites", r.sites},
                       {"target", r.target},
                       {"exact_mean", nullable(true, r.exact_mean)},
                       {"clique_acceptance", r.clique_acceptance}});
            return 0;
        }

        if (*verify) {
            std::vector<int> ids;
            if (v_all) {
                for (int i = 1; i <= kCriterionCount; i++) {
                    ids.push_back(i);
                }
            } else {
                if (v_props) {
                    ids.insert(ids.end(), {1, 2});
                }
                if (v_dicke) {
                    ids.push_back(4);
                }
                if (v_toy) {
                    ids.push_back(8);
                }
                ids.insert(ids.end(), v_ids.begin(), v_ids.end());
            }
            if (ids.empty()) {
                throw std::invalid_argument("select criteria with --props, --dicke, --dequant-toy, --criterion or --all");
            }
            bool all_pass = true;
            ordered_json report = ordered_json::array();
            for (int id : ids) {
                CriterionResult r = run_criterion(id, v_seed);
                std::cerr << format_criterion(r, !v_quiet);
                all_pass = all_pass && r.pass;
                ordered_json checks = ordered_json::array();
                for (const auto &c : r.checks) {
                    checks.push_back({{"check", c.what}, {"pass", c.pass}, {"value", c.value}});
                }
                report.push_back({{"criterion", r.id},
                                  {"name", r.name},
                                  {"pass", r.pass},
                                  {"seconds", r.seconds},
                                  {"time_limit", r.time_limit},
                                  {"checks", checks}});
            }
            emit_json({{"config", {{"subcommand", "verify"}, {"criteria", ids}, {"seed", v_seed}}},
                       {"pass", all_pass},
                       {"criteria", report}});
            return all_pass ? 0 : 1;
        }
    } catch (const DeskScaleError &e) {
        std::cerr << "desk-scale limit: " << e.what() << "\n";
        return kExitDeskScale;
    } catch (const std::invalid_argument &e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::out_of_range &e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    }
    return 0;
}
