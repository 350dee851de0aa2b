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

#include "bettiforge/verify.h"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "bettiforge/amplitude.h"
#include "bettiforge/dequantizer.h"
#include "bettiforge/dicke.h"
#include "bettiforge/filter.h"
#include "bettiforge/homology.h"
#include "bettiforge/kaiser.h"
#include "bettiforge/qubitization.h"
#include "bettiforge/resources.h"

namespace bettiforge {

namespace {

std::string fmt(const char *f, ...) __attribute__((format(printf, 1, 2)));

std::string fmt(const char *f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    vsnprintf(buf, sizeof buf, f, args);
    va_end(args);
    return buf;
}

class Checks {
   public:
    explicit Checks(CriterionResult &r) : r_(r) {
    }
    bool add(const std::string &what, bool pass, const std::string &value = "") {
        r_.checks.push_back({what, pass, value});
        return pass;
    }

   private:
    CriterionResult &r_;
};

void propositions(Checks &c) {
    bool betti_ok = true, gap_ok = true, spec_ok = true, count_ok = true;
    std::string worst;
    for (int m = 2; m <= 4; m++) {
        for (int k = 2; k <= 4; k++) {
            Graph g = gen_kpartite(m, k);
            int64_t want = (int64_t)std::llround(std::pow(m - 1, k));
            int64_t cl = (int64_t)enumerate_cliques(g, k).size();
            int64_t b = betti_exact(g, k);
            SpectralSummary s = spectrum(g, k);
            bool in_set = true;
            for (double ev : s.eigenvalues) {
                double q = std::round(ev / m);
                in_set = in_set && std::abs(ev - q * m) <= 1e-8 && q >= 0 && q <= k;
            }
            count_ok &= cl == (int64_t)std::llround(std::pow(m, k));
            betti_ok &= b == want;
            gap_ok &= s.has_gap && std::abs(s.gap - m) <= 1e-8;
            spec_ok &= in_set;
            if (b != want || !in_set || !(s.has_gap && std::abs(s.gap - m) <= 1e-8)) {
                worst += fmt(" K(%d,%d): betti=%lld gap=%.10g", m, k, (long long)b, s.gap);
            }
        }
    }
    c.add("|Cl_k(K(m,k))| = m^k for m,k in {2,3,4}", count_ok);
    c.add("betti_exact(K(m,k), k) = (m-1)^k", betti_ok, worst);
    c.add("spectral gap = m within 1e-8", gap_ok);
    c.add("spectrum within {0, m, ..., km} to 1e-8", spec_ok);
}

void rips(Checks &c) {
    for (int m = 2; m <= 4; m++) {
        int k = 1;
        int n = 2 * m * k;
        Graph g = rips_graph(gen_rips_points(n, k), 1.0);
        int64_t b = betti_exact(g, 2 * k);
        c.add(fmt("R_1(S) with k=1, m=%d: beta_1 = %d", m, m - 1), b == m - 1, fmt("beta_1=%lld", (long long)b));
        bool pattern = true;
        for (int i = 0; i < m; i++) {
            for (int j = 0; j < m; j++) {
                bool edge = g.has_edge(i, m + j);
                pattern &= edge == (i == j);
            }
        }
        c.add(fmt("m=%d: edge (x+_i, x-_j) present iff i = j", m), pattern);
    }
}

void anchors(Checks &c) {
    struct Anchor {
        int m, k;
        double reference;
    };
    for (Anchor a : {Anchor{16, 16, 8e10}, Anchor{15, 12, 1e10}}) {
        ResourceEstimate e = total_toffoli(kpartite_params(a.m, a.k, 0.05, 0.05), KaiserMode::kRefined);
        double ratio = e.total_toffoli / a.reference;
        c.add(fmt("n=%d, k=%d refined total within 5x of %.0e", a.m * a.k, a.k, a.reference), ratio >= 0.2 && ratio <= 5.0,
              fmt("total=%.4g ratio=%.3f", e.total_toffoli, ratio));
    }
    for (int k : {4, 8, 16}) {
        std::vector<int> ns;
        for (int m : {8, 16, 32, 64, 128}) {
            ns.push_back(k * m);
        }
        double slope = loglog_slope(sweep_kpartite(k, ns, 0.05, 0.05, KaiserMode::kRefined));
        c.add(fmt("k=%d log-log slope of the quantum column = 2.0 +- 0.3", k), std::abs(slope - 2.0) <= 0.3,
              fmt("slope=%.3f", slope));
    }
}

void dicke(Checks &c, uint64_t seed) {
    ThresholdRun ok = dicke_threshold_run({0b0110, 0b1110, 0b0111, 0b0010}, 2, 4);
    bool bits = ok.bits == std::vector<int>{0, 1, 1, 1};
    c.add("worked example 1: success with b = 0111, registers 2 and 3 selected",
          ok.success && bits && ok.selected == 0b0110);
    ThresholdRun bad = dicke_threshold_run({0b0110, 0b1110, 0b0110, 0b0010}, 2, 4);
    c.add("worked example 2: duplicate seeds fail", !bad.success);
    DickeStats s = dicke_success_prob(64, 8, 8, 1000000, seed);
    double expected = 1.0 / 16.0;
    double sigma = std::sqrt(expected * (1.0 - expected) / (double)s.trials);
    c.add("n=64, k=8, c=8: Monte-Carlo failure = 1/16 within 3 sigma over 1e6 trials",
          std::abs(s.failure_rate - expected) <= 3.0 * sigma,
          fmt("rate=%.6f sigma=%.2e |diff|/sigma=%.1f", s.failure_rate, sigma,
              std::abs(s.failure_rate - expected) / sigma));
    double sig_exact = std::sqrt(s.exact_failure * (1.0 - s.exact_failure) / (double)s.trials);
    c.add("(companion) same run against the exact collision probability within 3 sigma",
          std::abs(s.failure_rate - s.exact_failure) <= 3.0 * sig_exact, fmt("exact=%.6f", s.exact_failure));
}

void qubitization(Checks &c, uint64_t seed) {
    double block_err = 0.0, rel = 0.0, vec = 0.0, leak = 0.0, full = 0.0, unitary = 0.0;
    int graphs = 0;
    std::string list;
    for (uint64_t s = 0; graphs < 10; s++) {
        int n = 3 + (int)(s % 4);
        Graph g = gen_erdos_renyi(n, 0.6, seed + s);
        int k = 1 + (int)(s % 3);
        if (k > n || enumerate_cliques(g, k).empty()) {
            continue;
        }
        graphs++;
        list += fmt(" (n=%d,|E|=%zu,k=%d)", n, g.edge_count(), k);
        BlockEncoding be = build_block_encoding(g, k);
        DiracOperator d = dirac(build_clique_complex(g, k), k);
        block_err = std::max(block_err, (projected_block(be) - d.matrix.cast<double>() / be.lambda).cwiseAbs().maxCoeff());
        unitary = std::max(unitary, (be.V.transpose() * be.V - Eigen::MatrixXd::Identity(be.dimension, be.dimension))
                                        .cwiseAbs()
                                        .maxCoeff());
        WalkSpectrum ws = walk_spectrum(be, build_walk(be), true);
        rel = std::max(rel, ws.max_relation_error);
        vec = std::max(vec, ws.max_eigvec_error);
        leak = std::max(leak, ws.max_perp_leak);
        full = std::max(full, ws.max_full_spectrum_distance);
    }
    c.add("10 random graphs, n <= 6:" + list, graphs == 10);
    c.add("projected block of V equals B_G / n to 1e-12", block_err <= 1e-12, fmt("max err=%.2e", block_err));
    c.add("V unitary to 1e-12", unitary <= 1e-12, fmt("max err=%.2e", unitary));
    c.add("W|0k> and W|0k_perp> relations by direct matrix action to 1e-8", rel <= 1e-8 && leak <= 1e-8,
          fmt("max err=%.2e leak=%.2e", rel, leak));
    c.add("eigenvectors with phases +-asin(E_k/lambda) to 1e-8", vec <= 1e-8, fmt("max err=%.2e", vec));
    c.add("predicted eigenvalues present in the full spectrum of W to 1e-8", full <= 1e-8, fmt("max dist=%.2e", full));
}

void filtering(Checks &c) {
    Graph g = gen_kpartite(2, 2);
    double eps = 1e-3;
    int64_t ell = filter_degree_for_graph(g, 2, eps);
    FilterResult f = apply_filter_to_state(g, 2, ell, eps);
    c.add("K(2,2), eps=1e-3: a^2 = 1/4 +- 1e-6", std::abs(f.a2 - 0.25) <= 1e-6,
          fmt("ell=%lld a^2=%.9f", (long long)ell, f.a2));
    c.add("suppression <= eps on every nonzero mode", f.max_suppression <= eps, fmt("max=%.3e", f.max_suppression));
    int violations = 0;
    for (int i = 0; i < 10; i++) {
        double e = std::pow(10.0, -0.5 - 0.5 * i);
        for (int j = 0; j < 10; j++) {
            double ratio = 0.01 + 0.098 * j;
            int64_t ell_ij = chebyshev_degree(e, ratio, 1.0);
            double bound = std::ceil(std::log(2.0 / e) / ratio) + 1.0;
            violations += (double)ell_ij > bound;
        }
    }
    c.add("chebyshev_degree <= ceil((lambda/lambda_min) ln(2/eps)) + 1 on a 10x10 grid", violations == 0,
          fmt("violations=%d", violations));
}

void kaiser(Checks &c, uint64_t seed) {
    struct Case {
        double eps, delta;
    };
    for (Case cs : {Case{0.01, 0.05}, Case{0.005, 0.01}}) {
        QaeTrials t = amplitude_estimate_trials(0.3, cs.eps, cs.delta, 2000, seed);
        c.add(fmt("a=0.3, eps=%g, delta=%g: failure <= delta + 3 sigma over 2000 trials", cs.eps, cs.delta),
              t.failure_rate <= cs.delta + 3.0 * t.sigma,
              fmt("N=%lld alpha=%.3f rate=%.4f exact=%.2e", (long long)t.N, t.alpha, t.failure_rate,
                  t.exact_failure));
    }
    for (double alpha : {2.0, 3.0, 4.0, 6.0, 8.0}) {
        KaiserPhaseDistribution d(1000, alpha);
        double tail = d.tail_mass(d.first_zero());
        double bound = 1.5 * kaiser_tail_estimate(alpha);
        c.add(fmt("alpha=%g: tail beyond first zero <= 1.5 x 8 ln(2a) sqrt(a) e^(-2 pi a)", alpha), tail <= bound,
              fmt("tail=%.3e bound=%.3e", tail, bound));
    }
}

void dequantizer(Checks &c, uint64_t seed) {
    struct Case {
        int m, k;
    };
    for (Case cs : {Case{2, 2}, Case{2, 3}}) {
        Graph g = gen_kpartite(cs.m, cs.k);
        PenalizedOperator op = penalized_operator(g, cs.k);
        OneSparseDecomposition d = one_sparse_decompose(op.matrix);
        PIMCConfig cfg;
        cfg.t = std::log(1000.0) / op.gamma_min;
        cfg.slices = 1;
        cfg.samples = 20000;
        cfg.seed = seed;
        PIMCResult r = estimate_normalized_betti(op, d, cfg);
        double oracle = (double)betti_exact(g, cs.k) / binomial(g.n(), cs.k);
        double trotter_gap = std::abs(exact_trotter_mean(op, d, cfg.t, 1) - exact_thermal_mean(op, cfg.t));
        c.add(fmt("K(%d,%d), k=%d: estimate within 3 stderr of beta/d_k = %.6f", cs.m, cs.k, cs.k, oracle),
              std::abs(r.estimate - oracle) <= 3.0 * r.std_error,
              fmt("est=%.5f stderr=%.5f D=%d sites=%d t=%.3f exact(Trotter)=%.5f trotter-vs-exp=%.1e", r.estimate,
                  r.std_error, r.D, r.sites, r.t, r.exact_mean, trotter_gap));
        VarianceReport v = variance_report(op, d, r);
        c.add(fmt("K(%d,%d): empirical variance <= analytic bound", cs.m, cs.k), v.log_ratio <= 0.0,
              fmt("var=%.4f exact=%.4f log bound=%.1f tau=%.2f", v.empirical_variance, v.exact_variance,
                  v.log_analytic_bound, v.autocorr_time));

        PathModel model(d, cfg.t, 1);
        double expect = 0.0;
        int64_t paths = 0;
        double ncl = (double)op.sigma.size();
        for (int s : op.sigma) {
            PathSums ps = path_sums(model, s);
            for (const PathSample &p : enumerate_paths(model, s, 4096)) {
                paths++;
                double pr = std::exp(stationary_log_prob(p, cfg.t, 1) - ps.log_z);
                double eq = ncl / op.d_k * std::exp(ps.log_z) * p.weight * std::exp(0.5 * p.eigen_sum * cfg.t);
                expect += pr * eq / ncl;
            }
        }
        double trot = exact_trotter_mean(op, d, cfg.t, 1);
        c.add(fmt("K(%d,%d): exhaustive path expectation equals the dense Trotter trace", cs.m, cs.k),
              std::abs(expect - trot) <= 1e-12 * std::max(1.0, std::abs(trot)),
              fmt("paths=%lld diff=%.1e", (long long)paths, std::abs(expect - trot)));

        if (cs.k == 3) {
            Rng rng(seed);
            int s = op.sigma[0];
            double worst = 0.0;
            for (int i = 0; i < 100; i++) {
                PathSample a = sample_path_exact(model, s, rng);
                PathSample b = sample_path_exact(model, s, rng);
                if (a.labels == b.labels) {
                    i--;
                    continue;
                }
                double pa = std::exp(stationary_log_prob(a, cfg.t, 1));
                double pb = std::exp(stationary_log_prob(b, cfg.t, 1));
                double lhs = pa * mh_transition_probability(model, a, b, 0);
                double rhs = pb * mh_transition_probability(model, b, a, 0);
                worst = std::max(worst, std::abs(lhs - rhs) / std::max(lhs, rhs));
            }
            c.add("detailed balance p_a p_ab = p_b p_ba on 100 random path pairs", worst <= 1e-12,
                  fmt("max rel diff=%.1e", worst));
        }
    }
}

void erdos_renyi(Checks &c, uint64_t seed) {
    int n = 60;
    double p = std::pow(n, -2.0 / 3.0);
    double total = 0.0;
    for (int s = 0; s < 50; s++) {
        total += (double)betti_exact(gen_erdos_renyi(n, p, seed + s), 2);
    }
    double mean = total / 50.0;
    double ratio = mean / (binomial(n, 2) * p);
    c.add("n=60, p=n^(-2/3), 50 seeds: mean beta_1 / (C(n,2) p) in [0.5, 1.5]", ratio >= 0.5 && ratio <= 1.5,
          fmt("mean beta_1=%.2f ratio=%.3f", mean, ratio));
}

void coherence(Checks &c, uint64_t seed) {
    int agree = 0;
    std::string bad;
    for (int i = 0; i < 25; i++) {
        int n = 4 + i % 5;
        int k = 1 + i % 3;
        Graph g = gen_erdos_renyi(n, 0.35 + 0.1 * (i % 5), seed + 100 + i);
        int64_t rank_way = betti_exact(g, k);
        int64_t lap_way = spectrum(g, k).nullity;
        int64_t pen_way = penalized_kernel_dimension(penalized_operator(g, k));
        if (rank_way == lap_way && lap_way == pen_way) {
            agree++;
        } else {
            bad += fmt(" [n=%d k=%d: %lld/%lld/%lld]", n, k, (long long)rank_way, (long long)lap_way,
                       (long long)pen_way);
        }
    }
    c.add("25 random graphs, n <= 8, k <= 3: integer rank = Laplacian nullity = penalized kernel", agree == 25,
          fmt("agree=%d%s", agree, bad.c_str()));
}

struct Spec {
    const char *name;
    double limit;
    std::function<void(Checks &, uint64_t)> run;
};

const Spec &spec_for(int id) {
    static const std::vector<Spec> specs = {
        {"propositions on K(m,k)", 60, [](Checks &c, uint64_t) { propositions(c); }},
        {"Rips construction", 10, [](Checks &c, uint64_t) { rips(c); }},
        {"resource anchors", 5, [](Checks &c, uint64_t) { anchors(c); }},
        {"Dicke threshold", 30, dicke},
        {"qubitization", 60, qubitization},
        {"filtering", 10, [](Checks &c, uint64_t) { filtering(c); }},
        {"Kaiser amplitude estimation", 120, kaiser},
        {"dequantizer", 600, dequantizer},
        {"Erdos-Renyi statistics", 120, erdos_renyi},
        {"oracle coherence", 120, coherence},
    };
    if (id < 1 || id > (int)specs.size()) {
        throw std::invalid_argument("criterion id must lie in 1.." + std::to_string(specs.size()));
    }
    return specs[id - 1];
}

}  // namespace

CriterionResult run_criterion(int id, uint64_t seed) {
    const Spec &spec = spec_for(id);
    CriterionResult r;
    r.id = id;
    r.name = spec.name;
    r.time_limit = spec.limit;
    Checks checks(r);
    auto start = std::chrono::steady_clock::now();
    try {
        spec.run(checks, seed);
    } catch (const std::exception &e) {
        checks.add(std::string("raised: ") + e.what(), false);
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.pass = !r.checks.empty() && r.seconds <= r.time_limit;
    for (const CheckLine &l : r.checks) {
        r.pass = r.pass && l.pass;
    }
    return r;
}

std::string format_criterion(const CriterionResult &r, bool verbose) {
    std::ostringstream out;
    out << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << " " << r.name << fmt(" (%.2f s, limit %.0f s)", r.seconds, r.time_limit)
        << "\n";
    if (verbose) {
        for (const CheckLine &l : r.checks) {
            out << "    " << (l.pass ? "ok   " : "FAIL ") << l.what;
            if (!l.value.empty()) {
                out << ": " << l.value;
            }
            out << "\n";
        }
    }
    return out.str();
}

}  // namespace bettiforge
