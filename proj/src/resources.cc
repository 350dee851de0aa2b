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

#include "bettiforge/resources.h"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "bettiforge/graph.h"
#include "bettiforge/kaiser.h"

namespace bettiforge {

namespace {

double log_choose(int n, int k) {
    return log_binomial(n, k);
}

// sqrt(|Cl_k| / binom(n,k)), computed in the log domain.
double clique_amplitude(const ResourceParams &p) {
    return std::exp(0.5 * (std::log(p.clique_count) - log_choose(p.n, p.k)));
}

double kaiser_h(double alpha) {
    return 2.0 * M_PI * alpha - std::log(8.0 * std::log(2.0 * alpha) * std::sqrt(alpha));
}

double kaiser_h_minimizer() {
    // h'(alpha) = 2 pi - 1/(alpha ln(2 alpha)) - 1/(2 alpha) is increasing on (1/2, inf).
    double lo = 0.5 + 1e-9;
    double hi = 20.0;
    for (int it = 0; it < 200; it++) {
        double mid = 0.5 * (lo + hi);
        double d = 2.0 * M_PI - 1.0 / (mid * std::log(2.0 * mid)) - 0.5 / mid;
        if (d < 0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

}  // namespace

ResourceParams ResourceParams::make(int n, int k, double edge_count, double clique_count, double betti,
                                    double lambda_min, double r, double delta, int c) {
    ResourceParams p;
    p.n = n;
    p.k = k;
    p.edge_count = edge_count;
    p.clique_count = clique_count;
    p.betti = betti;
    p.lambda_min = lambda_min;
    p.lambda = n;
    p.c = c;
    p.r = r;
    p.delta = delta;
    p.r1 = r / 20.0;
    p.r3 = r / 20.0;
    p.r2 = r - p.r1 - p.r3;
    p.delta1 = delta / 20.0;
    p.delta2 = delta - p.delta1;
    return p;
}

void ResourceParams::validate() const {
    if (n < 1 || k < 1 || k > n) {
        throw std::invalid_argument("need 1 <= k <= n");
    }
    if (!(r > 0 && r < 1)) {
        throw std::invalid_argument("relative error r must lie in (0,1)");
    }
    if (!(delta > 0 && delta < 1)) {
        throw std::invalid_argument("failure probability delta must lie in (0,1)");
    }
    if (!(r1 > 0 && r2 > 0 && r3 > 0) || std::abs(r1 + r2 + r3 - r) > 1e-12 * r) {
        throw std::invalid_argument("error budget r1 + r2 + r3 must equal r with positive parts");
    }
    if (!(delta1 > 0 && delta2 > 0) || std::abs(delta1 + delta2 - delta) > 1e-12 * delta) {
        throw std::invalid_argument("failure budget delta1 + delta2 must equal delta with positive parts");
    }
    if (edge_count < 0 || clique_count < 0 || betti < 0) {
        throw std::invalid_argument("counts must be nonnegative");
    }
    if (clique_count > 0 && std::log(clique_count) > log_choose(n, k) + 1e-9) {
        throw std::invalid_argument("clique count exceeds binom(n,k)");
    }
    if (betti > clique_count) {
        throw std::invalid_argument("betti number exceeds the clique count");
    }
    if (!(lambda > 0)) {
        throw std::invalid_argument("lambda must be positive");
    }
}

int64_t ceil_log2(int64_t x) {
    if (x <= 1) {
        return 0;
    }
    int64_t bits = 0;
    int64_t v = 1;
    while (v < x) {
        v <<= 1;
        bits++;
    }
    return bits;
}

int64_t dicke_prep_cost(int n, int c) {
    if (n < 2 || c < 1) {
        throw std::invalid_argument("dicke preparation needs n >= 2 and c >= 1");
    }
    int64_t n_seed = ceil_log2((int64_t)c * n);
    double per_round = 0.5 * n * (n_seed + 2) + ceil_log2(n);
    return (int64_t)std::ceil((n_seed + 1) * per_round);
}

DickeAltCost dicke_alt_cost(int n, int k) {
    if (k < 0 || k > n || n < 1) {
        throw std::invalid_argument("dicke alternative needs 0 <= k <= n");
    }
    DickeAltCost out;
    out.toffoli = (int64_t)(k + 2) * n + (int64_t)k * (4 * ceil_log2(n) - 1) + ceil_log2(k);
    double prob = 1.0;
    for (int i = 0; i < k; i++) {
        prob *= (double)(n - i) / n;
    }
    out.success_prob = prob;
    return out;
}

int64_t clique_detect_cost(int64_t edge_count, int k, bool reflect) {
    if (edge_count < 0 || k < 1) {
        throw std::invalid_argument("clique detection needs |E| >= 0 and k >= 1");
    }
    return (reflect ? 6 : 3) * edge_count + 2 * ceil_log2(k);
}

int64_t block_encoding_cost(int n, int64_t edge_count, int k) {
    if (n < 1 || edge_count < 0 || k < 1) {
        throw std::invalid_argument("block encoding needs n >= 1, |E| >= 0, k >= 1");
    }
    return 6 * edge_count + 5 * (int64_t)n + 11 * ceil_log2(n) + 2 * ceil_log2(k);
}

double kaiser_alpha_asymptotic(double delta) {
    if (!(delta > 0 && delta < 1)) {
        throw std::invalid_argument("delta must lie in (0,1)");
    }
    double target = std::log(1.0 / delta);
    double lo = kaiser_h_minimizer();
    if (kaiser_h(lo) >= target) {
        return lo;
    }
    double hi = 20.0;
    while (kaiser_h(hi) < target) {
        hi *= 2.0;
    }
    for (int it = 0; it < 200; it++) {
        double mid = 0.5 * (lo + hi);
        if (kaiser_h(mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

KaiserParams kaiser_params(double epsilon, double delta, KaiserMode mode) {
    if (!(epsilon > 0)) {
        throw std::invalid_argument("epsilon must be positive");
    }
    if (!(delta > 0 && delta < 1)) {
        throw std::invalid_argument("delta must lie in (0,1)");
    }
    KaiserParams out;
    out.alpha = mode == KaiserMode::kRefined ? kaiser_alpha_for_tail(delta) : kaiser_alpha_asymptotic(delta);
    out.steps = (int64_t)std::ceil(M_PI / epsilon * std::sqrt(1.0 + out.alpha * out.alpha));
    return out;
}

double chebyshev_degree_raw(double epsilon, double lambda_min, double lambda) {
    if (!(epsilon > 0)) {
        throw std::invalid_argument("epsilon must be positive");
    }
    if (!(lambda_min > 0) || !(lambda_min < lambda)) {
        throw std::invalid_argument("need 0 < lambda_min < lambda");
    }
    if (epsilon >= 1) {
        return 0.0;
    }
    double x = lambda_min / lambda;
    return std::acosh(1.0 / epsilon) / std::acosh(1.0 / std::sqrt(1.0 - x * x));
}

int64_t chebyshev_degree(double epsilon, double lambda_min, double lambda) {
    int64_t ell = (int64_t)std::ceil(chebyshev_degree_raw(epsilon, lambda_min, lambda));
    return ell % 2 == 0 ? ell : ell + 1;
}

double amp_amplification_rounds(const ResourceParams &p) {
    return M_PI / 4.0 / clique_amplitude(p);
}

AmpEstimationCost amp_estimation_cost(const ResourceParams &p) {
    p.validate();
    if (!(p.clique_count > 0)) {
        throw std::invalid_argument("clique count must be positive");
    }
    AmpEstimationCost out;
    out.steps = std::ceil(std::log(1.0 / p.delta1) / std::sqrt(p.r1) * amp_amplification_rounds(p));
    out.toffoli_per_step =
        (double)(2 * dicke_prep_cost(p.n, p.c) + clique_detect_cost((int64_t)p.edge_count, p.k, true));
    out.toffoli = out.steps * out.toffoli_per_step;
    return out;
}

double leading_order_toffoli(const ResourceParams &p) {
    double log2n = std::log2((double)p.n);
    double cl = p.clique_count;
    double prep = M_PI / 2.0 * std::exp(0.5 * (log_choose(p.n, p.k) - std::log(cl))) *
                  (6.0 * p.edge_count + p.n * log2n * log2n);
    double filter = p.n / p.lambda_min * std::log(4.0 * cl / (p.r3 * p.betti)) * (6.0 * p.edge_count + 5.0 * p.n);
    return std::log(1.0 / p.delta2) / p.r2 * std::sqrt(cl / p.betti) * (prep + filter);
}

double closed_form_toffoli(const ResourceParams &p) {
    double cl = p.clique_count;
    double bracket = M_PI / 2.0 * std::exp(0.5 * (log_choose(p.n, p.k) - std::log(cl))) +
                     p.n / p.lambda_min * std::log(4.0 * cl / (p.r * p.betti));
    return 6.0 * p.edge_count * std::log(1.0 / p.delta) / p.r * std::sqrt(cl / p.betti) * bracket;
}

ResourceEstimate total_toffoli(const ResourceParams &p, KaiserMode mode) {
    p.validate();
    if (!(p.betti > 0)) {
        throw std::invalid_argument("betti number must be positive for a relative-error target");
    }
    if (!(p.clique_count > 0)) {
        throw std::invalid_argument("clique count must be positive");
    }
    ResourceEstimate e;
    e.kaiser_mode = mode == KaiserMode::kRefined ? "refined" : "asymptotic";
    int64_t edges = (int64_t)p.edge_count;
    e.dicke_toffoli = (double)dicke_prep_cost(p.n, p.c);
    e.clique_reflect_toffoli = (double)clique_detect_cost(edges, p.k, true);
    e.block_encode_toffoli = (double)block_encoding_cost(p.n, edges, p.k);
    e.step_toffoli = 2.0 * e.dicke_toffoli + e.clique_reflect_toffoli;

    double a0 = clique_amplitude(p);
    e.amp_amp_steps = std::max(0.0, std::floor(M_PI / 4.0 / std::asin(std::min(1.0, a0)) - 0.5));

    double ratio = std::sqrt(p.betti / p.clique_count);
    double eps1 = 2.0 * std::sqrt(p.r1) / M_PI * a0;
    double eps2 = 0.5 * p.r2 * ratio;
    double eps3 = std::sqrt(p.r3) * ratio;
    e.amp_est_steps = (double)kaiser_params(eps1, p.delta1, mode).steps;
    e.overlap_est_steps = (double)kaiser_params(eps2, p.delta2, mode).steps;
    e.chebyshev_degree = chebyshev_degree(eps3, p.lambda_min, p.lambda);

    double initial = e.amp_amp_steps * e.step_toffoli;
    double per_round_prep = e.amp_amp_steps * e.step_toffoli;
    double per_round_filter = (double)e.chebyshev_degree * e.block_encode_toffoli;
    double estimation = e.amp_est_steps * e.step_toffoli;
    e.prep_toffoli = estimation + initial + 2.0 * e.overlap_est_steps * per_round_prep;
    e.filter_toffoli = 2.0 * e.overlap_est_steps * per_round_filter;
    e.total_toffoli = e.prep_toffoli + e.filter_toffoli;
    e.closed_form_toffoli = closed_form_toffoli(p);

    e.breakdown = {
        {"initial_amplitude_estimation", estimation},
        {"initial_amplification", initial},
        {"overlap_estimation_amplification", 2.0 * e.overlap_est_steps * per_round_prep},
        {"overlap_estimation_filtering", e.filter_toffoli},
        {"leading_order", leading_order_toffoli(p)},
    };
    return e;
}

ResourceEstimate total_toffoli_abs(const ResourceParams &p, double alpha_abs, KaiserMode mode) {
    if (!(p.betti > 0)) {
        throw std::invalid_argument("betti number must be positive");
    }
    if (!(alpha_abs > 0)) {
        throw std::invalid_argument("absolute accuracy must be positive");
    }
    ResourceParams q = p;
    q.r = alpha_abs / p.betti;
    if (q.r != p.r) {
        double scale = q.r / p.r;
        q.r1 = p.r1 * scale;
        q.r3 = p.r3 * scale;
        q.r2 = q.r - q.r1 - q.r3;
    }
    ResourceEstimate e = total_toffoli(q, mode);
    double cl = p.clique_count;
    double bracket = M_PI / 2.0 * std::exp(0.5 * (log_choose(p.n, p.k) - std::log(cl))) +
                     p.n / p.lambda_min * std::log(4.0 * cl / alpha_abs);
    e.closed_form_toffoli =
        6.0 * p.edge_count * std::log(1.0 / p.delta) / alpha_abs * std::sqrt(cl * p.betti) * bracket;
    return e;
}

ResourceParams kpartite_params(int m, int k, double r, double delta, int c) {
    if (m < 1 || k < 1) {
        throw std::invalid_argument("kpartite needs m >= 1 and k >= 1");
    }
    int n = m * k;
    double edges = (double)k * (k - 1) / 2.0 * m * m;
    double cliques = std::pow((double)m, k);
    double betti = std::pow((double)(m - 1), k);
    return ResourceParams::make(n, k, edges, cliques, betti, (double)m, r, delta, c);
}

std::vector<SweepRow> sweep_kpartite(int k, const std::vector<int> &n_list, double r, double delta, KaiserMode mode,
                                     std::vector<std::string> *warnings) {
    if (k < 1) {
        throw std::invalid_argument("sweep needs k >= 1");
    }
    std::vector<SweepRow> rows;
    for (int n : n_list) {
        if (n % k != 0 || n / k < 2) {
            if (warnings != nullptr) {
                warnings->push_back("skipping n=" + std::to_string(n) + ": need n = m*k with m >= 2");
            }
            continue;
        }
        int m = n / k;
        ResourceParams p = kpartite_params(m, k, r, delta);
        ResourceEstimate e = total_toffoli(p, mode);
        SweepRow row;
        row.n = n;
        row.k = k;
        row.m = m;
        row.toffoli_total = e.total_toffoli;
        row.toffoli_prep = e.prep_toffoli;
        row.toffoli_filter = e.filter_toffoli;
        row.binom = std::round(std::exp(log_choose(n, k)));
        if (row.binom < 9e15) {
            row.binom = binomial(n, k);
        }
        row.cliques = p.clique_count;
        rows.push_back(row);
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow> &rows) {
    std::string out = "n,k,m,toffoli_total,toffoli_prep,toffoli_filter,binom,cliques\n";
    for (const auto &r : rows) {
        out += std::to_string(r.n) + "," + std::to_string(r.k) + "," + std::to_string(r.m) + "," +
               format_double(r.toffoli_total) + "," + format_double(r.toffoli_prep) + "," +
               format_double(r.toffoli_filter) + "," + format_double(r.binom) + "," + format_double(r.cliques) + "\n";
    }
    return out;
}

double loglog_slope(const std::vector<SweepRow> &rows) {
    if (rows.size() < 2) {
        throw std::invalid_argument("slope needs at least two rows");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double count = (double)rows.size();
    for (const auto &r : rows) {
        double x = std::log((double)r.n);
        double y = std::log(r.toffoli_total);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

}  // namespace bettiforge
