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

#ifndef BETTIFORGE_RESOURCES_H
#define BETTIFORGE_RESOURCES_H

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace bettiforge {

// Counts that can exceed 2^63 (clique counts, totals) are carried as doubles
// holding integral values.
struct ResourceParams {
    int n = 0;
    int k = 0;
    double edge_count = 0;
    double clique_count = 0;
    double betti = 0;
    double lambda_min = 0;
    double lambda = 0;  // block-encoding normalization, n unless overridden
    int c = 8;
    double r = 0.05;
    double delta = 0.05;
    double r1 = 0, r2 = 0, r3 = 0;
    double delta1 = 0, delta2 = 0;

    // Splits r and delta with the default budget: r1 = r3 = r/20,
    // r2 = 0.9 r, delta1 = delta/20, delta2 = 0.95 delta.
    static ResourceParams make(int n, int k, double edge_count, double clique_count, double betti, double lambda_min,
                               double r, double delta, int c = 8);
    void validate() const;
};

enum class KaiserMode { kAsymptotic, kRefined };

struct KaiserParams {
    double alpha = 0;
    int64_t steps = 0;
};

struct ResourceEstimate {
    double dicke_toffoli = 0;
    double clique_reflect_toffoli = 0;
    double block_encode_toffoli = 0;
    double step_toffoli = 0;  // one amplitude-amplification iteration
    int64_t chebyshev_degree = 0;
    double amp_est_steps = 0;      // initial estimation of the clique amplitude
    double amp_amp_steps = 0;      // amplification rounds for the initial state
    double overlap_est_steps = 0;  // final estimation of the filtered overlap
    double prep_toffoli = 0;
    double filter_toffoli = 0;
    double total_toffoli = 0;
    double closed_form_toffoli = 0;  // simplified T(G, k, r, delta)
    std::string kaiser_mode;
    std::map<std::string, double> breakdown;
};

int64_t ceil_log2(int64_t x);

int64_t dicke_prep_cost(int n, int c);

struct DickeAltCost {
    int64_t toffoli = 0;
    double success_prob = 0;
};
DickeAltCost dicke_alt_cost(int n, int k);

int64_t clique_detect_cost(int64_t edge_count, int k, bool reflect);
int64_t block_encoding_cost(int n, int64_t edge_count, int k);

double kaiser_alpha_asymptotic(double delta);
KaiserParams kaiser_params(double epsilon, double delta, KaiserMode mode = KaiserMode::kAsymptotic);

double chebyshev_degree_raw(double epsilon, double lambda_min, double lambda);
int64_t chebyshev_degree(double epsilon, double lambda_min, double lambda);

struct AmpEstimationCost {
    double steps = 0;
    double toffoli_per_step = 0;
    double toffoli = 0;
};
AmpEstimationCost amp_estimation_cost(const ResourceParams &p);
// (pi/4) sqrt(binom(n,k) / |Cl_k|), without rounding.
double amp_amplification_rounds(const ResourceParams &p);

ResourceEstimate total_toffoli(const ResourceParams &p, KaiserMode mode = KaiserMode::kAsymptotic);
ResourceEstimate total_toffoli_abs(const ResourceParams &p, double alpha_abs,
                                   KaiserMode mode = KaiserMode::kAsymptotic);

// Leading-order cost with separate r2, r3 and delta2.
double leading_order_toffoli(const ResourceParams &p);
// Simplified closed form with r2 = r3 = r and delta2 = delta.
double closed_form_toffoli(const ResourceParams &p);

ResourceParams kpartite_params(int m, int k, double r, double delta, int c = 8);

struct SweepRow {
    int n = 0;
    int k = 0;
    int m = 0;
    double toffoli_total = 0;
    double toffoli_prep = 0;
    double toffoli_filter = 0;
    double binom = 0;
    double cliques = 0;
};

std::vector<SweepRow> sweep_kpartite(int k, const std::vector<int> &n_list, double r, double delta, KaiserMode mode,
                                     std::vector<std::string> *warnings = nullptr);
std::string sweep_csv(const std::vector<SweepRow> &rows);
// Least-squares slope of log(toffoli_total) against log(n).
double loglog_slope(const std::vector<SweepRow> &rows);

}  // namespace bettiforge

#endif
