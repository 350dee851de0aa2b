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

#include <cmath>

#include "bettiforge/homology.h"
#include "bettiforge/kaiser.h"
#include "bettiforge/resources.h"

namespace bettiforge {
namespace {

TEST(Resources, CeilLog2) {
    for (int64_t x = 1; x < 5000; x++) {
        int64_t want = 0;
        while ((int64_t{1} << want) < x) want++;
        EXPECT_EQ(ceil_log2(x), want) << x;
    }
}

TEST(Resources, ChebyshevDegreeIsSmallestEvenSufficientDegree) {
    for (double eps : {0.3, 1e-2, 1e-4, 1e-8}) {
        for (double ratio : {0.02, 0.1, 0.35, 0.8}) {
            double x0 = 1.0 / std::sqrt(1.0 - ratio * ratio);
            int64_t want = 0;
            // T_l(x0) by the three-term recurrence
            double prev = 1.0, cur = x0;
            for (int64_t l = 1;; l++) {
                if (l % 2 == 0 && cur >= 1.0 / eps * (1 - 1e-12)) {
                    want = l;
                    break;
                }
                double next = 2 * x0 * cur - prev;
                prev = cur;
                cur = next;
            }
            EXPECT_EQ(chebyshev_degree(eps, ratio, 1.0), want) << eps << " " << ratio;
        }
    }
}

TEST(Resources, KaiserStepsFormula) {
    for (double eps : {0.1, 0.01, 0.001}) {
        for (double delta : {0.2, 0.05, 1e-4}) {
            KaiserParams kp = kaiser_params(eps, delta);
            EXPECT_EQ(kp.steps, (int64_t)std::ceil(M_PI / eps * std::sqrt(1 + kp.alpha * kp.alpha)));
            KaiserParams refined = kaiser_params(eps, delta, KaiserMode::kRefined);
            if (refined.alpha > 0) {
                EXPECT_NEAR(kaiser_continuum_tail(refined.alpha), delta, 1e-6 * delta);
            } else {
                EXPECT_LE(kaiser_continuum_tail(0.0), delta);
            }
        }
    }
    EXPECT_LT(kaiser_params(0.01, 0.05).alpha, kaiser_params(0.01, 0.001).alpha);
}

TEST(Resources, KpartiteParamsMatchGraphOracle) {
    for (int m = 2; m <= 3; m++) {
        for (int k = 2; k <= 3; k++) {
            Graph g = gen_kpartite(m, k);
            ResourceParams p = kpartite_params(m, k, 0.05, 0.05);
            EXPECT_EQ(p.n, g.n());
            EXPECT_DOUBLE_EQ(p.edge_count, (double)g.edge_count());
            EXPECT_DOUBLE_EQ(p.clique_count, (double)enumerate_cliques(g, k).size());
            EXPECT_DOUBLE_EQ(p.betti, (double)betti_exact(g, k));
            EXPECT_NEAR(p.lambda_min, spectrum(g, k).gap, 1e-9);
        }
    }
}

TEST(Resources, TotalIsSumOfParts) {
    ResourceEstimate e = total_toffoli(kpartite_params(8, 4, 0.05, 0.05));
    EXPECT_DOUBLE_EQ(e.total_toffoli, e.prep_toffoli + e.filter_toffoli);
    double parts = e.breakdown.at("initial_amplitude_estimation") + e.breakdown.at("initial_amplification") +
                   e.breakdown.at("overlap_estimation_amplification") + e.breakdown.at("overlap_estimation_filtering");
    EXPECT_NEAR(parts, e.total_toffoli, 1e-6 * e.total_toffoli);
    EXPECT_GT(e.closed_form_toffoli, 0);
}

TEST(Resources, PrecisionAndConfidenceCostMore) {
    ResourceParams loose = kpartite_params(6, 4, 0.1, 0.1);
    ResourceParams tight = kpartite_params(6, 4, 0.01, 0.01);
    EXPECT_LT(total_toffoli(loose).total_toffoli, total_toffoli(tight).total_toffoli);
}

TEST(Resources, SweepMonotoneBeyondTwoPerCluster) {
    for (int k : {4, 8}) {
        std::vector<int> ns;
        for (int m = 3; m <= 32; m++) ns.push_back(m * k);
        auto rows = sweep_kpartite(k, ns, 0.05, 0.05, KaiserMode::kAsymptotic);
        ASSERT_EQ(rows.size(), ns.size());
        for (size_t i = 1; i < rows.size(); i++) EXPECT_GT(rows[i].toffoli_total, rows[i - 1].toffoli_total);
    }
}

TEST(Resources, SweepSkipsNonMultiples) {
    std::vector<std::string> warnings;
    auto rows = sweep_kpartite(4, {8, 9, 12, 4}, 0.05, 0.05, KaiserMode::kAsymptotic, &warnings);
    EXPECT_EQ(rows.size(), 2u);
    EXPECT_EQ(warnings.size(), 2u);
    std::string csv = sweep_csv(rows);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,k,m,toffoli_total,toffoli_prep,toffoli_filter,binom,cliques");
}

TEST(Resources, ValidationErrors) {
    EXPECT_THROW(kaiser_params(0.0, 0.1), std::invalid_argument);
    EXPECT_THROW(kaiser_params(0.1, 1.0), std::invalid_argument);
    EXPECT_THROW(chebyshev_degree(0.1, 2.0, 1.0), std::invalid_argument);
    ResourceParams p = kpartite_params(4, 3, 0.05, 0.05);
    p.r = -1;
    EXPECT_THROW(total_toffoli(p), std::invalid_argument);
}

}  // namespace
}  // namespace bettiforge
