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

#include <complex>

#include "bettiforge/filter.h"
#include "bettiforge/homology.h"

namespace bettiforge {
namespace {

TEST(Filter, ChebyshevAgainstTrigForms) {
    for (int64_t l = 0; l <= 30; l++) {
        for (double x : {-0.9, -0.2, 0.0, 0.5, 1.0}) {
            EXPECT_NEAR(chebyshev_t(l, x), std::cos(l * std::acos(x)), 1e-10);
        }
        for (double x : {1.01, 1.5, 3.0}) {
            double want = std::cosh(l * std::acosh(x));
            EXPECT_NEAR(chebyshev_t(l, x) / want, 1.0, 1e-10);
            EXPECT_NEAR(chebyshev_t(l, -x) / want, l % 2 ? -1.0 : 1.0, 1e-10);
        }
    }
}

TEST(Filter, ResponseNormalizationAndWidth) {
    for (int64_t l : {4, 10, 40}) {
        for (double eps : {0.1, 1e-3}) {
            EXPECT_NEAR(chebyshev_filter_response(l, eps, 0.0), 1.0, 1e-10);
            double w = chebyshev_filter_width(l, eps);
            EXPECT_NEAR(chebyshev_filter_response(l, eps, w), eps, 1e-10);
            for (double phi = w; phi <= M_PI / 2; phi += 0.01) {
                EXPECT_LE(std::abs(chebyshev_filter_response(l, eps, phi)), eps * (1 + 1e-10));
            }
        }
    }
}

TEST(Filter, CoefficientsReconstructResponse) {
    for (int64_t l : {2, 8, 15}) {
        auto w = chebyshev_filter_coefficients(l, 1e-2);
        ASSERT_EQ((int64_t)w.size(), 2 * l + 1);
        for (double phi : {0.0, 0.3, 1.1, 2.5, -0.7}) {
            std::complex<double> sum = 0;
            for (int64_t j = -l; j <= l; j++) sum += w[j + l] * std::exp(std::complex<double>(0, j * phi));
            EXPECT_NEAR(sum.real(), chebyshev_filter_response(l, 1e-2, phi), 1e-10);
            EXPECT_NEAR(sum.imag(), 0.0, 1e-10);
        }
    }
}

TEST(Filter, ProjectsOntoHarmonicSubspace) {
    struct Case {
        Graph g;
        int k;
    };
    std::vector<Case> cases = {{gen_kpartite(2, 2), 2}, {gen_kpartite(3, 2), 2}, {gen_kpartite(2, 3), 3}};
    for (const auto &c : cases) {
        int64_t ell = filter_degree_for_graph(c.g, c.k, 1e-4);
        FilterResult f = apply_filter_to_state(c.g, c.k, ell, 1e-4);
        double want = (double)betti_exact(c.g, c.k) / (double)enumerate_cliques(c.g, c.k).size();
        EXPECT_NEAR(f.a2, want, 1e-7);
        EXPECT_LE(f.max_suppression, 1e-4);
        EXPECT_EQ(ell % 2, 0);
    }
}

TEST(Filter, NoNonzeroModes) {
    Graph g(4, {});
    EXPECT_EQ(filter_degree_for_graph(g, 1, 1e-3), 0);
    FilterResult f = apply_filter_to_state(g, 1, 0, 1e-3);
    EXPECT_NEAR(f.a2, 1.0, 1e-12);
}

TEST(Filter, Errors) {
    EXPECT_THROW(chebyshev_filter_beta(0, 0.1), std::invalid_argument);
    EXPECT_THROW(apply_filter_to_state(gen_kpartite(2, 2), 2, 4, 0.0), std::invalid_argument);
    EXPECT_THROW(apply_filter_to_state(gen_kpartite(2, 2), 4, 4, 0.1), std::invalid_argument);
}

}  // namespace
}  // namespace bettiforge
