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

#include "bettiforge/filter.h"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "bettiforge/homology.h"
#include "bettiforge/resources.h"

namespace bettiforge {

double chebyshev_t(int64_t ell, double x) {
    if (ell < 0) {
        throw std::invalid_argument("Chebyshev degree must be nonnegative");
    }
    if (std::abs(x) <= 1.0) {
        return std::cos((double)ell * std::acos(x));
    }
    double v = std::cosh((double)ell * std::acosh(std::abs(x)));
    return (x < 0 && ell % 2 == 1) ? -v : v;
}

double chebyshev_filter_beta(int64_t ell, double epsilon) {
    if (ell <= 0) {
        throw std::invalid_argument("filter degree must be positive");
    }
    if (!(epsilon > 0 && epsilon <= 1)) {
        throw std::invalid_argument("filter epsilon must lie in (0, 1]");
    }
    return std::cosh(std::acosh(1.0 / epsilon) / (double)ell);
}

double chebyshev_filter_response(int64_t ell, double epsilon, double phi) {
    double beta = chebyshev_filter_beta(ell, epsilon);
    return epsilon * chebyshev_t(ell, beta * std::cos(phi));
}

double chebyshev_filter_width(int64_t ell, double epsilon) {
    return std::acos(1.0 / chebyshev_filter_beta(ell, epsilon));
}

std::vector<double> chebyshev_filter_coefficients(int64_t ell, double epsilon) {
    chebyshev_filter_beta(ell, epsilon);
    int64_t samples = 2 * ell + 2;
    std::vector<double> values(samples);
    for (int64_t m = 0; m < samples; m++) {
        values[m] = chebyshev_filter_response(ell, epsilon, 2.0 * M_PI * (double)m / (double)samples);
    }
    std::vector<double> out(2 * ell + 1);
    for (int64_t j = -ell; j <= ell; j++) {
        double acc = 0.0;
        for (int64_t m = 0; m < samples; m++) {
            acc += values[m] * std::cos(2.0 * M_PI * (double)(j * m) / (double)samples);
        }
        out[j + ell] = acc / (double)samples;
    }
    return out;
}

namespace {

double filter_factor(int64_t ell, double epsilon, double mu, double lambda) {
    if (ell == 0) {
        return 1.0;
    }
    double c = std::sqrt(std::max(0.0, 1.0 - mu / (lambda * lambda)));
    return epsilon * chebyshev_t(ell, chebyshev_filter_beta(ell, epsilon) * c);
}

}  // namespace

FilterResult apply_filter_to_state(const Graph &g, int k, int64_t ell, double epsilon) {
    if (ell < 0) {
        throw std::invalid_argument("filter degree must be nonnegative");
    }
    if (!(epsilon > 0 && epsilon <= 1)) {
        throw std::invalid_argument("filter epsilon must lie in (0, 1]");
    }
    CliqueComplex cx = build_clique_complex(g, k);
    int64_t d = (int64_t)cx.level(k).size();
    if (d == 0) {
        throw std::invalid_argument("graph has no k-cliques");
    }
    if (d > kMaxDenseDimension) {
        throw DeskScaleError("filter simulation limited to " + std::to_string(kMaxDenseDimension) + " cliques");
    }
    Eigen::MatrixXd lap = laplacian(cx, k).cast<double>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);

    FilterResult out;
    out.ell = ell;
    out.epsilon = epsilon;
    out.lambda = g.n();
    out.clique_count = d;
    double top = solver.eigenvalues().maxCoeff();
    for (int64_t i = 0; i < d; i++) {
        double mu = solver.eigenvalues()(i);
        double f = is_zero_eigenvalue(mu, top) ? 1.0 : filter_factor(ell, epsilon, mu, out.lambda);
        if (is_zero_eigenvalue(mu, top)) {
            out.betti++;
        } else {
            out.max_suppression = std::max(out.max_suppression, std::abs(f));
        }
        out.eigenvalues.push_back(mu);
        out.factors.push_back(f);
        out.a2 += f * f / (double)d;
    }
    out.target = (double)out.betti / (double)d;
    return out;
}

int64_t filter_degree_for_graph(const Graph &g, int k, double epsilon) {
    SpectralSummary s = spectrum(g, k);
    if (!s.has_gap) {
        return 0;
    }
    return chebyshev_degree(epsilon, std::sqrt(s.gap), (double)g.n());
}

}  // namespace bettiforge
