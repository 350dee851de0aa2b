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

#ifndef BETTIFORGE_FILTER_H
#define BETTIFORGE_FILTER_H

#include <cstdint>
#include <vector>

#include "bettiforge/graph.h"

namespace bettiforge {

// T_l(x) for any real x.
double chebyshev_t(int64_t ell, double x);

// beta = cosh(acosh(1/epsilon) / ell).
double chebyshev_filter_beta(int64_t ell, double epsilon);

// epsilon * T_l(beta cos(phi)); equals 1 at phi = 0.
double chebyshev_filter_response(int64_t ell, double epsilon, double phi);

// Half-width phi_gap with beta cos(phi_gap) = 1.
double chebyshev_filter_width(int64_t ell, double epsilon);

// Coefficients w_j, j = -ell..ell (index j + ell), of the filter as a
// trigonometric polynomial in phi.
std::vector<double> chebyshev_filter_coefficients(int64_t ell, double epsilon);

struct FilterResult {
    int64_t ell = 0;
    double epsilon = 0;
    double lambda = 0;
    int64_t clique_count = 0;
    int64_t betti = 0;  // zero modes of the Laplacian
    double a2 = 0;      // Tr(F^2 rho) for the maximally mixed clique state rho
    double target = 0;  // betti / clique_count
    double max_suppression = 0;  // largest |factor| over nonzero modes
    std::vector<double> eigenvalues;  // Laplacian spectrum on Cl_k
    std::vector<double> factors;      // filter factor per eigenvalue
};

// Filters the maximally mixed state on Cl_k(G) (a purified clique register)
// eigencomponent by eigencomponent. A Laplacian eigenvalue mu sits on walk phases with
// cos(phi) = sqrt(1 - mu / lambda^2), lambda = n.
FilterResult apply_filter_to_state(const Graph &g, int k, int64_t ell, double epsilon);

// Even degree that pushes every nonzero mode below epsilon, from the gap
// of the Dirac operator (square root of the Laplacian gap). Zero when the
// Laplacian has no nonzero eigenvalue.
int64_t filter_degree_for_graph(const Graph &g, int k, double epsilon);

}  // namespace bettiforge

#endif
