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

#ifndef BETTIFORGE_KAISER_H
#define BETTIFORGE_KAISER_H

#include <vector>

namespace bettiforge {

// Fourier transform of the continuous Kaiser window, in the scaled variable
// x = N * (phase error): sin(sqrt(x^2 - (pi alpha)^2)) / sqrt(x^2 - (pi alpha)^2).
double kaiser_transform(double x, double alpha);

// Integral of kaiser_transform^2 over the real line.
double kaiser_total_mass(double alpha);

// Integral of kaiser_transform^2 over [x_lo, infinity).
double kaiser_mass_above(double x_lo, double alpha);

// Position of the first zero in the scaled variable: pi * sqrt(1 + alpha^2).
double kaiser_first_zero(double alpha);

// Probability mass beyond the first zero on both sides, in the N -> infinity limit.
double kaiser_continuum_tail(double alpha);

// Asymptotic tail estimate 8 ln(2 alpha) sqrt(alpha) exp(-2 pi alpha).
double kaiser_tail_estimate(double alpha);

// Smallest alpha whose continuum tail is at most delta.
double kaiser_alpha_for_tail(double delta);

struct KaiserKernel {
    int N = 0;
    double alpha = 0.0;
    std::vector<double> weights;  // index m + N for m in [-N, N]
};

KaiserKernel kaiser_kernel(int N, double alpha);

// Phase-error density on [-pi, pi] for a window with N steps.
class KaiserPhaseDistribution {
   public:
    KaiserPhaseDistribution(int N, double alpha);

    double density(double dtheta) const;
    // Probability that |phase error| exceeds width.
    double tail_mass(double width) const;
    double first_zero() const;
    // Integral of (kernel / I0(pi alpha))^2 over the phase error.
    double normalization() const;
    // Asymptotic normalization pi / (2 N sqrt(alpha)).
    double normalization_asymptotic() const;

    int N() const {
        return N_;
    }
    double alpha() const {
        return alpha_;
    }

   private:
    int N_;
    double alpha_;
    double mass_;  // integral of the squared transform over |x| <= N pi
};

}  // namespace bettiforge

#endif
