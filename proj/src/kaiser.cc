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

#include "bettiforge/kaiser.h"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace bettiforge {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr int kTailPeriods = 4096;

double bessel_i0(double x) {
    return std::cyl_bessel_i(0.0, x);
}

// sin(u)^2 / (u sqrt(u^2 + a^2)), the tail integrand after x -> sqrt(u^2 + a^2).
double tail_integrand(double u, double a) {
    if (u < 1e-8) {
        return a > 0 ? u / a : 1.0;
    }
    double s = std::sin(u);
    return s * s / (u * std::sqrt(u * u + a * a));
}

// Integral of tail_integrand over [u0, infinity).
double tail_from(double u0, double a) {
    auto f = [a](double u) { return tail_integrand(u, a); };
    double total = 0.0;
    double j0 = std::ceil(u0 / M_PI);
    if (j0 * M_PI > u0) {
        total += gauss_kronrod<double, 31>::integrate(f, u0, j0 * M_PI, 8, 1e-13);
    }
    double last = j0 + kTailPeriods;
    for (double j = j0; j < last; j += 1.0) {
        total += gauss_kronrod<double, 15>::integrate(f, j * M_PI, (j + 1.0) * M_PI, 0, 0);
    }
    double u_end = last * M_PI;
    // sin^2 averages to 1/2 over whole periods.
    total += a > 1e-12 ? std::asinh(a / u_end) / (2.0 * a) : 1.0 / (2.0 * u_end);
    return total;
}

}  // namespace

double kaiser_transform(double x, double alpha) {
    double a = M_PI * alpha;
    double d = x * x - a * a;
    if (std::abs(d) < 1e-14) {
        return 1.0;
    }
    if (d > 0) {
        double u = std::sqrt(d);
        return std::sin(u) / u;
    }
    double v = std::sqrt(-d);
    return std::sinh(v) / v;
}

double kaiser_total_mass(double alpha) {
    if (alpha < 0) {
        throw std::invalid_argument("kaiser alpha must be nonnegative");
    }
    double a = M_PI * alpha;
    auto f = [a](double phi) {
        double i0 = bessel_i0(a * std::cos(phi));
        return i0 * i0 * std::cos(phi);
    };
    return M_PI * gauss_kronrod<double, 61>::integrate(f, 0.0, M_PI / 2, 15, 1e-14);
}

double kaiser_mass_above(double x_lo, double alpha) {
    if (alpha < 0) {
        throw std::invalid_argument("kaiser alpha must be nonnegative");
    }
    if (x_lo < 0) {
        return kaiser_total_mass(alpha) - kaiser_mass_above(-x_lo, alpha);
    }
    double a = M_PI * alpha;
    if (x_lo >= a) {
        return tail_from(std::sqrt(x_lo * x_lo - a * a), a);
    }
    auto f = [alpha](double x) {
        double s = kaiser_transform(x, alpha);
        return s * s;
    };
    double inner = gauss_kronrod<double, 61>::integrate(f, x_lo, a, 15, 1e-14);
    return inner + tail_from(0.0, a);
}

double kaiser_first_zero(double alpha) {
    return M_PI * std::sqrt(1.0 + alpha * alpha);
}

double kaiser_continuum_tail(double alpha) {
    return 2.0 * kaiser_mass_above(kaiser_first_zero(alpha), alpha) / kaiser_total_mass(alpha);
}

double kaiser_tail_estimate(double alpha) {
    return 8.0 * std::log(2.0 * alpha) * std::sqrt(alpha) * std::exp(-2.0 * M_PI * alpha);
}

namespace {

double solve_alpha_for_tail(double delta) {
    if (kaiser_continuum_tail(0.0) <= delta) {
        return 0.0;
    }
    double lo = 0.0;
    double hi = 1.0;
    while (kaiser_continuum_tail(hi) > delta) {
        lo = hi;
        hi *= 2.0;
        if (hi > 64.0) {
            throw std::invalid_argument("tail probability too small to resolve");
        }
    }
    for (int it = 0; it < 60 && hi - lo > 1e-12 * hi; it++) {
        double mid = 0.5 * (lo + hi);
        if (kaiser_continuum_tail(mid) > delta) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

}  // namespace

double kaiser_alpha_for_tail(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("tail probability must lie in (0,1)");
    }
    static std::mutex mutex;
    static std::map<double, double> cache;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(delta);
        if (it != cache.end()) {
            return it->second;
        }
    }
    double alpha = solve_alpha_for_tail(delta);
    std::lock_guard<std::mutex> lock(mutex);
    cache[delta] = alpha;
    return alpha;
}

KaiserKernel kaiser_kernel(int N, double alpha) {
    if (N < 0 || alpha < 0) {
        throw std::invalid_argument("kaiser kernel needs N >= 0 and alpha >= 0");
    }
    KaiserKernel k;
    k.N = N;
    k.alpha = alpha;
    k.weights.resize(2 * N + 1);
    double peak = bessel_i0(M_PI * alpha);
    for (int m = -N; m <= N; m++) {
        double ratio = N == 0 ? 0.0 : (double)m / N;
        k.weights[m + N] = bessel_i0(M_PI * alpha * std::sqrt(std::max(0.0, 1.0 - ratio * ratio))) / peak;
    }
    return k;
}

KaiserPhaseDistribution::KaiserPhaseDistribution(int N, double alpha) : N_(N), alpha_(alpha) {
    if (N < 1 || alpha < 0) {
        throw std::invalid_argument("phase distribution needs N >= 1 and alpha >= 0");
    }
    mass_ = kaiser_total_mass(alpha) - 2.0 * kaiser_mass_above(N * M_PI, alpha);
}

double KaiserPhaseDistribution::density(double dtheta) const {
    if (std::abs(dtheta) > M_PI) {
        return 0.0;
    }
    double s = kaiser_transform(N_ * dtheta, alpha_);
    return N_ * s * s / mass_;
}

double KaiserPhaseDistribution::tail_mass(double width) const {
    if (width <= 0) {
        return 1.0;
    }
    if (width >= M_PI) {
        return 0.0;
    }
    double beyond = kaiser_mass_above(N_ * width, alpha_) - kaiser_mass_above(N_ * M_PI, alpha_);
    return 2.0 * beyond / mass_;
}

double KaiserPhaseDistribution::first_zero() const {
    return kaiser_first_zero(alpha_) / N_;
}

double KaiserPhaseDistribution::normalization() const {
    double peak = bessel_i0(M_PI * alpha_);
    return mass_ / (N_ * peak * peak);
}

double KaiserPhaseDistribution::normalization_asymptotic() const {
    return M_PI / (2.0 * N_ * std::sqrt(alpha_));
}

}  // namespace bettiforge
