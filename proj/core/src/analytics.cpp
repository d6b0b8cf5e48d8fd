// Copyright 2026 The nestlab Authors
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

#include "nestlab/analytics.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "nestlab/error.hpp"

namespace nestlab {

std::optional<double> published_prefactor(int d, const std::string &label) {
    for (const auto &row : kPublishedPrefactors) {
        if (row.d != d) {
            continue;
        }
        if (label == "X") {
            return row.a_x;
        }
        if (label == "Z") {
            return row.a_z;
        }
        if (label == "X1" || label == "Z2") {
            return row.a_x1;
        }
        if (label == "Z1" || label == "X2") {
            return row.a_z1;
        }
    }
    return std::nullopt;
}

std::optional<double> eps_coeff_for_class(const std::string &label) {
    if (label == "Z1" || label == "X2") {
        return kEpsCoeffWide;
    }
    if (label == "X1" || label == "Z2") {
        return kEpsCoeffNarrow;
    }
    return std::nullopt;
}

std::uint64_t binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) {
        throw Error(ErrorCode::kInvalidParameter, "binomial arguments out of range");
    }
    k = std::min(k, n - k);
    std::uint64_t acc = 1;
    for (int i = 1; i <= k; ++i) {
        // acc * (n - k + i) is divisible by i; cancel first to delay overflow.
        const std::uint64_t g = std::gcd(acc, static_cast<std::uint64_t>(i));
        const std::uint64_t factor = static_cast<std::uint64_t>(n - k + i) / (static_cast<std::uint64_t>(i) / g);
        acc /= g;
        if (acc > std::numeric_limits<std::uint64_t>::max() / factor) {
            throw Error(ErrorCode::kInvalidParameter, "binomial overflows 64 bits");
        }
        acc *= factor;
    }
    return acc;
}

double log_binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) {
        throw Error(ErrorCode::kInvalidParameter, "binomial arguments out of range");
    }
    if (n <= 60) {
        return std::log(static_cast<double>(binomial(n, k)));
    }
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

namespace {

void require_even(int d) {
    if (d < 2 || d % 2 != 0) {
        throw Error(ErrorCode::kUnsupported, "formula defined for even d >= 2 only, got " + std::to_string(d));
    }
}

}  // namespace

double cyclic_asymptote(int d, double eps) {
    require_even(d);
    if (!(eps >= 0.0 && eps < 1.0)) {
        throw Error(ErrorCode::kInvalidParameter, "eps must lie in [0, 1)");
    }
    if (eps == 0.0) {
        return 0.0;
    }
    if (d <= 60) {
        return 0.5 * d * static_cast<double>(binomial(d, d / 2)) * std::pow(eps, d / 2);
    }
    return std::exp(std::log(0.5 * d) + log_binomial(d, d / 2) + (d / 2) * std::log(eps));
}

AsymptoteSpec cyclic_prefactor(int d, double eps_coeff) {
    require_even(d);
    if (!(eps_coeff > 0.0)) {
        throw Error(ErrorCode::kInvalidParameter, "eps coefficient must be positive");
    }
    const double a = std::exp(std::log(0.5 * d) + log_binomial(d, d / 2) + (d / 2) * std::log(eps_coeff));
    return {d, eps_coeff, a};
}

double power_law_curve(double a, int d, double p) {
    if (d < 1) {
        throw Error(ErrorCode::kInvalidParameter, "d must be >= 1");
    }
    if (!(p >= 0.0 && p < 1.0)) {
        throw Error(ErrorCode::kInvalidParameter, "p must lie in [0, 1)");
    }
    return a * std::pow(p, d / 2.0);
}

double path_failure_bound(int m, double eps) {
    if (m < 1) {
        throw Error(ErrorCode::kInvalidParameter, "m must be >= 1");
    }
    if (!(eps >= 0.0 && eps <= 0.5)) {
        throw Error(ErrorCode::kInvalidParameter, "eps must lie in [0, 0.5]");
    }
    return std::ldexp(std::pow(eps, (m + 1) / 2), m);
}

BoundSpec bound_spec(int d, double eps) {
    require_even(d);
    if (!(eps >= 0.0)) {
        throw Error(ErrorCode::kInvalidParameter, "eps must be non-negative");
    }
    BoundSpec out{d, eps, 0.0};
    if (eps > 0.0) {
        out.b = std::exp(std::log(44.0 * d / 121.0) + d * std::log(22.0) + (d / 2) * std::log(eps));
    }
    return out;
}

double total_upper_bound(int d, double eps) {
    if (eps >= 1.0 / 484.0) {
        throw Error(ErrorCode::kDivergence, "series diverges for eps >= 1/484 (got " + std::to_string(eps) + ")");
    }
    const auto spec = bound_spec(d, eps);
    const double x = 484.0 * eps;
    return spec.b * (1.0 + x / (1.0 - x));
}

}  // namespace nestlab
