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

#ifndef NESTLAB_ANALYTICS_HPP
#define NESTLAB_ANALYTICS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace nestlab {

/// Stick probability per unit p in the two cyclic minimum-path classes.
inline constexpr double kEpsCoeffWide = 4.8;    // Z1 and X2
inline constexpr double kEpsCoeffNarrow = 3.2;  // X1 and Z2

/// Paths leave a node along at most 11 new sticks (12 per node, minus the
/// one arrived on).
inline constexpr int kBranching = 11;
inline constexpr int kMaxSticksPerNode = 12;

/// Published low-p prefactors A of A p^(d/2), per distance.
struct PrefactorRow {
    int d;
    double a_x;
    double a_z;
    double a_x1;
    double a_z1;
};

inline constexpr std::array<PrefactorRow, 4> kPublishedPrefactors = {{
    {4, 3.97e2, 4.70e2, 1.23e2, 2.76e2},
    {6, 1.67e4, 2.09e4, 1.97e3, 6.64e3},
    {8, 7.02e5, 9.34e5, 2.94e4, 1.49e5},
    {10, 2.93e7, 4.18e7, 4.23e5, 3.21e6},
}};

/// Published prefactor for a class label (X, Z, X1, Z1, X2, Z2). X2 shares
/// Z1's value and Z2 shares X1's by symmetry.
std::optional<double> published_prefactor(int d, const std::string &label);

/// eps per unit p for a cyclic class label, if it has one.
std::optional<double> eps_coeff_for_class(const std::string &label);

struct AsymptoteSpec {
    int d = 4;
    double eps_coeff = kEpsCoeffWide;
    double prefactor = 0.0;
};

struct BoundSpec {
    int d = 4;
    double eps = 0.0;
    double b = 0.0;
};

/// C(n, k) exactly; throws kInvalidParameter if it does not fit in 64 bits.
std::uint64_t binomial(int n, int k);
/// ln C(n, k), for any size.
double log_binomial(int n, int k);

/// (1/2) d C(d, d/2) eps^(d/2). Even d only (kUnsupported otherwise).
double cyclic_asymptote(int d, double eps);
/// Prefactor of p^(d/2) in cyclic_asymptote(d, c p).
AsymptoteSpec cyclic_prefactor(int d, double eps_coeff);

double power_law_curve(double a, int d, double p);

/// 2^m eps^ceil(m/2).
double path_failure_bound(int m, double eps);

/// 44 d 22^d / 121 eps^(d/2).
BoundSpec bound_spec(int d, double eps);
/// B (1 + 484 eps / (1 - 484 eps)); kDivergence for eps >= 1/484.
double total_upper_bound(int d, double eps);

}  // namespace nestlab

#endif  // NESTLAB_ANALYTICS_HPP
