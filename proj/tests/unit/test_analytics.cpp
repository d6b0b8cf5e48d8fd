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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "nestlab/analytics.hpp"
#include "nestlab/error.hpp"

namespace nestlab {
namespace {

// Pascal's triangle in long double, independent of the library's binomial.
long double pascal(int n, int k) {
    std::vector<long double> row{1.0L};
    for (int r = 1; r <= n; ++r) {
        std::vector<long double> next(static_cast<std::size_t>(r) + 1, 1.0L);
        for (int c = 1; c < r; ++c) {
            next[static_cast<std::size_t>(c)] = row[static_cast<std::size_t>(c) - 1] + row[static_cast<std::size_t>(c)];
        }
        row = std::move(next);
    }
    return row[static_cast<std::size_t>(k)];
}

long double oracle_prefactor(int d, long double c) {
    return 0.5L * d * pascal(d, d / 2) * std::pow(c, static_cast<long double>(d / 2));
}

TEST(Binomial, SmallValues) {
    EXPECT_EQ(binomial(4, 2), 6u);
    EXPECT_EQ(binomial(10, 5), 252u);
    EXPECT_EQ(binomial(0, 0), 1u);
    EXPECT_EQ(binomial(7, 7), 1u);
    EXPECT_EQ(binomial(62, 31), 465428353255261088u);
    EXPECT_THROW(binomial(70, 35), Error);
    EXPECT_THROW(binomial(3, 4), Error);
    for (int n = 0; n <= 40; ++n) {
        for (int k = 0; k <= n; ++k) {
            EXPECT_EQ(static_cast<long double>(binomial(n, k)), pascal(n, k));
        }
    }
}

TEST(Binomial, LogForm) {
    EXPECT_NEAR(log_binomial(10, 5), std::log(252.0), 1e-12);
    EXPECT_NEAR(log_binomial(200, 100), static_cast<double>(std::log(pascal(200, 100))), 1e-9);
}

TEST(CyclicAsymptote, Values) {
    // d = 4: (1/2) * 4 * 6 * eps^2 = 12 eps^2.
    EXPECT_NEAR(cyclic_asymptote(4, 0.01), 12e-4, 1e-15);
    EXPECT_DOUBLE_EQ(cyclic_asymptote(4, 0.0), 0.0);
    EXPECT_NEAR(cyclic_prefactor(4, 4.8).prefactor, 12 * 4.8 * 4.8, 1e-9);
    try {
        cyclic_asymptote(3, 0.01);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kUnsupported);
    }
    EXPECT_THROW(cyclic_asymptote(4, 1.0), Error);
}

TEST(CyclicAsymptote, ReproducesPublishedCyclicPrefactors) {
    for (const auto &row : kPublishedPrefactors) {
        const double x1 = cyclic_prefactor(row.d, kEpsCoeffNarrow).prefactor;
        const double z1 = cyclic_prefactor(row.d, kEpsCoeffWide).prefactor;
        EXPECT_NEAR(x1, static_cast<double>(oracle_prefactor(row.d, 3.2L)), 1e-9 * x1);
        EXPECT_NEAR(z1, static_cast<double>(oracle_prefactor(row.d, 4.8L)), 1e-9 * z1);
        EXPECT_LE(std::abs(x1 - row.a_x1) / row.a_x1, 5e-3) << row.d;
        EXPECT_LE(std::abs(z1 - row.a_z1) / row.a_z1, 5e-3) << row.d;
    }
}

TEST(Prefactors, Lookup) {
    EXPECT_DOUBLE_EQ(*published_prefactor(4, "X"), 3.97e2);
    EXPECT_DOUBLE_EQ(*published_prefactor(10, "Z"), 4.18e7);
    EXPECT_DOUBLE_EQ(*published_prefactor(6, "X2"), *published_prefactor(6, "Z1"));
    EXPECT_DOUBLE_EQ(*published_prefactor(6, "Z2"), *published_prefactor(6, "X1"));
    EXPECT_FALSE(published_prefactor(5, "X").has_value());
    EXPECT_FALSE(published_prefactor(4, "Y").has_value());
    EXPECT_DOUBLE_EQ(*eps_coeff_for_class("Z1"), 4.8);
    EXPECT_DOUBLE_EQ(*eps_coeff_for_class("X2"), 4.8);
    EXPECT_DOUBLE_EQ(*eps_coeff_for_class("X1"), 3.2);
    EXPECT_DOUBLE_EQ(*eps_coeff_for_class("Z2"), 3.2);
    EXPECT_FALSE(eps_coeff_for_class("X").has_value());
}

TEST(Prefactors, PlanarToCyclicRatios) {
    const auto &d10 = kPublishedPrefactors.back();
    ASSERT_EQ(d10.d, 10);
    EXPECT_NEAR(d10.a_x / d10.a_x1, 69.3, 0.05);
    EXPECT_NEAR(d10.a_z / d10.a_z1, 13.0, 0.05);
    double prev_x = 0.0;
    double prev_z = 0.0;
    for (const auto &row : kPublishedPrefactors) {
        EXPECT_GT(row.a_x / row.a_x1, prev_x);
        EXPECT_GT(row.a_z / row.a_z1, prev_z);
        prev_x = row.a_x / row.a_x1;
        prev_z = row.a_z / row.a_z1;
    }
}

TEST(PowerLaw, Values) {
    EXPECT_NEAR(power_law_curve(3.97e2, 4, 1e-3), 3.97e-4, 1e-15);
    EXPECT_NEAR(power_law_curve(2.0, 3, 0.04), 2.0 * std::pow(0.04, 1.5), 1e-15);
    EXPECT_THROW(power_law_curve(1.0, 4, 1.0), Error);
}

TEST(PathBound, DominatesBinomialTail) {
    for (double eps : {0.01, 0.1, 0.4}) {
        for (int m = 1; m <= 12; ++m) {
            const int need = (m + 1) / 2;
            long double tail = 0.0L;
            for (int k = need; k <= m; ++k) {
                tail += pascal(m, k) * std::pow(static_cast<long double>(eps), k) *
                        std::pow(1.0L - eps, static_cast<long double>(m - k));
            }
            const double bound = path_failure_bound(m, eps);
            EXPECT_NEAR(bound, std::pow(2.0, m) * std::pow(eps, need), 1e-12 * bound);
            EXPECT_GE(static_cast<long double>(bound), tail) << "m=" << m << " eps=" << eps;
        }
    }
    EXPECT_THROW(path_failure_bound(0, 0.1), Error);
}

TEST(TotalBound, Value) {
    const long double eps = 1e-4L;
    const long double b = 44.0L * 4 / 121.0L * std::pow(22.0L, 4.0L) * eps * eps;
    const long double total = b / (1.0L - 484.0L * eps);
    EXPECT_NEAR(static_cast<double>(total), 3.581e-3, 5e-7);
    EXPECT_NEAR(static_cast<double>(total), 3.5806641e-3, 1e-10);
    EXPECT_NEAR(total_upper_bound(4, 1e-4), static_cast<double>(total), 1e-12);
    EXPECT_NEAR(bound_spec(4, 1e-4).b, static_cast<double>(b), 1e-12);
}

TEST(TotalBound, Divergence) {
    try {
        total_upper_bound(4, 1.0 / 484.0);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kDivergence);
    }
    EXPECT_THROW(total_upper_bound(4, 0.01), Error);
    EXPECT_THROW(bound_spec(5, 1e-4), Error);
}

TEST(TotalBound, DominatesLeadingOrderRates) {
    for (int d : {4, 6, 8, 10}) {
        for (double eps : {1e-6, 1e-4, 1e-3, 2e-3}) {
            const double bound = total_upper_bound(d, eps);
            EXPECT_GE(bound, cyclic_asymptote(d, eps));
            for (const auto &row : kPublishedPrefactors) {
                if (row.d == d) {
                    for (double a : {row.a_x, row.a_z, row.a_x1, row.a_z1}) {
                        EXPECT_GE(bound, power_law_curve(a, d, eps / kEpsCoeffNarrow));
                    }
                }
            }
        }
    }
}

}  // namespace
}  // namespace nestlab
