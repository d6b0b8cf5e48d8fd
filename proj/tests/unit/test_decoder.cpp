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

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "nestlab/decoder.hpp"
#include "nestlab/error.hpp"

namespace nestlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

DetectionEvent ev(int i, int j, int t) {
    return DetectionEvent{{i, j}, t};
}

// Floyd-Warshall over the raw edge list.
std::vector<std::vector<double>> floyd(const MatchingGraph &g) {
    const std::size_t n = g.node_count();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
    for (std::size_t v = 0; v < n; ++v) {
        d[v][v] = 0.0;
    }
    for (const auto &e : g.edges()) {
        d[e.u][e.v] = std::min(d[e.u][e.v], e.weight);
        d[e.v][e.u] = std::min(d[e.v][e.u], e.weight);
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                d[a][b] = std::min(d[a][b], d[a][k] + d[k][b]);
            }
        }
    }
    return d;
}

// Bitmask DP: the lowest unmatched event pairs with another or with the boundary.
double dp_matching(const std::vector<std::vector<double>> &d, const std::vector<std::size_t> &events,
                   std::optional<std::size_t> boundary) {
    const std::size_t m = events.size();
    std::vector<double> best(std::size_t{1} << m, kInf);
    best[0] = 0.0;
    for (std::size_t mask = 1; mask < best.size(); ++mask) {
        std::size_t i = 0;
        while (!(mask >> i & 1)) {
            ++i;
        }
        const std::size_t rest = mask & ~(std::size_t{1} << i);
        if (boundary) {
            best[mask] = std::min(best[mask], best[rest] + d[events[i]][*boundary]);
        }
        for (std::size_t j = i + 1; j < m; ++j) {
            if (rest >> j & 1) {
                best[mask] = std::min(best[mask], best[rest & ~(std::size_t{1} << j)] + d[events[i]][events[j]]);
            }
        }
    }
    return best.back();
}

MatchingGraph random_graph(std::mt19937_64 &rng, std::size_t n, bool boundary) {
    std::vector<DetectionEvent> events;
    for (std::size_t k = 0; k < n; ++k) {
        events.push_back(ev(0, 2 * static_cast<int>(k) + 1, 0));
    }
    const std::size_t nodes = n + (boundary ? 1 : 0);
    std::uniform_real_distribution<double> w(0.1, 5.0);
    std::uniform_int_distribution<int> bit(0, 3);
    std::vector<MatchingEdge> edges;
    // A spanning chain keeps everything connected, plus random chords.
    for (std::size_t v = 1; v < nodes; ++v) {
        edges.push_back({v - 1, v, w(rng), LogicalMask{1} << bit(rng)});
    }
    std::bernoulli_distribution chord(0.4);
    for (std::size_t a = 0; a < nodes; ++a) {
        for (std::size_t b = a + 2; b < nodes; ++b) {
            if (chord(rng)) {
                edges.push_back({a, b, w(rng), LogicalMask{1} << bit(rng)});
            }
        }
    }
    return MatchingGraph(events, boundary, edges);
}

TEST(StickWeight, Values) {
    EXPECT_NEAR(stick_weight(1.0 / (1.0 + std::exp(1.0))), 1.0, 1e-12);
    EXPECT_NEAR(stick_weight(0.1), std::log(9.0), 1e-12);
    EXPECT_GT(stick_weight(0.01), stick_weight(0.1));
    for (double q : {0.0, 0.5, 0.7, -0.1}) {
        try {
            stick_weight(q);
            FAIL() << q;
        } catch (const Error &e) {
            EXPECT_EQ(e.code(), ErrorCode::kWeightDomain);
        }
    }
}

TEST(MatchingGraph, BuiltFromNests) {
    const auto sched_p = build_round_schedule(build_layout(3, Boundary::kPlanar));
    auto planar = build_matching_graph(build_nest(sched_p, 4, 0.01, PauliKind::kX));
    EXPECT_TRUE(planar.has_boundary());
    EXPECT_EQ(planar.events().size() + 1, planar.node_count());
    for (std::size_t k = 1; k < planar.events().size(); ++k) {
        const auto &a = planar.events()[k - 1];
        const auto &b = planar.events()[k];
        EXPECT_LT(std::tie(a.t, a.site), std::tie(b.t, b.site));
    }
    for (std::size_t v = 0; v + 1 < planar.node_count(); ++v) {
        EXPECT_TRUE(planar.reachable(v, planar.boundary_node()));
    }

    const auto sched_c = build_round_schedule(build_layout(3, Boundary::kCyclic));
    auto cyclic = build_matching_graph(build_nest(sched_c, 4, 0.01, PauliKind::kZ));
    EXPECT_FALSE(cyclic.has_boundary());
    EXPECT_EQ(cyclic.events().size(), cyclic.node_count());
    const auto n = cyclic.node_of(ev(1, 0, 2));
    ASSERT_TRUE(n.has_value());
    EXPECT_EQ(cyclic.events()[*n], ev(1, 0, 2));
    EXPECT_FALSE(cyclic.node_of(ev(0, 1, 2)).has_value());
}

TEST(MatchingGraph, EmptyNestGivesEmptyGraph) {
    const auto sched = build_round_schedule(build_layout(3, Boundary::kPlanar));
    auto g = build_matching_graph(build_nest(sched, 4, 0.0, PauliKind::kX));
    EXPECT_EQ(g.node_count(), 0u);
    EXPECT_TRUE(mwpm(g, {}).pairs.empty());
}

TEST(MatchingGraph, TwoHopPath) {
    std::vector<DetectionEvent> events{ev(0, 1, 0), ev(0, 3, 0), ev(0, 5, 0)};
    std::vector<MatchingEdge> edges{{0, 1, 1.0, 1}, {1, 2, 1.5, 2}, {0, 2, 3.0, 4}};
    MatchingGraph g(events, false, edges);
    auto p = g.path(0, 2);
    EXPECT_DOUBLE_EQ(p.weight, 2.5);
    EXPECT_EQ(p.flips, 3u);
    EXPECT_DOUBLE_EQ(g.path(2, 0).weight, 2.5);
    EXPECT_EQ(g.path(1, 1).weight, 0.0);
    EXPECT_EQ(pairwise_weight(g, 0, 2).flips, 3u);
}

TEST(MatchingGraph, Disconnected) {
    std::vector<DetectionEvent> events{ev(0, 1, 0), ev(0, 3, 0), ev(0, 5, 0)};
    MatchingGraph g(events, false, {{0, 1, 1.0, 0}});
    EXPECT_FALSE(g.reachable(0, 2));
    try {
        g.path(0, 2);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kDisconnected);
    }
}

TEST(MatchingGraph, ShortestPathsMatchFloyd) {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 50; ++rep) {
        auto g = random_graph(rng, 7, rep % 2 == 0);
        auto d = floyd(g);
        for (std::size_t a = 0; a < g.node_count(); ++a) {
            for (std::size_t b = 0; b < g.node_count(); ++b) {
                EXPECT_NEAR(g.path(a, b).weight, d[a][b], 1e-9);
            }
        }
    }
}

TEST(Mwpm, HandExample) {
    // Line 0 - 1 - 2 - 3 with a cheap middle bond: the outer pairs win.
    std::vector<DetectionEvent> events{ev(0, 1, 0), ev(0, 3, 0), ev(0, 5, 0), ev(0, 7, 0)};
    std::vector<MatchingEdge> edges{{0, 1, 1.0, 1}, {1, 2, 0.5, 0}, {2, 3, 1.0, 2}};
    MatchingGraph g(events, false, edges);
    auto m = mwpm(g, {0, 1, 2, 3});
    EXPECT_DOUBLE_EQ(m.total_weight, 2.0);
    ASSERT_EQ(m.pairs.size(), 2u);
    EXPECT_EQ(m.logical_flips, 3u);
    EXPECT_EQ(matching_logical_parity(m), 3u);
}

TEST(Mwpm, BoundaryBeatsLongChain) {
    std::vector<DetectionEvent> events{ev(0, 1, 0), ev(0, 3, 0)};
    std::vector<MatchingEdge> edges{{0, 1, 5.0, 0}, {0, 2, 1.0, 1}, {1, 2, 1.0, 0}};
    MatchingGraph g(events, true, edges);
    auto m = mwpm(g, {0, 1});
    EXPECT_DOUBLE_EQ(m.total_weight, 2.0);
    // Pairing through the boundary costs the same as two boundary matches.
    EXPECT_EQ(m.logical_flips, 1u);
    // An odd count is fine with a boundary.
    EXPECT_DOUBLE_EQ(mwpm(g, {1}).total_weight, 1.0);
}

TEST(Mwpm, AgreesWithBitmaskOracle) {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 300; ++rep) {
        const bool boundary = rep % 2 == 0;
        auto g = random_graph(rng, 10, boundary);
        auto d = floyd(g);
        std::vector<std::size_t> all(10);
        for (std::size_t k = 0; k < all.size(); ++k) {
            all[k] = k;
        }
        std::shuffle(all.begin(), all.end(), rng);
        std::size_t m = std::uniform_int_distribution<std::size_t>(0, 10)(rng);
        if (!boundary && m % 2 == 1) {
            --m;
        }
        std::vector<std::size_t> events(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(m));
        const double want = dp_matching(d, events, boundary ? std::optional<std::size_t>(g.boundary_node()) : std::nullopt);
        EXPECT_NEAR(mwpm(g, events).total_weight, want, 1e-9);
        EXPECT_NEAR(exhaustive_mwpm(g, events).total_weight, want, 1e-9);
    }
}

TEST(Mwpm, MatchingIsPerfect) {
    std::mt19937_64 rng(3);
    auto g = random_graph(rng, 9, true);
    std::vector<std::size_t> events{0, 2, 3, 5, 8};
    auto m = mwpm(g, events);
    std::vector<int> seen(g.node_count(), 0);
    double w = 0.0;
    for (const auto &[a, b] : m.pairs) {
        ++seen[a];
        if (b != g.boundary_node()) {
            ++seen[b];
        }
        w += g.path(a, b).weight;
    }
    for (auto e : events) {
        EXPECT_EQ(seen[e], 1);
    }
    EXPECT_NEAR(w, m.total_weight, 1e-9);
}

TEST(Mwpm, Errors) {
    std::vector<DetectionEvent> events{ev(0, 1, 0), ev(0, 3, 0), ev(0, 5, 0)};
    MatchingGraph g(events, false, {{0, 1, 1.0, 0}, {1, 2, 1.0, 0}});
    try {
        mwpm(g, {0, 1, 2});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kParity);
    }
    EXPECT_THROW(mwpm(g, {0, 0}), Error);
    EXPECT_THROW(mwpm(g, {0, 7}), Error);

    std::mt19937_64 rng(5);
    auto big = random_graph(rng, 14, false);
    std::vector<std::size_t> all(14);
    for (std::size_t k = 0; k < all.size(); ++k) {
        all[k] = k;
    }
    try {
        exhaustive_mwpm(big, all);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kSize);
    }
    EXPECT_NO_THROW(mwpm(big, all));
}

TEST(Mwpm, ScalingAndShiftInvariance) {
    std::mt19937_64 rng(17);
    auto g = random_graph(rng, 8, false);
    std::vector<MatchingEdge> scaled = g.edges();
    for (auto &e : scaled) {
        e.weight *= 3.0;
    }
    MatchingGraph g3(g.events(), false, scaled);
    std::vector<std::size_t> events{0, 1, 2, 3, 4, 5};
    auto a = mwpm(g, events);
    auto b = mwpm(g3, events);
    EXPECT_NEAR(b.total_weight, 3.0 * a.total_weight, 1e-9);
}

TEST(Mwpm, MonotoneInEdgeWeight) {
    std::mt19937_64 rng(19);
    for (int rep = 0; rep < 20; ++rep) {
        auto g = random_graph(rng, 8, true);
        auto heavier = g.edges();
        heavier[static_cast<std::size_t>(rep) % heavier.size()].weight += 1.0;
        MatchingGraph h(g.events(), true, heavier);
        std::vector<std::size_t> events{0, 1, 3, 4, 6};
        EXPECT_GE(mwpm(h, events).total_weight + 1e-12, mwpm(g, events).total_weight);
    }
}

TEST(MaxWeightMatching, AgainstEnumeration) {
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 200; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 7);
        std::vector<std::tuple<int, int, std::int64_t>> edges;
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                if (rng() % 3 != 0) {
                    edges.emplace_back(a, b, static_cast<std::int64_t>(rng() % 20) + 1);
                }
            }
        }
        // Oracle: best (cardinality, weight) over every matching.
        std::pair<int, std::int64_t> best{0, 0};
        std::vector<bool> used(static_cast<std::size_t>(n), false);
        auto rec = [&](auto &&self, std::size_t k, int card, std::int64_t w) -> void {
            best = std::max(best, {card, w});
            for (std::size_t e = k; e < edges.size(); ++e) {
                auto [u, v, x] = edges[e];
                if (!used[static_cast<std::size_t>(u)] && !used[static_cast<std::size_t>(v)]) {
                    used[static_cast<std::size_t>(u)] = used[static_cast<std::size_t>(v)] = true;
                    self(self, e + 1, card + 1, w + x);
                    used[static_cast<std::size_t>(u)] = used[static_cast<std::size_t>(v)] = false;
                }
            }
        };
        rec(rec, 0, 0, 0);

        auto mate = max_weight_matching(edges, true);
        int card = 0;
        std::int64_t w = 0;
        for (auto [u, v, x] : edges) {
            if (mate[static_cast<std::size_t>(u)] == v) {
                EXPECT_EQ(mate[static_cast<std::size_t>(v)], u);
                ++card;
                w += x;
            }
        }
        EXPECT_EQ(card, best.first);
        EXPECT_EQ(w, best.second);
    }
}

TEST(Decoding, SingleStickIsCorrected) {
    const auto sched = build_round_schedule(build_layout(4, Boundary::kCyclic));
    auto nest = build_nest(sched, 4, 0.01, PauliKind::kX);
    auto g = build_matching_graph(nest);
    for (const auto &s : nest.sticks()) {
        auto m = mwpm(g, {*g.node_of(s.a), *g.node_of(s.b)});
        // The lightest correction for one stick never flips more than the stick did.
        if (m.logical_flips != s.logical_flips) {
            EXPECT_LE(m.total_weight, stick_weight(s.probability) + 1e-9);
        }
    }
}

}  // namespace
}  // namespace nestlab
