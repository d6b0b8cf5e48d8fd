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

#ifndef NESTLAB_DECODER_HPP
#define NESTLAB_DECODER_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "nestlab/nest.hpp"

namespace nestlab {

/// -ln(q / (1 - q)). Throws kWeightDomain unless 0 < q < 0.5.
double stick_weight(double q);

struct MatchingEdge {
    std::size_t u = 0;
    std::size_t v = 0;
    double weight = 0.0;
    LogicalMask flips = 0;
};

struct PathWeight {
    double weight = 0.0;
    LogicalMask flips = 0;
};

/// Decoding graph. Nodes are detection events, plus one trailing boundary
/// node when the source nest is planar. Shortest paths between every pair
/// of nodes are computed once at construction, so a built graph can be
/// queried from many threads.
class MatchingGraph {
   public:
    MatchingGraph() = default;
    MatchingGraph(std::vector<DetectionEvent> events, bool has_boundary, std::vector<MatchingEdge> edges);

    std::size_t node_count() const {
        return node_count_;
    }
    bool has_boundary() const {
        return has_boundary_;
    }
    /// Only meaningful when has_boundary().
    std::size_t boundary_node() const {
        return node_count_ - 1;
    }
    const std::vector<DetectionEvent> &events() const {
        return events_;
    }
    std::optional<std::size_t> node_of(const DetectionEvent &e) const;
    const std::vector<MatchingEdge> &edges() const {
        return edges_;
    }

    /// Lightest path between two nodes; ties go to the lexicographically
    /// smallest predecessor. Throws kDisconnected if b is unreachable.
    PathWeight path(std::size_t a, std::size_t b) const;
    bool reachable(std::size_t a, std::size_t b) const;

   private:
    std::vector<DetectionEvent> events_;
    std::map<DetectionEvent, std::size_t> index_;
    bool has_boundary_ = false;
    std::size_t node_count_ = 0;
    std::vector<MatchingEdge> edges_;
    std::vector<double> dist_;
    std::vector<LogicalMask> flips_;
};

/// One edge per stick; planar virtual endpoints all map to the boundary node.
MatchingGraph build_matching_graph(const Nest &nest);

PathWeight pairwise_weight(const MatchingGraph &graph, std::size_t a, std::size_t b);

struct Matching {
    /// Second element equals graph.boundary_node() for boundary matches.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    double total_weight = 0.0;
    LogicalMask logical_flips = 0;
};

/// Exact minimum-weight perfect matching of the given event nodes. Planar
/// graphs let any event pair with the boundary instead; cyclic graphs need
/// an even event count (kParity otherwise).
Matching mwpm(const MatchingGraph &graph, const std::vector<std::size_t> &events);

/// Brute force over every perfect matching; at most 12 events (kSize).
Matching exhaustive_mwpm(const MatchingGraph &graph, const std::vector<std::size_t> &events);

LogicalMask matching_logical_parity(const Matching &matching);

/// Maximum-weight matching on a general graph (edges are (u, v, weight)),
/// optionally restricted to maximum cardinality. Returns mate[v], or -1 for
/// an unmatched vertex.
std::vector<int> max_weight_matching(const std::vector<std::tuple<int, int, std::int64_t>> &edges,
                                     bool max_cardinality);

}  // namespace nestlab

#endif  // NESTLAB_DECODER_HPP
