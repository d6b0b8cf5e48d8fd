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

#include "nestlab/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>

#include "nestlab/error.hpp"

namespace nestlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double stick_weight(double q) {
    if (!(q > 0.0 && q < 0.5)) {
        throw Error(ErrorCode::kWeightDomain, "stick probability " + std::to_string(q) + " outside (0, 0.5)");
    }
    return -std::log(q / (1.0 - q));
}

MatchingGraph::MatchingGraph(std::vector<DetectionEvent> events, bool has_boundary, std::vector<MatchingEdge> edges)
    : events_(std::move(events)),
      has_boundary_(has_boundary),
      node_count_(events_.size() + (has_boundary ? 1 : 0)),
      edges_(std::move(edges)) {
    for (std::size_t k = 0; k < events_.size(); ++k) {
        if (!index_.emplace(events_[k], k).second) {
            throw Error(ErrorCode::kInvalidParameter, "duplicate graph node " + to_string(events_[k]));
        }
    }
    const std::size_t n = node_count_;
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        const auto &e = edges_[k];
        if (e.u >= n || e.v >= n || e.u == e.v) {
            throw Error(ErrorCode::kInvalidParameter, "edge endpoints out of range");
        }
        if (!(e.weight >= 0.0)) {
            throw Error(ErrorCode::kWeightDomain, "negative edge weight");
        }
        adj[e.u].push_back(k);
        adj[e.v].push_back(k);
    }

    dist_.assign(n * n, kInf);
    flips_.assign(n * n, 0);
    std::vector<std::size_t> pred(n);
    std::vector<bool> done(n);
    using Item = std::pair<double, std::size_t>;
    for (std::size_t src = 0; src < n; ++src) {
        double *dist = &dist_[src * n];
        LogicalMask *flips = &flips_[src * n];
        std::fill(pred.begin(), pred.end(), n);
        std::fill(done.begin(), done.end(), false);
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        dist[src] = 0.0;
        heap.push({0.0, src});
        while (!heap.empty()) {
            auto [du, u] = heap.top();
            heap.pop();
            if (done[u] || du > dist[u]) {
                continue;
            }
            done[u] = true;
            for (auto k : adj[u]) {
                const auto &e = edges_[k];
                const std::size_t v = e.u == u ? e.v : e.u;
                if (done[v]) {
                    continue;
                }
                const double nd = du + e.weight;
                if (nd < dist[v] || (nd == dist[v] && u < pred[v])) {
                    dist[v] = nd;
                    pred[v] = u;
                    flips[v] = flips[u] ^ e.flips;
                    heap.push({nd, v});
                }
            }
        }
    }
}

std::optional<std::size_t> MatchingGraph::node_of(const DetectionEvent &e) const {
    auto it = index_.find(e);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

PathWeight MatchingGraph::path(std::size_t a, std::size_t b) const {
    if (a >= node_count_ || b >= node_count_) {
        throw Error(ErrorCode::kInvalidParameter, "node index out of range");
    }
    const double w = dist_[a * node_count_ + b];
    if (w == kInf) {
        throw Error(ErrorCode::kDisconnected,
                    "no path between nodes " + std::to_string(a) + " and " + std::to_string(b));
    }
    return {w, flips_[a * node_count_ + b]};
}

bool MatchingGraph::reachable(std::size_t a, std::size_t b) const {
    return dist_[a * node_count_ + b] < kInf;
}

MatchingGraph build_matching_graph(const Nest &nest) {
    std::vector<DetectionEvent> events;
    std::map<DetectionEvent, std::size_t> index;
    auto id = [&](const DetectionEvent &e) {
        auto [it, inserted] = index.emplace(e, events.size());
        if (inserted) {
            events.push_back(e);
        }
        return it->second;
    };
    const bool planar = nest.geometry().boundary == Boundary::kPlanar && !nest.empty();
    // Number interior nodes in (t, i, j) order so ids do not depend on stick order.
    std::vector<DetectionEvent> sites;
    for (const auto &s : nest.sticks()) {
        sites.push_back(s.a);
        if (!s.boundary) {
            sites.push_back(s.b);
        }
    }
    std::sort(sites.begin(), sites.end(), [](const DetectionEvent &x, const DetectionEvent &y) {
        return std::tie(x.t, x.site) < std::tie(y.t, y.site);
    });
    for (const auto &e : sites) {
        id(e);
    }
    const std::size_t boundary = events.size();
    std::vector<MatchingEdge> edges;
    edges.reserve(nest.size());
    for (const auto &s : nest.sticks()) {
        MatchingEdge e;
        e.u = index.at(s.a);
        e.v = s.boundary ? boundary : index.at(s.b);
        e.weight = stick_weight(s.probability);
        e.flips = s.logical_flips;
        edges.push_back(e);
    }
    return MatchingGraph(std::move(events), planar, std::move(edges));
}

PathWeight pairwise_weight(const MatchingGraph &graph, std::size_t a, std::size_t b) {
    return graph.path(a, b);
}

namespace {

void check_events(const MatchingGraph &graph, const std::vector<std::size_t> &events) {
    std::vector<std::size_t> sorted = events;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw Error(ErrorCode::kInvalidParameter, "event listed twice");
    }
    for (auto e : events) {
        if (e >= graph.node_count() || (graph.has_boundary() && e == graph.boundary_node())) {
            throw Error(ErrorCode::kInvalidParameter, "event is not a detection node");
        }
    }
    if (!graph.has_boundary() && events.size() % 2 != 0) {
        throw Error(ErrorCode::kParity,
                    "odd number of detection events (" + std::to_string(events.size()) + ") without a boundary");
    }
}

void finish(const MatchingGraph &graph, Matching &m) {
    m.total_weight = 0.0;
    m.logical_flips = 0;
    for (const auto &[a, b] : m.pairs) {
        auto pw = graph.path(a, b);
        m.total_weight += pw.weight;
        m.logical_flips ^= pw.flips;
    }
}

}  // namespace

Matching mwpm(const MatchingGraph &graph, const std::vector<std::size_t> &events) {
    check_events(graph, events);
    Matching out;
    const int n = static_cast<int>(events.size());
    if (n == 0) {
        return out;
    }
    const bool planar = graph.has_boundary();
    // Vertices 0..n-1 are events; n..2n-1 are per-event boundary copies,
    // joined to each other at zero cost.
    struct Candidate {
        int u;
        int v;
        double w;
    };
    std::vector<Candidate> cand;
    double max_w = 0.0;
    auto offer = [&](int u, int v, std::size_t a, std::size_t b) {
        if (!graph.reachable(a, b)) {
            return;
        }
        const double w = graph.path(a, b).weight;
        cand.push_back({u, v, w});
        max_w = std::max(max_w, w);
    };
    for (int k = 0; k < n; ++k) {
        for (int l = k + 1; l < n; ++l) {
            offer(k, l, events[k], events[l]);
        }
        if (planar) {
            offer(k, n + k, events[k], graph.boundary_node());
        }
    }
    if (planar) {
        for (int k = 0; k < n; ++k) {
            for (int l = k + 1; l < n; ++l) {
                cand.push_back({n + k, n + l, 0.0});
            }
        }
    }
    // Integer weights keep the dual updates exact.
    const double scale = std::min(std::ldexp(1.0, 40), std::ldexp(1.0, 52) / std::max(max_w, 1.0));
    const std::int64_t top = 2 * (static_cast<std::int64_t>(std::llround(max_w * scale)) + 1);
    std::vector<std::tuple<int, int, std::int64_t>> edges;
    edges.reserve(cand.size());
    for (const auto &c : cand) {
        edges.emplace_back(c.u, c.v, top - 2 * static_cast<std::int64_t>(std::llround(c.w * scale)));
    }
    const int vertices = planar ? 2 * n : n;
    std::vector<int> mate = max_weight_matching(edges, true);
    mate.resize(static_cast<std::size_t>(vertices), -1);
    for (int k = 0; k < n; ++k) {
        const int m = mate[static_cast<std::size_t>(k)];
        if (m < 0) {
            throw Error(ErrorCode::kDisconnected, "no perfect matching of the detection events exists");
        }
        if (m >= n) {
            out.pairs.emplace_back(events[k], graph.boundary_node());
        } else if (k < m) {
            out.pairs.emplace_back(events[k], events[m]);
        }
    }
    finish(graph, out);
    return out;
}

namespace {

struct Exhaustive {
    const MatchingGraph &graph;
    const std::vector<std::size_t> &events;
    std::vector<bool> used;
    std::vector<std::pair<std::size_t, std::size_t>> current;
    std::vector<std::pair<std::size_t, std::size_t>> best;
    double best_weight = kInf;

    void run(std::size_t first, double weight) {
        while (first < events.size() && used[first]) {
            ++first;
        }
        if (first == events.size()) {
            if (weight < best_weight) {
                best_weight = weight;
                best = current;
            }
            return;
        }
        used[first] = true;
        if (graph.has_boundary() && graph.reachable(events[first], graph.boundary_node())) {
            current.emplace_back(events[first], graph.boundary_node());
            run(first + 1, weight + graph.path(events[first], graph.boundary_node()).weight);
            current.pop_back();
        }
        for (std::size_t l = first + 1; l < events.size(); ++l) {
            if (used[l] || !graph.reachable(events[first], events[l])) {
                continue;
            }
            used[l] = true;
            current.emplace_back(events[first], events[l]);
            run(first + 1, weight + graph.path(events[first], events[l]).weight);
            current.pop_back();
            used[l] = false;
        }
        used[first] = false;
    }
};

}  // namespace

Matching exhaustive_mwpm(const MatchingGraph &graph, const std::vector<std::size_t> &events) {
    if (events.size() > 12) {
        throw Error(ErrorCode::kSize, "exhaustive matching is limited to 12 events");
    }
    check_events(graph, events);
    Exhaustive search{graph, events, std::vector<bool>(events.size(), false), {}, {}, kInf};
    search.run(0, 0.0);
    if (search.best_weight == kInf) {
        if (events.empty()) {
            return {};
        }
        throw Error(ErrorCode::kDisconnected, "no perfect matching of the detection events exists");
    }
    Matching out;
    out.pairs = std::move(search.best);
    finish(graph, out);
    return out;
}

LogicalMask matching_logical_parity(const Matching &matching) {
    return matching.logical_flips;
}

// Maximum-weight general matching by the primal-dual blossom method, after
// Galil's formulation and J. van Rantwijk's reference implementation.
namespace {

class Blossom {
   public:
    Blossom(const std::vector<std::tuple<int, int, std::int64_t>> &edges, bool max_cardinality)
        : edges_(edges), max_cardinality_(max_cardinality) {
        nedge_ = static_cast<int>(edges_.size());
        nvertex_ = 0;
        std::int64_t maxweight = 0;
        for (const auto &[i, j, w] : edges_) {
            if (i < 0 || j < 0 || i == j) {
                throw Error(ErrorCode::kInvalidParameter, "bad matching edge");
            }
            nvertex_ = std::max({nvertex_, i + 1, j + 1});
            maxweight = std::max(maxweight, w);
        }
        const int nv = nvertex_;
        endpoint_.resize(2 * static_cast<std::size_t>(nedge_));
        neighbend_.assign(nv, {});
        for (int k = 0; k < nedge_; ++k) {
            const auto &[i, j, w] = edges_[k];
            endpoint_[2 * k] = i;
            endpoint_[2 * k + 1] = j;
            neighbend_[i].push_back(2 * k + 1);
            neighbend_[j].push_back(2 * k);
        }
        mate_.assign(nv, -1);
        label_.assign(2 * nv, 0);
        labelend_.assign(2 * nv, -1);
        inblossom_.resize(nv);
        for (int v = 0; v < nv; ++v) {
            inblossom_[v] = v;
        }
        blossomparent_.assign(2 * nv, -1);
        blossomchilds_.assign(2 * nv, {});
        blossombase_.assign(2 * nv, -1);
        for (int v = 0; v < nv; ++v) {
            blossombase_[v] = v;
        }
        blossomendps_.assign(2 * nv, {});
        bestedge_.assign(2 * nv, -1);
        blossombestedges_.assign(2 * nv, {});
        has_bestedges_.assign(2 * nv, false);
        for (int b = nv; b < 2 * nv; ++b) {
            unusedblossoms_.push_back(b);
        }
        dualvar_.assign(2 * nv, 0);
        for (int v = 0; v < nv; ++v) {
            dualvar_[v] = maxweight;
        }
        allowedge_.assign(nedge_, false);
    }

    std::vector<int> solve() {
        const int nv = nvertex_;
        if (nedge_ == 0) {
            return {};
        }
        for (int t = 0; t < nv; ++t) {
            std::fill(label_.begin(), label_.end(), 0);
            std::fill(bestedge_.begin(), bestedge_.end(), -1);
            for (int b = nv; b < 2 * nv; ++b) {
                blossombestedges_[b].clear();
                has_bestedges_[b] = false;
            }
            std::fill(allowedge_.begin(), allowedge_.end(), false);
            queue_.clear();
            for (int v = 0; v < nv; ++v) {
                if (mate_[v] == -1 && label_[inblossom_[v]] == 0) {
                    assign_label(v, 1, -1);
                }
            }
            bool augmented = false;
            while (true) {
                while (!queue_.empty() && !augmented) {
                    const int v = queue_.back();
                    queue_.pop_back();
                    for (int p : neighbend_[v]) {
                        const int k = p / 2;
                        const int w = endpoint_[p];
                        if (inblossom_[v] == inblossom_[w]) {
                            continue;
                        }
                        std::int64_t kslack = 0;
                        if (!allowedge_[k]) {
                            kslack = slack(k);
                            if (kslack <= 0) {
                                allowedge_[k] = true;
                            }
                        }
                        if (allowedge_[k]) {
                            if (label_[inblossom_[w]] == 0) {
                                assign_label(w, 2, p ^ 1);
                            } else if (label_[inblossom_[w]] == 1) {
                                const int base = scan_blossom(v, w);
                                if (base >= 0) {
                                    add_blossom(base, k);
                                } else {
                                    augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if (label_[w] == 0) {
                                label_[w] = 2;
                                labelend_[w] = p ^ 1;
                            }
                        } else if (label_[inblossom_[w]] == 1) {
                            const int b = inblossom_[v];
                            if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) {
                                bestedge_[b] = k;
                            }
                        } else if (label_[w] == 0) {
                            if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) {
                                bestedge_[w] = k;
                            }
                        }
                    }
                }
                if (augmented) {
                    break;
                }

                int deltatype = -1;
                std::int64_t delta = 0;
                int deltaedge = -1;
                int deltablossom = -1;
                if (!max_cardinality_) {
                    deltatype = 1;
                    delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + nv);
                }
                for (int v = 0; v < nv; ++v) {
                    if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
                        const std::int64_t d = slack(bestedge_[v]);
                        if (deltatype == -1 || d < delta) {
                            delta = d;
                            deltatype = 2;
                            deltaedge = bestedge_[v];
                        }
                    }
                }
                for (int b = 0; b < 2 * nv; ++b) {
                    if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
                        const std::int64_t d = slack(bestedge_[b]) / 2;
                        if (deltatype == -1 || d < delta) {
                            delta = d;
                            deltatype = 3;
                            deltaedge = bestedge_[b];
                        }
                    }
                }
                for (int b = nv; b < 2 * nv; ++b) {
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
                        (deltatype == -1 || dualvar_[b] < delta)) {
                        delta = dualvar_[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }
                if (deltatype == -1) {
                    deltatype = 1;
                    delta = std::max<std::int64_t>(0, *std::min_element(dualvar_.begin(), dualvar_.begin() + nv));
                }

                for (int v = 0; v < nv; ++v) {
                    if (label_[inblossom_[v]] == 1) {
                        dualvar_[v] -= delta;
                    } else if (label_[inblossom_[v]] == 2) {
                        dualvar_[v] += delta;
                    }
                }
                for (int b = nv; b < 2 * nv; ++b) {
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
                        if (label_[b] == 1) {
                            dualvar_[b] += delta;
                        } else if (label_[b] == 2) {
                            dualvar_[b] -= delta;
                        }
                    }
                }

                if (deltatype == 1) {
                    break;
                } else if (deltatype == 2) {
                    allowedge_[deltaedge] = true;
                    int i = std::get<0>(edges_[deltaedge]);
                    int j = std::get<1>(edges_[deltaedge]);
                    if (label_[inblossom_[i]] == 0) {
                        std::swap(i, j);
                    }
                    queue_.push_back(i);
                } else if (deltatype == 3) {
                    allowedge_[deltaedge] = true;
                    queue_.push_back(std::get<0>(edges_[deltaedge]));
                } else {
                    expand_blossom(deltablossom, false);
                }
            }
            if (!augmented) {
                break;
            }
            for (int b = nv; b < 2 * nv; ++b) {
                if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dualvar_[b] == 0) {
                    expand_blossom(b, true);
                }
            }
        }
        std::vector<int> out(nv, -1);
        for (int v = 0; v < nv; ++v) {
            if (mate_[v] >= 0) {
                out[v] = endpoint_[mate_[v]];
            }
        }
        return out;
    }

   private:
    std::int64_t slack(int k) const {
        const auto &[i, j, w] = edges_[k];
        return dualvar_[i] + dualvar_[j] - 2 * w;
    }

    void leaves(int b, std::vector<int> &out) const {
        if (b < nvertex_) {
            out.push_back(b);
            return;
        }
        for (int t : blossomchilds_[b]) {
            leaves(t, out);
        }
    }

    std::vector<int> leaves(int b) const {
        std::vector<int> out;
        leaves(b, out);
        return out;
    }

    void assign_label(int w, int t, int p) {
        const int b = inblossom_[w];
        label_[w] = label_[b] = t;
        labelend_[w] = labelend_[b] = p;
        bestedge_[w] = bestedge_[b] = -1;
        if (t == 1) {
            leaves(b, queue_);
        } else if (t == 2) {
            const int base = blossombase_[b];
            assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
        }
    }

    int scan_blossom(int v, int w) {
        std::vector<int> path;
        int base = -1;
        while (v != -1 || w != -1) {
            int b = inblossom_[v];
            if (label_[b] & 4) {
                base = blossombase_[b];
                break;
            }
            path.push_back(b);
            label_[b] = 5;
            if (labelend_[b] == -1) {
                v = -1;
            } else {
                v = endpoint_[labelend_[b]];
                b = inblossom_[v];
                v = endpoint_[labelend_[b]];
            }
            if (w != -1) {
                std::swap(v, w);
            }
        }
        for (int b : path) {
            label_[b] = 1;
        }
        return base;
    }

    void add_blossom(int base, int k) {
        int v = std::get<0>(edges_[k]);
        int w = std::get<1>(edges_[k]);
        const int bb = inblossom_[base];
        int bv = inblossom_[v];
        int bw = inblossom_[w];
        const int b = unusedblossoms_.back();
        unusedblossoms_.pop_back();
        blossombase_[b] = base;
        blossomparent_[b] = -1;
        blossomparent_[bb] = b;
        auto &path = blossomchilds_[b];
        auto &endps = blossomendps_[b];
        path.clear();
        endps.clear();
        while (bv != bb) {
            blossomparent_[bv] = b;
            path.push_back(bv);
            endps.push_back(labelend_[bv]);
            v = endpoint_[labelend_[bv]];
            bv = inblossom_[v];
        }
        path.push_back(bb);
        std::reverse(path.begin(), path.end());
        std::reverse(endps.begin(), endps.end());
        endps.push_back(2 * k);
        while (bw != bb) {
            blossomparent_[bw] = b;
            path.push_back(bw);
            endps.push_back(labelend_[bw] ^ 1);
            w = endpoint_[labelend_[bw]];
            bw = inblossom_[w];
        }
        label_[b] = 1;
        labelend_[b] = labelend_[bb];
        dualvar_[b] = 0;
        for (int leaf : leaves(b)) {
            if (label_[inblossom_[leaf]] == 2) {
                queue_.push_back(leaf);
            }
            inblossom_[leaf] = b;
        }
        std::vector<int> bestedgeto(2 * static_cast<std::size_t>(nvertex_), -1);
        for (int sub : path) {
            std::vector<std::vector<int>> nblists;
            if (!has_bestedges_[sub]) {
                for (int leaf : leaves(sub)) {
                    std::vector<int> list;
                    for (int p : neighbend_[leaf]) {
                        list.push_back(p / 2);
                    }
                    nblists.push_back(std::move(list));
                }
            } else {
                nblists.push_back(blossombestedges_[sub]);
            }
            for (const auto &nblist : nblists) {
                for (int e : nblist) {
                    int i = std::get<0>(edges_[e]);
                    int j = std::get<1>(edges_[e]);
                    if (inblossom_[j] == b) {
                        std::swap(i, j);
                    }
                    const int bj = inblossom_[j];
                    if (bj != b && label_[bj] == 1 && (bestedgeto[bj] == -1 || slack(e) < slack(bestedgeto[bj]))) {
                        bestedgeto[bj] = e;
                    }
                }
            }
            blossombestedges_[sub].clear();
            has_bestedges_[sub] = false;
            bestedge_[sub] = -1;
        }
        auto &best = blossombestedges_[b];
        best.clear();
        for (int e : bestedgeto) {
            if (e != -1) {
                best.push_back(e);
            }
        }
        has_bestedges_[b] = true;
        bestedge_[b] = -1;
        for (int e : best) {
            if (bestedge_[b] == -1 || slack(e) < slack(bestedge_[b])) {
                bestedge_[b] = e;
            }
        }
    }

    void expand_blossom(int b, bool endstage) {
        const std::vector<int> childs = blossomchilds_[b];
        for (int s : childs) {
            blossomparent_[s] = -1;
            if (s < nvertex_) {
                inblossom_[s] = s;
            } else if (endstage && dualvar_[s] == 0) {
                expand_blossom(s, endstage);
            } else {
                for (int leaf : leaves(s)) {
                    inblossom_[leaf] = s;
                }
            }
        }
        if (!endstage && label_[b] == 2) {
            const auto &ch = blossomchilds_[b];
            const auto &endps = blossomendps_[b];
            const int len = static_cast<int>(ch.size());
            auto at = [len](const std::vector<int> &vec, int idx) { return vec[(idx % len + len) % len]; };
            const int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
            int j = static_cast<int>(std::find(ch.begin(), ch.end(), entrychild) - ch.begin());
            int jstep;
            int endptrick;
            if (j & 1) {
                j -= len;
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            int p = labelend_[b];
            while (j != 0) {
                label_[endpoint_[p ^ 1]] = 0;
                label_[endpoint_[at(endps, j - endptrick) ^ endptrick ^ 1]] = 0;
                assign_label(endpoint_[p ^ 1], 2, p);
                allowedge_[at(endps, j - endptrick) / 2] = true;
                j += jstep;
                p = at(endps, j - endptrick) ^ endptrick;
                allowedge_[p / 2] = true;
                j += jstep;
            }
            int bv = at(ch, j);
            label_[endpoint_[p ^ 1]] = label_[bv] = 2;
            labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
            bestedge_[bv] = -1;
            j += jstep;
            while (at(ch, j) != entrychild) {
                bv = at(ch, j);
                if (label_[bv] == 1) {
                    j += jstep;
                    continue;
                }
                int found = -1;
                for (int leaf : leaves(bv)) {
                    if (label_[leaf] != 0) {
                        found = leaf;
                        break;
                    }
                }
                if (found >= 0) {
                    label_[found] = 0;
                    label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
                    assign_label(found, 2, labelend_[found]);
                }
                j += jstep;
            }
        }
        label_[b] = labelend_[b] = -1;
        blossomchilds_[b].clear();
        blossomendps_[b].clear();
        blossombase_[b] = -1;
        blossombestedges_[b].clear();
        has_bestedges_[b] = false;
        bestedge_[b] = -1;
        unusedblossoms_.push_back(b);
    }

    void augment_blossom(int b, int v) {
        int t = v;
        while (blossomparent_[t] != b) {
            t = blossomparent_[t];
        }
        if (t >= nvertex_) {
            augment_blossom(t, v);
        }
        auto &ch = blossomchilds_[b];
        auto &endps = blossomendps_[b];
        const int len = static_cast<int>(ch.size());
        auto at = [len](const std::vector<int> &vec, int idx) { return vec[(idx % len + len) % len]; };
        const int i = static_cast<int>(std::find(ch.begin(), ch.end(), t) - ch.begin());
        int j = i;
        int jstep;
        int endptrick;
        if (i & 1) {
            j -= len;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        while (j != 0) {
            j += jstep;
            t = at(ch, j);
            const int p = at(endps, j - endptrick) ^ endptrick;
            if (t >= nvertex_) {
                augment_blossom(t, endpoint_[p]);
            }
            j += jstep;
            t = at(ch, j);
            if (t >= nvertex_) {
                augment_blossom(t, endpoint_[p ^ 1]);
            }
            mate_[endpoint_[p]] = p ^ 1;
            mate_[endpoint_[p ^ 1]] = p;
        }
        std::rotate(ch.begin(), ch.begin() + i, ch.end());
        std::rotate(endps.begin(), endps.begin() + i, endps.end());
        blossombase_[b] = blossombase_[ch[0]];
    }

    void augment_matching(int k) {
        const int v0 = std::get<0>(edges_[k]);
        const int w0 = std::get<1>(edges_[k]);
        for (auto [s, p] : {std::pair{v0, 2 * k + 1}, std::pair{w0, 2 * k}}) {
            while (true) {
                const int bs = inblossom_[s];
                if (bs >= nvertex_) {
                    augment_blossom(bs, s);
                }
                mate_[s] = p;
                if (labelend_[bs] == -1) {
                    break;
                }
                const int t = endpoint_[labelend_[bs]];
                const int bt = inblossom_[t];
                s = endpoint_[labelend_[bt]];
                const int j = endpoint_[labelend_[bt] ^ 1];
                if (bt >= nvertex_) {
                    augment_blossom(bt, j);
                }
                mate_[j] = labelend_[bt];
                p = labelend_[bt] ^ 1;
            }
        }
    }

    const std::vector<std::tuple<int, int, std::int64_t>> &edges_;
    bool max_cardinality_;
    int nedge_ = 0;
    int nvertex_ = 0;
    std::vector<int> endpoint_;
    std::vector<std::vector<int>> neighbend_;
    std::vector<int> mate_;
    std::vector<int> label_;
    std::vector<int> labelend_;
    std::vector<int> inblossom_;
    std::vector<int> blossomparent_;
    std::vector<std::vector<int>> blossomchilds_;
    std::vector<int> blossombase_;
    std::vector<std::vector<int>> blossomendps_;
    std::vector<int> bestedge_;
    std::vector<std::vector<int>> blossombestedges_;
    std::vector<bool> has_bestedges_;
    std::vector<int> unusedblossoms_;
    std::vector<std::int64_t> dualvar_;
    std::vector<bool> allowedge_;
    std::vector<int> queue_;
};

}  // namespace

std::vector<int> max_weight_matching(const std::vector<std::tuple<int, int, std::int64_t>> &edges,
                                     bool max_cardinality) {
    return Blossom(edges, max_cardinality).solve();
}

}  // namespace nestlab
