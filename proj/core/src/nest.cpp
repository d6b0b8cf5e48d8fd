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

#include "nestlab/nest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <tuple>

#include "nestlab/error.hpp"

namespace nestlab {

std::string to_string(const DetectionEvent &e) {
    return "(" + std::to_string(e.site.i) + ", " + std::to_string(e.site.j) + ", " + std::to_string(e.t) + ")";
}

void orient_stick(Stick &stick) {
    if (stick.boundary) {
        return;
    }
    const auto &a = stick.a;
    const auto &b = stick.b;
    if (b.t > a.t || (b.t == a.t && b.site < a.site)) {
        std::swap(stick.a, stick.b);
    }
}

bool Nest::is_virtual(const Coord &c) const {
    if (geometry_.boundary == Boundary::kCyclic) {
        return false;
    }
    const int hi = 2 * geometry_.distance - 2;
    return c.i < 0 || c.j < 0 || c.i > hi || c.j > hi;
}

void Nest::add(Stick stick) {
    if (stick.a == stick.b) {
        throw Error(ErrorCode::kInternalConsistency, "degenerate stick at " + to_string(stick.a));
    }
    orient_stick(stick);
    auto key = std::minmax(stick.a, stick.b);
    if (index_.count(key) != 0) {
        throw Error(ErrorCode::kInternalConsistency,
                    "duplicate stick " + to_string(stick.a) + " - " + to_string(stick.b));
    }
    index_.emplace(key, sticks_.size());
    sticks_.push_back(stick);
}

const Stick *Nest::find(const DetectionEvent &a, const DetectionEvent &b) const {
    auto it = index_.find(std::minmax(a, b));
    return it == index_.end() ? nullptr : &sticks_[it->second];
}

FaultPropagator::FaultPropagator(const RoundSchedule &schedule)
    : schedule_(schedule), specs_(logical_operator_specs(schedule.layout())) {
    const auto &layout = schedule_.layout();
    for (std::size_t k = 0; k < specs_.size(); ++k) {
        std::vector<std::uint32_t> qubits;
        for (const auto &c : specs_[specs_[k].partner].support) {
            qubits.push_back(static_cast<std::uint32_t>(*layout.qubit_index(c)));
        }
        readout_.push_back(std::move(qubits));
        // X-type errors are seen by Z stabilizers and vice versa.
        auto sector = specs_[k].pauli == PauliKind::kX ? PauliKind::kZ : PauliKind::kX;
        sector_mask_[static_cast<std::size_t>(sector)] |= LogicalMask{1} << k;
    }
}

FaultEffect FaultPropagator::effect(int step, std::uint32_t event, const FaultLabel &label) const {
    const auto &layout = schedule_.layout();
    const std::size_t nq = layout.qubit_count();
    const std::size_t ns = layout.stabilizers().size();
    std::vector<std::uint8_t> x(nq, 0);
    std::vector<std::uint8_t> z(nq, 0);
    std::array<std::vector<std::uint8_t>, 2> record;
    record[0].assign(ns, 0);
    record[1].assign(ns, 0);

    const GateEvent &faulty = schedule_.step(step)[event];
    auto apply = [&](std::uint32_t q, Pauli p) {
        x[q] ^= has_x(p) ? 1 : 0;
        z[q] ^= has_z(p) ? 1 : 0;
    };

    for (int round = 0; round < 2; ++round) {
        auto &rec = record[static_cast<std::size_t>(round)];
        for (int s = round == 0 ? step : 0; s < RoundSchedule::kStepsPerRound; ++s) {
            for (const auto &g : schedule_.step(s)) {
                switch (g.kind) {
                    case GateKind::kInitZero:
                        x[g.qubit] = 0;
                        z[g.qubit] = 0;
                        break;
                    case GateKind::kHadamard:
                        std::swap(x[g.qubit], z[g.qubit]);
                        break;
                    case GateKind::kCx:
                        x[g.target] ^= x[g.qubit];
                        z[g.qubit] ^= z[g.target];
                        break;
                    case GateKind::kMeasureZ:
                        rec[g.qubit] = x[g.qubit];
                        break;
                    case GateKind::kIdle:
                        break;
                }
            }
            if (round == 0 && s == step) {
                if (label.flip) {
                    if (faulty.kind == GateKind::kMeasureZ) {
                        rec[faulty.qubit] ^= 1;
                    } else {
                        x[faulty.qubit] ^= 1;
                    }
                } else {
                    apply(faulty.qubit, label.first);
                    if (faulty.kind == GateKind::kCx) {
                        apply(faulty.target, label.second);
                    }
                }
            }
        }
    }

    FaultEffect out;
    const auto &stabs = layout.stabilizers();
    for (std::uint32_t k = 0; k < ns; ++k) {
        auto &list = out.events[static_cast<std::size_t>(stabs[k].kind)];
        if (record[0][k] != 0) {
            list.push_back({k, 0});
        }
        if (record[0][k] != record[1][k]) {
            list.push_back({k, 2});
        }
    }
    for (std::size_t k = 0; k < specs_.size(); ++k) {
        const auto &frame = specs_[k].pauli == PauliKind::kX ? x : z;
        unsigned parity = 0;
        for (auto q : readout_[k]) {
            parity ^= frame[q];
        }
        if (parity != 0) {
            out.flips |= LogicalMask{1} << k;
        }
    }
    return out;
}

PropagationResult propagate_fault(const RoundSchedule &schedule, const FaultLocation &fault, int rounds) {
    if (fault.round < 0 || fault.round >= rounds) {
        throw Error(ErrorCode::kInvalidParameter, "fault round outside [0, rounds)");
    }
    FaultPropagator prop(schedule);
    auto effect = prop.effect(fault.step, fault.event, fault.label);
    PropagationResult out;
    out.flips = effect.flips;
    const auto &stabs = schedule.layout().stabilizers();
    for (std::size_t sector = 0; sector < 2; ++sector) {
        for (const auto &e : effect.events[sector]) {
            const int t = 2 * fault.round + e.dt;
            if (t <= 2 * (rounds - 1)) {
                out.events[sector].push_back({stabs[e.stabilizer].syndrome, t});
            }
        }
    }
    return out;
}

double compose_xor(double p1, double p2) {
    return p1 + p2 - 2.0 * p1 * p2;
}

DetectionEvent boundary_partner(const CodeLayout &layout, PauliKind sector, const DetectionEvent &event, bool low_side) {
    const int hi = 2 * layout.distance() - 1;
    DetectionEvent out = event;
    int &axis = sector == PauliKind::kX ? out.site.j : out.site.i;
    axis = low_side ? -1 : hi;
    return out;
}

Nest build_nest(const RoundSchedule &schedule, int rounds, double p, PauliKind sector, const NestOptions &options) {
    const auto &layout = schedule.layout();
    const bool readout = options.time_boundary == TimeBoundary::kPerfectReadout;
    if (rounds < (readout ? 1 : 2)) {
        throw Error(ErrorCode::kInvalidParameter, "too few rounds for a nest");
    }
    if (!(p >= 0.0 && p < 0.5)) {
        throw Error(ErrorCode::kInvalidParameter, "p must lie in [0, 0.5)");
    }
    if (layout.is_cyclic() && layout.distance() < 3) {
        // Opposite sides of a d = 2 torus are the same neighbour, so distinct
        // chains would share a stick.
        throw Error(ErrorCode::kUnsupported, "cyclic nests need distance >= 3");
    }
    NestGeometry geometry{layout.distance(), layout.boundary(), sector, rounds, p, readout};
    Nest nest(geometry);
    if (p == 0.0) {
        return nest;
    }

    FaultPropagator prop(schedule);
    const LogicalMask mask = prop.sector_mask(sector);
    const auto &stabs = layout.stabilizers();
    const int last = geometry.last_layer();

    struct Template {
        std::vector<RelativeEvent> events;
        LogicalMask flips;
        double probability;
    };
    std::vector<Template> templates;
    for (int s = 0; s < RoundSchedule::kStepsPerRound; ++s) {
        const auto &events = schedule.step(s);
        for (std::uint32_t e = 0; e < events.size(); ++e) {
            const double w = label_probability(events[e].kind, p);
            for (const auto &label : fault_labels(events[e].kind)) {
                auto effect = prop.effect(s, e, label);
                auto &ev = effect.events[static_cast<std::size_t>(sector)];
                if (ev.empty()) {
                    continue;
                }
                if (ev.size() > 2) {
                    throw Error(ErrorCode::kInternalConsistency, "single fault produced more than two events");
                }
                templates.push_back({std::move(ev), effect.flips & mask, w});
            }
        }
    }

    struct Accum {
        Stick stick;
        bool seen = false;
    };
    std::map<std::pair<DetectionEvent, DetectionEvent>, Accum> acc;
    for (int r = 0; r < rounds; ++r) {
        for (const auto &tpl : templates) {
            std::array<DetectionEvent, 2> ev;
            bool beyond = false;
            for (std::size_t k = 0; k < tpl.events.size(); ++k) {
                ev[k] = {stabs[tpl.events[k].stabilizer].syndrome, 2 * r + tpl.events[k].dt};
                beyond = beyond || ev[k].t > last;
            }
            if (beyond) {
                continue;
            }
            Stick stick;
            stick.a = ev[0];
            if (tpl.events.size() == 2) {
                stick.b = ev[1];
            } else {
                if (layout.is_cyclic()) {
                    throw Error(ErrorCode::kInternalConsistency, "single detection event on a cyclic layout");
                }
                stick.b = boundary_partner(layout, sector, ev[0], tpl.flips != 0);
                stick.boundary = true;
            }
            stick.logical_flips = tpl.flips;
            auto &slot = acc[std::minmax(stick.a, stick.b)];
            if (!slot.seen) {
                slot.seen = true;
                slot.stick = stick;
                slot.stick.probability = tpl.probability;
                continue;
            }
            if (slot.stick.logical_flips != tpl.flips) {
                throw Error(ErrorCode::kInternalConsistency,
                            "faults disagree on logical flips for stick " + to_string(stick.a) + " - " + to_string(stick.b));
            }
            double &q = slot.stick.probability;
            q = options.aggregation == StickAggregation::kXor ? compose_xor(q, tpl.probability) : q + tpl.probability;
        }
    }
    for (auto &[key, slot] : acc) {
        nest.add(slot.stick);
    }
    return nest;
}

std::size_t max_stick_degree(const Nest &nest) {
    std::map<DetectionEvent, std::size_t> degree;
    std::size_t best = 0;
    for (const auto &s : nest.sticks()) {
        best = std::max(best, ++degree[s.a]);
        best = std::max(best, ++degree[s.b]);
    }
    return best;
}

namespace {

int minimal_image(int v, int period) {
    v %= period;
    if (v < 0) {
        v += period;
    }
    if (2 * v > period) {
        v -= period;
    }
    return v;
}

}  // namespace

ZigzagReport verify_no_zigzag(const Nest &nest) {
    const bool cyclic = nest.geometry().boundary == Boundary::kCyclic;
    const int period = 2 * nest.geometry().distance;
    std::map<std::pair<int, int>, unsigned> signs;
    ZigzagReport report;
    for (const auto &s : nest.sticks()) {
        if (s.boundary) {
            continue;
        }
        int di = s.b.site.i - s.a.site.i;
        int dj = s.b.site.j - s.a.site.j;
        int dt = s.b.t - s.a.t;
        if (cyclic) {
            di = minimal_image(di, period);
            dj = minimal_image(dj, period);
        }
        if ((di == 0 && dj == 0) || dt == 0) {
            continue;
        }
        ++report.diagonal_sticks;
        if (std::make_pair(di, dj) < std::make_pair(0, 0)) {
            di = -di;
            dj = -dj;
            dt = -dt;
        }
        signs[{di, dj}] |= dt > 0 ? 1U : 2U;
    }
    for (const auto &[cls, bits] : signs) {
        if (bits == 3U) {
            report.violations.push_back({cls.first, cls.second});
        }
    }
    return report;
}

namespace {

struct CycleSearch {
    struct Arc {
        std::size_t to;
        std::size_t stick;
        int along;
        int across;
        int dt;
    };

    std::vector<DetectionEvent> nodes;
    std::vector<std::vector<Arc>> adj;
    int length = 0;
    int wind = 0;
    int t0 = 0;
    std::size_t start = 0;
    std::vector<bool> on_path;
    std::vector<std::size_t> path;
    std::set<std::vector<std::size_t>> found;

    void dfs(std::size_t v, int steps, int along, int across, int t) {
        const int left = length - steps;
        if (left == 0) {
            if (v == start && along != 0 && across == 0) {
                auto key = path;
                std::sort(key.begin(), key.end());
                found.insert(std::move(key));
            }
            return;
        }
        for (const auto &arc : adj[v]) {
            const int na = along + arc.along;
            const int nc = across + arc.across;
            const int nt = t + arc.dt;
            if (nodes[arc.to].t < t0) {
                continue;
            }
            if (arc.to == start ? left != 1 : on_path[arc.to]) {
                continue;
            }
            // Each stick moves at most 2 in space and time.
            const int reach = 2 * (left - 1);
            if (std::min(std::abs(wind - na), std::abs(wind + na)) > reach || std::abs(nc) > reach ||
                std::abs(nt - t0) > reach) {
                continue;
            }
            on_path[arc.to] = true;
            path.push_back(arc.stick);
            dfs(arc.to, steps + 1, na, nc, nt);
            path.pop_back();
            on_path[arc.to] = false;
        }
    }
};

}  // namespace

std::size_t count_min_nontrivial_cycles(const Nest &nest, Homology homology) {
    const auto &g = nest.geometry();
    if (g.boundary != Boundary::kCyclic) {
        throw Error(ErrorCode::kUnsupportedBoundary, "cycle counting needs a cyclic nest");
    }
    if (homology == Homology::kBoundaryToBoundary) {
        throw Error(ErrorCode::kInvalidParameter, "homology must be left-right or top-bottom");
    }
    const int d = g.distance;
    const int period = 2 * d;
    const int last = g.last_layer();
    // Anchor in the middle layer; cycles of d sticks reach at most d layers up.
    const int t0 = 2 * (last / 4);
    if (t0 == 0 || t0 + 2 * (d / 2) >= last) {
        throw Error(ErrorCode::kInvalidParameter, "nest has too few rounds for an interior anchor layer");
    }

    CycleSearch search;
    search.length = d;
    search.wind = period;
    search.t0 = t0;
    std::map<DetectionEvent, std::size_t> id;
    auto node = [&](const DetectionEvent &e) {
        auto [it, inserted] = id.emplace(e, search.nodes.size());
        if (inserted) {
            search.nodes.push_back(e);
            search.adj.emplace_back();
        }
        return it->second;
    };
    const bool lr = homology == Homology::kLeftRight;
    const auto &sticks = nest.sticks();
    for (std::size_t k = 0; k < sticks.size(); ++k) {
        const auto &s = sticks[k];
        if (s.boundary) {
            continue;
        }
        const int di = minimal_image(s.b.site.i - s.a.site.i, period);
        const int dj = minimal_image(s.b.site.j - s.a.site.j, period);
        const int dt = s.b.t - s.a.t;
        const int along = lr ? dj : di;
        const int across = lr ? di : dj;
        const auto a = node(s.a);
        const auto b = node(s.b);
        search.adj[a].push_back({b, k, along, across, dt});
        search.adj[b].push_back({a, k, -along, -across, -dt});
    }
    search.on_path.assign(search.nodes.size(), false);
    for (std::size_t v = 0; v < search.nodes.size(); ++v) {
        if (search.nodes[v].t != t0) {
            continue;
        }
        search.start = v;
        search.dfs(v, 0, 0, 0, t0);
    }
    return search.found.size();
}

namespace {

struct ExportKey {
    std::tuple<int, int, int> owner;
    std::tuple<int, int, int, int> partner;

    auto operator<=>(const ExportKey &) const = default;
};

ExportKey export_key(const Nest &nest, const Stick &s) {
    const bool virt = nest.is_virtual(s.b.site);
    return {{s.a.t, s.a.site.i, s.a.site.j}, {s.b.site.i, virt ? 0 : 1, s.b.site.j, s.b.t}};
}

}  // namespace

std::string export_nest(const Nest &nest) {
    std::vector<const Stick *> order;
    order.reserve(nest.size());
    for (const auto &s : nest.sticks()) {
        order.push_back(&s);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](const Stick *x, const Stick *y) { return export_key(nest, *y) < export_key(nest, *x); });
    std::string out = "[\n";
    char buf[160];
    for (std::size_t k = 0; k < order.size(); ++k) {
        const Stick &s = *order[k];
        std::snprintf(buf, sizeof buf, " [(%d, %d, %d), (%d, %d, %d), %.7f]%s%s\n", s.a.site.i, s.a.site.j, s.a.t,
                      s.b.site.i, s.b.site.j, s.b.t, s.probability, k + 1 < order.size() ? "," : "",
                      s.marked ? " *" : "");
        out += buf;
    }
    out += "]\n";
    return out;
}

namespace {

struct ParsedLine {
    DetectionEvent a;
    DetectionEvent b;
    double probability = 0.0;
    bool marked = false;
    std::size_t line = 0;
};

ParsedLine parse_stick_line(const std::string &text, std::size_t line_no) {
    ParsedLine out;
    out.line = line_no;
    int used = 0;
    const int n = std::sscanf(text.c_str(), " [(%d, %d, %d), (%d, %d, %d), %lf]%n", &out.a.site.i, &out.a.site.j,
                              &out.a.t, &out.b.site.i, &out.b.site.j, &out.b.t, &out.probability, &used);
    if (n != 7 || used == 0 || text.rfind(" [(", 0) != 0) {
        throw ParseError(line_no, "expected ' [(i, j, t), (i, j, t), diameter]'");
    }
    std::string rest = text.substr(static_cast<std::size_t>(used));
    if (!rest.empty() && rest.front() == ',') {
        rest.erase(0, 1);
    }
    if (rest == " *") {
        out.marked = true;
    } else if (!rest.empty()) {
        throw ParseError(line_no, "unexpected trailing text '" + rest + "'");
    }
    if (!(out.probability >= 0.0 && out.probability <= 1.0)) {
        throw ParseError(line_no, "diameter outside [0, 1]");
    }
    if (out.a.t < 0 || out.b.t < 0 || out.a.t % 2 != 0 || out.b.t % 2 != 0) {
        throw ParseError(line_no, "time coordinates must be even and non-negative");
    }
    return out;
}

}  // namespace

Nest import_nest(const std::string &text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string::npos) {
            end = text.size();
        }
        std::string line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        lines.push_back(std::move(line));
        pos = end + 1;
    }
    while (!lines.empty() && lines.back().empty()) {
        lines.pop_back();
    }
    if (lines.empty() || lines.front() != "[") {
        throw ParseError(1, "expected '['");
    }
    if (lines.size() < 2 || lines.back() != "]") {
        throw ParseError(lines.size(), "expected ']'");
    }

    std::vector<ParsedLine> parsed;
    for (std::size_t k = 1; k + 1 < lines.size(); ++k) {
        parsed.push_back(parse_stick_line(lines[k], k + 1));
    }
    if (parsed.empty()) {
        return Nest();
    }

    int max_coord = 0;
    int max_t = 0;
    bool planar = false;
    for (const auto &p : parsed) {
        for (const auto *e : {&p.a, &p.b}) {
            max_coord = std::max({max_coord, e->site.i, e->site.j});
            planar = planar || e->site.i < 0 || e->site.j < 0;
        }
    }
    NestGeometry g;
    g.distance = (max_coord + 1) / 2;
    g.boundary = planar ? Boundary::kPlanar : Boundary::kCyclic;
    if (g.distance < 2) {
        throw ParseError(2, "coordinates too small for any distance >= 2");
    }
    Nest probe(g);
    bool sector_set = false;
    for (const auto &p : parsed) {
        for (const auto *e : {&p.a, &p.b}) {
            if (probe.is_virtual(e->site)) {
                continue;
            }
            max_t = std::max(max_t, e->t);
            const auto sector = e->site.i % 2 == 0 ? PauliKind::kX : PauliKind::kZ;
            const bool x_site = e->site.i % 2 == 0 && e->site.j % 2 != 0;
            const bool z_site = e->site.i % 2 != 0 && e->site.j % 2 == 0;
            if (!x_site && !z_site) {
                throw ParseError(p.line, "endpoint " + to_string(*e) + " is not a syndrome site");
            }
            if (sector_set && sector != g.sector) {
                throw ParseError(p.line, "endpoints from both stabilizer sectors");
            }
            g.sector = sector;
            sector_set = true;
        }
    }
    g.rounds = max_t / 2 + 1;

    Nest nest(g);
    for (const auto &p : parsed) {
        Stick s;
        s.a = p.a;
        s.b = p.b;
        s.probability = p.probability;
        s.marked = p.marked;
        const bool va = nest.is_virtual(p.a.site);
        const bool vb = nest.is_virtual(p.b.site);
        if (va && vb) {
            throw ParseError(p.line, "both endpoints are virtual");
        }
        if (va) {
            std::swap(s.a, s.b);
        }
        s.boundary = va || vb;
        try {
            nest.add(s);
        } catch (const Error &e) {
            throw ParseError(p.line, e.what());
        }
    }
    return nest;
}

}  // namespace nestlab
