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

#include "nestlab/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "nestlab/error.hpp"

namespace nestlab {

namespace {

std::uint64_t splitmix64(std::uint64_t &x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t x = seed;
    std::uint64_t base = splitmix64(x);
    std::uint64_t y = stream ^ 0x632BE59BD9B4E019ULL;
    x = base ^ splitmix64(y);
    for (auto &w : s_) {
        w = splitmix64(x);
    }
}

Rng::result_type Rng::operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) {
        throw Error(ErrorCode::kInvalidParameter, "below(0)");
    }
    const std::uint64_t threshold = (0 - n) % n;
    while (true) {
        const std::uint64_t r = (*this)();
        if (r >= threshold) {
            return r % n;
        }
    }
}

void validate(const TrialConfig &config) {
    if (config.distance < 2) {
        throw Error(ErrorCode::kInvalidParameter, "distance must be >= 2");
    }
    if (config.boundary == Boundary::kCyclic && config.distance < 3) {
        throw Error(ErrorCode::kUnsupported, "cyclic simulation needs distance >= 3");
    }
    if (!(config.p >= 0.0 && config.p < 0.5)) {
        throw Error(ErrorCode::kInvalidParameter, "p must lie in [0, 0.5)");
    }
    if (config.rounds < 0) {
        throw Error(ErrorCode::kInvalidParameter, "rounds must be >= 1 (or 0 for the 2d default)");
    }
    if (config.trials < 1) {
        throw Error(ErrorCode::kInvalidParameter, "trials must be >= 1");
    }
}

const ClassEstimate &RateEstimate::at(const std::string &label) const {
    for (const auto &c : classes) {
        if (c.label == label) {
            return c;
        }
    }
    throw Error(ErrorCode::kInvalidParameter, "no estimate for class " + label);
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) {
        return {0.0, 1.0};
    }
    const double n = static_cast<double>(trials);
    const double k = static_cast<double>(successes);
    const double z2 = z * z;
    const double centre = (k + z2 / 2.0) / (n + z2);
    const double half = z / (n + z2) * std::sqrt(k * (n - k) / n + z2 / 4.0);
    Interval out{std::max(0.0, centre - half), std::min(1.0, centre + half)};
    // Keep the point estimate inside despite rounding at k = 0 or k = n.
    out.low = std::min(out.low, k / n);
    out.high = std::max(out.high, k / n);
    return out;
}

double per_round_rate(double f, int rounds) {
    if (rounds < 1) {
        throw Error(ErrorCode::kInvalidParameter, "rounds must be >= 1");
    }
    if (f < 0.1) {
        return f / rounds;
    }
    if (f >= 0.5) {
        return 0.5;
    }
    return (1.0 - std::pow(1.0 - 2.0 * f, 1.0 / rounds)) / 2.0;
}

ClassEstimate summarize(const std::string &label, std::uint64_t failures, std::uint64_t trials, int rounds) {
    ClassEstimate c;
    c.label = label;
    c.failures = failures;
    c.trials = trials;
    const double f = trials == 0 ? 0.0 : static_cast<double>(failures) / static_cast<double>(trials);
    const auto ci = wilson_interval(failures, trials);
    c.per_round_rate = per_round_rate(f, rounds);
    c.ci_low = per_round_rate(ci.low, rounds);
    c.ci_high = per_round_rate(ci.high, rounds);
    return c;
}

namespace {

struct LocationTable {
    std::vector<std::size_t> step_offset;
    std::size_t per_round = 0;

    explicit LocationTable(const RoundSchedule &schedule) {
        for (int s = 0; s < RoundSchedule::kStepsPerRound; ++s) {
            step_offset.push_back(per_round);
            per_round += schedule.step(s).size();
        }
        step_offset.push_back(per_round);
    }

    std::pair<int, std::uint32_t> locate(std::size_t local) const {
        auto it = std::upper_bound(step_offset.begin(), step_offset.end(), local);
        const int s = static_cast<int>(it - step_offset.begin()) - 1;
        return {s, static_cast<std::uint32_t>(local - step_offset[static_cast<std::size_t>(s)])};
    }
};

template <typename Visit>
void sample_locations(std::size_t total, double p, Rng &rng, Visit &&visit) {
    if (p <= 0.0 || total == 0) {
        return;
    }
    if (p >= 1.0) {
        for (std::size_t k = 0; k < total; ++k) {
            visit(k);
        }
        return;
    }
    const double log_keep = std::log1p(-p);
    std::size_t next = 0;
    while (true) {
        const double u = 1.0 - rng.uniform();
        const double gap = std::floor(std::log(u) / log_keep);
        if (gap >= static_cast<double>(total - next)) {
            return;
        }
        next += static_cast<std::size_t>(gap);
        visit(next);
        ++next;
        if (next >= total) {
            return;
        }
    }
}

std::size_t label_index(GateKind kind, const FaultLabel &label) {
    const auto &labels = fault_labels(kind);
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
        throw Error(ErrorCode::kInvalidParameter, "label " + to_string(label) + " not valid for " + gate_kind_name(kind));
    }
    return static_cast<std::size_t>(it - labels.begin());
}

}  // namespace

std::vector<SampledFault> sample_faults(const RoundSchedule &schedule, int rounds, double p, Rng &rng) {
    if (rounds < 0 || !(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::kInvalidParameter, "sample_faults needs rounds >= 0 and p in [0, 1]");
    }
    LocationTable table(schedule);
    std::vector<SampledFault> out;
    sample_locations(table.per_round * static_cast<std::size_t>(rounds), p, rng, [&](std::size_t k) {
        const auto [s, e] = table.locate(k % table.per_round);
        const auto &labels = fault_labels(schedule.step(s)[e].kind);
        out.push_back({static_cast<int>(k / table.per_round), s, e, labels[rng.below(labels.size())]});
    });
    return out;
}

DetectionRecord extract_detection_events(const RoundSchedule &schedule, const std::vector<SampledFault> &faults,
                                         int rounds) {
    const auto &layout = schedule.layout();
    const std::size_t nq = layout.qubit_count();
    const std::size_t ns = layout.stabilizers().size();
    constexpr int kSteps = RoundSchedule::kStepsPerRound;
    std::vector<std::vector<const SampledFault *>> at(static_cast<std::size_t>(rounds) * kSteps);
    for (const auto &f : faults) {
        if (f.round < 0 || f.round >= rounds || f.step < 0 || f.step >= kSteps ||
            f.event >= schedule.step(f.step).size()) {
            throw Error(ErrorCode::kInvalidParameter, "sampled fault outside the block");
        }
        label_index(schedule.step(f.step)[f.event].kind, f.label);
        at[static_cast<std::size_t>(f.round) * kSteps + f.step].push_back(&f);
    }

    std::vector<std::uint8_t> x(nq, 0);
    std::vector<std::uint8_t> z(nq, 0);
    std::vector<std::uint8_t> prev(ns, 0);
    std::vector<std::uint8_t> rec(ns, 0);
    DetectionRecord out;
    const auto &stabs = layout.stabilizers();
    for (int r = 0; r <= rounds; ++r) {
        for (int s = 0; s < kSteps; ++s) {
            for (const auto &g : schedule.step(s)) {
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
            if (r == rounds) {
                continue;
            }
            for (const auto *f : at[static_cast<std::size_t>(r) * kSteps + s]) {
                const auto &g = schedule.step(s)[f->event];
                if (f->label.flip) {
                    if (g.kind == GateKind::kMeasureZ) {
                        rec[g.qubit] ^= 1;
                    } else {
                        x[g.qubit] ^= 1;
                    }
                    continue;
                }
                x[g.qubit] ^= has_x(f->label.first) ? 1 : 0;
                z[g.qubit] ^= has_z(f->label.first) ? 1 : 0;
                if (g.kind == GateKind::kCx) {
                    x[g.target] ^= has_x(f->label.second) ? 1 : 0;
                    z[g.target] ^= has_z(f->label.second) ? 1 : 0;
                }
            }
        }
        for (std::size_t k = 0; k < ns; ++k) {
            if (rec[k] != prev[k]) {
                out.events[static_cast<std::size_t>(stabs[k].kind)].push_back({stabs[k].syndrome, 2 * r});
            }
        }
        prev = rec;
    }
    const auto specs = logical_operator_specs(layout);
    for (std::size_t k = 0; k < specs.size(); ++k) {
        const auto &frame = specs[k].pauli == PauliKind::kX ? x : z;
        unsigned parity = 0;
        for (const auto &c : specs[specs[k].partner].support) {
            parity ^= frame[*layout.qubit_index(c)];
        }
        if (parity != 0) {
            out.flips |= LogicalMask{1} << k;
        }
    }
    return out;
}

struct BlockSimulator::Impl {
    TrialConfig config;
    int rounds;
    RoundSchedule schedule;
    std::vector<LogicalOperatorSpec> specs;
    LocationTable table;
    FaultPropagator propagator;
    /// Effects of location l start at effect_offset[l]; one per label.
    std::vector<std::size_t> effect_offset;
    std::vector<std::uint8_t> label_count;
    std::vector<FaultEffect> effects;
    std::array<MatchingGraph, 2> graphs;
    /// node_at[sector][layer * ns + stabilizer], -1 where absent.
    std::array<std::vector<std::int32_t>, 2> node_at;
    std::array<bool, 2> decode_sector{};
    LogicalMask reported = 0;

    explicit Impl(const TrialConfig &c)
        : config(c),
          rounds(c.block_rounds()),
          schedule(build_round_schedule(build_layout(c.distance, c.boundary))),
          specs(logical_operator_specs(schedule.layout())),
          table(schedule),
          propagator(schedule) {
        for (int s = 0; s < RoundSchedule::kStepsPerRound; ++s) {
            const auto &events = schedule.step(s);
            for (std::uint32_t e = 0; e < events.size(); ++e) {
                effect_offset.push_back(effects.size());
                const auto &labels = fault_labels(events[e].kind);
                label_count.push_back(static_cast<std::uint8_t>(labels.size()));
                for (const auto &label : labels) {
                    effects.push_back(propagator.effect(s, e, label));
                }
            }
        }
        decode_sector[0] = c.sectors != SectorChoice::kZ;
        decode_sector[1] = c.sectors != SectorChoice::kX;
        const auto &stabs = schedule.layout().stabilizers();
        const std::size_t ns = stabs.size();
        for (std::size_t sector = 0; sector < 2; ++sector) {
            if (!decode_sector[sector]) {
                continue;
            }
            const auto kind = static_cast<PauliKind>(sector);
            reported |= propagator.sector_mask(kind);
            NestOptions options;
            options.time_boundary = TimeBoundary::kPerfectReadout;
            graphs[sector] = build_matching_graph(build_nest(schedule, rounds, c.p, kind, options));
            node_at[sector].assign(static_cast<std::size_t>(rounds + 1) * ns, -1);
            for (std::size_t k = 0; k < ns; ++k) {
                for (int layer = 0; layer <= rounds; ++layer) {
                    if (auto id = graphs[sector].node_of({stabs[k].syndrome, 2 * layer})) {
                        node_at[sector][static_cast<std::size_t>(layer) * ns + k] = static_cast<std::int32_t>(*id);
                    }
                }
            }
        }
    }

    struct Scratch {
        std::vector<std::uint8_t> grid;
        std::vector<std::size_t> touched;
    };

    void toggle(const FaultEffect &effect, int round, Scratch &scratch, LogicalMask &flips) const {
        const std::size_t ns = schedule.layout().stabilizers().size();
        for (const auto &list : effect.events) {
            for (const auto &ev : list) {
                const std::size_t cell = static_cast<std::size_t>(round + ev.dt / 2) * ns + ev.stabilizer;
                // Bit 1 marks the cell as touched, bit 0 holds the parity.
                if ((scratch.grid[cell] & 2) == 0) {
                    scratch.touched.push_back(cell);
                    scratch.grid[cell] = 2;
                }
                scratch.grid[cell] ^= 1;
            }
        }
        flips ^= effect.flips;
    }

    DetectionRecord collect(Scratch &scratch, LogicalMask flips) const {
        const auto &stabs = schedule.layout().stabilizers();
        const std::size_t ns = stabs.size();
        DetectionRecord out;
        out.flips = flips;
        std::sort(scratch.touched.begin(), scratch.touched.end());
        for (auto cell : scratch.touched) {
            if ((scratch.grid[cell] & 1) != 0) {
                const auto &st = stabs[cell % ns];
                out.events[static_cast<std::size_t>(st.kind)].push_back(
                    {st.syndrome, 2 * static_cast<int>(cell / ns)});
            }
            scratch.grid[cell] = 0;
        }
        scratch.touched.clear();
        for (auto &list : out.events) {
            std::sort(list.begin(), list.end(), [](const DetectionEvent &a, const DetectionEvent &b) {
                return std::tie(a.t, a.site) < std::tie(b.t, b.site);
            });
        }
        return out;
    }

    Scratch make_scratch() const {
        Scratch s;
        s.grid.assign(static_cast<std::size_t>(rounds + 1) * schedule.layout().stabilizers().size(), 0);
        return s;
    }
};

BlockSimulator::BlockSimulator(const TrialConfig &config) {
    validate(config);
    impl_ = std::make_unique<Impl>(config);
}

BlockSimulator::~BlockSimulator() = default;

int BlockSimulator::rounds() const {
    return impl_->rounds;
}

const std::vector<LogicalOperatorSpec> &BlockSimulator::classes() const {
    return impl_->specs;
}

LogicalMask BlockSimulator::reported_mask() const {
    return impl_->reported;
}

const RoundSchedule &BlockSimulator::schedule() const {
    return impl_->schedule;
}

const MatchingGraph &BlockSimulator::graph(PauliKind sector) const {
    return impl_->graphs[static_cast<std::size_t>(sector)];
}

DetectionRecord BlockSimulator::detection_events(const std::vector<SampledFault> &faults) const {
    const Impl &m = *impl_;
    auto scratch = m.make_scratch();
    LogicalMask flips = 0;
    for (const auto &f : faults) {
        if (f.round < 0 || f.round >= m.rounds || f.step < 0 || f.step >= RoundSchedule::kStepsPerRound ||
            f.event >= m.schedule.step(f.step).size()) {
            throw Error(ErrorCode::kInvalidParameter, "sampled fault outside the block");
        }
        const std::size_t loc = m.table.step_offset[static_cast<std::size_t>(f.step)] + f.event;
        const std::size_t li = label_index(m.schedule.step(f.step)[f.event].kind, f.label);
        m.toggle(m.effects[m.effect_offset[loc] + li], f.round, scratch, flips);
    }
    return m.collect(scratch, flips);
}

LogicalMask BlockSimulator::decode(const DetectionRecord &record) const {
    const Impl &m = *impl_;
    const std::size_t ns = m.schedule.layout().stabilizers().size();
    LogicalMask failed = 0;
    std::vector<std::size_t> nodes;
    for (std::size_t sector = 0; sector < 2; ++sector) {
        if (!m.decode_sector[sector]) {
            continue;
        }
        const LogicalMask mask = m.propagator.sector_mask(static_cast<PauliKind>(sector));
        if (record.events[sector].empty()) {
            failed |= record.flips & mask;
            continue;
        }
        nodes.clear();
        for (const auto &e : record.events[sector]) {
            auto k = m.schedule.layout().stabilizer_at(e.site);
            const int layer = e.t / 2;
            std::int32_t id = -1;
            if (k && layer >= 0 && layer <= m.rounds) {
                id = m.node_at[sector][static_cast<std::size_t>(layer) * ns + *k];
            }
            if (id < 0) {
                throw Error(ErrorCode::kInternalConsistency, "detection event " + to_string(e) + " has no graph node");
            }
            nodes.push_back(static_cast<std::size_t>(id));
        }
        const auto matching = mwpm(m.graphs[sector], nodes);
        failed |= (record.flips ^ matching_logical_parity(matching)) & mask;
    }
    return failed;
}

LogicalMask BlockSimulator::run(Rng &rng) const {
    const Impl &m = *impl_;
    thread_local Impl::Scratch scratch;
    const std::size_t cells = static_cast<std::size_t>(m.rounds + 1) * m.schedule.layout().stabilizers().size();
    if (scratch.grid.size() != cells) {
        scratch.grid.assign(cells, 0);
        scratch.touched.clear();
    }
    LogicalMask flips = 0;
    const std::size_t per_round = m.table.per_round;
    sample_locations(per_round * static_cast<std::size_t>(m.rounds), m.config.p, rng, [&](std::size_t k) {
        const std::size_t loc = k % per_round;
        const std::size_t li = rng.below(m.label_count[loc]);
        m.toggle(m.effects[m.effect_offset[loc] + li], static_cast<int>(k / per_round), scratch, flips);
    });
    return decode(m.collect(scratch, flips));
}

LogicalMask run_block_trial(const TrialConfig &config, Rng &rng) {
    return BlockSimulator(config).run(rng);
}

RateEstimate estimate_rates(const TrialConfig &config) {
    BlockSimulator sim(config);
    const auto &specs = sim.classes();
    const LogicalMask reported = sim.reported_mask();
    unsigned threads = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
    threads = std::max(1U, threads);

    std::vector<std::uint64_t> failures(specs.size(), 0);
    std::uint64_t done = 0;
    while (true) {
        std::uint64_t batch = config.trials;
        if (config.max_trials != 0) {
            batch = std::min(batch, config.max_trials - std::min(config.max_trials, done));
        }
        if (batch == 0) {
            break;
        }
        const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, batch));
        std::vector<std::vector<std::uint64_t>> local(workers, std::vector<std::uint64_t>(specs.size(), 0));
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t lo = done + batch * w / workers;
            const std::uint64_t hi = done + batch * (w + 1) / workers;
            pool.emplace_back([&, w, lo, hi] {
                try {
                    for (std::uint64_t trial = lo; trial < hi; ++trial) {
                        Rng rng(config.seed, trial);
                        const LogicalMask failed = sim.run(rng);
                        for (std::size_t k = 0; k < specs.size(); ++k) {
                            local[w][k] += (failed >> k) & 1U;
                        }
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto &t : pool) {
            t.join();
        }
        for (unsigned w = 0; w < workers; ++w) {
            if (errors[w]) {
                std::rethrow_exception(errors[w]);
            }
            for (std::size_t k = 0; k < specs.size(); ++k) {
                failures[k] += local[w][k];
            }
        }
        done += batch;
        if (config.target_failures == 0) {
            break;
        }
        bool enough = true;
        for (std::size_t k = 0; k < specs.size(); ++k) {
            if (((reported >> k) & 1U) != 0 && failures[k] < config.target_failures) {
                enough = false;
            }
        }
        if (enough) {
            break;
        }
    }

    RateEstimate out;
    out.config = config;
    out.rounds = sim.rounds();
    for (std::size_t k = 0; k < specs.size(); ++k) {
        if (((reported >> k) & 1U) != 0) {
            out.classes.push_back(summarize(specs[k].label, failures[k], done, out.rounds));
        }
    }
    return out;
}

}  // namespace nestlab
