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

#ifndef NESTLAB_MONTECARLO_HPP
#define NESTLAB_MONTECARLO_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "nestlab/circuit.hpp"
#include "nestlab/decoder.hpp"
#include "nestlab/lattice.hpp"
#include "nestlab/nest.hpp"

namespace nestlab {

/// xoshiro256** seeded through splitmix64 from (seed, stream), so trial k
/// of a run always sees the same numbers whatever the thread layout.
class Rng {
   public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }
    result_type operator()();
    /// Uniform on [0, 1).
    double uniform();
    /// Uniform on [0, n).
    std::uint64_t below(std::uint64_t n);

   private:
    std::array<std::uint64_t, 4> s_{};
};

enum class SectorChoice : std::uint8_t { kX, kZ, kBoth };

struct TrialConfig {
    int distance = 3;
    Boundary boundary = Boundary::kPlanar;
    double p = 1e-3;
    /// Noisy rounds per block; 0 means 2d.
    int rounds = 0;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    SectorChoice sectors = SectorChoice::kBoth;
    /// 0 means std::thread::hardware_concurrency().
    unsigned threads = 0;
    /// When nonzero, keep adding batches of `trials` until every reported
    /// class has this many failures or max_trials is reached.
    std::uint64_t target_failures = 0;
    std::uint64_t max_trials = 0;

    int block_rounds() const {
        return rounds > 0 ? rounds : 2 * distance;
    }
};

void validate(const TrialConfig &config);

struct ClassEstimate {
    std::string label;
    std::uint64_t failures = 0;
    std::uint64_t trials = 0;
    double per_round_rate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

struct RateEstimate {
    TrialConfig config;
    int rounds = 0;
    std::vector<ClassEstimate> classes;

    const ClassEstimate &at(const std::string &label) const;
};

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

inline constexpr double kZ95 = 1.959963984540054;

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ95);

/// f / R for f < 0.1, otherwise (1 - (1 - 2f)^(1/R)) / 2.
double per_round_rate(double block_fraction, int rounds);

struct SampledFault {
    int round = 0;
    int step = 0;
    std::uint32_t event = 0;
    FaultLabel label;
};

/// Every gate event of every round fails independently with probability p;
/// a failing event draws its label uniformly.
std::vector<SampledFault> sample_faults(const RoundSchedule &schedule, int rounds, double p, Rng &rng);

struct DetectionRecord {
    /// Indexed by PauliKind, sorted by (t, site).
    std::array<std::vector<DetectionEvent>, 2> events;
    /// Logical classes flipped by the physical error that remains.
    LogicalMask flips = 0;
};

/// Joint Pauli-frame simulation of all faults over `rounds` noisy rounds
/// and one perfect readout round. Round 0 compares against the clean state.
DetectionRecord extract_detection_events(const RoundSchedule &schedule, const std::vector<SampledFault> &faults,
                                         int rounds);

/// Everything a block trial needs that does not depend on the random draw:
/// a per-location table of single-fault effects and one decoding graph per
/// sector. Read-only after construction.
class BlockSimulator {
   public:
    explicit BlockSimulator(const TrialConfig &config);
    ~BlockSimulator();
    BlockSimulator(const BlockSimulator &) = delete;
    BlockSimulator &operator=(const BlockSimulator &) = delete;

    int rounds() const;
    const std::vector<LogicalOperatorSpec> &classes() const;
    /// Classes decoded under the configured sector choice.
    LogicalMask reported_mask() const;
    const RoundSchedule &schedule() const;
    const MatchingGraph &graph(PauliKind sector) const;

    /// Detection events of a sampled fault set, composed from the table.
    DetectionRecord detection_events(const std::vector<SampledFault> &faults) const;
    /// Decodes a record; returns the set of failed classes.
    LogicalMask decode(const DetectionRecord &record) const;
    /// Samples and decodes one block.
    LogicalMask run(Rng &rng) const;

   private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One block with fresh tables; prefer BlockSimulator::run in loops.
LogicalMask run_block_trial(const TrialConfig &config, Rng &rng);

RateEstimate estimate_rates(const TrialConfig &config);

/// Same conversion and intervals as estimate_rates, for a raw failure count.
ClassEstimate summarize(const std::string &label, std::uint64_t failures, std::uint64_t trials, int rounds);

}  // namespace nestlab

#endif  // NESTLAB_MONTECARLO_HPP
