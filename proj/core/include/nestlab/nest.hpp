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

#ifndef NESTLAB_NEST_HPP
#define NESTLAB_NEST_HPP

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nestlab/circuit.hpp"
#include "nestlab/lattice.hpp"

namespace nestlab {

/// A syndrome site together with a doubled round index.
struct DetectionEvent {
    Coord site;
    int t = 0;

    auto operator<=>(const DetectionEvent &) const = default;
};

std::string to_string(const DetectionEvent &e);

/// Bit k refers to logical_operator_specs(layout)[k].
using LogicalMask = std::uint32_t;

struct Stick {
    DetectionEvent a;
    DetectionEvent b;
    double probability = 0.0;
    LogicalMask logical_flips = 0;
    /// b is a virtual site outside a planar patch.
    bool boundary = false;
    /// Carries a trailing "*" in the text format.
    bool marked = false;
};

/// What a nest was built from. Imported nests infer distance, boundary,
/// sector and rounds from the endpoints; p is then unknown and left at 0.
struct NestGeometry {
    int distance = 0;
    Boundary boundary = Boundary::kPlanar;
    PauliKind sector = PauliKind::kX;
    /// Noisy rounds. The last layer is t = 2 * (rounds - 1) for kTruncate
    /// windows and t = 2 * rounds when a perfect readout round closes them.
    int rounds = 0;
    double p = 0.0;
    bool closing_readout = false;

    int last_layer() const {
        return closing_readout ? 2 * rounds : 2 * (rounds - 1);
    }
};

class Nest {
   public:
    Nest() = default;
    explicit Nest(NestGeometry geometry) : geometry_(geometry) {}

    const NestGeometry &geometry() const {
        return geometry_;
    }
    const std::vector<Stick> &sticks() const {
        return sticks_;
    }
    std::size_t size() const {
        return sticks_.size();
    }
    bool empty() const {
        return sticks_.empty();
    }

    /// Adds a stick. Endpoints are stored in export orientation. Throws
    /// kInternalConsistency if the endpoint pair is already present.
    void add(Stick stick);
    const Stick *find(const DetectionEvent &a, const DetectionEvent &b) const;

    /// True if the site lies outside the syndrome range (planar boundary).
    bool is_virtual(const Coord &c) const;

   private:
    NestGeometry geometry_;
    std::vector<Stick> sticks_;
    std::map<std::pair<DetectionEvent, DetectionEvent>, std::size_t> index_;
};

/// Puts the endpoints of a stick into export orientation: the later event
/// first, on equal t the smaller site first, a virtual endpoint always second.
void orient_stick(Stick &stick);

/// Effect of one fault measured relative to the round it occurs in. `dt` is
/// 0 for a flip seen in that round and 2 for one seen only in the next.
struct RelativeEvent {
    std::uint32_t stabilizer = 0;
    int dt = 0;
};

struct FaultEffect {
    /// Indexed by PauliKind.
    std::array<std::vector<RelativeEvent>, 2> events;
    LogicalMask flips = 0;
};

/// Pauli-frame propagation of single faults. A fault in round r changes the
/// data frame only, so every effect is visible within rounds r and r + 1.
class FaultPropagator {
   public:
    explicit FaultPropagator(const RoundSchedule &schedule);

    FaultEffect effect(int step, std::uint32_t event, const FaultLabel &label) const;

    const RoundSchedule &schedule() const {
        return schedule_;
    }
    /// Mask bits owned by each sector: the classes whose error type that
    /// sector's stabilizers detect.
    LogicalMask sector_mask(PauliKind sector) const {
        return sector_mask_[static_cast<std::size_t>(sector)];
    }

   private:
    RoundSchedule schedule_;
    std::vector<LogicalOperatorSpec> specs_;
    /// Qubits of each class's partner support, read in that class's frame.
    std::vector<std::vector<std::uint32_t>> readout_;
    std::array<LogicalMask, 2> sector_mask_{};
};

struct PropagationResult {
    std::array<std::vector<DetectionEvent>, 2> events;
    LogicalMask flips = 0;
};

/// Absolute detection events of one fault. Only rounds [0, rounds) are
/// measured, so a fault in the last round may show a single event.
PropagationResult propagate_fault(const RoundSchedule &schedule, const FaultLocation &fault, int rounds);

/// Probability that exactly one of two independent events occurs.
double compose_xor(double p1, double p2);

enum class TimeBoundary : std::uint8_t {
    /// Drop every fault with an event past the last measured round.
    kTruncate,
    /// Close the window with one noise-free readout round at t = 2 * rounds.
    kPerfectReadout,
};

enum class StickAggregation : std::uint8_t { kLinear, kXor };

struct NestOptions {
    TimeBoundary time_boundary = TimeBoundary::kTruncate;
    StickAggregation aggregation = StickAggregation::kLinear;
};

/// Virtual endpoint for a single event. Which side is decided by the fault's
/// flip on the class cut by the low boundary.
DetectionEvent boundary_partner(const CodeLayout &layout, PauliKind sector, const DetectionEvent &event, bool low_side);

Nest build_nest(const RoundSchedule &schedule, int rounds, double p, PauliKind sector, const NestOptions &options = {});

/// Largest number of sticks meeting at one endpoint.
std::size_t max_stick_degree(const Nest &nest);

struct ZigzagViolation {
    int di = 0;
    int dj = 0;
};

struct ZigzagReport {
    std::size_t diagonal_sticks = 0;
    std::vector<ZigzagViolation> violations;
    bool ok() const {
        return violations.empty();
    }
};

ZigzagReport verify_no_zigzag(const Nest &nest);

/// Closed paths of exactly d sticks winding once around the given direction,
/// counted once each among those whose lowest layer is a fixed interior one.
std::size_t count_min_nontrivial_cycles(const Nest &nest, Homology homology);

/// Text format: "[", one " [(i, j, t), (i, j, t), 0.ddddddd]," line per
/// stick (no comma on the last), "]".
std::string export_nest(const Nest &nest);
Nest import_nest(const std::string &text);

}  // namespace nestlab

#endif  // NESTLAB_NEST_HPP
