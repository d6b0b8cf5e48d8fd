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

#ifndef NESTLAB_CIRCUIT_HPP
#define NESTLAB_CIRCUIT_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "nestlab/lattice.hpp"

namespace nestlab {

enum class GateKind : std::uint8_t { kInitZero, kHadamard, kCx, kMeasureZ, kIdle };

const char *gate_kind_name(GateKind kind);

/// One gate in one step of a round. For kCx, `qubit` is the control and
/// `target` the target; all other kinds act on `qubit` alone.
struct GateEvent {
    int step = 0;
    GateKind kind = GateKind::kIdle;
    std::uint32_t qubit = 0;
    std::uint32_t target = 0;
};

/// One round of simultaneous stabilizer measurement, eight steps long:
/// init, H, N, W, E, S interactions, H, measure. Z circuits idle in the H
/// slots, data qubits idle outside the interactions they take part in.
/// Every qubit appears in exactly one event per step.
class RoundSchedule {
   public:
    static constexpr int kStepsPerRound = 8;
    static constexpr int kFirstInteractionStep = 2;

    explicit RoundSchedule(CodeLayout layout);

    const CodeLayout &layout() const {
        return layout_;
    }
    const std::vector<GateEvent> &step(int s) const {
        return steps_[static_cast<std::size_t>(s)];
    }
    /// Index into step(s) of the event acting on qubit q.
    std::uint32_t event_of(int s, std::size_t q) const {
        return event_of_[static_cast<std::size_t>(s)][q];
    }
    std::size_t event_count() const;

   private:
    CodeLayout layout_;
    std::vector<std::vector<GateEvent>> steps_;
    std::vector<std::vector<std::uint32_t>> event_of_;
};

RoundSchedule build_round_schedule(const CodeLayout &layout);

enum class Pauli : std::uint8_t { kI = 0, kX = 1, kY = 2, kZ = 3 };

constexpr bool has_x(Pauli p) {
    return p == Pauli::kX || p == Pauli::kY;
}
constexpr bool has_z(Pauli p) {
    return p == Pauli::kZ || p == Pauli::kY;
}
char pauli_char(Pauli p);

/// Error applied after a gate. Init/measure faults are a classical flip;
/// one-qubit faults use `first`; two-qubit faults are control (first) x
/// target (second).
struct FaultLabel {
    Pauli first = Pauli::kI;
    Pauli second = Pauli::kI;
    bool flip = false;

    bool operator==(const FaultLabel &) const = default;
};

std::string to_string(const FaultLabel &label);

/// Full label set for a gate kind, in a fixed order. Two-qubit labels are
/// {I,X,Y,Z}^2 minus II in lexicographic order.
const std::vector<FaultLabel> &fault_labels(GateKind kind);

/// Probability of a single label on a gate of this kind at error rate p.
double label_probability(GateKind kind, double p);

struct FaultLocation {
    int round = 0;
    int step = 0;
    std::uint32_t event = 0;
    FaultLabel label;
    double probability = 0.0;
};

/// Every label of every gate in rounds [0, rounds), ordered by round, step,
/// event, label.
std::vector<FaultLocation> enumerate_fault_locations(const RoundSchedule &schedule, int rounds, double p);

double fault_probability(const FaultLocation &location);

}  // namespace nestlab

#endif  // NESTLAB_CIRCUIT_HPP
