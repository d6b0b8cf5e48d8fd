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

#include "nestlab/circuit.hpp"

#include <limits>

#include "nestlab/error.hpp"

namespace nestlab {

const char *gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::kInitZero:
            return "init_zero";
        case GateKind::kHadamard:
            return "hadamard";
        case GateKind::kCx:
            return "cx";
        case GateKind::kMeasureZ:
            return "measure_z";
        case GateKind::kIdle:
            return "idle";
    }
    return "?";
}

char pauli_char(Pauli p) {
    return "IXYZ"[static_cast<int>(p)];
}

std::string to_string(const FaultLabel &label) {
    if (label.flip) {
        return "flip";
    }
    std::string out(1, pauli_char(label.first));
    if (label.second != Pauli::kI || label.first == Pauli::kI) {
        out += pauli_char(label.second);
    }
    return out;
}

RoundSchedule::RoundSchedule(CodeLayout layout) : layout_(std::move(layout)) {
    const std::size_t nq = layout_.qubit_count();
    const auto &stabs = layout_.stabilizers();
    steps_.resize(kStepsPerRound);
    for (int s = 0; s < kStepsPerRound; ++s) {
        auto &events = steps_[static_cast<std::size_t>(s)];
        std::vector<bool> busy(nq, false);
        auto add = [&](GateKind kind, std::size_t q, std::size_t t = 0) {
            events.push_back({s, kind, static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(t)});
            busy[q] = true;
            if (kind == GateKind::kCx) {
                busy[t] = true;
            }
        };
        for (std::size_t k = 0; k < stabs.size(); ++k) {
            const bool x_type = stabs[k].kind == PauliKind::kX;
            switch (s) {
                case 0:
                    add(GateKind::kInitZero, k);
                    break;
                case 1:
                case 6:
                    add(x_type ? GateKind::kHadamard : GateKind::kIdle, k);
                    break;
                case 7:
                    add(GateKind::kMeasureZ, k);
                    break;
                default: {
                    const auto &member = stabs[k].members[static_cast<std::size_t>(s - kFirstInteractionStep)];
                    if (!member) {
                        add(GateKind::kIdle, k);
                        break;
                    }
                    std::size_t data = *layout_.qubit_index(*member);
                    if (busy[data]) {
                        throw Error(ErrorCode::kInternalConsistency,
                                    "data qubit " + to_string(*member) + " scheduled twice in step " + std::to_string(s));
                    }
                    if (x_type) {
                        add(GateKind::kCx, k, data);
                    } else {
                        add(GateKind::kCx, data, k);
                    }
                }
            }
        }
        for (std::size_t q = stabs.size(); q < nq; ++q) {
            if (!busy[q]) {
                add(GateKind::kIdle, q);
            }
        }
    }

    event_of_.assign(kStepsPerRound, std::vector<std::uint32_t>(nq, std::numeric_limits<std::uint32_t>::max()));
    for (int s = 0; s < kStepsPerRound; ++s) {
        const auto &events = steps_[static_cast<std::size_t>(s)];
        for (std::uint32_t e = 0; e < events.size(); ++e) {
            auto &slot = event_of_[static_cast<std::size_t>(s)];
            slot[events[e].qubit] = e;
            if (events[e].kind == GateKind::kCx) {
                slot[events[e].target] = e;
            }
        }
    }
}

std::size_t RoundSchedule::event_count() const {
    std::size_t n = 0;
    for (const auto &s : steps_) {
        n += s.size();
    }
    return n;
}

RoundSchedule build_round_schedule(const CodeLayout &layout) {
    return RoundSchedule(layout);
}

const std::vector<FaultLabel> &fault_labels(GateKind kind) {
    static const std::vector<FaultLabel> flip = {FaultLabel{Pauli::kI, Pauli::kI, true}};
    static const std::vector<FaultLabel> one = {
        FaultLabel{Pauli::kX, Pauli::kI, false},
        FaultLabel{Pauli::kY, Pauli::kI, false},
        FaultLabel{Pauli::kZ, Pauli::kI, false},
    };
    static const std::vector<FaultLabel> two = [] {
        std::vector<FaultLabel> out;
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                if (a == 0 && b == 0) {
                    continue;
                }
                out.push_back({static_cast<Pauli>(a), static_cast<Pauli>(b), false});
            }
        }
        return out;
    }();
    switch (kind) {
        case GateKind::kInitZero:
        case GateKind::kMeasureZ:
            return flip;
        case GateKind::kCx:
            return two;
        case GateKind::kHadamard:
        case GateKind::kIdle:
            return one;
    }
    return one;
}

double label_probability(GateKind kind, double p) {
    return p / static_cast<double>(fault_labels(kind).size());
}

std::vector<FaultLocation> enumerate_fault_locations(const RoundSchedule &schedule, int rounds, double p) {
    if (rounds < 1) {
        throw Error(ErrorCode::kInvalidParameter, "rounds must be >= 1");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::kInvalidParameter, "p must lie in [0, 1]");
    }
    std::vector<FaultLocation> out;
    for (int r = 0; r < rounds; ++r) {
        for (int s = 0; s < RoundSchedule::kStepsPerRound; ++s) {
            const auto &events = schedule.step(s);
            for (std::uint32_t e = 0; e < events.size(); ++e) {
                const double w = label_probability(events[e].kind, p);
                for (const auto &label : fault_labels(events[e].kind)) {
                    out.push_back({r, s, e, label, w});
                }
            }
        }
    }
    return out;
}

double fault_probability(const FaultLocation &location) {
    return location.probability;
}

}  // namespace nestlab
