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

#include "nestlab/lattice.hpp"

#include <algorithm>

#include "nestlab/error.hpp"

namespace nestlab {

const char *boundary_name(Boundary boundary) {
    return boundary == Boundary::kPlanar ? "planar" : "cyclic";
}

const char *pauli_kind_name(PauliKind kind) {
    return kind == PauliKind::kX ? "X" : "Z";
}

const char *homology_name(Homology h) {
    switch (h) {
        case Homology::kLeftRight:
            return "left-right";
        case Homology::kTopBottom:
            return "top-bottom";
        case Homology::kBoundaryToBoundary:
            return "boundary-to-boundary";
    }
    return "?";
}

std::string to_string(const Coord &c) {
    return "(" + std::to_string(c.i) + ", " + std::to_string(c.j) + ")";
}

std::vector<Coord> Stabilizer::support() const {
    std::vector<Coord> out;
    for (const auto &m : members) {
        if (m) {
            out.push_back(*m);
        }
    }
    return out;
}

namespace {

int floor_mod(int a, int m) {
    int r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

CodeLayout::CodeLayout(int distance, Boundary boundary, std::vector<Coord> data_qubits,
                       std::vector<Stabilizer> stabilizers)
    : distance_(distance),
      boundary_(boundary),
      extent_(boundary == Boundary::kCyclic ? 2 * distance : 2 * distance - 1),
      data_(std::move(data_qubits)),
      stabilizers_(std::move(stabilizers)) {
    if (distance < 2) {
        throw Error(ErrorCode::kInvalidParameter, "distance must be >= 2, got " + std::to_string(distance));
    }
    grid_.assign(static_cast<std::size_t>(extent_) * extent_, -1);
    for (const auto &s : stabilizers_) {
        qubit_coords_.push_back(s.syndrome);
    }
    qubit_coords_.insert(qubit_coords_.end(), data_.begin(), data_.end());
    for (std::size_t q = 0; q < qubit_coords_.size(); ++q) {
        const Coord &c = qubit_coords_[q];
        if (!contains(c)) {
            throw Error(ErrorCode::kInvalidParameter, "qubit outside layout: " + to_string(c));
        }
        auto &slot = grid_[static_cast<std::size_t>(c.i) * extent_ + c.j];
        if (slot != -1) {
            throw Error(ErrorCode::kInvalidParameter, "duplicate qubit at " + to_string(c));
        }
        slot = static_cast<std::int32_t>(q);
    }
}

std::vector<std::size_t> CodeLayout::stabilizers_of(PauliKind kind) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < stabilizers_.size(); ++k) {
        if (stabilizers_[k].kind == kind) {
            out.push_back(k);
        }
    }
    return out;
}

std::size_t CodeLayout::count(PauliKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(stabilizers_.begin(), stabilizers_.end(), [&](const Stabilizer &s) { return s.kind == kind; }));
}

Coord CodeLayout::wrap(Coord c) const {
    if (boundary_ == Boundary::kCyclic) {
        return {floor_mod(c.i, extent_), floor_mod(c.j, extent_)};
    }
    return c;
}

bool CodeLayout::contains(Coord c) const {
    return c.i >= 0 && c.j >= 0 && c.i < extent_ && c.j < extent_;
}

std::optional<std::size_t> CodeLayout::qubit_index(Coord c) const {
    c = wrap(c);
    if (!contains(c)) {
        return std::nullopt;
    }
    std::int32_t q = grid_[static_cast<std::size_t>(c.i) * extent_ + c.j];
    if (q < 0) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(q);
}

std::optional<std::size_t> CodeLayout::stabilizer_at(Coord c) const {
    auto q = qubit_index(c);
    if (!q || is_data_qubit(*q)) {
        return std::nullopt;
    }
    return q;
}

CodeLayout build_layout(int distance, Boundary boundary) {
    if (distance < 2) {
        throw Error(ErrorCode::kInvalidParameter, "distance must be >= 2, got " + std::to_string(distance));
    }
    const bool cyclic = boundary == Boundary::kCyclic;
    const int extent = cyclic ? 2 * distance : 2 * distance - 1;
    auto in_patch = [&](Coord c) { return c.i >= 0 && c.j >= 0 && c.i < extent && c.j < extent; };

    std::vector<Coord> data;
    for (int i = 0; i < extent; ++i) {
        for (int j = 0; j < extent; ++j) {
            if ((i + j) % 2 == 0) {
                data.push_back({i, j});
            }
        }
    }

    std::vector<Stabilizer> stabilizers;
    auto add_sublattice = [&](PauliKind kind, int i0, int j0) {
        for (int i = i0; i < extent; i += 2) {
            for (int j = j0; j < extent; j += 2) {
                Stabilizer s;
                s.kind = kind;
                s.syndrome = {i, j};
                for (std::size_t k = 0; k < kSlotOffsets.size(); ++k) {
                    Coord m{i + kSlotOffsets[k].i, j + kSlotOffsets[k].j};
                    if (cyclic) {
                        m = {floor_mod(m.i, extent), floor_mod(m.j, extent)};
                    } else if (!in_patch(m)) {
                        continue;
                    }
                    s.members[k] = m;
                }
                stabilizers.push_back(s);
            }
        }
    };
    add_sublattice(PauliKind::kX, 0, 1);
    add_sublattice(PauliKind::kZ, 1, 0);
    return CodeLayout(distance, boundary, std::move(data), std::move(stabilizers));
}

std::vector<LogicalOperatorSpec> logical_operator_specs(const CodeLayout &layout) {
    const int d = layout.distance();
    auto row = [&](int i0, int j0, int di, int dj) {
        std::vector<Coord> support;
        for (int k = 0; k < d; ++k) {
            support.push_back({i0 + 2 * k * di, j0 + 2 * k * dj});
        }
        return support;
    };
    std::vector<LogicalOperatorSpec> specs;
    if (!layout.is_cyclic()) {
        // X runs down the j = 0 edge, Z along the i = 0 edge; they share (0, 0).
        specs.push_back({"X", PauliKind::kX, row(0, 0, 1, 0), Homology::kBoundaryToBoundary, 1});
        specs.push_back({"Z", PauliKind::kZ, row(0, 0, 0, 1), Homology::kBoundaryToBoundary, 0});
        return specs;
    }
    specs.push_back({"X1", PauliKind::kX, row(0, 0, 1, 0), Homology::kTopBottom, 1});
    specs.push_back({"Z1", PauliKind::kZ, row(0, 0, 0, 1), Homology::kLeftRight, 0});
    specs.push_back({"X2", PauliKind::kX, row(1, 1, 0, 1), Homology::kLeftRight, 3});
    specs.push_back({"Z2", PauliKind::kZ, row(1, 1, 1, 0), Homology::kTopBottom, 2});
    return specs;
}

CommutationReport check_commutation(const CodeLayout &layout) {
    CommutationReport report;
    const auto &stabs = layout.stabilizers();
    std::vector<std::vector<Coord>> supports;
    supports.reserve(stabs.size());
    for (const auto &s : stabs) {
        auto sup = s.support();
        std::sort(sup.begin(), sup.end());
        supports.push_back(std::move(sup));
    }
    for (std::size_t a = 0; a < stabs.size(); ++a) {
        if (stabs[a].kind != PauliKind::kX) {
            continue;
        }
        for (std::size_t b = 0; b < stabs.size(); ++b) {
            if (stabs[b].kind != PauliKind::kZ) {
                continue;
            }
            std::vector<Coord> common;
            std::set_intersection(supports[a].begin(), supports[a].end(), supports[b].begin(), supports[b].end(),
                                  std::back_inserter(common));
            if (common.size() % 2 != 0) {
                report.violations.push_back({a, b, common.size()});
            }
        }
    }
    return report;
}

}  // namespace nestlab
