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

#ifndef NESTLAB_LATTICE_HPP
#define NESTLAB_LATTICE_HPP

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nestlab {

enum class Boundary : std::uint8_t { kPlanar, kCyclic };

/// Pauli type of a stabilizer, of a logical operator, and of a nest sector.
enum class PauliKind : std::uint8_t { kX, kZ };

const char *boundary_name(Boundary boundary);
const char *pauli_kind_name(PauliKind kind);

/// Lattice site. X syndromes sit on (even i, odd j), Z syndromes on
/// (odd i, even j) and data qubits on i + j even. j runs left-right and
/// i runs top-bottom. Planar boundary sites lie one step outside the patch.
struct Coord {
    int i = 0;
    int j = 0;

    auto operator<=>(const Coord &) const = default;
};

std::string to_string(const Coord &c);

/// Interaction slots in schedule order. Offsets are (di, dj) from the
/// syndrome qubit to the data qubit it touches in that slot.
enum class Slot : std::uint8_t { kNorth, kWest, kEast, kSouth };
inline constexpr std::array<Slot, 4> kSlotOrder = {Slot::kNorth, Slot::kWest, Slot::kEast, Slot::kSouth};
inline constexpr std::array<Coord, 4> kSlotOffsets = {Coord{-1, 0}, Coord{0, -1}, Coord{0, 1}, Coord{1, 0}};

struct Stabilizer {
    PauliKind kind = PauliKind::kX;
    Coord syndrome;
    /// Data qubit touched in each slot (NWES order); empty on planar edges.
    std::array<std::optional<Coord>, 4> members;

    std::vector<Coord> support() const;
};

enum class Homology : std::uint8_t { kLeftRight, kTopBottom, kBoundaryToBoundary };

const char *homology_name(Homology h);

struct LogicalOperatorSpec {
    std::string label;
    PauliKind pauli = PauliKind::kX;
    std::vector<Coord> support;
    Homology homology = Homology::kBoundaryToBoundary;
    /// Index (into the same spec list) of the conjugate operator.
    std::size_t partner = 0;
};

/// Immutable description of a distance-d patch. Qubits are numbered X
/// syndromes first, then Z syndromes, then data, each block in (i, j) order.
class CodeLayout {
   public:
    CodeLayout(int distance, Boundary boundary, std::vector<Coord> data_qubits, std::vector<Stabilizer> stabilizers);

    int distance() const {
        return distance_;
    }
    Boundary boundary() const {
        return boundary_;
    }
    bool is_cyclic() const {
        return boundary_ == Boundary::kCyclic;
    }
    /// Side length of the coordinate box: 2d for cyclic, 2d - 1 for planar.
    int extent() const {
        return extent_;
    }

    const std::vector<Coord> &data_qubits() const {
        return data_;
    }
    const std::vector<Stabilizer> &stabilizers() const {
        return stabilizers_;
    }
    std::vector<std::size_t> stabilizers_of(PauliKind kind) const;
    std::size_t count(PauliKind kind) const;

    /// Canonical representative of c (reduced mod 2d for cyclic layouts).
    Coord wrap(Coord c) const;
    bool contains(Coord c) const;

    std::size_t qubit_count() const {
        return qubit_coords_.size();
    }
    std::optional<std::size_t> qubit_index(Coord c) const;
    const Coord &qubit_coord(std::size_t q) const {
        return qubit_coords_[q];
    }
    bool is_data_qubit(std::size_t q) const {
        return q >= stabilizers_.size();
    }
    /// Stabilizer whose syndrome qubit sits at c, if any.
    std::optional<std::size_t> stabilizer_at(Coord c) const;

   private:
    int distance_;
    Boundary boundary_;
    int extent_;
    std::vector<Coord> data_;
    std::vector<Stabilizer> stabilizers_;
    std::vector<Coord> qubit_coords_;
    std::vector<std::int32_t> grid_;
};

/// Builds the standard layout. Throws Error(kInvalidParameter) for d < 2.
CodeLayout build_layout(int distance, Boundary boundary);

/// Planar: {X, Z}. Cyclic: {X1, Z1, X2, Z2}. Every support has weight d.
std::vector<LogicalOperatorSpec> logical_operator_specs(const CodeLayout &layout);

struct CommutationViolation {
    std::size_t x_stabilizer;
    std::size_t z_stabilizer;
    std::size_t overlap;
};

struct CommutationReport {
    std::vector<CommutationViolation> violations;
    bool ok() const {
        return violations.empty();
    }
};

CommutationReport check_commutation(const CodeLayout &layout);

}  // namespace nestlab

#endif  // NESTLAB_LATTICE_HPP
