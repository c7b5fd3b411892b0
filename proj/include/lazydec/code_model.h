#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace lazydec {

using QubitId = std::uint32_t;
inline constexpr QubitId kNoQubit = ~QubitId{0};

enum class CodeKind { RotatedSurface, Toric2D };

/// Check type of a plaquette. X-checks detect Z-type faults and Z-checks detect X-type faults.
enum class Basis : std::uint8_t { X = 0, Z = 1 };

inline constexpr std::array<Basis, 2> kBases = {Basis::X, Basis::Z};

inline constexpr int basis_index(Basis b) { return static_cast<int>(b); }
std::string to_string(Basis b);
std::string to_string(CodeKind kind);

/// Doubled lattice coordinates: y grows southwards.
struct Coord {
  int x = 0;
  int y = 0;
  friend auto operator<=>(const Coord&, const Coord&) = default;
};

/// Slots of a check's support. On the rotated code the compass is turned by 45 degrees, so
/// N, E, S, W name the NW, NE, SE and SW corners of the plaquette.
enum Direction : int { kNorth = 0, kWest = 1, kEast = 2, kSouth = 3 };

struct Plaquette {
  std::uint32_t id = 0;           // index into CodeLayout::plaquettes
  std::uint32_t basis_index = 0;  // row-major rank among the checks of the same basis
  Basis basis = Basis::X;
  Coord center;
  std::array<QubitId, 4> slots{kNoQubit, kNoQubit, kNoQubit, kNoQubit};  // by Direction
  std::vector<QubitId> support;   // data qubits in CNOT order
};

/// Qubit and check geometry of one code patch. Data qubits are numbered row-major, plaquettes
/// row-major per basis (all X-checks first), and ancilla i belongs to plaquette i.
struct CodeLayout {
  CodeKind kind = CodeKind::RotatedSurface;
  int distance = 0;
  std::vector<Coord> data_qubits;  // indexed by QubitId
  std::vector<Plaquette> plaquettes;
  std::array<std::vector<std::uint32_t>, 2> checks;  // plaquette ids per basis, row-major

  std::size_t num_data() const { return data_qubits.size(); }
  std::size_t num_plaquettes() const { return plaquettes.size(); }
  std::size_t num_qubits() const { return data_qubits.size() + plaquettes.size(); }
  std::size_t num_checks(Basis b) const { return checks[basis_index(b)].size(); }
  const Plaquette& check(Basis b, std::size_t i) const { return plaquettes[checks[basis_index(b)][i]]; }
  QubitId ancilla(std::uint32_t plaquette_id) const {
    return static_cast<QubitId>(data_qubits.size() + plaquette_id);
  }
  bool is_ancilla(QubitId q) const { return q >= data_qubits.size(); }

  /// Data-qubit sets whose parity reveals a logical residual for the given check basis. A residual
  /// that clears every check of that basis is a logical error iff it overlaps one set oddly.
  std::vector<std::vector<QubitId>> logical_cuts(Basis check_basis) const;
};

/// Rotated surface code: d x d data qubits, weight-4 bulk checks and weight-2 boundary checks.
/// X-checks sit on the north and south boundaries, Z-checks on the west and east ones.
CodeLayout build_rotated_surface_code(int distance);

/// Kitaev toric code on a periodic d x d lattice: qubits on edges, X-checks on vertices and
/// Z-checks on faces.
CodeLayout build_toric_code(int distance);

/// Per-basis check membership of each data qubit (basis-local check indices).
std::vector<std::vector<std::uint32_t>> checks_containing(const CodeLayout& layout, Basis b);

// ---------------------------------------------------------------------------------------------
// Syndrome-extraction circuit

enum class GateKind : std::uint8_t { PrepAncilla, Cnot, MeasureAncilla, Wait };

struct GateEvent {
  GateKind kind = GateKind::Wait;
  Basis basis = Basis::X;   // prep / measure basis
  QubitId q0 = kNoQubit;    // control for CNOT, the acted-on qubit otherwise
  QubitId q1 = kNoQubit;    // CNOT target
};

struct Timestep {
  std::vector<GateEvent> events;
};

/// One round of syndrome extraction: prep, four CNOT layers, measurement. Every qubit that is
/// not acted on in a timestep carries an explicit Wait event.
struct CircuitSchedule {
  std::vector<Timestep> steps;
  double round_duration = 1e-6;  // seconds per round
  std::size_t num_qubits = 0;
  std::size_t num_data = 0;

  static constexpr int kStepsPerRound = 6;
  static constexpr int kPrepStep = 0;
  static constexpr int kMeasureStep = 5;
};

/// CNOT order per check: Z-checks visit (N, W, E, S), X-checks (N, E, W, S).
CircuitSchedule build_schedule(const CodeLayout& layout, double round_duration = 1e-6);

}  // namespace lazydec
