#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lazydec/code_model.h"
#include "lazydec/rng.h"

namespace lazydec {

/// Single-qubit Pauli as (x, z) bits: X = 1, Z = 2, Y = 3.
enum Pauli : std::uint8_t { kI = 0, kX = 1, kZ = 2, kY = 3 };

enum class NoiseMode { CircuitLevel, PerfectMeasurement };

struct NoiseParams {
  double p = 0.0;
  NoiseMode mode = NoiseMode::CircuitLevel;
};

enum class LocationClass : std::uint8_t { SingleQubit, TwoQubit, Measurement };

/// Number of non-trivial faults at a location of the given class (3, 15 or 1).
int fault_choices(LocationClass cls);

/// A Pauli fault injected right after one event of the scheduled circuit.
///
/// `pauli` encodes the fault: a Pauli for prep and wait events, `control | target << 2` for a
/// CNOT (1..15) and 1 for a flipped measurement.
struct FaultEvent {
  std::uint32_t round = 0;
  std::uint16_t timestep = 0;
  std::uint32_t event = 0;
  std::uint8_t pauli = 0;

  friend bool operator==(const FaultEvent&, const FaultEvent&) = default;
};

std::string pauli_label(LocationClass cls, std::uint8_t pauli);

struct FaultLocation {
  std::uint16_t timestep = 0;
  std::uint32_t event = 0;
  LocationClass cls = LocationClass::SingleQubit;
};

/// Flat census of the noisy locations of one round.
class LocationTable {
 public:
  explicit LocationTable(const CircuitSchedule& schedule);

  const std::vector<FaultLocation>& locations() const { return locations_; }
  std::size_t size() const { return locations_.size(); }
  std::size_t index_of(std::uint16_t timestep, std::uint32_t event) const {
    return step_offset_.at(timestep) + event;
  }
  const FaultLocation& at(std::uint16_t timestep, std::uint32_t event) const {
    return locations_[index_of(timestep, event)];
  }
  /// Locations faulted with probability p (prep, wait, CNOT).
  const std::vector<std::uint32_t>& gate_locations() const { return gate_locations_; }
  /// Locations flipped with probability 2p/3.
  const std::vector<std::uint32_t>& measurement_locations() const { return measurement_locations_; }
  std::size_t count(LocationClass cls) const;

 private:
  std::vector<FaultLocation> locations_;
  std::vector<std::size_t> step_offset_;
  std::vector<std::uint32_t> gate_locations_;
  std::vector<std::uint32_t> measurement_locations_;
};

/// Circuit-level sampler. Faults are drawn by geometric skipping, so the cost is proportional to
/// the number of faults rather than the number of locations.
class FaultSampler {
 public:
  FaultSampler(const CircuitSchedule& schedule, int rounds, double p);

  void sample(SplitMix64& rng, std::vector<FaultEvent>& out) const;
  const LocationTable& table() const { return table_; }
  int rounds() const { return rounds_; }

 private:
  LocationTable table_;
  int rounds_;
  double p_;
};

/// Circuit-level faults over `rounds` rounds, sorted by (round, timestep, event).
std::vector<FaultEvent> sample_faults(const CircuitSchedule& schedule, int rounds,
                                      const NoiseParams& noise, std::uint64_t seed);

/// Independent Z errors on data qubits with probability p (perfect-measurement mode).
std::vector<QubitId> sample_data_errors(const CodeLayout& layout, const NoiseParams& noise,
                                        std::uint64_t seed);
void sample_data_errors(std::size_t num_data, double p, SplitMix64& rng, std::vector<QubitId>& out);

/// Outcome of a direct Pauli-frame simulation of the whole circuit.
struct MeasurementRecord {
  /// flips[t][plaquette id]: measurement outcome differs from the noiseless circuit.
  std::vector<std::vector<std::uint8_t>> flips;
  std::vector<std::uint8_t> final_x;  // data frame after the last round
  std::vector<std::uint8_t> final_z;

  /// raw[t][basis-local check index] for one basis.
  std::vector<std::vector<std::uint8_t>> rounds_for(const CodeLayout& layout, Basis b) const;
};

/// Steps every event of every round, injecting `faults` after their events. `closing_rounds`
/// noiseless rounds are appended after the noisy ones.
MeasurementRecord simulate_measurements(const CodeLayout& layout, const CircuitSchedule& schedule,
                                        int rounds, std::span<const FaultEvent> faults,
                                        int closing_rounds = 0);

}  // namespace lazydec
