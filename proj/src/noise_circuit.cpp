#include "lazydec/noise_circuit.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lazydec {

namespace {

LocationClass class_of(GateKind kind) {
  switch (kind) {
    case GateKind::Cnot: return LocationClass::TwoQubit;
    case GateKind::MeasureAncilla: return LocationClass::Measurement;
    default: return LocationClass::SingleQubit;
  }
}

// Visits the indices in [0, total) that fire independently with probability q.
template <typename Fn>
void skip_sample(std::uint64_t total, double q, SplitMix64& rng, Fn&& fn) {
  if (q <= 0.0 || total == 0) return;
  if (q >= 1.0) {
    for (std::uint64_t i = 0; i < total; ++i) fn(i);
    return;
  }
  const double log_keep = std::log1p(-q);
  std::uint64_t pos = 0;
  while (true) {
    const double u = 1.0 - rng.uniform();  // (0, 1]
    const double gap = std::floor(std::log(u) / log_keep);
    if (gap >= static_cast<double>(total - pos)) return;
    pos += static_cast<std::uint64_t>(gap);
    fn(pos);
    ++pos;
    if (pos >= total) return;
  }
}

void apply_pauli(std::vector<std::uint8_t>& x, std::vector<std::uint8_t>& z, QubitId q,
                 std::uint8_t pauli) {
  x[q] ^= pauli & 1u;
  z[q] ^= (pauli >> 1) & 1u;
}

}  // namespace

int fault_choices(LocationClass cls) {
  switch (cls) {
    case LocationClass::SingleQubit: return 3;
    case LocationClass::TwoQubit: return 15;
    case LocationClass::Measurement: return 1;
  }
  return 0;
}

std::string pauli_label(LocationClass cls, std::uint8_t pauli) {
  static constexpr const char* kNames[4] = {"I", "X", "Z", "Y"};
  switch (cls) {
    case LocationClass::SingleQubit: return kNames[pauli & 3u];
    case LocationClass::TwoQubit:
      return std::string(kNames[pauli & 3u]) + kNames[(pauli >> 2) & 3u];
    case LocationClass::Measurement: return pauli ? "flip" : "none";
  }
  return "?";
}

LocationTable::LocationTable(const CircuitSchedule& schedule) {
  step_offset_.reserve(schedule.steps.size());
  for (std::size_t s = 0; s < schedule.steps.size(); ++s) {
    step_offset_.push_back(locations_.size());
    const auto& events = schedule.steps[s].events;
    for (std::uint32_t e = 0; e < events.size(); ++e) {
      const LocationClass cls = class_of(events[e].kind);
      const auto flat = static_cast<std::uint32_t>(locations_.size());
      locations_.push_back({static_cast<std::uint16_t>(s), e, cls});
      if (cls == LocationClass::Measurement) {
        measurement_locations_.push_back(flat);
      } else {
        gate_locations_.push_back(flat);
      }
    }
  }
}

std::size_t LocationTable::count(LocationClass cls) const {
  return static_cast<std::size_t>(std::count_if(
      locations_.begin(), locations_.end(), [cls](const FaultLocation& l) { return l.cls == cls; }));
}

FaultSampler::FaultSampler(const CircuitSchedule& schedule, int rounds, double p)
    : table_(schedule), rounds_(rounds), p_(p) {
  if (rounds < 0) throw std::invalid_argument("rounds must be non-negative");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
}

void FaultSampler::sample(SplitMix64& rng, std::vector<FaultEvent>& out) const {
  out.clear();
  const auto rounds = static_cast<std::uint64_t>(rounds_);
  auto emit = [&](const std::vector<std::uint32_t>& list, std::uint64_t i) {
    const std::uint64_t r = i / list.size();
    const FaultLocation& loc = table_.locations()[list[i % list.size()]];
    const int choices = fault_choices(loc.cls);
    std::uint8_t pauli = 1;
    if (choices > 1) pauli = static_cast<std::uint8_t>(1 + rng() % static_cast<std::uint64_t>(choices));
    out.push_back({static_cast<std::uint32_t>(r), loc.timestep, loc.event, pauli});
  };
  const auto& gates = table_.gate_locations();
  const auto& meas = table_.measurement_locations();
  skip_sample(rounds * gates.size(), p_, rng, [&](std::uint64_t i) { emit(gates, i); });
  skip_sample(rounds * meas.size(), 2.0 * p_ / 3.0, rng, [&](std::uint64_t i) { emit(meas, i); });
  std::sort(out.begin(), out.end(), [](const FaultEvent& a, const FaultEvent& b) {
    if (a.round != b.round) return a.round < b.round;
    if (a.timestep != b.timestep) return a.timestep < b.timestep;
    return a.event < b.event;
  });
}

std::vector<FaultEvent> sample_faults(const CircuitSchedule& schedule, int rounds,
                                      const NoiseParams& noise, std::uint64_t seed) {
  if (noise.mode != NoiseMode::CircuitLevel) {
    throw std::invalid_argument("sample_faults needs circuit-level noise");
  }
  FaultSampler sampler(schedule, rounds, noise.p);
  SplitMix64 rng(seed);
  std::vector<FaultEvent> out;
  sampler.sample(rng, out);
  return out;
}

void sample_data_errors(std::size_t num_data, double p, SplitMix64& rng, std::vector<QubitId>& out) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  out.clear();
  skip_sample(num_data, p, rng, [&](std::uint64_t i) { out.push_back(static_cast<QubitId>(i)); });
}

std::vector<QubitId> sample_data_errors(const CodeLayout& layout, const NoiseParams& noise,
                                        std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<QubitId> out;
  sample_data_errors(layout.num_data(), noise.p, rng, out);
  return out;
}

std::vector<std::vector<std::uint8_t>> MeasurementRecord::rounds_for(const CodeLayout& layout,
                                                                     Basis b) const {
  const auto& ids = layout.checks[basis_index(b)];
  std::vector<std::vector<std::uint8_t>> out(flips.size(), std::vector<std::uint8_t>(ids.size()));
  for (std::size_t t = 0; t < flips.size(); ++t) {
    for (std::size_t i = 0; i < ids.size(); ++i) out[t][i] = flips[t][ids[i]];
  }
  return out;
}

MeasurementRecord simulate_measurements(const CodeLayout& layout, const CircuitSchedule& schedule,
                                        int rounds, std::span<const FaultEvent> faults,
                                        int closing_rounds) {
  const std::size_t nq = schedule.num_qubits;
  std::vector<std::uint8_t> x(nq, 0), z(nq, 0);
  MeasurementRecord rec;
  const int total = rounds + closing_rounds;
  rec.flips.assign(static_cast<std::size_t>(total), std::vector<std::uint8_t>(layout.num_plaquettes(), 0));

  std::size_t next = 0;
  for (int r = 0; r < total; ++r) {
    for (std::size_t s = 0; s < schedule.steps.size(); ++s) {
      const auto& events = schedule.steps[s].events;
      for (std::uint32_t e = 0; e < events.size(); ++e) {
        const GateEvent& ev = events[e];
        int measured = -1;
        std::uint32_t pid = 0;
        switch (ev.kind) {
          case GateKind::PrepAncilla:
            x[ev.q0] = 0;
            z[ev.q0] = 0;
            break;
          case GateKind::Cnot:
            x[ev.q1] ^= x[ev.q0];
            z[ev.q0] ^= z[ev.q1];
            break;
          case GateKind::MeasureAncilla:
            pid = static_cast<std::uint32_t>(ev.q0 - layout.num_data());
            measured = ev.basis == Basis::X ? z[ev.q0] : x[ev.q0];
            break;
          case GateKind::Wait:
            break;
        }
        while (next < faults.size() && faults[next].round == static_cast<std::uint32_t>(r) &&
               faults[next].timestep == s && faults[next].event == e) {
          const FaultEvent& f = faults[next++];
          switch (ev.kind) {
            case GateKind::Cnot:
              apply_pauli(x, z, ev.q0, f.pauli & 3u);
              apply_pauli(x, z, ev.q1, (f.pauli >> 2) & 3u);
              break;
            case GateKind::MeasureAncilla:
              measured ^= f.pauli & 1;
              break;
            default:
              apply_pauli(x, z, ev.q0, f.pauli);
              break;
          }
        }
        if (measured >= 0) rec.flips[static_cast<std::size_t>(r)][pid] = static_cast<std::uint8_t>(measured);
      }
    }
  }
  if (next != faults.size()) throw std::invalid_argument("faults are unsorted or out of range");
  rec.final_x.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(layout.num_data()));
  rec.final_z.assign(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(layout.num_data()));
  return rec;
}

}  // namespace lazydec
