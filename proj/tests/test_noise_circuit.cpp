#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <map>
#include <set>

#include "lazydec/noise_circuit.h"

using namespace lazydec;

namespace {

struct Fixture {
  CodeLayout layout;
  CircuitSchedule schedule;
  explicit Fixture(int d) : layout(build_rotated_surface_code(d)), schedule(build_schedule(layout)) {}
};

}  // namespace

TEST(LocationTable, CensusMatchesSchedule) {
  const Fixture f(5);
  const LocationTable t(f.schedule);
  std::size_t events = 0, cnots = 0, meas = 0;
  for (const Timestep& ts : f.schedule.steps) {
    for (const GateEvent& e : ts.events) {
      ++events;
      cnots += e.kind == GateKind::Cnot;
      meas += e.kind == GateKind::MeasureAncilla;
    }
  }
  EXPECT_EQ(t.size(), events);
  EXPECT_EQ(t.count(LocationClass::TwoQubit), cnots);
  EXPECT_EQ(t.count(LocationClass::Measurement), meas);
  EXPECT_EQ(meas, 24u);
  EXPECT_EQ(t.gate_locations().size() + t.measurement_locations().size(), t.size());
  EXPECT_EQ(fault_choices(LocationClass::SingleQubit), 3);
  EXPECT_EQ(fault_choices(LocationClass::TwoQubit), 15);
  EXPECT_EQ(fault_choices(LocationClass::Measurement), 1);
}

TEST(SampleFaults, ZeroRateGivesNothing) {
  const Fixture f(5);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    EXPECT_TRUE(sample_faults(f.schedule, 5, NoiseParams{0.0, NoiseMode::CircuitLevel}, seed).empty());
  }
}

TEST(SampleFaults, RejectsPerfectMeasurementMode) {
  const Fixture f(3);
  EXPECT_THROW(sample_faults(f.schedule, 3, NoiseParams{1e-3, NoiseMode::PerfectMeasurement}, 1),
               std::invalid_argument);
}

TEST(SampleFaults, SortedAndNeverIdentity) {
  const Fixture f(5);
  const LocationTable table(f.schedule);
  const auto faults = sample_faults(f.schedule, 5, NoiseParams{0.05, NoiseMode::CircuitLevel}, 3);
  ASSERT_FALSE(faults.empty());
  for (std::size_t i = 0; i < faults.size(); ++i) {
    const FaultEvent& e = faults[i];
    EXPECT_NE(e.pauli, 0);
    EXPECT_LE(e.pauli, fault_choices(table.at(e.timestep, e.event).cls));
    if (i > 0) {
      const FaultEvent& a = faults[i - 1];
      EXPECT_TRUE(std::tie(a.round, a.timestep, a.event) < std::tie(e.round, e.timestep, e.event));
    }
  }
}

TEST(SampleFaults, Reproducible) {
  const Fixture f(5);
  const NoiseParams n{0.01, NoiseMode::CircuitLevel};
  EXPECT_EQ(sample_faults(f.schedule, 5, n, 99), sample_faults(f.schedule, 5, n, 99));
  EXPECT_NE(sample_faults(f.schedule, 5, n, 99), sample_faults(f.schedule, 5, n, 100));
}

TEST(SampleFaults, CnotPaulisUniformAtUnitRate) {
  const Fixture f(3);
  const LocationTable table(f.schedule);
  // First CNOT location of the round.
  std::uint16_t ts = 0;
  std::uint32_t ev = 0;
  bool found = false;
  for (const FaultLocation& loc : table.locations()) {
    if (loc.cls == LocationClass::TwoQubit) {
      ts = loc.timestep;
      ev = loc.event;
      found = true;
      break;
    }
  }
  ASSERT_TRUE(found);
  const FaultLocation& mloc = table.locations()[table.measurement_locations().front()];
  const FaultSampler sampler(f.schedule, 1, 1.0);
  constexpr int kSeeds = 100000;
  std::array<int, 16> hist{};
  std::array<int, 4> single{};
  int meas_flips = 0;
  std::vector<FaultEvent> out;
  for (int s = 0; s < kSeeds; ++s) {
    SplitMix64 rng = trial_stream(2024, static_cast<std::uint64_t>(s));
    sampler.sample(rng, out);
    int at_location = 0;
    for (const FaultEvent& e : out) {
      const LocationClass cls = table.at(e.timestep, e.event).cls;
      if (e.timestep == ts && e.event == ev) {
        ++hist[e.pauli];
        ++at_location;
      }
      if (cls == LocationClass::SingleQubit && e.timestep == 0 && e.event == 0) ++single[e.pauli];
      if (e.timestep == mloc.timestep && e.event == mloc.event) ++meas_flips;
    }
    EXPECT_EQ(at_location, 1);
  }
  EXPECT_EQ(hist[0], 0);
  const double mean = kSeeds / 15.0;
  const double sigma = std::sqrt(kSeeds * (1.0 / 15.0) * (14.0 / 15.0));
  for (int k = 1; k < 16; ++k) EXPECT_NEAR(hist[k], mean, 3.0 * sigma) << "pauli " << k;
  const double m3 = kSeeds / 3.0;
  const double s3 = std::sqrt(kSeeds * (2.0 / 9.0));
  for (int k = 1; k < 4; ++k) EXPECT_NEAR(single[k], m3, 3.0 * s3) << "pauli " << k;
  EXPECT_NEAR(meas_flips, 2.0 * kSeeds / 3.0, 3.0 * s3);
}

TEST(SampleFaults, MeanCountMatchesCensus) {
  const Fixture f(5);
  const LocationTable table(f.schedule);
  const double p = 1e-3;
  const int rounds = 5;
  const double gate = static_cast<double>(table.gate_locations().size());
  const double meas = static_cast<double>(table.measurement_locations().size());
  const double mean = rounds * (p * gate + (2.0 * p / 3.0) * meas);
  const double var = rounds * (gate * p * (1 - p) + meas * (2 * p / 3) * (1 - 2 * p / 3));
  constexpr int kSeeds = 100000;
  double total = 0;
  for (int s = 0; s < kSeeds; ++s) {
    total += static_cast<double>(sample_faults(f.schedule, rounds, NoiseParams{p, NoiseMode::CircuitLevel},
                                               static_cast<std::uint64_t>(s))
                                     .size());
  }
  EXPECT_NEAR(total / kSeeds, mean, 3.0 * std::sqrt(var / kSeeds));
}

TEST(SampleDataErrors, ExtremeRates) {
  const CodeLayout l = build_toric_code(5);
  EXPECT_TRUE(sample_data_errors(l, NoiseParams{0.0, NoiseMode::PerfectMeasurement}, 5).empty());
  const auto all = sample_data_errors(l, NoiseParams{1.0, NoiseMode::PerfectMeasurement}, 5);
  ASSERT_EQ(all.size(), l.num_data());
  for (QubitId q = 0; q < l.num_data(); ++q) EXPECT_EQ(all[q], q);
}

TEST(SampleDataErrors, MeanOnLargeTorus) {
  const CodeLayout l = build_toric_code(20);
  ASSERT_EQ(l.num_data(), 800u);
  const double p = 1e-3;
  constexpr int kSeeds = 100000;
  double total = 0;
  std::vector<QubitId> out;
  for (int s = 0; s < kSeeds; ++s) {
    SplitMix64 rng = trial_stream(11, static_cast<std::uint64_t>(s));
    sample_data_errors(l.num_data(), p, rng, out);
    for (std::size_t i = 1; i < out.size(); ++i) ASSERT_LT(out[i - 1], out[i]);
    total += static_cast<double>(out.size());
  }
  const double sigma = std::sqrt(800 * p * (1 - p) / kSeeds);
  EXPECT_NEAR(total / kSeeds, 0.8, 3.0 * sigma);
}

TEST(TrialStreams, DistinctTrialsDiffer) {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    SplitMix64 r = trial_stream(1, i);
    firsts.insert(r());
  }
  EXPECT_EQ(firsts.size(), 10000u);
  SplitMix64 a = trial_stream(1, 5), b = trial_stream(1, 5);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
}

TEST(Simulation, NoiselessCircuitHasNoFlips) {
  const Fixture f(5);
  const MeasurementRecord m = simulate_measurements(f.layout, f.schedule, 4, {}, 1);
  ASSERT_EQ(m.flips.size(), 5u);
  for (const auto& r : m.flips) {
    for (auto b : r) EXPECT_EQ(b, 0);
  }
  for (auto b : m.final_x) EXPECT_EQ(b, 0);
  for (auto b : m.final_z) EXPECT_EQ(b, 0);
}

TEST(Simulation, MeasurementFlipIsLocal) {
  const Fixture f(3);
  const LocationTable table(f.schedule);
  const std::uint32_t loc = table.measurement_locations().front();
  const FaultLocation& fl = table.locations()[loc];
  const FaultEvent flip{1, fl.timestep, fl.event, 1};
  const MeasurementRecord m = simulate_measurements(f.layout, f.schedule, 3, std::span(&flip, 1));
  int total = 0;
  for (std::size_t t = 0; t < m.flips.size(); ++t) {
    for (auto b : m.flips[t]) {
      total += b;
      if (b) EXPECT_EQ(t, 1u);
    }
  }
  EXPECT_EQ(total, 1);
}

TEST(Simulation, DataErrorPersists) {
  const Fixture f(3);
  // Z on data qubit 4 (the centre) after the final wait of round 0 flips both X-checks that hold it
  // in every later round.
  const Timestep& last = f.schedule.steps[CircuitSchedule::kMeasureStep];
  std::uint32_t ev = 0;
  for (; ev < last.events.size(); ++ev) {
    if (last.events[ev].kind == GateKind::Wait && last.events[ev].q0 == 4) break;
  }
  ASSERT_LT(ev, last.events.size());
  const FaultEvent z{0, static_cast<std::uint16_t>(CircuitSchedule::kMeasureStep), ev, kZ};
  const MeasurementRecord m = simulate_measurements(f.layout, f.schedule, 3, std::span(&z, 1));
  const auto raw = m.rounds_for(f.layout, Basis::X);
  int holders = 0;
  for (std::size_t c = 0; c < f.layout.num_checks(Basis::X); ++c) {
    const auto& sup = f.layout.check(Basis::X, c).support;
    const bool holds = std::find(sup.begin(), sup.end(), 4u) != sup.end();
    holders += holds;
    EXPECT_EQ(raw[0][c], 0);
    EXPECT_EQ(raw[1][c], holds ? 1 : 0);
    EXPECT_EQ(raw[2][c], holds ? 1 : 0);
  }
  EXPECT_EQ(holders, 2);
  EXPECT_EQ(m.final_z[4], 1);
  for (const auto& r : m.rounds_for(f.layout, Basis::Z)) {
    for (auto b : r) EXPECT_EQ(b, 0);
  }
}

TEST(Simulation, RejectsUnsortedFaults) {
  const Fixture f(3);
  const std::vector<FaultEvent> bad{{1, 0, 0, 1}, {0, 0, 0, 1}};
  EXPECT_THROW(simulate_measurements(f.layout, f.schedule, 2, bad), std::invalid_argument);
}
