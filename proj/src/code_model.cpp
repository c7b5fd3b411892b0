#include "lazydec/code_model.h"

#include <algorithm>
#include <stdexcept>

namespace lazydec {

namespace {

constexpr std::array<Direction, 4> kZCheckOrder = {kNorth, kWest, kEast, kSouth};
constexpr std::array<Direction, 4> kXCheckOrder = {kNorth, kEast, kWest, kSouth};

const std::array<Direction, 4>& cnot_order(Basis b) {
  return b == Basis::Z ? kZCheckOrder : kXCheckOrder;
}

// Sorts the plaquettes row-major within each basis, X-checks first, and fills ids and supports.
void finalize_plaquettes(CodeLayout& layout, std::vector<Plaquette> raw) {
  std::stable_sort(raw.begin(), raw.end(), [](const Plaquette& a, const Plaquette& b) {
    if (a.basis != b.basis) return a.basis < b.basis;
    if (a.center.y != b.center.y) return a.center.y < b.center.y;
    return a.center.x < b.center.x;
  });
  layout.plaquettes = std::move(raw);
  layout.checks = {};
  for (std::uint32_t id = 0; id < layout.plaquettes.size(); ++id) {
    Plaquette& pl = layout.plaquettes[id];
    pl.id = id;
    auto& list = layout.checks[basis_index(pl.basis)];
    pl.basis_index = static_cast<std::uint32_t>(list.size());
    list.push_back(id);
    pl.support.clear();
    for (Direction dir : cnot_order(pl.basis)) {
      if (pl.slots[dir] != kNoQubit) pl.support.push_back(pl.slots[dir]);
    }
  }
}

}  // namespace

std::string to_string(Basis b) { return b == Basis::X ? "X" : "Z"; }

std::string to_string(CodeKind kind) {
  return kind == CodeKind::RotatedSurface ? "rotated" : "toric";
}

CodeLayout build_rotated_surface_code(int distance) {
  if (distance < 3 || distance % 2 == 0) {
    throw std::invalid_argument("rotated surface code distance must be odd and >= 3");
  }
  const int d = distance;
  CodeLayout layout;
  layout.kind = CodeKind::RotatedSurface;
  layout.distance = d;
  layout.data_qubits.reserve(static_cast<std::size_t>(d * d));
  for (int y = 0; y < d; ++y) {
    for (int x = 0; x < d; ++x) layout.data_qubits.push_back({2 * x + 1, 2 * y + 1});
  }
  auto data_at = [d](int x, int y) -> QubitId {
    if (x < 0 || y < 0 || x >= d || y >= d) return kNoQubit;
    return static_cast<QubitId>(y * d + x);
  };

  std::vector<Plaquette> raw;
  for (int j = 0; j <= d; ++j) {
    for (int i = 0; i <= d; ++i) {
      const Basis basis = (i + j) % 2 == 0 ? Basis::X : Basis::Z;
      const bool interior_i = i >= 1 && i <= d - 1;
      const bool interior_j = j >= 1 && j <= d - 1;
      bool keep = false;
      if (interior_i && interior_j) {
        keep = true;
      } else if (interior_i && (j == 0 || j == d)) {
        keep = basis == Basis::X;
      } else if (interior_j && (i == 0 || i == d)) {
        keep = basis == Basis::Z;
      }
      if (!keep) continue;
      Plaquette pl;
      pl.basis = basis;
      pl.center = {2 * i, 2 * j};
      pl.slots[kNorth] = data_at(i - 1, j - 1);
      pl.slots[kEast] = data_at(i, j - 1);
      pl.slots[kSouth] = data_at(i, j);
      pl.slots[kWest] = data_at(i - 1, j);
      raw.push_back(pl);
    }
  }
  finalize_plaquettes(layout, std::move(raw));
  return layout;
}

CodeLayout build_toric_code(int distance) {
  if (distance < 3) throw std::invalid_argument("toric code distance must be >= 3");
  const int d = distance;
  const int period = 2 * d;
  CodeLayout layout;
  layout.kind = CodeKind::Toric2D;
  layout.distance = d;

  // Edge qubits sit where exactly one doubled coordinate is odd.
  std::vector<QubitId> id_at(static_cast<std::size_t>(period * period), kNoQubit);
  for (int y = 0; y < period; ++y) {
    for (int x = 0; x < period; ++x) {
      if ((x + y) % 2 == 1) {
        id_at[static_cast<std::size_t>(y * period + x)] = static_cast<QubitId>(layout.data_qubits.size());
        layout.data_qubits.push_back({x, y});
      }
    }
  }
  auto data_at = [&](int x, int y) {
    x = ((x % period) + period) % period;
    y = ((y % period) + period) % period;
    return id_at[static_cast<std::size_t>(y * period + x)];
  };

  std::vector<Plaquette> raw;
  for (int y = 0; y < period; y += 2) {
    for (int x = 0; x < period; x += 2) {
      Plaquette star;
      star.basis = Basis::X;
      star.center = {x, y};
      star.slots[kNorth] = data_at(x, y - 1);
      star.slots[kSouth] = data_at(x, y + 1);
      star.slots[kWest] = data_at(x - 1, y);
      star.slots[kEast] = data_at(x + 1, y);
      raw.push_back(star);

      Plaquette face;
      face.basis = Basis::Z;
      face.center = {x + 1, y + 1};
      face.slots[kNorth] = data_at(x + 1, y);
      face.slots[kSouth] = data_at(x + 1, y + 2);
      face.slots[kWest] = data_at(x, y + 1);
      face.slots[kEast] = data_at(x + 2, y + 1);
      raw.push_back(face);
    }
  }
  finalize_plaquettes(layout, std::move(raw));
  return layout;
}

std::vector<std::vector<QubitId>> CodeLayout::logical_cuts(Basis check_basis) const {
  std::vector<std::vector<QubitId>> cuts;
  auto collect = [this](auto&& pred) {
    std::vector<QubitId> out;
    for (QubitId q = 0; q < data_qubits.size(); ++q) {
      if (pred(data_qubits[q])) out.push_back(q);
    }
    return out;
  };
  if (kind == CodeKind::RotatedSurface) {
    // Z residuals must connect west to east, X residuals north to south.
    if (check_basis == Basis::X) {
      cuts.push_back(collect([](Coord c) { return c.x == 1; }));
    } else {
      cuts.push_back(collect([](Coord c) { return c.y == 1; }));
    }
  } else {
    if (check_basis == Basis::X) {
      cuts.push_back(collect([](Coord c) { return c.x == 1 && c.y % 2 == 0; }));
      cuts.push_back(collect([](Coord c) { return c.y == 1 && c.x % 2 == 0; }));
    } else {
      cuts.push_back(collect([](Coord c) { return c.y == 0 && c.x % 2 == 1; }));
      cuts.push_back(collect([](Coord c) { return c.x == 0 && c.y % 2 == 1; }));
    }
  }
  return cuts;
}

std::vector<std::vector<std::uint32_t>> checks_containing(const CodeLayout& layout, Basis b) {
  std::vector<std::vector<std::uint32_t>> out(layout.num_data());
  const auto& ids = layout.checks[basis_index(b)];
  for (std::uint32_t i = 0; i < ids.size(); ++i) {
    for (QubitId q : layout.plaquettes[ids[i]].support) out[q].push_back(i);
  }
  return out;
}

CircuitSchedule build_schedule(const CodeLayout& layout, double round_duration) {
  if (layout.plaquettes.empty()) throw std::invalid_argument("layout has no plaquettes");
  CircuitSchedule schedule;
  schedule.round_duration = round_duration;
  schedule.num_qubits = layout.num_qubits();
  schedule.num_data = layout.num_data();
  schedule.steps.resize(CircuitSchedule::kStepsPerRound);

  auto& prep = schedule.steps[CircuitSchedule::kPrepStep].events;
  for (const Plaquette& pl : layout.plaquettes) {
    prep.push_back({GateKind::PrepAncilla, pl.basis, layout.ancilla(pl.id), kNoQubit});
  }
  for (QubitId q = 0; q < layout.num_data(); ++q) prep.push_back({GateKind::Wait, Basis::X, q, kNoQubit});

  std::vector<char> busy(schedule.num_qubits);
  for (int layer = 0; layer < 4; ++layer) {
    auto& events = schedule.steps[static_cast<std::size_t>(1 + layer)].events;
    std::fill(busy.begin(), busy.end(), 0);
    for (const Plaquette& pl : layout.plaquettes) {
      const QubitId data = pl.slots[cnot_order(pl.basis)[static_cast<std::size_t>(layer)]];
      if (data == kNoQubit) continue;
      const QubitId anc = layout.ancilla(pl.id);
      if (busy[data] || busy[anc]) {
        throw std::logic_error("CNOT schedule touches a qubit twice in one layer");
      }
      busy[data] = busy[anc] = 1;
      if (pl.basis == Basis::X) {
        events.push_back({GateKind::Cnot, pl.basis, anc, data});
      } else {
        events.push_back({GateKind::Cnot, pl.basis, data, anc});
      }
    }
    for (QubitId q = 0; q < schedule.num_qubits; ++q) {
      if (!busy[q]) events.push_back({GateKind::Wait, Basis::X, q, kNoQubit});
    }
  }

  auto& measure = schedule.steps[CircuitSchedule::kMeasureStep].events;
  for (const Plaquette& pl : layout.plaquettes) {
    measure.push_back({GateKind::MeasureAncilla, pl.basis, layout.ancilla(pl.id), kNoQubit});
  }
  for (QubitId q = 0; q < layout.num_data(); ++q) {
    measure.push_back({GateKind::Wait, Basis::X, q, kNoQubit});
  }
  return schedule;
}

}  // namespace lazydec
