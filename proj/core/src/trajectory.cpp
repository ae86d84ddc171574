#include "kisim/trajectory.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "kisim/rng.hpp"

namespace kisim {

namespace {

using Cd = std::complex<double>;

/// Execution plan shared by every shot of one circuit: gates in layer-major
/// order (a valid topological order, so the unitary is unchanged), per-layer
/// damping, and readout windows at segment ends. Barriers fence scheduling.
struct ExecPlan {
  struct Op {
    Gate gate;
    std::uint32_t gate_index;  // original list index, keys the noise draws
  };
  struct Layer {
    std::vector<Op> ops;
    double dt_ns{0.0};
  };
  struct Segment {
    std::vector<Layer> layers;
    bool readout_window{false};
  };
  int num_qubits{0};
  std::vector<Segment> segments;
  bool damping_active{false};
  bool depolarizing_active{false};
};

ExecPlan build_plan(const Circuit& circuit, const NoiseModel& model) {
  ExecPlan plan;
  plan.num_qubits = circuit.num_qubits;
  plan.depolarizing_active = model.p1 > 0.0 || model.p2 > 0.0;
  for (const auto& [q, o] : model.per_qubit_overrides) {
    if (o.p1 && *o.p1 > 0.0) plan.depolarizing_active = true;
  }
  bool any_finite_t1 = std::isfinite(model.t1_us);
  for (const auto& [q, o] : model.per_qubit_overrides) {
    if (o.t1_us && std::isfinite(*o.t1_us)) any_finite_t1 = true;
  }
  plan.damping_active = any_finite_t1;

  std::vector<std::size_t> bounds = circuit.barriers;
  if (bounds.empty() || bounds.back() != circuit.gates.size()) {
    bounds.push_back(circuit.gates.size());
  }
  std::size_t start = 0;
  for (std::size_t bi = 0; bi < bounds.size(); ++bi) {
    const std::size_t end = bounds[bi];
    if (end > circuit.gates.size() || end < start) {
      throw std::invalid_argument("barrier index out of order");
    }
    ExecPlan::Segment segment;
    // Readout windows belong to the marked step boundaries only.
    segment.readout_window = bi < circuit.barriers.size();
    std::vector<std::size_t> frontier(circuit.num_qubits, 0);
    for (std::size_t i = start; i < end; ++i) {
      const Gate& g = circuit.gates[i];
      std::size_t layer = frontier[g.q0];
      if (g.kind == GateKind::Cnot) layer = std::max(layer, frontier[g.q1]);
      if (layer >= segment.layers.size()) segment.layers.resize(layer + 1);
      segment.layers[layer].ops.push_back(
          {g, static_cast<std::uint32_t>(i)});
      frontier[g.q0] = layer + 1;
      if (g.kind == GateKind::Cnot) frontier[g.q1] = layer + 1;
    }
    for (auto& layer : segment.layers) {
      for (const auto& op : layer.ops) {
        layer.dt_ns = std::max(layer.dt_ns, op.gate.is_two_qubit()
                                                ? model.tau_2q_ns
                                                : model.tau_1q_ns);
      }
    }
    plan.segments.push_back(std::move(segment));
    start = end;
  }
  return plan;
}

void apply_pauli(StateVector& state, int code, int qubit) {
  switch (code) {
    case 1: state.apply_pauli_x(qubit); break;
    case 2: state.apply_pauli_y(qubit); break;
    case 3: state.apply_pauli_z(qubit); break;
    default: break;
  }
}

void insert_gate_noise(StateVector& state, const ExecPlan::Op& op,
                       const NoiseModel& model, const Philox& rng,
                       std::uint32_t shot) {
  const Gate& g = op.gate;
  if (g.kind == GateKind::Cnot) {
    if (model.p2 <= 0.0) return;
    const double u = rng.uniform(shot, op.gate_index, 0, rng_tag::kGateNoise);
    if (u >= model.p2) return;
    const int pair = 1 + static_cast<int>(rng.below(
                             15, shot, op.gate_index, 0, rng_tag::kPauliPick));
    apply_pauli(state, pair >> 2, g.q0);
    apply_pauli(state, pair & 3, g.q1);
  } else if (g.kind != GateKind::Id) {
    const double p1 = model.p1_for(g.q0);
    if (p1 <= 0.0) return;
    const double u = rng.uniform(shot, op.gate_index, 0, rng_tag::kGateNoise);
    if (u >= p1) return;
    const int code = 1 + static_cast<int>(rng.below(
                             3, shot, op.gate_index, 0, rng_tag::kPauliPick));
    apply_pauli(state, code, g.q0);
  }
}

/// Two-outcome Kraus sampling of amplitude damping on one qubit with
/// probability p. The no-jump branch scales the |1> subspace by
/// sqrt(1-p); the jump branch moves it onto |0>. Both are renormalized in
/// the same pass.
void apply_damping(StateVector& state, int qubit, double p, double u) {
  const double w1 = state.one_weight(qubit);
  const double p_jump = p * w1;
  auto& amps = state.amplitudes();
  const std::size_t mask = std::size_t{1} << qubit;
  if (u < p_jump) {
    // K1 = sqrt(p)|0><1|: the |1> subspace lands on |0>, everything that
    // was already on |0> is annihilated.
    const double inv = 1.0 / std::sqrt(w1);
    for (std::size_t i = 0; i < amps.size(); ++i) {
      if (i & mask) {
        amps[i & ~mask] = amps[i] * inv;
        amps[i] = Cd(0, 0);
      }
    }
    return;
  }
  const double keep = std::sqrt(1.0 - p);
  const double inv = 1.0 / std::sqrt(1.0 - p_jump);
  const double one_factor = keep * inv;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    amps[i] *= (i & mask) ? one_factor : inv;
  }
}

void damp_all_qubits(StateVector& state, const NoiseModel& model,
                     double dt_ns, const Philox& rng, std::uint32_t shot,
                     std::uint32_t window_index) {
  if (dt_ns <= 0.0) return;
  for (int q = 0; q < state.num_qubits(); ++q) {
    const double t1 = model.t1_ns(q);
    if (!std::isfinite(t1)) continue;
    const double p = 1.0 - std::exp(-dt_ns / t1);
    if (p <= 0.0) continue;
    const double u = rng.uniform(shot, window_index, static_cast<std::uint32_t>(q),
                                 rng_tag::kDamping);
    apply_damping(state, q, p, u);
  }
}

StateVector run_plan(const ExecPlan& plan, const NoiseModel& model,
                     const Philox& rng, std::uint32_t shot) {
  StateVector state(plan.num_qubits);
  // Damping windows get indices above the gate range so the two keyed
  // streams cannot collide even though they share the shot counter.
  std::uint32_t window_index = 1u << 30;
  for (const auto& segment : plan.segments) {
    for (const auto& layer : segment.layers) {
      for (const auto& op : layer.ops) {
        state.apply(op.gate);
        if (plan.depolarizing_active) {
          insert_gate_noise(state, op, model, rng, shot);
        }
      }
      if (plan.damping_active) {
        damp_all_qubits(state, model, layer.dt_ns, rng, shot, window_index);
      }
      ++window_index;
    }
    if (segment.readout_window && plan.damping_active) {
      damp_all_qubits(state, model, model.tau_m_ns(), rng, shot, window_index);
    }
    ++window_index;
  }
  return state;
}

}  // namespace

std::vector<double> ShotTable::magnetizations() const {
  std::vector<double> ms;
  ms.reserve(rows.size());
  const double n = static_cast<double>(num_qubits);
  for (std::uint32_t row : rows) {
    const int ones = std::popcount(row);
    ms.push_back((n - 2.0 * ones) / n);
  }
  return ms;
}

StateVector run_trajectory(const Circuit& circuit, const NoiseModel& model,
                           std::uint64_t seed, std::uint32_t shot_index) {
  model.validate();
  const ExecPlan plan = build_plan(circuit, model);
  const Philox rng(seed);
  return run_plan(plan, model, rng, shot_index);
}

namespace {

void run_indexed(std::size_t count, int threads,
                 const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      body(i);
    }
  };
  std::vector<std::thread> pool;
  const int n = std::min<int>(threads, static_cast<int>(count));
  pool.reserve(n);
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace

std::vector<double> trajectory_mean_z(const Circuit& circuit,
                                      const NoiseModel& model,
                                      std::uint64_t seed, int trajectories,
                                      int threads) {
  model.validate();
  const ExecPlan plan = build_plan(circuit, model);
  const Philox rng(seed);
  std::vector<std::vector<double>> per_shot(trajectories);
  run_indexed(trajectories, threads, [&](std::size_t i) {
    const StateVector state =
        run_plan(plan, model, rng, static_cast<std::uint32_t>(i));
    per_shot[i] = state.z_expectations();
  });
  std::vector<double> mean(circuit.num_qubits, 0.0);
  for (const auto& z : per_shot) {
    for (int q = 0; q < circuit.num_qubits; ++q) mean[q] += z[q];
  }
  for (double& m : mean) m /= static_cast<double>(trajectories);
  return mean;
}

ShotTable sample_shots(const Circuit& circuit, const NoiseModel& model,
                       std::size_t shots, std::uint64_t seed,
                       const RelabelMap& relabel, int threads) {
  if (shots < 1) throw std::invalid_argument("need at least one shot");
  if (circuit.num_qubits > 32) {
    throw std::invalid_argument("shot rows support at most 32 qubits");
  }
  if (!relabel.perm.empty() &&
      relabel.size() != circuit.num_qubits) {
    throw std::invalid_argument("relabel map width does not match circuit");
  }
  model.validate();
  const ExecPlan plan = build_plan(circuit, model);
  const Philox rng(seed);
  const RelabelMap map = relabel.perm.empty()
                             ? RelabelMap::identity(circuit.num_qubits)
                             : relabel;

  ShotTable table;
  table.num_qubits = circuit.num_qubits;
  table.rows.assign(shots, 0);
  table.meta.seed = seed;
  table.meta.label = circuit.label;

  run_indexed(shots, threads, [&](std::size_t a) {
    const auto shot = static_cast<std::uint32_t>(a);
    const StateVector state = run_plan(plan, model, rng, shot);
    const double u = rng.uniform(shot, 0, 0, rng_tag::kMeasure);
    std::size_t outcome = state.sample_basis_state(u);
    for (int q = 0; q < circuit.num_qubits; ++q) {
      const double flip =
          rng.uniform(shot, 0, static_cast<std::uint32_t>(q), rng_tag::kReadout);
      if (flip < model.p_m_for(q)) outcome ^= std::size_t{1} << q;
    }
    std::uint32_t row = 0;
    for (int q = 0; q < circuit.num_qubits; ++q) {
      if ((outcome >> map.perm[q]) & 1u) row |= 1u << q;
    }
    table.rows[a] = row;
  });
  return table;
}

void write_shot_csv(const ShotTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  for (int q = 0; q < table.num_qubits; ++q) {
    out << (q ? "," : "") << 'q' << q;
  }
  out << '\n';
  for (std::size_t a = 0; a < table.shots(); ++a) {
    for (int q = 0; q < table.num_qubits; ++q) {
      out << (q ? "," : "") << table.bit(a, q);
    }
    out << '\n';
  }
}

std::string shot_sidecar_json(const ShotTable& table) {
  nlohmann::json j;
  j["num_qubits"] = table.num_qubits;
  j["shots"] = table.shots();
  j["seed"] = table.meta.seed;
  j["noise_scale"] = table.meta.noise_scale;
  j["steps"] = table.meta.steps;
  if (!table.meta.label.empty()) j["label"] = table.meta.label;
  return j.dump(2);
}

ShotTable read_shot_csv(const std::string& csv_path,
                        const std::string& sidecar_path) {
  std::ifstream sidecar(sidecar_path);
  if (!sidecar) throw std::runtime_error("cannot open " + sidecar_path);
  nlohmann::json j;
  sidecar >> j;

  ShotTable table;
  table.num_qubits = j.at("num_qubits").get<int>();
  table.meta.seed = j.at("seed").get<std::uint64_t>();
  table.meta.noise_scale = j.value("noise_scale", 1.0);
  table.meta.steps = j.value("steps", 0);
  table.meta.label = j.value("label", std::string{});

  std::ifstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot open " + csv_path);
  std::string line;
  std::getline(csv, line);  // header
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    std::uint32_t row = 0;
    int q = 0;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      if (cell == "1") row |= 1u << q;
      ++q;
    }
    if (q != table.num_qubits) {
      throw std::runtime_error("shot row width mismatch in " + csv_path);
    }
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace kisim
