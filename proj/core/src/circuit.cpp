#include "kisim/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace kisim {

namespace {

void check_operand(int qubit, int num_qubits) {
  if (qubit < 0 || qubit >= num_qubits) {
    throw std::out_of_range("qubit " + std::to_string(qubit) +
                            " out of range");
  }
}

}  // namespace

void Circuit::append(const Gate& g) {
  check_operand(g.q0, num_qubits);
  if (g.kind == GateKind::Cnot) {
    check_operand(g.q1, num_qubits);
    if (g.q0 == g.q1) {
      throw std::invalid_argument("CNOT operands must be distinct");
    }
  }
  if (g.kind == GateKind::Rz && !std::isfinite(g.angle)) {
    throw std::invalid_argument("RZ angle must be finite");
  }
  gates.push_back(g);
}

void Circuit::append(const Circuit& other) {
  for (const Gate& g : other.gates) append(g);
}

Circuit append(Circuit circuit, const Gate& g) {
  circuit.append(g);
  return circuit;
}

std::vector<Gate> dagger(const Gate& g) {
  switch (g.kind) {
    case GateKind::Rz:
      return {Gate::rz(g.q0, -g.angle)};
    case GateKind::Sx:
      // SX^-1 = RZ(pi) SX RZ(pi) up to global phase; keeps the gate native.
      return {Gate::rz(g.q0, std::numbers::pi), Gate::sx(g.q0),
              Gate::rz(g.q0, std::numbers::pi)};
    case GateKind::Cnot:
    case GateKind::X:
    case GateKind::Id:
      return {g};
  }
  return {g};
}

Circuit dagger(const Circuit& circuit) {
  Circuit out(circuit.num_qubits, circuit.label.empty()
                                      ? std::string{}
                                      : circuit.label + "_dagger");
  out.gates.reserve(circuit.gates.size());
  for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
    for (const Gate& g : dagger(*it)) out.append(g);
  }
  return out;
}

LayerSchedule schedule_layers(const Circuit& circuit) {
  LayerSchedule sched;
  sched.layer_of_gate.resize(circuit.gates.size());
  std::vector<std::size_t> frontier(circuit.num_qubits, 0);  // next free layer
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    const Gate& g = circuit.gates[i];
    std::size_t layer = frontier[g.q0];
    if (g.kind == GateKind::Cnot) layer = std::max(layer, frontier[g.q1]);
    if (layer >= sched.layers.size()) sched.layers.resize(layer + 1);
    sched.layers[layer].push_back(i);
    sched.layer_of_gate[i] = layer;
    frontier[g.q0] = layer + 1;
    if (g.kind == GateKind::Cnot) frontier[g.q1] = layer + 1;
  }
  return sched;
}

GateCounts critical_path_counts(const Circuit& circuit) {
  GateCounts counts;
  // Longest weighted path ending at each gate; immediate predecessors are
  // the latest earlier gate on each operand qubit.
  std::vector<long> best2(circuit.gates.size(), 0);
  std::vector<long> best1(circuit.gates.size(), 0);
  std::vector<long> last(circuit.num_qubits, -1);
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    const Gate& g = circuit.gates[i];
    const bool two = g.is_two_qubit();
    const long w2 = two ? 1 : 0;
    const long w1 = (!two && g.kind != GateKind::Id) ? 1 : 0;
    counts.total_two_qubit += w2;
    counts.total_one_qubit += w1;
    long p2 = 0;
    long p1 = 0;
    if (last[g.q0] >= 0) {
      p2 = best2[last[g.q0]];
      p1 = best1[last[g.q0]];
    }
    if (two && last[g.q1] >= 0) {
      p2 = std::max(p2, best2[last[g.q1]]);
      p1 = std::max(p1, best1[last[g.q1]]);
    }
    best2[i] = p2 + w2;
    best1[i] = p1 + w1;
    counts.two_qubit_longest_path =
        std::max(counts.two_qubit_longest_path, best2[i]);
    counts.one_qubit_longest_path =
        std::max(counts.one_qubit_longest_path, best1[i]);
    last[g.q0] = static_cast<long>(i);
    if (two) last[g.q1] = static_cast<long>(i);
  }
  return counts;
}

std::vector<QubitTally> per_qubit_tallies(const Circuit& circuit) {
  std::vector<QubitTally> tallies(circuit.num_qubits);
  for (const Gate& g : circuit.gates) {
    if (g.kind == GateKind::Cnot) {
      ++tallies[g.q0].two_qubit;
      ++tallies[g.q1].two_qubit;
    } else if (g.kind != GateKind::Id) {
      ++tallies[g.q0].one_qubit;
    }
  }
  return tallies;
}

const char* to_string(GateKind kind) {
  switch (kind) {
    case GateKind::Cnot: return "cnot";
    case GateKind::Rz: return "rz";
    case GateKind::Sx: return "sx";
    case GateKind::X: return "x";
    case GateKind::Id: return "id";
  }
  return "?";
}

namespace {

GateKind kind_from_string(const std::string& s) {
  if (s == "cnot") return GateKind::Cnot;
  if (s == "rz") return GateKind::Rz;
  if (s == "sx") return GateKind::Sx;
  if (s == "x") return GateKind::X;
  if (s == "id") return GateKind::Id;
  throw std::invalid_argument("unknown gate kind: " + s);
}

}  // namespace

std::string to_json(const Circuit& circuit) {
  nlohmann::json j;
  j["num_qubits"] = circuit.num_qubits;
  j["gates"] = nlohmann::json::array();
  for (const Gate& g : circuit.gates) {
    nlohmann::json jg;
    jg["kind"] = to_string(g.kind);
    if (g.kind == GateKind::Cnot) {
      jg["qubits"] = {g.q0, g.q1};
    } else {
      jg["qubits"] = {g.q0};
    }
    if (g.kind == GateKind::Rz) jg["angle"] = g.angle;
    j["gates"].push_back(std::move(jg));
  }
  if (!circuit.label.empty()) j["label"] = circuit.label;
  if (!circuit.barriers.empty()) j["barriers"] = circuit.barriers;
  return j.dump(2);
}

Circuit circuit_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  Circuit circuit(j.at("num_qubits").get<int>());
  if (j.contains("label")) circuit.label = j["label"].get<std::string>();
  for (const auto& jg : j.at("gates")) {
    const GateKind kind = kind_from_string(jg.at("kind").get<std::string>());
    const auto& qubits = jg.at("qubits");
    Gate g;
    g.kind = kind;
    g.q0 = qubits.at(0).get<int>();
    if (kind == GateKind::Cnot) g.q1 = qubits.at(1).get<int>();
    if (kind == GateKind::Rz) g.angle = jg.at("angle").get<double>();
    circuit.append(g);
  }
  if (j.contains("barriers")) {
    circuit.barriers = j["barriers"].get<std::vector<std::size_t>>();
  }
  return circuit;
}

}  // namespace kisim
