#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace kisim {

/// Native gate set of the target device: CNOT, RZ, SX, X, ID.
enum class GateKind : std::uint8_t { Cnot, Rz, Sx, X, Id };

struct Gate {
  GateKind kind{GateKind::Id};
  int q0{0};          // single-qubit target, or CNOT control
  int q1{-1};         // CNOT target, -1 otherwise
  double angle{0.0};  // RZ only, radians

  static Gate cnot(int control, int target) {
    return Gate{GateKind::Cnot, control, target, 0.0};
  }
  static Gate rz(int qubit, double angle) {
    return Gate{GateKind::Rz, qubit, -1, angle};
  }
  static Gate sx(int qubit) { return Gate{GateKind::Sx, qubit, -1, 0.0}; }
  static Gate x(int qubit) { return Gate{GateKind::X, qubit, -1, 0.0}; }
  static Gate id(int qubit) { return Gate{GateKind::Id, qubit, -1, 0.0}; }

  bool is_two_qubit() const { return kind == GateKind::Cnot; }
  bool touches(int qubit) const { return q0 == qubit || q1 == qubit; }
  bool operator==(const Gate&) const = default;
};

/// Ordered native-gate instruction stream. Gate order is execution order:
/// gates are applied to states left to right.
///
/// `barriers` marks step boundaries in a concatenated multi-step circuit
/// (gate index at which a Floquet step ends); the trajectory engine attaches
/// readout-duration relaxation there. An empty list means a single segment.
struct Circuit {
  int num_qubits{0};
  std::vector<Gate> gates;
  std::string label;
  std::vector<std::size_t> barriers;

  Circuit() = default;
  explicit Circuit(int n, std::string lbl = {})
      : num_qubits(n), label(std::move(lbl)) {}

  std::size_t size() const { return gates.size(); }

  /// Appends after validating operands; throws std::out_of_range with the
  /// offending index otherwise.
  void append(const Gate& g);
  void append(const Circuit& other);
};

/// append as a pure function: returns a copy with `g` at the end.
Circuit append(Circuit circuit, const Gate& g);

/// Reverses the circuit, inverting each gate. RZ(a) -> RZ(-a); CNOT, X, ID
/// are self-inverse; SX is replaced by RZ(pi) SX RZ(pi), which equals SX
/// dagger up to global phase, so the output stays in the native gate set.
Circuit dagger(const Circuit& circuit);

/// Inverse of a single gate, as a (possibly multi-gate) native sequence.
std::vector<Gate> dagger(const Gate& g);

/// ASAP layering: each gate sits in the earliest layer after every earlier
/// gate that shares a qubit with it. Layers partition the gate list.
struct LayerSchedule {
  std::vector<std::vector<std::size_t>> layers;  // gate indices per layer
  std::vector<std::size_t> layer_of_gate;

  std::size_t depth() const { return layers.size(); }
};

LayerSchedule schedule_layers(const Circuit& circuit);

/// Longest-path gate tallies over the dependency DAG, used for the per-step
/// noise exposure accounting. Two-qubit and one-qubit gates are maximised
/// separately. ID gates carry no weight.
struct GateCounts {
  long two_qubit_longest_path{0};
  long one_qubit_longest_path{0};
  long total_two_qubit{0};
  long total_one_qubit{0};

  bool operator==(const GateCounts&) const = default;
};

GateCounts critical_path_counts(const Circuit& circuit);

/// Per-qubit tallies of (two-qubit, one-qubit) gates touching each qubit;
/// this is the exposure that drives each Z_i's depolarizing decay.
struct QubitTally {
  long two_qubit{0};
  long one_qubit{0};
};
std::vector<QubitTally> per_qubit_tallies(const Circuit& circuit);

/// JSON round trip: {num_qubits, gates:[{kind, qubits, angle?}], label?,
/// barriers?}. Angles serialize as decimal radians.
std::string to_json(const Circuit& circuit);
Circuit circuit_from_json(const std::string& text);

const char* to_string(GateKind kind);

}  // namespace kisim
