#pragma once

#include <complex>
#include <vector>

#include "kisim/circuit.hpp"

namespace kisim {

inline constexpr int kDefaultStateQubitCap = 14;

/// 2^N complex amplitudes, little-endian qubit order (qubit 0 is the least
/// significant bit of the amplitude index).
class StateVector {
 public:
  explicit StateVector(int num_qubits);

  /// |0...0>.
  static StateVector zero_state(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
  std::vector<std::complex<double>>& amplitudes() { return amps_; }

  void apply(const Gate& g);
  void apply(const Circuit& circuit);

  /// Generic 2x2 action on one qubit, row-major [m00 m01; m10 m11].
  void apply_single(int qubit, const std::complex<double> m[4]);

  void apply_pauli_x(int qubit);
  void apply_pauli_y(int qubit);
  void apply_pauli_z(int qubit);

  double norm() const;
  void renormalize();

  /// <Z_q> for every qubit, one pass over the state.
  std::vector<double> z_expectations() const;

  /// Probability weight of the |1> subspace of one qubit.
  double one_weight(int qubit) const;

  /// Basis-state sample from |amplitudes|^2 given a uniform draw in [0,1).
  std::size_t sample_basis_state(double u) const;

 private:
  int num_qubits_;
  std::vector<std::complex<double>> amps_;
};

/// Exact noiseless per-qubit <Z_i> after applying `circuit` `repeats` times
/// to |0...0>. Throws when num_qubits exceeds `qubit_cap`.
std::vector<double> exact_expectation_z(const Circuit& circuit, int repeats,
                                        int qubit_cap = kDefaultStateQubitCap);

/// Spatial average of exact_expectation_z.
double exact_magnetization(const Circuit& circuit, int repeats,
                           int qubit_cap = kDefaultStateQubitCap);

}  // namespace kisim
