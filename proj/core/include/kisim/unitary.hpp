#pragma once

#include <complex>
#include <vector>

#include "kisim/circuit.hpp"

namespace kisim {

/// Dense column-major 2^n x 2^n complex matrix. Qubit-to-bit convention is
/// little-endian throughout: qubit 0 is the least significant bit of the
/// basis-state index.
struct UnitaryMatrix {
  int num_qubits{0};
  std::vector<std::complex<double>> data;  // column-major, dim = 2^n

  std::size_t dim() const { return std::size_t{1} << num_qubits; }
  std::complex<double>& at(std::size_t row, std::size_t col) {
    return data[col * dim() + row];
  }
  const std::complex<double>& at(std::size_t row, std::size_t col) const {
    return data[col * dim() + row];
  }

  static UnitaryMatrix identity(int num_qubits);
};

inline constexpr int kDefaultUnitaryQubitCap = 10;

/// Product of the embedded gate matrices in execution order. Throws when the
/// circuit exceeds `qubit_cap` (dense evaluation is an oracle for small
/// systems, not a simulator).
UnitaryMatrix unitary_of(const Circuit& circuit,
                         int qubit_cap = kDefaultUnitaryQubitCap);

/// Single gate embedded into the full register.
UnitaryMatrix gate_matrix(const Gate& g, int num_qubits);

/// Frobenius distance min over unit phase of ||A - phase*B||_F. Phase is
/// aligned on the largest-magnitude entry of B.
double phase_aligned_distance(const UnitaryMatrix& a, const UnitaryMatrix& b);

/// Permutation matrix of a qubit relabeling: basis state |x> is mapped to
/// |y> with bit perm[q] of y equal to bit q of x.
UnitaryMatrix qubit_permutation_matrix(const std::vector<int>& perm);

UnitaryMatrix multiply(const UnitaryMatrix& a, const UnitaryMatrix& b);

}  // namespace kisim
