#include "kisim/unitary.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace kisim {

namespace {

using Cd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

Eigen::Map<Matrix> as_eigen(UnitaryMatrix& u) {
  const auto d = static_cast<Eigen::Index>(u.dim());
  return Eigen::Map<Matrix>(u.data.data(), d, d);
}

Eigen::Map<const Matrix> as_eigen(const UnitaryMatrix& u) {
  const auto d = static_cast<Eigen::Index>(u.dim());
  return Eigen::Map<const Matrix>(u.data.data(), d, d);
}

Matrix single_qubit_matrix(const Gate& g) {
  Matrix m(2, 2);
  switch (g.kind) {
    case GateKind::Rz:
      m << std::exp(Cd(0, -g.angle / 2)), 0, 0, std::exp(Cd(0, g.angle / 2));
      break;
    case GateKind::Sx:
      m << Cd(0.5, 0.5), Cd(0.5, -0.5), Cd(0.5, -0.5), Cd(0.5, 0.5);
      break;
    case GateKind::X:
      m << 0, 1, 1, 0;
      break;
    case GateKind::Id:
      m << 1, 0, 0, 1;
      break;
    case GateKind::Cnot:
      throw std::logic_error("CNOT is not a single-qubit gate");
  }
  return m;
}

}  // namespace

UnitaryMatrix UnitaryMatrix::identity(int num_qubits) {
  UnitaryMatrix u;
  u.num_qubits = num_qubits;
  u.data.assign(u.dim() * u.dim(), Cd(0, 0));
  for (std::size_t i = 0; i < u.dim(); ++i) u.at(i, i) = 1.0;
  return u;
}

UnitaryMatrix gate_matrix(const Gate& g, int num_qubits) {
  UnitaryMatrix u;
  u.num_qubits = num_qubits;
  const std::size_t dim = u.dim();
  u.data.assign(dim * dim, Cd(0, 0));

  if (g.kind == GateKind::Cnot) {
    // Permutation matrix built entry-wise from the basis action.
    for (std::size_t x = 0; x < dim; ++x) {
      const std::size_t control_bit = (x >> g.q0) & 1u;
      const std::size_t y = control_bit ? x ^ (std::size_t{1} << g.q1) : x;
      u.at(y, x) = 1.0;
    }
    return u;
  }

  const Matrix m = single_qubit_matrix(g);
  const std::size_t mask = std::size_t{1} << g.q0;
  for (std::size_t x = 0; x < dim; ++x) {
    const std::size_t bx = (x & mask) ? 1 : 0;
    for (std::size_t by = 0; by < 2; ++by) {
      const Cd amp = m(static_cast<Eigen::Index>(by),
                       static_cast<Eigen::Index>(bx));
      if (amp == Cd(0, 0)) continue;
      const std::size_t y = by ? (x | mask) : (x & ~mask);
      u.at(y, x) = amp;
    }
  }
  return u;
}

UnitaryMatrix multiply(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.num_qubits != b.num_qubits) {
    throw std::invalid_argument("unitary dimension mismatch");
  }
  UnitaryMatrix out;
  out.num_qubits = a.num_qubits;
  out.data.resize(a.dim() * a.dim());
  as_eigen(out) = as_eigen(a) * as_eigen(b);
  return out;
}

UnitaryMatrix unitary_of(const Circuit& circuit, int qubit_cap) {
  if (circuit.num_qubits > qubit_cap) {
    throw std::invalid_argument(
        "dense unitary cap exceeded: " + std::to_string(circuit.num_qubits) +
        " > " + std::to_string(qubit_cap) + " qubits");
  }
  UnitaryMatrix u = UnitaryMatrix::identity(circuit.num_qubits);
  auto acc = as_eigen(u);
  for (const Gate& g : circuit.gates) {
    const UnitaryMatrix m = gate_matrix(g, circuit.num_qubits);
    acc = (as_eigen(m) * acc).eval();
  }
  return u;
}

double phase_aligned_distance(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.num_qubits != b.num_qubits) {
    throw std::invalid_argument("unitary dimension mismatch");
  }
  auto ea = as_eigen(a);
  auto eb = as_eigen(b);
  Eigen::Index row = 0;
  Eigen::Index col = 0;
  eb.cwiseAbs().maxCoeff(&row, &col);
  const Cd pivot = eb(row, col);
  if (std::abs(pivot) == 0.0) return (ea - eb).norm();
  const Cd phase = ea(row, col) / pivot;
  const double mag = std::abs(phase);
  if (mag == 0.0) return (ea - eb).norm();
  return (ea - (phase / mag) * eb).norm();
}

UnitaryMatrix qubit_permutation_matrix(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  UnitaryMatrix u;
  u.num_qubits = n;
  const std::size_t dim = u.dim();
  u.data.assign(dim * dim, Cd(0, 0));
  for (std::size_t x = 0; x < dim; ++x) {
    std::size_t y = 0;
    for (int q = 0; q < n; ++q) {
      if ((x >> q) & 1u) y |= std::size_t{1} << perm[q];
    }
    u.at(y, x) = 1.0;
  }
  return u;
}

}  // namespace kisim
