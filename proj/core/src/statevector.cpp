#include "kisim/statevector.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace kisim {

namespace {
using Cd = std::complex<double>;
}

StateVector::StateVector(int num_qubits)
    : num_qubits_(num_qubits), amps_(std::size_t{1} << num_qubits, Cd(0, 0)) {
  amps_[0] = Cd(1, 0);
}

StateVector StateVector::zero_state(int num_qubits) {
  return StateVector(num_qubits);
}

void StateVector::apply_single(int qubit, const Cd m[4]) {
  const std::size_t stride = std::size_t{1} << qubit;
  const std::size_t dim = amps_.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      Cd& a0 = amps_[base + off];
      Cd& a1 = amps_[base + off + stride];
      const Cd t0 = m[0] * a0 + m[1] * a1;
      const Cd t1 = m[2] * a0 + m[3] * a1;
      a0 = t0;
      a1 = t1;
    }
  }
}

void StateVector::apply_pauli_x(int qubit) {
  const std::size_t stride = std::size_t{1} << qubit;
  const std::size_t dim = amps_.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      std::swap(amps_[base + off], amps_[base + off + stride]);
    }
  }
}

void StateVector::apply_pauli_y(int qubit) {
  const std::size_t stride = std::size_t{1} << qubit;
  const std::size_t dim = amps_.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      Cd& a0 = amps_[base + off];
      Cd& a1 = amps_[base + off + stride];
      const Cd t0 = Cd(0, -1) * a1;
      const Cd t1 = Cd(0, 1) * a0;
      a0 = t0;
      a1 = t1;
    }
  }
}

void StateVector::apply_pauli_z(int qubit) {
  const std::size_t mask = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & mask) amps_[i] = -amps_[i];
  }
}

void StateVector::apply(const Gate& g) {
  switch (g.kind) {
    case GateKind::Cnot: {
      // Swap the target pair within the control = 1 subspace.
      const std::size_t cmask = std::size_t{1} << g.q0;
      const std::size_t tmask = std::size_t{1} << g.q1;
      for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & cmask) && !(i & tmask)) {
          std::swap(amps_[i], amps_[i | tmask]);
        }
      }
      break;
    }
    case GateKind::Rz: {
      const Cd phase0 = std::exp(Cd(0, -g.angle / 2));
      const Cd phase1 = std::exp(Cd(0, g.angle / 2));
      const std::size_t mask = std::size_t{1} << g.q0;
      for (std::size_t i = 0; i < amps_.size(); ++i) {
        amps_[i] *= (i & mask) ? phase1 : phase0;
      }
      break;
    }
    case GateKind::Sx: {
      const Cd m[4] = {Cd(0.5, 0.5), Cd(0.5, -0.5), Cd(0.5, -0.5),
                       Cd(0.5, 0.5)};
      apply_single(g.q0, m);
      break;
    }
    case GateKind::X:
      apply_pauli_x(g.q0);
      break;
    case GateKind::Id:
      break;
  }
}

void StateVector::apply(const Circuit& circuit) {
  if (circuit.num_qubits != num_qubits_) {
    throw std::invalid_argument("circuit width does not match state");
  }
  for (const Gate& g : circuit.gates) apply(g);
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const Cd& a : amps_) acc += std::norm(a);
  return std::sqrt(acc);
}

void StateVector::renormalize() {
  const double n = norm();
  if (n == 0.0) throw std::runtime_error("cannot renormalize null state");
  const double inv = 1.0 / n;
  for (Cd& a : amps_) a *= inv;
}

std::vector<double> StateVector::z_expectations() const {
  std::vector<double> z(num_qubits_, 0.0);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    const double w = std::norm(amps_[i]);
    if (w == 0.0) continue;
    for (int q = 0; q < num_qubits_; ++q) {
      z[q] += ((i >> q) & 1u) ? -w : w;
    }
  }
  return z;
}

double StateVector::one_weight(int qubit) const {
  const std::size_t mask = std::size_t{1} << qubit;
  double w = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & mask) w += std::norm(amps_[i]);
  }
  return w;
}

std::size_t StateVector::sample_basis_state(double u) const {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < amps_.size(); ++i) {
    acc += std::norm(amps_[i]);
    if (u < acc) return i;
  }
  return amps_.size() - 1;
}

std::vector<double> exact_expectation_z(const Circuit& circuit, int repeats,
                                        int qubit_cap) {
  if (circuit.num_qubits > qubit_cap) {
    throw std::invalid_argument(
        "exact statevector cap exceeded: " +
        std::to_string(circuit.num_qubits) + " > " + std::to_string(qubit_cap) +
        " qubits");
  }
  if (repeats < 0) throw std::invalid_argument("repeats must be >= 0");
  StateVector state(circuit.num_qubits);
  for (int k = 0; k < repeats; ++k) state.apply(circuit);
  return state.z_expectations();
}

double exact_magnetization(const Circuit& circuit, int repeats,
                           int qubit_cap) {
  const auto z = exact_expectation_z(circuit, repeats, qubit_cap);
  double acc = std::accumulate(z.begin(), z.end(), 0.0);
  return acc / static_cast<double>(z.size());
}

}  // namespace kisim
