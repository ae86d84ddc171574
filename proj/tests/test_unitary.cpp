#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kisim/circuit.hpp"
#include "kisim/transpiler.hpp"
#include "kisim/unitary.hpp"
#include "test_support.hpp"

using namespace kisim;

TEST_CASE("single-gate matrices") {
  Circuit x1(1);
  x1.append(Gate::x(0));
  const UnitaryMatrix ux = unitary_of(x1);
  CHECK(std::abs(ux.at(0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(ux.at(1, 0) - 1.0) < 1e-15);
  CHECK(std::abs(ux.at(0, 0)) < 1e-15);

  // CNOT applied twice is the identity.
  Circuit cc(2);
  cc.append(Gate::cnot(0, 1));
  cc.append(Gate::cnot(0, 1));
  CHECK(phase_aligned_distance(unitary_of(cc), UnitaryMatrix::identity(2)) <
        1e-14);
}

TEST_CASE("little-endian convention: X on qubit 0 flips the LSB") {
  Circuit c(2);
  c.append(Gate::x(0));
  const UnitaryMatrix u = unitary_of(c);
  // |00> -> |01>: column 0 has its amplitude in row 1.
  CHECK(std::abs(u.at(1, 0) - 1.0) < 1e-15);
  CHECK(std::abs(u.at(3, 2) - 1.0) < 1e-15);
}

TEST_CASE("three CNOTs make a SWAP") {
  const Circuit c = decompose_swap(2, 0);
  CHECK(phase_aligned_distance(unitary_of(c), testing::swap_oracle()) < 1e-14);
}

TEST_CASE("dagger is an involution up to phase") {
  std::mt19937 gen(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Circuit c = testing::random_circuit(2, 12, gen);
    CHECK(phase_aligned_distance(unitary_of(dagger(dagger(c))),
                                 unitary_of(c)) < 1e-10);
  }
}

TEST_CASE("composing with the dagger gives the identity") {
  std::mt19937 gen(17);
  // Spec case: random 3-qubit, 10-gate circuit.
  Circuit c = testing::random_circuit(3, 10, gen);
  Circuit round = c;
  round.append(dagger(c));
  CHECK(phase_aligned_distance(unitary_of(round),
                               UnitaryMatrix::identity(3)) < 1e-10);

  // Property over widths up to 5.
  for (int n = 2; n <= 5; ++n) {
    Circuit r = testing::random_circuit(n, 8 * n, gen);
    Circuit rr = r;
    rr.append(dagger(r));
    CHECK(phase_aligned_distance(unitary_of(rr), UnitaryMatrix::identity(n)) <
          1e-10);
  }
}

TEST_CASE("SX dagger expansion matches the adjoint") {
  Circuit sx(1);
  sx.append(Gate::sx(0));
  Circuit round = sx;
  round.append(dagger(sx));
  CHECK(phase_aligned_distance(unitary_of(round), UnitaryMatrix::identity(1)) <
        1e-12);
}

TEST_CASE("unitary cap is enforced") {
  Circuit big(11);
  CHECK_THROWS_AS((void)unitary_of(big), std::invalid_argument);
  CHECK_NOTHROW((void)unitary_of(big, 11));
}

TEST_CASE("qubit permutation matrix moves bits") {
  // perm[0]=1, perm[1]=0 on 2 qubits is the SWAP.
  const UnitaryMatrix p = qubit_permutation_matrix({1, 0});
  CHECK(phase_aligned_distance(p, testing::swap_oracle()) < 1e-15);
}
