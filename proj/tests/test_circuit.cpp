#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kisim/circuit.hpp"
#include "test_support.hpp"

using namespace kisim;

TEST_CASE("append validates operands and preserves order") {
  Circuit c(2);
  c.append(Gate::cnot(0, 1));
  CHECK(c.size() == 1);

  CHECK_THROWS_WITH_AS(c.append(Gate::x(3)), "qubit 3 out of range",
                       std::out_of_range);

  c.append(Gate::rz(1, 0.5));
  c.append(Gate::sx(0));
  c.append(Gate::x(1));
  REQUIRE(c.size() == 4);
  CHECK(c.gates[0].kind == GateKind::Cnot);
  CHECK(c.gates[1].kind == GateKind::Rz);
  CHECK(c.gates[2].kind == GateKind::Sx);
  CHECK(c.gates[3].kind == GateKind::X);

  const Circuit copy = append(c, Gate::id(0));
  CHECK(copy.size() == 5);
  CHECK(c.size() == 4);
}

TEST_CASE("dagger reverses and inverts gates") {
  Circuit c(2);
  c.append(Gate::cnot(0, 1));
  c.append(Gate::rz(1, 0.7));

  const Circuit inv = dagger(c);
  REQUIRE(inv.size() == 2);
  CHECK(inv.gates[0] == Gate::rz(1, -0.7));
  CHECK(inv.gates[1] == Gate::cnot(0, 1));
}

TEST_CASE("schedule packs disjoint gates and splits dependent ones") {
  Circuit disjoint(4);
  disjoint.append(Gate::cnot(0, 1));
  disjoint.append(Gate::cnot(2, 3));
  CHECK(schedule_layers(disjoint).depth() == 1);

  Circuit chained(3);
  chained.append(Gate::cnot(0, 1));
  chained.append(Gate::cnot(1, 2));
  CHECK(schedule_layers(chained).depth() == 2);
}

TEST_CASE("schedule soundness on random circuits") {
  std::mt19937 gen(123);
  for (int trial = 0; trial < 25; ++trial) {
    const Circuit c = testing::random_circuit(5, 40, gen);
    const LayerSchedule sched = schedule_layers(c);

    std::size_t counted = 0;
    for (std::size_t li = 0; li < sched.layers.size(); ++li) {
      std::vector<bool> used(c.num_qubits, false);
      for (std::size_t gi : sched.layers[li]) {
        const Gate& g = c.gates[gi];
        CHECK(!used[g.q0]);
        used[g.q0] = true;
        if (g.is_two_qubit()) {
          CHECK(!used[g.q1]);
          used[g.q1] = true;
        }
        ++counted;
      }
    }
    CHECK(counted == c.size());

    // Flattened layer order must be a topological order: for any two gates
    // sharing a qubit, list order and layer order agree.
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = i + 1; j < c.size(); ++j) {
        const Gate& a = c.gates[i];
        const Gate& b = c.gates[j];
        const bool share = b.touches(a.q0) || (a.is_two_qubit() && b.touches(a.q1));
        if (share) CHECK(sched.layer_of_gate[i] < sched.layer_of_gate[j]);
      }
    }
  }
}

TEST_CASE("critical path counts") {
  Circuit empty(3);
  CHECK(critical_path_counts(empty) == GateCounts{0, 0, 0, 0});

  // A single layer of parallel CNOTs has path length 1 regardless of width.
  Circuit wide(8);
  for (int j = 0; j < 8; j += 2) wide.append(Gate::cnot(j, j + 1));
  const GateCounts counts = critical_path_counts(wide);
  CHECK(counts.two_qubit_longest_path == 1);
  CHECK(counts.total_two_qubit == 4);
  CHECK(counts.one_qubit_longest_path == 0);

  // ID gates are excluded from the tallies.
  Circuit with_id(2);
  with_id.append(Gate::id(0));
  with_id.append(Gate::x(0));
  with_id.append(Gate::id(0));
  const GateCounts idc = critical_path_counts(with_id);
  CHECK(idc.one_qubit_longest_path == 1);
  CHECK(idc.total_one_qubit == 1);
}

TEST_CASE("longest path never exceeds totals") {
  std::mt19937 gen(7);
  for (int trial = 0; trial < 25; ++trial) {
    const Circuit c = testing::random_circuit(4, 30, gen);
    const GateCounts counts = critical_path_counts(c);
    CHECK(counts.two_qubit_longest_path <= counts.total_two_qubit);
    CHECK(counts.one_qubit_longest_path <= counts.total_one_qubit);
  }
}

TEST_CASE("per-qubit tallies") {
  Circuit c(3);
  c.append(Gate::cnot(0, 1));
  c.append(Gate::rz(1, 0.3));
  c.append(Gate::cnot(1, 2));
  const auto tallies = per_qubit_tallies(c);
  CHECK(tallies[0].two_qubit == 1);
  CHECK(tallies[1].two_qubit == 2);
  CHECK(tallies[1].one_qubit == 1);
  CHECK(tallies[2].two_qubit == 1);
}

TEST_CASE("json round trip preserves the circuit") {
  std::mt19937 gen(99);
  for (int trial = 0; trial < 10; ++trial) {
    Circuit c = testing::random_circuit(4, 25, gen);
    c.label = "roundtrip";
    c.barriers = {5, 10};
    const Circuit back = circuit_from_json(to_json(c));
    CHECK(back.num_qubits == c.num_qubits);
    CHECK(back.gates == c.gates);
    CHECK(back.label == c.label);
    CHECK(back.barriers == c.barriers);
  }
}
