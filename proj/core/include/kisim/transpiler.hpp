#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kisim/circuit.hpp"

namespace kisim {

enum class Boundary : std::uint8_t { Open, Periodic };

/// Physics parameters of one Floquet step of the kicked Ising chain with
/// interactions up to range R. The kick rotates every spin by 2*phi around
/// x with phi = pi/2 + epsilon; couplings[r-1] holds theta_r = J_r * T.
struct FloquetSpec {
  int num_qubits{0};
  int range{1};
  double kick_epsilon{0.0};
  std::vector<double> couplings;  // one theta per r in [1, range]
  Boundary boundary{Boundary::Open};

  /// Uniform theta_r = pi/4 defaults, the standard O(1)-coupling regime.
  static FloquetSpec with_defaults(int num_qubits, int range,
                                   double kick_epsilon);

  void validate() const;  // throws std::invalid_argument on violation
  double kick_angle() const;
};

/// Qubit relabeling left behind by tail-SWAP elision. `perm[q]` is the
/// physical line on which logical qubit q ends up, so reading measured bit
/// perm[q] reproduces the unelided circuit's outcome for qubit q.
struct RelabelMap {
  std::vector<int> perm;

  static RelabelMap identity(int num_qubits);
  bool is_identity() const;
  void swap_lines(int a, int b);
  int size() const { return static_cast<int>(perm.size()); }
};

/// Gate-count bookkeeping for one transpiled Floquet step.
///
/// `predicted_naive` is the closed-form estimate (2R^3+2, 2R+5) for the
/// unoptimized construction and `predicted_optimized` the closed form
/// 9R^2-14R+7 for R >= 2; at R = 1 the optimized two-qubit reference value
/// is 4, taken from the reference count table (the closed form gives 2
/// there and is recorded separately as `optimized_formula_q2`).
struct TranspileReport {
  int num_qubits{0};
  int range{0};
  GateCounts counts;  // measured on the emitted circuit
  long predicted_naive_q2{0};
  long predicted_naive_q1{0};
  long predicted_optimized_q2{0};
  long predicted_optimized_q1{0};
  long optimized_formula_q2{0};
  RelabelMap relabel;
  std::vector<std::string> passes_applied;
};

/// Closed-form count predictions.
long naive_two_qubit_count(int range);        // 2R^3 + 2
long naive_one_qubit_count(int range);        // 2R + 5
long optimized_two_qubit_formula(int range);  // 9R^2 - 14R + 7
long optimized_two_qubit_expected(int range); // table value at R=1, formula else

/// exp(i theta Z_j Z_{j+1}) as CNOT(j,j+1) RZ(j+1,-2 theta) CNOT(j,j+1).
Circuit decompose_zz_nn(int num_qubits, int j, double theta,
                        Boundary boundary = Boundary::Open);

/// RX(phi) = exp(-i phi X / 2) up to global phase, as the native five-gate
/// sequence RZ . SX . RZ . SX . RZ (middle angle phi + pi).
Circuit decompose_rx(int num_qubits, int j, double phi);

/// SWAP(j, j+1) as three alternating CNOTs.
Circuit decompose_swap(int num_qubits, int j,
                       Boundary boundary = Boundary::Open);

/// SWAP ladder S_r: brings qubit j+r's state next to qubit j, mapping
/// |s_j, s_{j+1}, ..., s_{j+r}> to |s_j, s_{j+r}, s_{j+1}, ..., s_{j+r-1}>.
/// Empty for r < 2.
Circuit build_swap_ladder(int num_qubits, int j, int r,
                          Boundary boundary = Boundary::Open);

/// Range-r Ising gate V_{j,j+r} = S_r^dagger V_{j,j+1} S_r with unitary
/// exp(i theta Z_j Z_{j+r}); costs 2 + 6(r-1) CNOTs before optimization.
Circuit build_range_gate(int num_qubits, int j, int r, double theta,
                         Boundary boundary = Boundary::Open);

/// One Floquet step U_F = K_phi V as a native circuit plus its report.
/// Unoptimized emission lays out per-range sections of SWAP-conjugated
/// bonds; with `optimize` set the three passes below are applied and the
/// report's RelabelMap records the tail-SWAP elision.
struct FloquetStep {
  Circuit circuit;
  TranspileReport report;
};
FloquetStep build_floquet_step(const FloquetSpec& spec, bool optimize);

/// The Ising half V of the step, without the kick and without tail
/// elision; `optimized` applies the reorder and cancellation passes. Used
/// by step concatenation, where only the final step may shed its tail.
Circuit build_ising_body(const FloquetSpec& spec, bool optimized);

/// The kick K_phi: an RX(2 phi) on every qubit.
Circuit build_kick(const FloquetSpec& spec);

/// Removes adjacent identical CNOT pairs (CNOT^2 = 1) with no intervening
/// gate on either operand, iterated to a fixed point. Deliberately
/// conservative: commutation-enabled cancellations belong to the reorder
/// pass.
Circuit pass_cancel_cnot_pairs(const Circuit& circuit);

/// Rearranges the unoptimized per-range emission into per-anchor chains
/// that walk each anchor's state outward through the ranges, so every
/// nearest-neighbour core is immediately followed by a SWAP on the same
/// pair and the cancellation pass can remove 2(R-1) CNOTs per chain.
/// The input must be exactly the structured unoptimized emission for
/// `spec`; otherwise the pass is skipped with a notice.
struct ReorderResult {
  Circuit circuit;
  bool applied{false};
  std::string notice;
};
ReorderResult pass_commute_reorder(const Circuit& circuit,
                                   const FloquetSpec& spec);

/// Strips trailing SWAP triples, folding them into a qubit relabeling.
struct ElideResult {
  Circuit circuit;
  RelabelMap relabel;
  long removed_cnots{0};
};
ElideResult pass_elide_tail_swaps(const Circuit& circuit);

/// Count certification against the reference values. Strict for the
/// two-qubit longest path at R in {1, 2} (4 and 15, on the certification
/// chain N = 3 and N = 2R); one-qubit counts are certified against the
/// closed form 2R+5 carried by the report, with the measured value shown
/// in the diff. R >= 3 is advisory: the formula value is reported but does
/// not gate the verdict.
struct CountVerdict {
  bool passed{false};
  bool advisory{false};
  long expected_q2{0};
  long expected_q1{0};
  long measured_q2{0};
  long measured_q1{0};
  std::string message;
};
CountVerdict verify_counts(const TranspileReport& report);

/// Chain length used by count certification (N = 3 for R = 1, else 2R).
int certification_qubits(int range);

}  // namespace kisim
