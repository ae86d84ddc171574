#pragma once

#include <cstdint>
#include <vector>

#include "kisim/circuit.hpp"

namespace kisim {

/// Record of one local-folding application.
struct FoldPlan {
  double target_scale{1.0};
  double achieved_scale{1.0};
  std::vector<std::size_t> folded_gate_indices;  // indices in the input
};

/// Noise amplification by local unitary folding: k = round((s-1) G / 2)
/// gates are drawn uniformly without replacement and each replaced in place
/// by g g^dagger g (the inverse expanded to native gates), leaving the
/// unitary unchanged up to global phase. achieved_scale counts g^dagger as
/// one logical gate: (G + 2k) / G. Throws for s < 1.
struct FoldResult {
  Circuit circuit;
  FoldPlan plan;
};
FoldResult fold_circuit(const Circuit& circuit, double s, std::uint64_t seed);

}  // namespace kisim
