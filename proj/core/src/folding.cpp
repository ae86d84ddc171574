#include "kisim/folding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kisim/rng.hpp"

namespace kisim {

FoldResult fold_circuit(const Circuit& circuit, double s, std::uint64_t seed) {
  if (!(s >= 1.0)) {
    throw std::invalid_argument("fold scale must be >= 1");
  }
  FoldResult result;
  result.plan.target_scale = s;

  const std::size_t total = circuit.gates.size();
  const auto folds = static_cast<std::size_t>(
      std::llround((s - 1.0) * static_cast<double>(total) / 2.0));

  if (folds > 0 && total > 0) {
    // Partial Fisher-Yates over gate indices, counter-keyed.
    const Philox rng(seed);
    std::vector<std::size_t> indices(total);
    for (std::size_t i = 0; i < total; ++i) indices[i] = i;
    const std::size_t k = std::min(folds, total);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j =
          i + rng.below(total - i, static_cast<std::uint32_t>(i), 0, 0,
                        rng_tag::kFold);
      std::swap(indices[i], indices[j]);
    }
    result.plan.folded_gate_indices.assign(indices.begin(),
                                           indices.begin() + k);
    std::sort(result.plan.folded_gate_indices.begin(),
              result.plan.folded_gate_indices.end());
  }

  result.circuit = Circuit(circuit.num_qubits, circuit.label);
  const auto& chosen = result.plan.folded_gate_indices;
  std::size_t next = 0;
  for (std::size_t i = 0; i < total; ++i) {
    const Gate& g = circuit.gates[i];
    result.circuit.append(g);
    if (next < chosen.size() && chosen[next] == i) {
      for (const Gate& inv : dagger(g)) result.circuit.append(inv);
      result.circuit.append(g);
      ++next;
    }
  }
  result.plan.achieved_scale =
      total == 0 ? 1.0
                 : static_cast<double>(total + 2 * chosen.size()) /
                       static_cast<double>(total);
  // Barriers are not preserved: folding applies to one step body before
  // concatenation, where no barriers exist yet.
  return result;
}

}  // namespace kisim
