#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kisim/circuit.hpp"
#include "kisim/noise.hpp"
#include "kisim/statevector.hpp"
#include "kisim/transpiler.hpp"

namespace kisim {

/// Monte Carlo quantum-trajectory engine.
///
/// Depolarizing noise is inserted by Pauli sampling after each gate (any of
/// X, Y, Z with total probability p1 after a one-qubit gate; any of the 15
/// non-identity Pauli pairs with total probability p2 after a CNOT; nothing
/// after ID). Amplitude damping is attached per scheduled layer with the
/// layer's wall duration, plus one readout window per step boundary
/// (`Circuit::barriers`). All randomness is counter-keyed by
/// (seed; shot, gate-or-layer index, lane, purpose), so results are
/// independent of execution order and thread count.

struct ShotMeta {
  double noise_scale{1.0};
  int steps{0};
  std::uint64_t seed{0};
  std::string label;
};

struct ShotTable {
  int num_qubits{0};
  std::vector<std::uint32_t> rows;  // bit q of a row = outcome of qubit q
  ShotMeta meta;

  std::size_t shots() const { return rows.size(); }
  int bit(std::size_t shot, int qubit) const {
    return static_cast<int>((rows[shot] >> qubit) & 1u);
  }

  /// Per-shot magnetization for every row (bit 0 -> +1, bit 1 -> -1).
  std::vector<double> magnetizations() const;
};

/// One noisy trajectory; returns the final pure state. Deterministic in
/// (circuit, model, seed, shot_index).
StateVector run_trajectory(const Circuit& circuit, const NoiseModel& model,
                           std::uint64_t seed, std::uint32_t shot_index = 0);

/// Ensemble mean of per-qubit <Z_i> over `trajectories` independent runs.
std::vector<double> trajectory_mean_z(const Circuit& circuit,
                                      const NoiseModel& model,
                                      std::uint64_t seed, int trajectories,
                                      int threads = 1);

/// Full sampling pipeline: one fresh trajectory per shot, projective
/// measurement, independent readout flips with probability p_m per bit,
/// then the relabel permutation applied to bit positions before storage.
ShotTable sample_shots(const Circuit& circuit, const NoiseModel& model,
                       std::size_t shots, std::uint64_t seed,
                       const RelabelMap& relabel, int threads = 1);

/// CSV persistence: header row with post-relabel qubit labels, one
/// bitstring per row; companion JSON sidecar carries the metadata.
void write_shot_csv(const ShotTable& table, const std::string& path);
std::string shot_sidecar_json(const ShotTable& table);
ShotTable read_shot_csv(const std::string& csv_path,
                        const std::string& sidecar_path);

}  // namespace kisim
