#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kisim/bootstrap.hpp"
#include "kisim/fitting.hpp"
#include "kisim/noise.hpp"
#include "kisim/trajectory.hpp"
#include "kisim/transpiler.hpp"

namespace kisim {

/// Full sweep description: which stroboscopic times and noise scales to
/// sample, with how many shots and bootstrap resamples, under one master
/// seed. Every derived seed (per-cell sampling, per-step folding,
/// bootstrap) is a counter-derivation of `seed`, so a plan is reproducible
/// bit for bit.
struct ExperimentPlan {
  FloquetSpec spec;
  NoiseModel model;
  std::vector<int> steps;      // sorted ascending, may include 0
  std::vector<double> scales;  // each >= 1
  std::size_t shots{1u << 13};
  std::size_t resamples{1000};
  std::uint64_t seed{0};
  bool optimize{true};
  int fit_n_min{1};
  int fit_n_max{1 << 20};

  void validate() const;
};

std::string to_json(const ExperimentPlan& plan);
ExperimentPlan plan_from_json(const std::string& text);

/// One (n, s) grid cell: sampled shots reduced to a bootstrap estimate of
/// the signed magnetization.
struct CellResult {
  int n{0};
  double s{1.0};
  std::uint64_t seed{0};
  double sample_mean{0.0};  // direct signed sample mean
  BootstrapEstimate estimate;
  NormalityDiagnostics diagnostics;
  std::uint64_t shot_hash{0};
  std::size_t shots{0};
};

struct ExperimentRecord {
  ExperimentPlan plan;
  TranspileReport step_report;
  RelabelMap relabel;
  std::vector<CellResult> cells;  // ordered by (scale index, step index)
  std::vector<std::pair<double, DecayFit>> per_scale_fits;
  bool zne_valid{false};
  ZneResult zne;
  std::vector<MitigatedPoint> mitigated;
  std::vector<std::pair<int, double>> theory_overlay;  // (n, e^{-n eps^(2R+1)})
  std::vector<std::string> failures;  // stage failure markers, never silent

  const CellResult& cell(int n, double s) const;
};

/// Runs the full pipeline: per scale, each Floquet step is folded with a
/// step-indexed seed and the requested number of steps concatenated
/// (tail-SWAP elision only in the final step, its relabeling applied at
/// readout); each cell is sampled, bootstrapped, and the per-scale decay
/// fits feed the zero-noise extrapolation and the mitigated curve.
ExperimentRecord run_experiment(const ExperimentPlan& plan, int threads = 1);

/// As run_experiment, but also hands back the raw shot tables (one per
/// grid cell, in record order) for persistence.
ExperimentRecord run_experiment(const ExperimentPlan& plan, int threads,
                                std::vector<ShotTable>& tables_out);

/// Signed magnetization series at one scale: (n, E(m_z), sigma).
struct SeriesPoint {
  int n{0};
  double mean{0.0};
  double sigma{0.0};
};
std::vector<SeriesPoint> magnetization_series(const ExperimentRecord& record,
                                              double s);

/// The cell circuits, exposed for reproduction and the refit path.
Circuit build_cell_circuit(const ExperimentPlan& plan, int n, double s,
                           RelabelMap* relabel_out = nullptr);

/// Persistence: plan.json, record.json, zne.json, estimates.json and one
/// CSV + sidecar per cell under <dir>/shots/.
void write_record(const ExperimentRecord& record, const std::string& dir,
                  bool with_shots, const std::vector<ShotTable>& tables = {});
std::string record_json(const ExperimentRecord& record);
std::string zne_report_json(const ExperimentRecord& record);

/// Re-derives estimates, fits and the extrapolation from shot tables
/// stored in a run directory (the `zne` CLI path).
ExperimentRecord refit_from_shots(const ExperimentPlan& plan,
                                  const std::string& dir, int threads = 1);

/// Deterministic run directory name: UTC timestamp plus a short hash of the
/// plan JSON.
std::string run_directory_name(const ExperimentPlan& plan);

}  // namespace kisim
