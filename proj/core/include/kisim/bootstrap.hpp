#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kisim {

/// Per-shot magnetization of one measured bitstring: bit 0 -> Z = +1,
/// bit 1 -> Z = -1, averaged over the register.
double magnetization_of_shot(const std::vector<int>& bits);

/// Histogram of an empirical magnetization sample.
struct EmpiricalDistribution {
  std::vector<double> values;
  std::vector<double> bin_edges;  // bins + 1 edges
  std::vector<std::size_t> counts;
};
EmpiricalDistribution make_distribution(std::vector<double> values,
                                        int bins = 100);
void write_histogram_csv(const EmpiricalDistribution& dist,
                         const std::string& path);

/// Bootstrap estimator: M resamples of size N drawn with replacement from
/// the per-shot magnetizations; the estimate is the average of the resample
/// means and sigma their (population) standard deviation. Deterministic
/// under (values, M, seed).
struct BootstrapEstimate {
  double mean{0.0};
  double sigma{0.0};
  std::size_t resamples{0};
  std::vector<double> resample_means;
};

BootstrapEstimate bootstrap(const std::vector<double>& values, std::size_t m,
                            std::uint64_t seed, int threads = 1);

/// Sample skewness and excess kurtosis of the resample means, with a
/// pass/fail normality verdict at the declared thresholds
/// |skew| < 0.5 and |excess kurtosis| < 1.
struct NormalityDiagnostics {
  double skewness{0.0};
  double excess_kurtosis{0.0};
  bool pass{false};
};
NormalityDiagnostics normality_diagnostics(const BootstrapEstimate& estimate);

}  // namespace kisim
