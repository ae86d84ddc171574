#include "kisim/bootstrap.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <thread>

#include "kisim/rng.hpp"

namespace kisim {

double magnetization_of_shot(const std::vector<int>& bits) {
  if (bits.empty()) {
    throw std::invalid_argument("magnetization of empty bitstring");
  }
  double acc = 0.0;
  for (int b : bits) acc += b ? -1.0 : 1.0;
  return acc / static_cast<double>(bits.size());
}

EmpiricalDistribution make_distribution(std::vector<double> values, int bins) {
  if (values.empty()) {
    throw std::invalid_argument("empty sample has no distribution");
  }
  if (bins < 1) throw std::invalid_argument("need at least one bin");
  EmpiricalDistribution dist;
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double lo = *lo_it;
  double hi = *hi_it;
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  dist.bin_edges.resize(bins + 1);
  for (int b = 0; b <= bins; ++b) {
    dist.bin_edges[b] = lo + (hi - lo) * b / bins;
  }
  dist.counts.assign(bins, 0);
  for (double v : values) {
    int b = static_cast<int>((v - lo) / (hi - lo) * bins);
    b = std::clamp(b, 0, bins - 1);
    ++dist.counts[b];
  }
  dist.values = std::move(values);
  return dist;
}

void write_histogram_csv(const EmpiricalDistribution& dist,
                         const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "bin_left,bin_right,count\n";
  for (std::size_t b = 0; b < dist.counts.size(); ++b) {
    out << dist.bin_edges[b] << ',' << dist.bin_edges[b + 1] << ','
        << dist.counts[b] << '\n';
  }
}

BootstrapEstimate bootstrap(const std::vector<double>& values, std::size_t m,
                            std::uint64_t seed, int threads) {
  if (values.empty()) {
    throw std::invalid_argument("bootstrap needs a non-empty sample");
  }
  if (m < 2) throw std::invalid_argument("bootstrap needs >= 2 resamples");

  const std::size_t n = values.size();
  const Philox rng(seed);
  BootstrapEstimate estimate;
  estimate.resamples = m;
  estimate.resample_means.assign(m, 0.0);

  auto resample_mean = [&](std::size_t alpha) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t pick =
          rng.below(n, static_cast<std::uint32_t>(alpha),
                    static_cast<std::uint32_t>(i), 0, rng_tag::kBootstrap);
      acc += values[pick];
    }
    estimate.resample_means[alpha] = acc / static_cast<double>(n);
  };

  if (threads <= 1) {
    for (std::size_t alpha = 0; alpha < m; ++alpha) resample_mean(alpha);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t alpha = next.fetch_add(1);
        if (alpha >= m) return;
        resample_mean(alpha);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  double acc = 0.0;
  for (double v : estimate.resample_means) acc += v;
  estimate.mean = acc / static_cast<double>(m);
  double var = 0.0;
  for (double v : estimate.resample_means) {
    var += (v - estimate.mean) * (v - estimate.mean);
  }
  estimate.sigma = std::sqrt(var / static_cast<double>(m));
  return estimate;
}

NormalityDiagnostics normality_diagnostics(const BootstrapEstimate& estimate) {
  if (estimate.resample_means.size() < 100) {
    throw std::invalid_argument("normality diagnostics need >= 100 resamples");
  }
  const auto& xs = estimate.resample_means;
  const double n = static_cast<double>(xs.size());
  const double mean = estimate.mean;
  double m2 = 0, m3 = 0, m4 = 0;
  for (double v : xs) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  NormalityDiagnostics diag;
  if (m2 > 0.0) {
    diag.skewness = m3 / std::pow(m2, 1.5);
    diag.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  } else {
    // Degenerate sample: flag as non-normal.
    diag.skewness = 0.0;
    diag.excess_kurtosis = -3.0;
  }
  diag.pass =
      std::fabs(diag.skewness) < 0.5 && std::fabs(diag.excess_kurtosis) < 1.0;
  return diag;
}

}  // namespace kisim
