#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kisim/bootstrap.hpp"

using namespace kisim;

TEST_CASE("magnetization of a bitstring") {
  CHECK(magnetization_of_shot(std::vector<int>(18, 0)) == doctest::Approx(1.0));
  CHECK(magnetization_of_shot(std::vector<int>(18, 1)) ==
        doctest::Approx(-1.0));
  CHECK(magnetization_of_shot({0, 0, 1, 1}) == doctest::Approx(0.0));
  CHECK_THROWS_AS((void)magnetization_of_shot({}), std::invalid_argument);
}

TEST_CASE("histogram defaults to 100 bins covering the sample") {
  std::mt19937 gen(2);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> values(5000);
  for (double& v : values) v = dist(gen);
  const EmpiricalDistribution d = make_distribution(values);
  CHECK(d.counts.size() == 100);
  std::size_t total = 0;
  for (std::size_t c : d.counts) total += c;
  CHECK(total == values.size());

  // Degenerate sample still produces a well-formed histogram.
  const EmpiricalDistribution flat = make_distribution({0.5, 0.5, 0.5}, 10);
  std::size_t ftotal = 0;
  for (std::size_t c : flat.counts) ftotal += c;
  CHECK(ftotal == 3);
}

TEST_CASE("bootstrap basics") {
  CHECK_THROWS_AS((void)bootstrap({}, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)bootstrap({1.0}, 1, 1), std::invalid_argument);

  // Identical values have zero spread.
  const BootstrapEstimate flat = bootstrap(std::vector<double>(64, 0.25), 50, 9);
  CHECK(flat.mean == doctest::Approx(0.25));
  CHECK(flat.sigma == doctest::Approx(0.0));
}

TEST_CASE("bootstrap mean tracks the sample mean") {
  std::mt19937 gen(5);
  std::normal_distribution<double> dist(0.3, 0.2);
  std::vector<double> values(4096);
  double direct = 0;
  for (double& v : values) {
    v = dist(gen);
    direct += v;
  }
  direct /= values.size();

  const std::size_t m = 400;
  const BootstrapEstimate est = bootstrap(values, m, 123);
  CHECK(est.resample_means.size() == m);
  // E(m_z) within 4 sigma_sample / sqrt(M) of the direct mean.
  double var = 0;
  for (double v : values) var += (v - direct) * (v - direct);
  const double sample_std = std::sqrt(var / values.size());
  CHECK(std::fabs(est.mean - direct) <
        4.0 * sample_std / std::sqrt(static_cast<double>(m)));
}

TEST_CASE("bootstrap spread matches the CLT width") {
  std::mt19937 gen(11);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> values(1u << 13);
  for (double& v : values) v = dist(gen);

  double mean = 0;
  for (double v : values) mean += v;
  mean /= values.size();
  double var = 0;
  for (double v : values) var += (v - mean) * (v - mean);
  const double expected = std::sqrt(var / values.size()) /
                          std::sqrt(static_cast<double>(values.size()));

  const BootstrapEstimate est = bootstrap(values, 1000, 321);
  CHECK(std::fabs(est.sigma - expected) / expected < 0.10);
}

TEST_CASE("bootstrap is deterministic in the seed and thread count") {
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> values(512);
  for (double& v : values) v = dist(gen);

  const BootstrapEstimate a = bootstrap(values, 200, 7, 1);
  const BootstrapEstimate b = bootstrap(values, 200, 7, 2);
  CHECK(a.resample_means == b.resample_means);
  const BootstrapEstimate c = bootstrap(values, 200, 8, 1);
  CHECK(a.resample_means != c.resample_means);
}

TEST_CASE("normality diagnostics") {
  std::mt19937 gen(17);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> values(4096);
  for (double& v : values) v = dist(gen);
  const BootstrapEstimate good = bootstrap(values, 1000, 5);
  const NormalityDiagnostics pass = normality_diagnostics(good);
  CHECK(pass.pass);
  CHECK(std::fabs(pass.skewness) < 0.5);
  CHECK(std::fabs(pass.excess_kurtosis) < 1.0);

  // A skewed two-point sample at tiny N pushes the resample means onto a
  // visibly non-Gaussian grid.
  const std::vector<double> degenerate = {1.0, 0.0, 0.0, 0.0};
  const NormalityDiagnostics fail =
      normality_diagnostics(bootstrap(degenerate, 1000, 5));
  CHECK(!fail.pass);

  BootstrapEstimate thin;
  thin.resample_means.assign(10, 0.0);
  CHECK_THROWS_AS((void)normality_diagnostics(thin), std::invalid_argument);
}
