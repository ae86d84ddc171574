#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kisim/fitting.hpp"
#include "kisim/folding.hpp"
#include "kisim/unitary.hpp"
#include "test_support.hpp"

using namespace kisim;

TEST_CASE("fold plan bookkeeping") {
  std::mt19937 gen(8);
  const Circuit c = testing::random_circuit(3, 10, gen);

  const FoldResult none = fold_circuit(c, 1.0, 5);
  CHECK(none.plan.folded_gate_indices.empty());
  CHECK(none.circuit.gates == c.gates);
  CHECK(none.plan.achieved_scale == doctest::Approx(1.0));

  const FoldResult doubled = fold_circuit(c, 2.0, 5);
  CHECK(doubled.plan.folded_gate_indices.size() == 5);
  CHECK(doubled.plan.achieved_scale == doctest::Approx(2.0));

  CHECK_THROWS_AS((void)fold_circuit(c, 0.5, 5), std::invalid_argument);
}

TEST_CASE("folding preserves the unitary up to phase") {
  std::mt19937 gen(12);
  for (double s : {1.0, 1.5, 2.0, 3.0}) {
    for (int trial = 0; trial < 5; ++trial) {
      const Circuit c = testing::random_circuit(4, 16, gen);
      const FoldResult folded = fold_circuit(c, s, 1000 + trial);
      CHECK(phase_aligned_distance(unitary_of(folded.circuit),
                                   unitary_of(c)) < 1e-10);
      CHECK(folded.plan.achieved_scale >= 1.0);
    }
  }
}

TEST_CASE("fold selection is seed-deterministic") {
  std::mt19937 gen(3);
  const Circuit c = testing::random_circuit(3, 20, gen);
  const FoldResult a = fold_circuit(c, 1.8, 77);
  const FoldResult b = fold_circuit(c, 1.8, 77);
  const FoldResult other = fold_circuit(c, 1.8, 78);
  CHECK(a.plan.folded_gate_indices == b.plan.folded_gate_indices);
  CHECK(a.circuit.gates == b.circuit.gates);
  CHECK(a.plan.folded_gate_indices != other.plan.folded_gate_indices);
}

TEST_CASE("weighted exponential fit recovers known decays") {
  // Exact ground truth 0.9 exp(-0.05 n).
  std::vector<DecayPoint> points;
  for (int n = 1; n <= 16; ++n) {
    points.push_back({n, 0.9 * std::exp(-0.05 * n), 1e-6});
  }
  const DecayFit fit = fit_exponential_wls(points);
  CHECK(fit.rate == doctest::Approx(0.05).epsilon(1e-6));
  CHECK(fit.rate_err < 1e-4);
  CHECK(fit.amplitude == doctest::Approx(0.9).epsilon(1e-6));
  CHECK(fit.excluded.empty());
  CHECK(fit.window.size() == 16);
}

TEST_CASE("flat data fits a zero rate") {
  std::vector<DecayPoint> points;
  for (int n = 1; n <= 8; ++n) points.push_back({n, 0.5, 1e-3});
  const DecayFit fit = fit_exponential_wls(points);
  CHECK(std::fabs(fit.rate) < 3.0 * fit.rate_err + 1e-12);
}

TEST_CASE("points below statistical resolution are excluded with a reason") {
  std::vector<DecayPoint> points;
  for (int n = 1; n <= 6; ++n) points.push_back({n, std::exp(-0.2 * n), 1e-3});
  points.push_back({15, 0.001, 0.01});
  const DecayFit fit = fit_exponential_wls(points);
  REQUIRE(fit.excluded.size() == 1);
  CHECK(fit.excluded[0].n == 15);
  CHECK(fit.excluded[0].reason == "below statistical resolution");

  // Too few usable points is a rejection carrying the exclusion list.
  std::vector<DecayPoint> thin = {{1, 1e-5, 1.0}, {2, 1e-5, 1.0},
                                  {3, 0.5, 1e-3}, {4, 0.4, 1e-3}};
  CHECK_THROWS_WITH_AS(
      (void)fit_exponential_wls(thin),
      doctest::Contains("decay fit needs >= 3 usable points"),
      std::invalid_argument);
}

TEST_CASE("fit is scale-equivariant") {
  std::vector<DecayPoint> points;
  for (int n = 1; n <= 10; ++n) {
    points.push_back({n, 0.8 * std::exp(-0.1 * n), 1e-4});
  }
  const DecayFit base = fit_exponential_wls(points);
  for (DecayPoint& p : points) {
    p.mean *= 3.0;
    p.sigma *= 3.0;
  }
  const DecayFit scaled = fit_exponential_wls(points);
  CHECK(scaled.rate == doctest::Approx(base.rate).epsilon(1e-12));
  CHECK(scaled.amplitude == doctest::Approx(3.0 * base.amplitude));
}

TEST_CASE("linear zne recovers exact affine inputs") {
  std::vector<ScaleRate> rates;
  for (double s : {1.0, 1.4, 2.0}) {
    rates.push_back({s, 0.03 * s + 0.008, 1e-6});
  }
  const ZneResult zne = fit_linear_zne(rates);
  CHECK(zne.intercept == doctest::Approx(0.008).epsilon(1e-9));
  CHECK(zne.slope == doctest::Approx(0.03).epsilon(1e-9));
  CHECK(zne.weighted_r2 == doctest::Approx(1.0));

  CHECK_THROWS_AS((void)fit_linear_zne({{1.0, 0.1, 1e-3}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      (void)fit_linear_zne({{1.0, 0.1, 1e-3}, {1.0, 0.2, 1e-3}}),
      std::invalid_argument);
}

TEST_CASE("zne intercept error shrinks with the per-scale errors") {
  auto build = [](double err) {
    std::vector<ScaleRate> rates;
    for (double s : {1.0, 1.4, 1.8, 2.6}) {
      rates.push_back({s, 0.03 * s + 0.008, err});
    }
    return fit_linear_zne(rates);
  };
  CHECK(build(1e-3).intercept_err < build(1e-2).intercept_err);
}

TEST_CASE("mitigated curve") {
  DecayFit fit1;
  fit1.amplitude = 1.0;
  fit1.rate = 0.05;
  ZneResult zne;
  zne.intercept = 0.05;
  zne.intercept_err = 0.0;

  std::vector<std::pair<int, double>> raw = {{0, 1.0}, {1, -0.8}, {2, 0.7}};
  const auto same = mitigate_curve(raw, fit1, zne);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    CHECK(same[i].value == doctest::Approx(raw[i].second));
  }

  // Algebraic identity: raw C_m e^{-Gamma_1 n} (-1)^n maps to
  // (-1)^n e^{-Gamma_0 n}.
  fit1.amplitude = 0.93;
  fit1.rate = 0.12;
  zne.intercept = 0.008;
  raw.clear();
  for (int n = 0; n <= 10; ++n) {
    raw.emplace_back(n, (n % 2 ? -1 : 1) * fit1.amplitude *
                            std::exp(-fit1.rate * n));
  }
  const auto mitigated = mitigate_curve(raw, fit1, zne);
  for (const MitigatedPoint& p : mitigated) {
    const double expected = (p.n % 2 ? -1 : 1) * std::exp(-zne.intercept * p.n);
    CHECK(p.value == doctest::Approx(expected).epsilon(1e-10));
    CHECK(std::fabs(p.value) >=
          fit1.amplitude * std::exp(-fit1.rate * p.n) / fit1.amplitude - 1e-12);
  }

  // Bands widen with n and bracket the central decay.
  zne.intercept_err = 0.002;
  const auto banded = mitigate_curve(raw, fit1, zne);
  for (const MitigatedPoint& p : banded) {
    CHECK(p.band_hi >= p.band_lo);
    CHECK(p.band_hi >= std::exp(-zne.intercept * p.n) - 1e-12);
    CHECK(p.band_lo <= std::exp(-zne.intercept * p.n) + 1e-12);
  }
}

TEST_CASE("resolution bound") {
  CHECK(resolution_bound(0.2, 1u << 13) == doctest::Approx(22.53).epsilon(1e-3));
  CHECK(resolution_bound(0.3, 1) == 0.0);
  CHECK_THROWS_AS((void)resolution_bound(0.0, 100), std::invalid_argument);

  // Gamma in (0.2, 0.8) maps to n* in (5.6, 22.5) at 2^13 shots.
  CHECK(resolution_bound(0.8, 1u << 13) == doctest::Approx(5.632).epsilon(1e-3));
}
