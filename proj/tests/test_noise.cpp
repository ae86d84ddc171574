#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>

#include "kisim/noise.hpp"
#include "kisim/transpiler.hpp"

using namespace kisim;

namespace {

using Cd = std::complex<double>;
using Mat2 = std::array<Cd, 4>;   // row-major 2x2
using Mat4 = std::array<Cd, 16>;  // row-major 4x4

const Mat2 kI{1, 0, 0, 1};
const Mat2 kX{0, 1, 1, 0};
const Mat2 kY{0, Cd(0, -1), Cd(0, 1), 0};
const Mat2 kZ{1, 0, 0, -1};

Mat2 mul(const Mat2& a, const Mat2& b) {
  Mat2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) c[2 * i + j] += a[2 * i + k] * b[2 * k + j];
  return c;
}

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          c[4 * (2 * i + k) + (2 * j + l)] = a[2 * i + j] * b[2 * k + l];
  return c;
}

Mat4 mul(const Mat4& a, const Mat4& b) {
  Mat4 c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) c[4 * i + j] += a[4 * i + k] * b[4 * k + j];
  return c;
}

}  // namespace

TEST_CASE("depolarizing channel eigenvalues on Z, from dense conjugation") {
  // Single-qubit channel applied to Z must give (1 - 4 p1/3) Z.
  const double p = 0.03;
  Mat2 out{};
  const std::array<Mat2, 3> paulis{kX, kY, kZ};
  for (int i = 0; i < 4; ++i) out[i] = (1.0 - p) * kZ[i];
  for (const Mat2& sigma : paulis) {
    const Mat2 conj = mul(mul(sigma, kZ), sigma);
    for (int i = 0; i < 4; ++i) out[i] += p / 3.0 * conj[i];
  }
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(out[i] - (1.0 - 4.0 * p / 3.0) * kZ[i]) < 1e-12);
  }

  // Two-qubit channel applied to Z (x) I must give (1 - 16 p2/15) Z (x) I.
  const double p2 = 0.05;
  const Mat4 zi = kron(kZ, kI);
  Mat4 out2{};
  for (int i = 0; i < 16; ++i) out2[i] = (1.0 - p2) * zi[i];
  const std::array<Mat2, 4> all{kI, kX, kY, kZ};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      if (a == 0 && b == 0) continue;
      const Mat4 sigma = kron(all[a], all[b]);
      const Mat4 conj = mul(mul(sigma, zi), sigma);
      for (int i = 0; i < 16; ++i) out2[i] += p2 / 15.0 * conj[i];
    }
  }
  for (int i = 0; i < 16; ++i) {
    CHECK(std::abs(out2[i] - (1.0 - 16.0 * p2 / 15.0) * zi[i]) < 1e-12);
  }
}

TEST_CASE("gamma_dep formula") {
  NoiseModel model;
  model.p1 = 0.0;
  model.p2 = 0.0;
  CHECK(predict_gamma_dep(4, 7, model) == 0.0);

  model.p1 = 2.23e-4;
  model.p2 = 1e-2;
  const double expected =
      -(4 * std::log(1 - 16 * model.p2 / 15) + 7 * std::log(1 - 4 * model.p1 / 3));
  CHECK(predict_gamma_dep(4, 7, model) == doctest::Approx(expected));
  CHECK(predict_gamma_dep(4, 7, model) == doctest::Approx(0.04498).epsilon(1e-3));

  // Monotone in the counts.
  CHECK(predict_gamma_dep(15, 9, model) > predict_gamma_dep(4, 7, model));

  // Monotone in the probabilities.
  NoiseModel hotter = model;
  hotter.p2 = 2e-2;
  CHECK(predict_gamma_dep(4, 7, hotter) > predict_gamma_dep(4, 7, model));

  // Complete depolarization has no Z signal left to take a log of.
  NoiseModel broken = model;
  broken.p2 = 15.0 / 16.0;
  CHECK_THROWS_AS((void)predict_gamma_dep(4, 7, broken), std::invalid_argument);
}

TEST_CASE("tau formula") {
  NoiseModel zero;
  zero.tau_1q_ns = 0;
  zero.tau_2q_ns = 0;
  zero.tau_m_us = 0;
  CHECK(predict_tau(4, 7, zero) == 0.0);

  NoiseModel model;  // defaults: 35.56 ns, 300 ns, 3.55 us
  CHECK(predict_tau(4, 7, model) == doctest::Approx(4998.92).epsilon(1e-6));

  NoiseModel doubled = model;
  doubled.tau_m_us *= 2;
  CHECK(predict_tau(4, 7, doubled) - predict_tau(4, 7, model) ==
        doctest::Approx(model.tau_m_ns()));
}

TEST_CASE("Gamma(s) is affine with the right intercept and slope") {
  NoiseModel model;
  model.p1 = 2e-4;
  model.p2 = 5e-3;
  GateCounts counts{4, 7, 4, 7};
  const double gamma_eps = 0.008;

  CHECK(predict_gamma(0.0, gamma_eps, counts, model) ==
        doctest::Approx(gamma_eps));

  const double gamma_noise = predict_gamma_dep(counts, model) +
                             predict_tau(counts, model) / (model.t1_us * 1e3);
  CHECK(predict_gamma(1.0, gamma_eps, counts, model) ==
        doctest::Approx(gamma_noise + gamma_eps));

  const double g0 = predict_gamma(0.0, gamma_eps, counts, model);
  const double g1 = predict_gamma(1.0, gamma_eps, counts, model);
  const double g2 = predict_gamma(2.0, gamma_eps, counts, model);
  CHECK(g2 - g1 == doctest::Approx(g1 - g0).epsilon(1e-12));
}

TEST_CASE("epsilon decay law and readout prefactor") {
  CHECK(gamma_epsilon_theory(0.0, 1) == 0.0);
  CHECK(gamma_epsilon_theory(0.2, 1) == doctest::Approx(0.008));
  CHECK(gamma_epsilon_theory(0.2, 2) == doctest::Approx(3.2e-4));

  NoiseModel model;
  model.p_m = 0.0;
  CHECK(readout_prefactor(model) == 1.0);
  model.p_m = 0.0069;
  CHECK(readout_prefactor(model) == doctest::Approx(0.9862));
  model.p_m = 0.5;
  CHECK(readout_prefactor(model) == doctest::Approx(0.0));
}

TEST_CASE("model validation and json round trip") {
  NoiseModel model;
  model.per_qubit_overrides[3] = QubitOverride{210.0, 1e-4, 0.02};
  model.validate();

  const NoiseModel back = noise_model_from_json(to_json(model));
  CHECK(back.p1 == model.p1);
  CHECK(back.p2 == model.p2);
  CHECK(back.tau_2q_ns == model.tau_2q_ns);
  REQUIRE(back.per_qubit_overrides.count(3) == 1);
  CHECK(*back.per_qubit_overrides.at(3).t1_us == 210.0);
  CHECK(back.p1_for(3) == 1e-4);
  CHECK(back.p_m_for(0) == model.p_m);

  NoiseModel inf = NoiseModel::noiseless();
  CHECK(noise_model_from_json(to_json(inf)).is_noiseless());

  NoiseModel bad;
  bad.p2 = 0.95;  // above the 15/16 cap
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = NoiseModel{};
  bad.t1_us = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("noise exposure accounts tallies and wall time") {
  Circuit c(2);
  c.append(Gate::cnot(0, 1));
  c.append(Gate::rz(1, 0.3));
  c.barriers.push_back(c.gates.size());
  NoiseModel model;
  const NoiseExposure exp = circuit_noise_exposure(c, model);
  CHECK(exp.mean_two_qubit_per_qubit == doctest::Approx(1.0));
  CHECK(exp.mean_one_qubit_per_qubit == doctest::Approx(0.5));
  CHECK(exp.wall_time_ns ==
        doctest::Approx(model.tau_2q_ns + model.tau_1q_ns + model.tau_m_ns()));
}
