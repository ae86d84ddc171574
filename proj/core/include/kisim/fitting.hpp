#pragma once

#include <string>
#include <vector>

namespace kisim {

/// One usable observation for the decay fit.
struct DecayPoint {
  int n{0};
  double mean{0.0};
  double sigma{0.0};
};

struct ExcludedPoint {
  int n{0};
  std::string reason;
};

/// Weighted exponential fit |m(n)| = C exp(-Gamma n), performed as linear
/// least squares on ln|m| with weights (|m|/sigma)^2. Points with
/// |mean| < 2 sigma are excluded as below statistical resolution.
struct DecayFit {
  double amplitude{0.0};
  double amplitude_err{0.0};
  double rate{0.0};
  double rate_err{0.0};
  std::vector<int> window;
  std::vector<ExcludedPoint> excluded;
};

DecayFit fit_exponential_wls(const std::vector<DecayPoint>& points);

/// Weighted linear fit Gamma(s) = slope * s + intercept with weights
/// 1/dGamma^2 across noise scales, plus the zero-noise intercept error,
/// taken as the larger of the intercept standard error and the per-scale
/// uncertainty extrapolated to s = 0.
struct ScaleRate {
  double s{1.0};
  double gamma{0.0};
  double dgamma{0.0};
};

struct ZneResult {
  double slope{0.0};
  double slope_err{0.0};
  double intercept{0.0};
  double intercept_err{0.0};
  double weighted_r2{0.0};
  std::vector<std::pair<double, DecayFit>> per_scale;
};

ZneResult fit_linear_zne(const std::vector<ScaleRate>& per_scale);

/// Mitigated magnetization: each raw point scaled by
/// exp((Gamma_1 - Gamma_0) n) / C_m, with the +/- exp(-(Gamma_0 -+ d) n)
/// uncertainty band attached.
struct MitigatedPoint {
  int n{0};
  double value{0.0};
  double band_lo{0.0};
  double band_hi{0.0};
};

std::vector<MitigatedPoint> mitigate_curve(
    const std::vector<std::pair<int, double>>& raw, const DecayFit& fit_s1,
    const ZneResult& zne);

/// Stroboscopic horizon n* = ln(shots) / (2 gamma) beyond which |m| falls
/// under the shot-noise floor. Throws for gamma <= 0 or shots < 1.
double resolution_bound(double gamma, std::size_t shots);

}  // namespace kisim
