#include "kisim/fitting.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kisim {

namespace {

struct LineFit {
  double intercept;
  double slope;
  double intercept_err;
  double slope_err;
  double weighted_r2;
};

/// Weighted least squares y = a + b x with weights w = 1/var(y).
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& w) {
  double sw = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += w[i];
    sx += w[i] * x[i];
    sxx += w[i] * x[i] * x[i];
    sy += w[i] * y[i];
    sxy += w[i] * x[i] * y[i];
  }
  const double delta = sw * sxx - sx * sx;
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("degenerate design matrix in linear fit");
  }
  LineFit fit{};
  fit.intercept = (sxx * sy - sx * sxy) / delta;
  fit.slope = (sw * sxy - sx * sy) / delta;
  fit.intercept_err = std::sqrt(sxx / delta);
  fit.slope_err = std::sqrt(sw / delta);

  const double ybar = sy / sw;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double pred = fit.intercept + fit.slope * x[i];
    ss_res += w[i] * (y[i] - pred) * (y[i] - pred);
    ss_tot += w[i] * (y[i] - ybar) * (y[i] - ybar);
  }
  fit.weighted_r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

}  // namespace

DecayFit fit_exponential_wls(const std::vector<DecayPoint>& points) {
  DecayFit result;
  std::vector<double> x, y, w;
  for (const DecayPoint& p : points) {
    if (!(p.sigma > 0.0)) {
      throw std::invalid_argument("decay fit needs positive sigma");
    }
    const double mag = std::fabs(p.mean);
    if (mag < 2.0 * p.sigma) {
      result.excluded.push_back({p.n, "below statistical resolution"});
      continue;
    }
    result.window.push_back(p.n);
    x.push_back(static_cast<double>(p.n));
    y.push_back(std::log(mag));
    w.push_back((mag / p.sigma) * (mag / p.sigma));
  }
  if (x.size() < 3) {
    std::ostringstream msg;
    msg << "decay fit needs >= 3 usable points, got " << x.size()
        << " (excluded:";
    for (const auto& e : result.excluded) msg << ' ' << e.n;
    msg << ")";
    throw std::invalid_argument(msg.str());
  }
  const LineFit line = fit_line(x, y, w);
  result.amplitude = std::exp(line.intercept);
  result.amplitude_err = result.amplitude * line.intercept_err;
  result.rate = -line.slope;
  result.rate_err = line.slope_err;
  return result;
}

ZneResult fit_linear_zne(const std::vector<ScaleRate>& per_scale) {
  if (per_scale.size() < 2) {
    throw std::invalid_argument("zero-noise extrapolation needs >= 2 scales");
  }
  std::vector<double> x, y, w;
  for (const ScaleRate& p : per_scale) {
    if (!(p.dgamma > 0.0)) {
      throw std::invalid_argument("zne fit needs positive rate uncertainty");
    }
    x.push_back(p.s);
    y.push_back(p.gamma);
    w.push_back(1.0 / (p.dgamma * p.dgamma));
  }
  const LineFit line = fit_line(x, y, w);

  // The reported intercept error also reflects the per-scale uncertainty
  // extrapolated to s = 0: take the larger of that and the fit's own
  // standard error.
  double extrapolated = 0.0;
  {
    double sw = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sw += 1;
      sx += x[i];
      sxx += x[i] * x[i];
      sy += per_scale[i].dgamma;
      sxy += x[i] * per_scale[i].dgamma;
    }
    const double delta = sw * sxx - sx * sx;
    if (delta > 0.0) {
      extrapolated = (sxx * sy - sx * sxy) / delta;
    }
    if (!(extrapolated > 0.0)) extrapolated = 0.0;
  }

  ZneResult result;
  result.slope = line.slope;
  result.slope_err = line.slope_err;
  result.intercept = line.intercept;
  result.intercept_err = std::max(line.intercept_err, extrapolated);
  result.weighted_r2 = line.weighted_r2;
  return result;
}

std::vector<MitigatedPoint> mitigate_curve(
    const std::vector<std::pair<int, double>>& raw, const DecayFit& fit_s1,
    const ZneResult& zne) {
  std::vector<MitigatedPoint> out;
  out.reserve(raw.size());
  const double gamma1 = fit_s1.rate;
  const double gamma0 = zne.intercept;
  const double c_m = fit_s1.amplitude;
  for (const auto& [n, mean] : raw) {
    MitigatedPoint p;
    p.n = n;
    p.value = mean * std::exp((gamma1 - gamma0) * n) / c_m;
    p.band_hi = std::exp(-(gamma0 - zne.intercept_err) * n);
    p.band_lo = std::exp(-(gamma0 + zne.intercept_err) * n);
    out.push_back(p);
  }
  return out;
}

double resolution_bound(double gamma, std::size_t shots) {
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("resolution bound needs gamma > 0");
  }
  if (shots < 1) {
    throw std::invalid_argument("resolution bound needs shots >= 1");
  }
  return std::log(static_cast<double>(shots)) / (2.0 * gamma);
}

}  // namespace kisim
