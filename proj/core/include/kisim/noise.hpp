#pragma once

#include <map>
#include <optional>
#include <string>

#include "kisim/circuit.hpp"

namespace kisim {

/// Calibrated error parameters: depolarizing probabilities after every
/// one-/two-qubit gate, symmetric readout flips, and amplitude damping with
/// time constant T1 accumulated over gate and readout durations.
///
/// Defaults follow the reference calibration of qubit q1 (T1 = 139.25 us,
/// p1 = 2.23e-4, tau_1q = 35.56 ns, tau_m = 3.55 us, p_m = 0.0069); the
/// two-qubit figures tau_2q = 300 ns and p2 = 1e-2 are representative
/// defaults, overridable like everything else.
struct QubitOverride {
  std::optional<double> t1_us;
  std::optional<double> p1;
  std::optional<double> p_m;
};

struct NoiseModel {
  double p1{2.23e-4};
  double p2{1e-2};
  double p_m{0.0069};
  double t1_us{139.25};
  double tau_1q_ns{35.56};
  double tau_2q_ns{300.0};
  double tau_m_us{3.55};
  std::map<int, QubitOverride> per_qubit_overrides;

  static NoiseModel noiseless();

  void validate() const;  // throws std::invalid_argument on violation
  bool is_noiseless() const;

  double t1_ns(int qubit) const;
  double p1_for(int qubit) const;
  double p_m_for(int qubit) const;
  double tau_m_ns() const { return tau_m_us * 1e3; }
};

std::string to_json(const NoiseModel& model);
NoiseModel noise_model_from_json(const std::string& text);

/// Analytic decay predictors for one Floquet step executed under this model.
struct DecayPrediction {
  double gamma_dep{0.0};   // per-step depolarizing rate
  double tau_ns{0.0};      // step wall time
  double gamma_noise{0.0}; // gamma_dep + tau/T1
  double gamma_s{0.0};     // rate at the requested noise scale
  double c_m{1.0};         // readout prefactor 1 - 2 p_m
};

/// -[Q2q ln(1 - 16 p2/15) + Q1q ln(1 - 4 p1/3)], the per-step rate at which
/// Z_i contracts under the depolarizing channels. Throws when a log argument
/// is not positive.
double predict_gamma_dep(const GateCounts& counts, const NoiseModel& model);
double predict_gamma_dep(long q2, long q1, const NoiseModel& model);

/// Step wall time Q1q tau_1q + Q2q tau_2q + tau_m, in ns.
double predict_tau(const GateCounts& counts, const NoiseModel& model);
double predict_tau(long q2, long q1, const NoiseModel& model);

/// Gamma_{s,R} = s (gamma_dep + tau/T1) + gamma_eps, affine in s.
double predict_gamma(double s, double gamma_eps, const GateCounts& counts,
                     const NoiseModel& model);

/// Small-epsilon decay of the order parameter: eps^(2R+1).
double gamma_epsilon_theory(double epsilon, int range);

/// C_m = 1 - 2 p_m.
double readout_prefactor(const NoiseModel& model);

DecayPrediction predict_decay(double s, double gamma_eps,
                              const GateCounts& counts,
                              const NoiseModel& model);

/// Exposure of the executed circuit as the trajectory engine sees it:
/// mean per-qubit gate tallies (which drive each Z_i's depolarizing decay)
/// and the scheduled wall time, i.e. the sum of layer durations plus one
/// readout window per step boundary.
struct NoiseExposure {
  double mean_two_qubit_per_qubit{0.0};
  double mean_one_qubit_per_qubit{0.0};
  double wall_time_ns{0.0};
};
NoiseExposure circuit_noise_exposure(const Circuit& circuit,
                                     const NoiseModel& model);

}  // namespace kisim
