#include "kisim/noise.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace kisim {

NoiseModel NoiseModel::noiseless() {
  NoiseModel model;
  model.p1 = 0.0;
  model.p2 = 0.0;
  model.p_m = 0.0;
  model.t1_us = std::numeric_limits<double>::infinity();
  return model;
}

void NoiseModel::validate() const {
  auto prob = [](double p, const char* name, double cap) {
    if (!(p >= 0.0) || p > cap) {
      throw std::invalid_argument(std::string(name) + " out of range");
    }
  };
  prob(p1, "p1", 0.75);        // complete single-qubit depolarization
  prob(p2, "p2", 15.0 / 16.0); // complete two-qubit depolarization
  prob(p_m, "p_m", 1.0);
  if (!(t1_us > 0.0)) throw std::invalid_argument("T1 must be positive");
  if (tau_1q_ns < 0 || tau_2q_ns < 0 || tau_m_us < 0) {
    throw std::invalid_argument("gate durations must be non-negative");
  }
  for (const auto& [q, o] : per_qubit_overrides) {
    if (q < 0) throw std::invalid_argument("override qubit must be >= 0");
    if (o.t1_us && !(*o.t1_us > 0.0)) {
      throw std::invalid_argument("override T1 must be positive");
    }
    if (o.p1) prob(*o.p1, "override p1", 0.75);
    if (o.p_m) prob(*o.p_m, "override p_m", 1.0);
  }
}

bool NoiseModel::is_noiseless() const {
  if (p1 != 0.0 || p2 != 0.0 || p_m != 0.0) return false;
  if (std::isfinite(t1_us)) return false;
  for (const auto& [q, o] : per_qubit_overrides) {
    if ((o.p1 && *o.p1 != 0.0) || (o.p_m && *o.p_m != 0.0)) return false;
    if (o.t1_us && std::isfinite(*o.t1_us)) return false;
  }
  return true;
}

double NoiseModel::t1_ns(int qubit) const {
  const auto it = per_qubit_overrides.find(qubit);
  if (it != per_qubit_overrides.end() && it->second.t1_us) {
    return *it->second.t1_us * 1e3;
  }
  return t1_us * 1e3;
}

double NoiseModel::p1_for(int qubit) const {
  const auto it = per_qubit_overrides.find(qubit);
  if (it != per_qubit_overrides.end() && it->second.p1) return *it->second.p1;
  return p1;
}

double NoiseModel::p_m_for(int qubit) const {
  const auto it = per_qubit_overrides.find(qubit);
  if (it != per_qubit_overrides.end() && it->second.p_m) return *it->second.p_m;
  return p_m;
}

std::string to_json(const NoiseModel& model) {
  nlohmann::json j;
  j["p1"] = model.p1;
  j["p2"] = model.p2;
  j["p_m"] = model.p_m;
  j["T1_us"] = std::isfinite(model.t1_us) ? nlohmann::json(model.t1_us)
                                          : nlohmann::json("inf");
  j["tau_1q_ns"] = model.tau_1q_ns;
  j["tau_2q_ns"] = model.tau_2q_ns;
  j["tau_m_us"] = model.tau_m_us;
  if (!model.per_qubit_overrides.empty()) {
    nlohmann::json jo = nlohmann::json::object();
    for (const auto& [q, o] : model.per_qubit_overrides) {
      nlohmann::json je = nlohmann::json::object();
      if (o.t1_us) je["T1_us"] = *o.t1_us;
      if (o.p1) je["p1"] = *o.p1;
      if (o.p_m) je["p_m"] = *o.p_m;
      jo[std::to_string(q)] = std::move(je);
    }
    j["overrides"] = std::move(jo);
  }
  return j.dump(2);
}

NoiseModel noise_model_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  NoiseModel model;
  if (j.contains("p1")) model.p1 = j["p1"].get<double>();
  if (j.contains("p2")) model.p2 = j["p2"].get<double>();
  if (j.contains("p_m")) model.p_m = j["p_m"].get<double>();
  if (j.contains("T1_us")) {
    if (j["T1_us"].is_string()) {
      model.t1_us = std::numeric_limits<double>::infinity();
    } else {
      model.t1_us = j["T1_us"].get<double>();
    }
  }
  if (j.contains("tau_1q_ns")) model.tau_1q_ns = j["tau_1q_ns"].get<double>();
  if (j.contains("tau_2q_ns")) model.tau_2q_ns = j["tau_2q_ns"].get<double>();
  if (j.contains("tau_m_us")) model.tau_m_us = j["tau_m_us"].get<double>();
  if (j.contains("overrides")) {
    for (const auto& [key, je] : j["overrides"].items()) {
      QubitOverride o;
      if (je.contains("T1_us")) o.t1_us = je["T1_us"].get<double>();
      if (je.contains("p1")) o.p1 = je["p1"].get<double>();
      if (je.contains("p_m")) o.p_m = je["p_m"].get<double>();
      model.per_qubit_overrides[std::stoi(key)] = o;
    }
  }
  model.validate();
  return model;
}

double predict_gamma_dep(long q2, long q1, const NoiseModel& model) {
  const double two_arg = 1.0 - 16.0 * model.p2 / 15.0;
  const double one_arg = 1.0 - 4.0 * model.p1 / 3.0;
  if (two_arg <= 0.0 || one_arg <= 0.0) {
    throw std::invalid_argument(
        "depolarizing probability leaves no Z signal (log argument <= 0)");
  }
  return -(static_cast<double>(q2) * std::log(two_arg) +
           static_cast<double>(q1) * std::log(one_arg));
}

double predict_gamma_dep(const GateCounts& counts, const NoiseModel& model) {
  return predict_gamma_dep(counts.two_qubit_longest_path,
                           counts.one_qubit_longest_path, model);
}

double predict_tau(long q2, long q1, const NoiseModel& model) {
  return static_cast<double>(q1) * model.tau_1q_ns +
         static_cast<double>(q2) * model.tau_2q_ns + model.tau_m_ns();
}

double predict_tau(const GateCounts& counts, const NoiseModel& model) {
  return predict_tau(counts.two_qubit_longest_path,
                     counts.one_qubit_longest_path, model);
}

double predict_gamma(double s, double gamma_eps, const GateCounts& counts,
                     const NoiseModel& model) {
  if (s < 0.0) throw std::invalid_argument("noise scale must be >= 0");
  const double gamma_noise =
      predict_gamma_dep(counts, model) +
      predict_tau(counts, model) / (model.t1_us * 1e3);
  return s * gamma_noise + gamma_eps;
}

double gamma_epsilon_theory(double epsilon, int range) {
  return std::pow(epsilon, 2 * range + 1);
}

double readout_prefactor(const NoiseModel& model) {
  return 1.0 - 2.0 * model.p_m;
}

DecayPrediction predict_decay(double s, double gamma_eps,
                              const GateCounts& counts,
                              const NoiseModel& model) {
  DecayPrediction prediction;
  prediction.gamma_dep = predict_gamma_dep(counts, model);
  prediction.tau_ns = predict_tau(counts, model);
  prediction.gamma_noise =
      prediction.gamma_dep + prediction.tau_ns / (model.t1_us * 1e3);
  prediction.gamma_s = s * prediction.gamma_noise + gamma_eps;
  prediction.c_m = readout_prefactor(model);
  return prediction;
}

NoiseExposure circuit_noise_exposure(const Circuit& circuit,
                                     const NoiseModel& model) {
  NoiseExposure exposure;
  const auto tallies = per_qubit_tallies(circuit);
  for (const QubitTally& t : tallies) {
    exposure.mean_two_qubit_per_qubit += static_cast<double>(t.two_qubit);
    exposure.mean_one_qubit_per_qubit += static_cast<double>(t.one_qubit);
  }
  if (!tallies.empty()) {
    exposure.mean_two_qubit_per_qubit /= static_cast<double>(tallies.size());
    exposure.mean_one_qubit_per_qubit /= static_cast<double>(tallies.size());
  }
  const LayerSchedule sched = schedule_layers(circuit);
  for (const auto& layer : sched.layers) {
    double dt = 0.0;
    for (std::size_t gi : layer) {
      dt = std::max(dt, circuit.gates[gi].is_two_qubit() ? model.tau_2q_ns
                                                         : model.tau_1q_ns);
    }
    exposure.wall_time_ns += dt;
  }
  exposure.wall_time_ns +=
      static_cast<double>(circuit.barriers.size()) * model.tau_m_ns();
  return exposure;
}

}  // namespace kisim
