#include "kisim/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "kisim/folding.hpp"
#include "kisim/rng.hpp"

namespace kisim {

namespace {

constexpr std::uint32_t kFoldStream = 0xF01D;
constexpr std::uint32_t kShotStream = 0x5407;
constexpr std::uint32_t kBootStream = 0xB007;

constexpr double kSigmaFloor = 1e-12;  // lets exact (noiseless) data fit

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xffu;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t hash_rows(const std::vector<std::uint32_t>& rows) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint32_t r : rows) h = fnv1a(h, r);
  return h;
}

int scale_index(const ExperimentPlan& plan, double s) {
  for (std::size_t i = 0; i < plan.scales.size(); ++i) {
    if (plan.scales[i] == s) return static_cast<int>(i);
  }
  throw std::invalid_argument("scale not in plan");
}

std::string cell_stem(int n, double s) {
  std::ostringstream name;
  name << "s" << s << "_n" << n;
  std::string out = name.str();
  std::replace(out.begin(), out.end(), '.', 'p');
  return out;
}

}  // namespace

void ExperimentPlan::validate() const {
  spec.validate();
  model.validate();
  if (steps.empty()) throw std::invalid_argument("plan needs steps");
  if (!std::is_sorted(steps.begin(), steps.end())) {
    throw std::invalid_argument("plan steps must be sorted ascending");
  }
  for (int n : steps) {
    if (n < 0) throw std::invalid_argument("steps must be >= 0");
  }
  if (scales.empty()) throw std::invalid_argument("plan needs noise scales");
  for (double s : scales) {
    if (!(s >= 1.0)) throw std::invalid_argument("noise scales must be >= 1");
  }
  if (shots < 1) throw std::invalid_argument("plan needs shots >= 1");
  if (resamples < 2) throw std::invalid_argument("plan needs resamples >= 2");
}

Circuit build_cell_circuit(const ExperimentPlan& plan, int n, double s,
                           RelabelMap* relabel_out) {
  const int s_idx = scale_index(plan, s);
  const Philox master(plan.seed);

  Circuit body = build_ising_body(plan.spec, plan.optimize);
  const Circuit kick = build_kick(plan.spec);

  RelabelMap relabel = RelabelMap::identity(plan.spec.num_qubits);
  Circuit cell(plan.spec.num_qubits);
  for (int k = 1; k <= n; ++k) {
    Circuit step_body = body;
    if (plan.optimize && k == n) {
      // Only the final step sheds its trailing SWAP ladder; earlier steps
      // are followed by further gates and must keep it.
      ElideResult elided = pass_elide_tail_swaps(step_body);
      relabel = elided.relabel;
      step_body = std::move(elided.circuit);
    }
    step_body.append(kick);
    const std::uint64_t fold_seed =
        master.derive(kFoldStream, static_cast<std::uint32_t>(s_idx),
                      static_cast<std::uint32_t>(k));
    FoldResult folded = fold_circuit(step_body, s, fold_seed);
    cell.append(folded.circuit);
    cell.barriers.push_back(cell.gates.size());
  }
  cell.label = "cell_n" + std::to_string(n) + "_s" + std::to_string(s);
  if (relabel_out) *relabel_out = relabel;
  return cell;
}

namespace {

CellResult run_cell(const ExperimentPlan& plan, int n, double s,
                    int threads, ShotTable* table_out) {
  const int s_idx = scale_index(plan, s);
  const Philox master(plan.seed);
  RelabelMap relabel;
  const Circuit circuit = build_cell_circuit(plan, n, s, &relabel);

  const std::uint64_t cell_seed =
      master.derive(kShotStream, static_cast<std::uint32_t>(s_idx),
                    static_cast<std::uint32_t>(n));
  ShotTable table =
      sample_shots(circuit, plan.model, plan.shots, cell_seed, relabel,
                   threads);
  table.meta.noise_scale = s;
  table.meta.steps = n;

  const std::uint64_t boot_seed =
      master.derive(kBootStream, static_cast<std::uint32_t>(s_idx),
                    static_cast<std::uint32_t>(n));
  const std::vector<double> ms = table.magnetizations();

  CellResult cell;
  cell.n = n;
  cell.s = s;
  cell.seed = cell_seed;
  cell.shots = table.shots();
  double acc = 0.0;
  for (double m : ms) acc += m;
  cell.sample_mean = acc / static_cast<double>(ms.size());
  cell.estimate = bootstrap(ms, plan.resamples, boot_seed, threads);
  if (plan.resamples >= 100) {
    cell.diagnostics = normality_diagnostics(cell.estimate);
  }
  cell.shot_hash = hash_rows(table.rows);
  if (table_out) *table_out = std::move(table);
  return cell;
}

std::vector<DecayPoint> fit_points(const ExperimentPlan& plan,
                                   const std::vector<CellResult>& cells,
                                   double s) {
  std::vector<DecayPoint> points;
  for (const CellResult& cell : cells) {
    if (cell.s != s) continue;
    if (cell.n < plan.fit_n_min || cell.n > plan.fit_n_max) continue;
    DecayPoint p;
    p.n = cell.n;
    // The subharmonic alternation is removed upstream of the fit by
    // tracking (-1)^n m_z.
    p.mean = (cell.n % 2 == 0 ? 1.0 : -1.0) * cell.estimate.mean;
    p.sigma = std::max(cell.estimate.sigma, kSigmaFloor);
    points.push_back(p);
  }
  return points;
}

}  // namespace

namespace {

ExperimentRecord run_experiment_impl(const ExperimentPlan& plan, int threads,
                                     std::vector<ShotTable>* tables) {
  plan.validate();
  ExperimentRecord record;
  record.plan = plan;

  const FloquetStep step = build_floquet_step(plan.spec, plan.optimize);
  record.step_report = step.report;
  record.relabel = step.report.relabel;

  for (double s : plan.scales) {
    for (int n : plan.steps) {
      ShotTable table;
      record.cells.push_back(run_cell(plan, n, s, threads, &table));
      if (tables) tables->push_back(std::move(table));
    }
  }

  // Per-scale decay fits. A scale whose usable points are too few is
  // marked rather than silently dropped.
  std::vector<ScaleRate> rates;
  for (double s : plan.scales) {
    try {
      const DecayFit fit = fit_exponential_wls(fit_points(plan, record.cells, s));
      record.per_scale_fits.emplace_back(s, fit);
      rates.push_back({s, fit.rate, std::max(fit.rate_err, kSigmaFloor)});
    } catch (const std::exception& e) {
      record.failures.push_back("decay fit at s=" + std::to_string(s) +
                                " failed: " + e.what());
    }
  }

  try {
    record.zne = fit_linear_zne(rates);
    record.zne.per_scale = record.per_scale_fits;
    record.zne_valid = true;
  } catch (const std::exception& e) {
    record.failures.push_back(std::string("zero-noise extrapolation failed: ") +
                              e.what());
  }

  if (record.zne_valid) {
    const auto it = std::find_if(
        record.per_scale_fits.begin(), record.per_scale_fits.end(),
        [](const auto& p) { return p.first == 1.0; });
    if (it != record.per_scale_fits.end()) {
      std::vector<std::pair<int, double>> raw;
      for (const CellResult& cell : record.cells) {
        if (cell.s == 1.0) raw.emplace_back(cell.n, cell.estimate.mean);
      }
      record.mitigated = mitigate_curve(raw, it->second, record.zne);
    } else {
      record.failures.push_back(
          "mitigated curve skipped: no s=1 scale in plan");
    }
  }

  const double gamma_eps =
      gamma_epsilon_theory(plan.spec.kick_epsilon, plan.spec.range);
  for (int n : plan.steps) {
    record.theory_overlay.emplace_back(n, std::exp(-gamma_eps * n));
  }
  return record;
}

}  // namespace

ExperimentRecord run_experiment(const ExperimentPlan& plan, int threads) {
  return run_experiment_impl(plan, threads, nullptr);
}

ExperimentRecord run_experiment(const ExperimentPlan& plan, int threads,
                                std::vector<ShotTable>& tables_out) {
  tables_out.clear();
  return run_experiment_impl(plan, threads, &tables_out);
}

const CellResult& ExperimentRecord::cell(int n, double s) const {
  for (const CellResult& c : cells) {
    if (c.n == n && c.s == s) return c;
  }
  throw std::invalid_argument("no cell for requested (n, s)");
}

std::vector<SeriesPoint> magnetization_series(const ExperimentRecord& record,
                                              double s) {
  std::vector<SeriesPoint> series;
  for (const CellResult& cell : record.cells) {
    if (cell.s != s) continue;
    series.push_back({cell.n, cell.estimate.mean, cell.estimate.sigma});
  }
  if (series.empty()) {
    throw std::invalid_argument("scale not present in record");
  }
  std::sort(series.begin(), series.end(),
            [](const SeriesPoint& a, const SeriesPoint& b) { return a.n < b.n; });
  return series;
}

namespace {

nlohmann::json spec_json(const FloquetSpec& spec) {
  nlohmann::json j;
  j["num_qubits"] = spec.num_qubits;
  j["range"] = spec.range;
  j["epsilon"] = spec.kick_epsilon;
  j["couplings"] = spec.couplings;
  j["boundary"] = spec.boundary == Boundary::Open ? "open" : "periodic";
  return j;
}

FloquetSpec spec_from_json(const nlohmann::json& j) {
  FloquetSpec spec;
  spec.num_qubits = j.at("num_qubits").get<int>();
  spec.range = j.at("range").get<int>();
  spec.kick_epsilon = j.at("epsilon").get<double>();
  spec.couplings = j.at("couplings").get<std::vector<double>>();
  const std::string b = j.value("boundary", "open");
  spec.boundary = b == "periodic" ? Boundary::Periodic : Boundary::Open;
  spec.validate();
  return spec;
}

}  // namespace

std::string to_json(const ExperimentPlan& plan) {
  nlohmann::json j;
  j["spec"] = spec_json(plan.spec);
  j["model"] = nlohmann::json::parse(to_json(plan.model));
  j["steps"] = plan.steps;
  j["scales"] = plan.scales;
  j["shots"] = plan.shots;
  j["resamples"] = plan.resamples;
  j["seed"] = plan.seed;
  j["optimize"] = plan.optimize;
  j["fit_n_min"] = plan.fit_n_min;
  j["fit_n_max"] = plan.fit_n_max;
  return j.dump(2);
}

ExperimentPlan plan_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  ExperimentPlan plan;
  plan.spec = spec_from_json(j.at("spec"));
  plan.model = noise_model_from_json(j.at("model").dump());
  plan.steps = j.at("steps").get<std::vector<int>>();
  plan.scales = j.at("scales").get<std::vector<double>>();
  plan.shots = j.at("shots").get<std::size_t>();
  plan.resamples = j.at("resamples").get<std::size_t>();
  plan.seed = j.at("seed").get<std::uint64_t>();
  plan.optimize = j.value("optimize", true);
  plan.fit_n_min = j.value("fit_n_min", 1);
  plan.fit_n_max = j.value("fit_n_max", 1 << 20);
  plan.validate();
  return plan;
}

namespace {

nlohmann::json fit_json(const DecayFit& fit) {
  nlohmann::json j;
  j["amplitude"] = fit.amplitude;
  j["amplitude_err"] = fit.amplitude_err;
  j["rate"] = fit.rate;
  j["rate_err"] = fit.rate_err;
  j["window"] = fit.window;
  j["excluded"] = nlohmann::json::array();
  for (const auto& e : fit.excluded) {
    j["excluded"].push_back({{"n", e.n}, {"reason", e.reason}});
  }
  return j;
}

}  // namespace

std::string record_json(const ExperimentRecord& record) {
  nlohmann::json j;
  j["plan"] = nlohmann::json::parse(to_json(record.plan));
  j["relabel"] = record.relabel.perm;
  j["counts"] = {
      {"q2_longest", record.step_report.counts.two_qubit_longest_path},
      {"q1_longest", record.step_report.counts.one_qubit_longest_path},
      {"q2_total", record.step_report.counts.total_two_qubit},
      {"q1_total", record.step_report.counts.total_one_qubit},
  };
  j["cells"] = nlohmann::json::array();
  for (const CellResult& cell : record.cells) {
    nlohmann::json jc;
    jc["n"] = cell.n;
    jc["s"] = cell.s;
    jc["R"] = record.plan.spec.range;
    jc["seed"] = cell.seed;
    jc["shots"] = cell.shots;
    jc["sample_mean"] = cell.sample_mean;
    jc["mean"] = cell.estimate.mean;
    jc["sigma"] = cell.estimate.sigma;
    jc["M"] = cell.estimate.resamples;
    jc["skew"] = cell.diagnostics.skewness;
    jc["kurtosis"] = cell.diagnostics.excess_kurtosis;
    jc["shot_hash"] = cell.shot_hash;
    j["cells"].push_back(std::move(jc));
  }
  j["per_scale_fits"] = nlohmann::json::array();
  for (const auto& [s, fit] : record.per_scale_fits) {
    nlohmann::json jf = fit_json(fit);
    jf["s"] = s;
    j["per_scale_fits"].push_back(std::move(jf));
  }
  j["zne_valid"] = record.zne_valid;
  if (record.zne_valid) {
    j["zne"] = {{"slope", record.zne.slope},
                {"slope_err", record.zne.slope_err},
                {"intercept", record.zne.intercept},
                {"intercept_err", record.zne.intercept_err},
                {"weighted_r2", record.zne.weighted_r2}};
  }
  j["mitigated"] = nlohmann::json::array();
  for (const MitigatedPoint& p : record.mitigated) {
    j["mitigated"].push_back({{"n", p.n},
                              {"value", p.value},
                              {"lo", p.band_lo},
                              {"hi", p.band_hi}});
  }
  j["theory_overlay"] = nlohmann::json::array();
  for (const auto& [n, v] : record.theory_overlay) {
    j["theory_overlay"].push_back({{"n", n}, {"value", v}});
  }
  j["failures"] = record.failures;
  return j.dump(2);
}

std::string zne_report_json(const ExperimentRecord& record) {
  nlohmann::json j;
  j["scales"] = nlohmann::json::array();
  for (const auto& [s, fit] : record.per_scale_fits) {
    nlohmann::json js;
    js["s"] = s;
    js["gamma"] = fit.rate;
    js["dgamma"] = fit.rate_err;
    js["excluded"] = nlohmann::json::array();
    for (const auto& e : fit.excluded) {
      js["excluded"].push_back({{"n", e.n}, {"reason", e.reason}});
    }
    j["scales"].push_back(std::move(js));
  }
  j["slope"] = record.zne_valid ? record.zne.slope : 0.0;
  j["intercept"] = record.zne_valid ? record.zne.intercept : 0.0;
  j["dintercept"] = record.zne_valid ? record.zne.intercept_err : 0.0;
  j["mitigated"] = nlohmann::json::array();
  for (const MitigatedPoint& p : record.mitigated) {
    j["mitigated"].push_back({{"n", p.n},
                              {"value", p.value},
                              {"lo", p.band_lo},
                              {"hi", p.band_hi}});
  }
  return j.dump(2);
}

void write_record(const ExperimentRecord& record, const std::string& dir,
                  bool with_shots, const std::vector<ShotTable>& tables) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  {
    std::ofstream out(dir + "/plan.json");
    out << to_json(record.plan) << '\n';
  }
  {
    std::ofstream out(dir + "/record.json");
    out << record_json(record) << '\n';
  }
  {
    std::ofstream out(dir + "/zne.json");
    out << zne_report_json(record) << '\n';
  }
  if (with_shots) {
    fs::create_directories(dir + "/shots");
    for (const ShotTable& table : tables) {
      const std::string stem =
          dir + "/shots/" + cell_stem(table.meta.steps, table.meta.noise_scale);
      write_shot_csv(table, stem + ".csv");
      std::ofstream side(stem + ".json");
      side << shot_sidecar_json(table) << '\n';
    }
  }
}

ExperimentRecord refit_from_shots(const ExperimentPlan& plan,
                                  const std::string& dir, int threads) {
  plan.validate();
  ExperimentRecord record;
  record.plan = plan;
  const FloquetStep step = build_floquet_step(plan.spec, plan.optimize);
  record.step_report = step.report;
  record.relabel = step.report.relabel;

  const Philox master(plan.seed);
  for (double s : plan.scales) {
    const int s_idx = scale_index(plan, s);
    for (int n : plan.steps) {
      const std::string stem = dir + "/shots/" + cell_stem(n, s);
      const ShotTable table = read_shot_csv(stem + ".csv", stem + ".json");
      const std::vector<double> ms = table.magnetizations();
      const std::uint64_t boot_seed =
          master.derive(kBootStream, static_cast<std::uint32_t>(s_idx),
                        static_cast<std::uint32_t>(n));
      CellResult cell;
      cell.n = n;
      cell.s = s;
      cell.seed = table.meta.seed;
      cell.shots = table.shots();
      double acc = 0.0;
      for (double m : ms) acc += m;
      cell.sample_mean = acc / static_cast<double>(ms.size());
      cell.estimate = bootstrap(ms, plan.resamples, boot_seed, threads);
      if (plan.resamples >= 100) {
        cell.diagnostics = normality_diagnostics(cell.estimate);
      }
      cell.shot_hash = hash_rows(table.rows);
      record.cells.push_back(std::move(cell));
    }
  }

  std::vector<ScaleRate> rates;
  for (double s : plan.scales) {
    try {
      const DecayFit fit = fit_exponential_wls(fit_points(plan, record.cells, s));
      record.per_scale_fits.emplace_back(s, fit);
      rates.push_back({s, fit.rate, std::max(fit.rate_err, kSigmaFloor)});
    } catch (const std::exception& e) {
      record.failures.push_back("decay fit at s=" + std::to_string(s) +
                                " failed: " + e.what());
    }
  }
  try {
    record.zne = fit_linear_zne(rates);
    record.zne.per_scale = record.per_scale_fits;
    record.zne_valid = true;
  } catch (const std::exception& e) {
    record.failures.push_back(std::string("zero-noise extrapolation failed: ") +
                              e.what());
  }
  if (record.zne_valid) {
    const auto it = std::find_if(
        record.per_scale_fits.begin(), record.per_scale_fits.end(),
        [](const auto& p) { return p.first == 1.0; });
    if (it != record.per_scale_fits.end()) {
      std::vector<std::pair<int, double>> raw;
      for (const CellResult& cell : record.cells) {
        if (cell.s == 1.0) raw.emplace_back(cell.n, cell.estimate.mean);
      }
      record.mitigated = mitigate_curve(raw, it->second, record.zne);
    }
  }
  const double gamma_eps =
      gamma_epsilon_theory(plan.spec.kick_epsilon, plan.spec.range);
  for (int n : plan.steps) {
    record.theory_overlay.emplace_back(n, std::exp(-gamma_eps * n));
  }
  return record;
}

std::string run_directory_name(const ExperimentPlan& plan) {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y%m%d-%H%M%S", &tm);

  const std::string text = to_json(plan);
  std::uint64_t h = 1469598103934665603ull;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  std::ostringstream name;
  name << stamp << '-' << std::hex << (h & 0xffffffffu);
  return name.str();
}

}  // namespace kisim
