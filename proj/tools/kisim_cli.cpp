// kisim command line: transpile kicked-Ising Floquet steps, run noisy
// sampling experiments, refit stored shots, and export plot-ready tables.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kisim/experiment.hpp"
#include "kisim/transpiler.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

std::vector<double> parse_couplings(const std::string& csv, int range) {
  std::vector<double> values;
  if (!csv.empty()) {
    std::stringstream ss(csv);
    std::string cell;
    while (std::getline(ss, cell, ',')) values.push_back(std::stod(cell));
  }
  if (values.empty()) {
    values.assign(range, std::numbers::pi / 4.0);
  }
  if (static_cast<int>(values.size()) != range) {
    throw std::runtime_error("need one coupling per range");
  }
  return values;
}

std::string report_json(const kisim::TranspileReport& report,
                        const kisim::CountVerdict& verdict) {
  std::ostringstream j;
  j << "{\n"
    << "  \"num_qubits\": " << report.num_qubits << ",\n"
    << "  \"range\": " << report.range << ",\n"
    << "  \"counts\": {\"q2_longest\": "
    << report.counts.two_qubit_longest_path
    << ", \"q1_longest\": " << report.counts.one_qubit_longest_path
    << ", \"q2_total\": " << report.counts.total_two_qubit
    << ", \"q1_total\": " << report.counts.total_one_qubit << "},\n"
    << "  \"predicted_naive\": [" << report.predicted_naive_q2 << ", "
    << report.predicted_naive_q1 << "],\n"
    << "  \"predicted_optimized\": [" << report.predicted_optimized_q2 << ", "
    << report.predicted_optimized_q1 << "],\n"
    << "  \"optimized_formula_q2\": " << report.optimized_formula_q2 << ",\n"
    << "  \"relabel\": [";
  for (std::size_t q = 0; q < report.relabel.perm.size(); ++q) {
    j << (q ? ", " : "") << report.relabel.perm[q];
  }
  j << "],\n  \"passes\": [";
  for (std::size_t i = 0; i < report.passes_applied.size(); ++i) {
    j << (i ? ", " : "") << '"' << report.passes_applied[i] << '"';
  }
  j << "],\n  \"verdict\": {\"passed\": " << (verdict.passed ? "true" : "false")
    << ", \"advisory\": " << (verdict.advisory ? "true" : "false")
    << ", \"message\": \"" << verdict.message << "\"}\n}";
  return j.str();
}

int cmd_transpile(int qubits, int range, double epsilon,
                  const std::string& couplings, const std::string& boundary,
                  const std::string& optimize, const std::string& out) {
  kisim::FloquetSpec spec;
  spec.num_qubits = qubits;
  spec.range = range;
  spec.kick_epsilon = epsilon;
  spec.couplings = parse_couplings(couplings, range);
  spec.boundary = boundary == "periodic" ? kisim::Boundary::Periodic
                                         : kisim::Boundary::Open;
  spec.validate();

  const kisim::FloquetStep step =
      kisim::build_floquet_step(spec, optimize != "off");
  const kisim::CountVerdict verdict = kisim::verify_counts(step.report);

  write_file(out, kisim::to_json(step.circuit));
  std::string report_path = out;
  const auto dot = report_path.rfind(".json");
  if (dot != std::string::npos) report_path.resize(dot);
  report_path += ".report.json";
  write_file(report_path, report_json(step.report, verdict));

  std::cout << "wrote " << out << " and " << report_path << '\n'
            << verdict.message << '\n';
  return verdict.passed ? 0 : 1;
}

int cmd_run(const std::string& plan_path, std::string out_dir, int threads,
            bool keep_shots) {
  const kisim::ExperimentPlan plan =
      kisim::plan_from_json(read_file(plan_path));
  if (out_dir.empty()) out_dir = ".";
  const std::string dir =
      (fs::path(out_dir) / kisim::run_directory_name(plan)).string();

  std::vector<kisim::ShotTable> tables;
  const kisim::ExperimentRecord record =
      kisim::run_experiment(plan, threads, tables);
  kisim::write_record(record, dir, keep_shots, tables);

  std::cout << "run directory: " << dir << '\n';
  if (record.zne_valid) {
    std::cout << "Gamma(s) = " << record.zne.slope << " * s + "
              << record.zne.intercept << "   (intercept +/- "
              << record.zne.intercept_err << ")\n";
  }
  for (const std::string& f : record.failures) {
    std::cout << "warning: " << f << '\n';
  }
  return 0;
}

int cmd_zne(const std::string& run_dir, int threads) {
  const kisim::ExperimentPlan plan =
      kisim::plan_from_json(read_file(run_dir + "/plan.json"));
  const kisim::ExperimentRecord record =
      kisim::refit_from_shots(plan, run_dir, threads);
  write_file(run_dir + "/zne.json", kisim::zne_report_json(record));
  write_file(run_dir + "/record.json", kisim::record_json(record));
  std::cout << "refit " << record.cells.size() << " cells; zne.json updated\n";
  if (record.zne_valid) {
    std::cout << "Gamma(s) = " << record.zne.slope << " * s + "
              << record.zne.intercept << '\n';
  }
  return 0;
}

int cmd_report(const std::string& run_dir) {
  const kisim::ExperimentPlan plan =
      kisim::plan_from_json(read_file(run_dir + "/plan.json"));
  const kisim::ExperimentRecord record =
      kisim::refit_from_shots(plan, run_dir, 1);

  {
    std::ofstream out(run_dir + "/series.csv");
    out << "s,n,mean,sigma\n";
    for (double s : plan.scales) {
      for (const auto& p : kisim::magnetization_series(record, s)) {
        out << s << ',' << p.n << ',' << p.mean << ',' << p.sigma << '\n';
      }
    }
  }
  {
    std::ofstream out(run_dir + "/rates.csv");
    out << "s,gamma,dgamma\n";
    for (const auto& [s, fit] : record.per_scale_fits) {
      out << s << ',' << fit.rate << ',' << fit.rate_err << '\n';
    }
  }
  {
    std::ofstream out(run_dir + "/mitigated.csv");
    out << "n,value,lo,hi\n";
    for (const auto& p : record.mitigated) {
      out << p.n << ',' << p.value << ',' << p.band_lo << ',' << p.band_hi
          << '\n';
    }
  }
  // Bootstrap histograms per cell.
  fs::create_directories(run_dir + "/histograms");
  for (const kisim::CellResult& cell : record.cells) {
    std::ostringstream name;
    name << run_dir << "/histograms/s" << cell.s << "_n" << cell.n << ".csv";
    std::string path = name.str();
    std::replace(path.begin() + run_dir.size(), path.end(), ' ', '_');
    const auto dist = kisim::make_distribution(cell.estimate.resample_means);
    kisim::write_histogram_csv(dist, path);
  }
  std::cout << "wrote series.csv, rates.csv, mitigated.csv and histograms/\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kicked-Ising chain transpiler and noisy trajectory simulator"};
  app.require_subcommand(1);

  // transpile
  auto* transpile = app.add_subcommand(
      "transpile", "emit one Floquet-step circuit and its count report");
  int qubits = 10;
  int range = 1;
  double epsilon = 0.2;
  std::string couplings;
  std::string boundary = "open";
  std::string optimize = "on";
  std::string out = "circuit.json";
  transpile->add_option("--qubits", qubits, "chain length");
  transpile->add_option("--range", range, "interaction range R");
  transpile->add_option("--epsilon", epsilon, "kick deviation from pi/2");
  transpile->add_option("--couplings", couplings,
                        "comma list of theta_r in radians (default pi/4)");
  transpile->add_option("--boundary", boundary, "open|periodic")
      ->check(CLI::IsMember({"open", "periodic"}));
  transpile->add_option("--optimize", optimize, "on|off")
      ->check(CLI::IsMember({"on", "off"}));
  transpile->add_option("--out", out, "circuit JSON path");

  // run
  auto* run = app.add_subcommand("run", "execute an experiment plan");
  std::string plan_path;
  std::string out_dir;
  int threads = 2;
  bool no_shots = false;
  run->add_option("--plan", plan_path, "experiment plan JSON")->required();
  run->add_option("--out", out_dir, "parent directory for the run");
  run->add_option("--threads", threads, "worker threads");
  run->add_flag("--no-shots", no_shots, "skip persisting raw shot tables");

  // zne
  auto* zne = app.add_subcommand("zne", "refit a stored run directory");
  std::string run_dir;
  int zne_threads = 2;
  zne->add_option("--run", run_dir, "run directory")->required();
  zne->add_option("--threads", zne_threads, "worker threads");

  // report
  auto* report = app.add_subcommand("report", "emit plot-ready CSV tables");
  std::string report_dir;
  report->add_option("--run", report_dir, "run directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (transpile->parsed()) {
      return cmd_transpile(qubits, range, epsilon, couplings, boundary,
                           optimize, out);
    }
    if (run->parsed()) return cmd_run(plan_path, out_dir, threads, !no_shots);
    if (zne->parsed()) return cmd_zne(run_dir, zne_threads);
    if (report->parsed()) return cmd_report(report_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
