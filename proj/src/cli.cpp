#include "ebnet/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "ebnet/capacity.hpp"
#include "ebnet/ebcheck.hpp"
#include "ebnet/protocols.hpp"
#include "ebnet/sweep.hpp"
#include "ebnet/verify.hpp"

namespace ebnet::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Writes `text` to `path`, or to `out` when no path was given.
void emit(const std::optional<std::string>& path, const std::string& text, std::ostream& out) {
  if (!path) {
    out << text;
    return;
  }
  std::ofstream file(*path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + *path + "' for writing");
  file << text;
  file.flush();
  if (!file) throw IoError("failed writing '" + *path + "'");
}

int cmd_capacity(int d, double x, std::ostream& out) {
  const SweepRow row = make_sweep_row(d, x);
  out << "d = " << d << '\n'
      << "x = " << format_sig12(x) << '\n'
      << "C = " << format_sig12(row.c) << '\n'
      << "C_E = " << format_sig12(row.c_e) << '\n'
      << "ratio = " << (row.ratio ? format_sig12(*row.ratio) : std::string("undefined")) << '\n'
      << "EB = " << (row.eb ? "true" : "false") << '\n';
  return kSuccess;
}

int cmd_sweep(int d, double x_min, double x_max, int steps, const std::optional<std::string>& path,
              const std::string& format, bool parallel, std::ostream& out) {
  if (!(x_min < x_max)) throw UsageError("--x-min must be below --x-max");
  const auto rows = capacity_sweep(d, x_min, x_max, steps, parallel);
  std::ostringstream text;
  if (format == "csv") {
    write_sweep_csv(rows, text);
  } else {
    text << sweep_to_json(rows).dump(2) << '\n';
  }
  emit(path, text.str(), out);
  return kSuccess;
}

int cmd_demo(const std::string& name, int d, double x, double q, std::uint64_t seed, double tolerance,
             const std::optional<std::string>& path, std::ostream& out) {
  const auto& names = demo_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) throw UsageError("unknown demo '" + name + "'");
  if (name == "butterfly" && d != 2) throw UsageError("the butterfly demo runs at --d 2 (dense size grows as d^16)");
  ProtocolReport report = run_demo(name, d, x, q, seed);
  report.tolerance = tolerance;
  const std::string json = report_to_json(report).dump(2) + "\n";
  if (path) {
    emit(path, json, out);
    out << report.name << ": " << report.metric_name << " = " << format_sig12(report.metric_value)
        << ", claimed = " << format_sig12(report.claimed_value) << ", discrepancy = " << format_sig12(report.discrepancy)
        << (report.passed() ? " [PASS]" : " [FAIL]") << '\n';
  } else {
    out << json;
  }
  return report.passed() ? kSuccess : kVerificationFailure;
}

int cmd_eb_threshold(int d, std::ostream& out) {
  const double scanned = eb_threshold_scan(d);
  const double exact = eb_threshold_exact(d);
  out << "d = " << d << '\n'
      << "x* (bisection) = " << format_sig12(scanned) << '\n'
      << "d/(d+1) = " << format_sig12(exact) << '\n'
      << "|difference| = " << format_sig12(std::abs(scanned - exact)) << '\n';
  return kSuccess;
}

int cmd_verify_all(int d_max, bool parallel, std::ostream& out) {
  const auto results = run_verify_all(d_max, parallel);
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    out << (r.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(56) << r.name << std::right << std::fixed
        << std::setprecision(2) << std::setw(8) << r.seconds << " s  " << r.detail << '\n';
  }
  out << (all ? "all checks passed" : "verification FAILED") << '\n';
  return all ? kSuccess : kVerificationFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement-breaking network simulator: capacities, sweeps, protocol demos and verification"};
  app.name("ebnet");
  app.require_subcommand(1);

  int d = 2;
  double x = 0.75;
  double q = 0.5;
  std::uint64_t seed = 1;
  int steps = 101;
  double x_min = 0.0;
  double x_max = 1.0;
  std::string out_path;
  std::string format = "csv";
  bool parallel = false;
  int d_max = 3;
  std::string demo_name;
  double tolerance = kInvariantTol;

  auto* capacity = app.add_subcommand("capacity", "Print C, C_E, their ratio and EB status for D_x");
  capacity->add_option("--d", d, "Qudit dimension")->check(CLI::Range(2, 64));
  capacity->add_option("--x", x, "Depolarizing parameter")->check(CLI::Range(0.0, 1.0));

  auto* sweep = app.add_subcommand("sweep", "Tabulate C, C_E and C_E/C over a grid of x");
  sweep->add_option("--d", d, "Qudit dimension")->check(CLI::Range(2, 64));
  sweep->add_option("--x-min", x_min, "Grid start")->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--x-max", x_max, "Grid end")->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--steps", steps, "Number of grid points")->check(CLI::Range(2, 1000000));
  sweep->add_option("--out", out_path, "Output file (stdout if omitted)");
  sweep->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_flag("--parallel", parallel, "Evaluate grid points concurrently");

  auto* demo = app.add_subcommand("demo", "Run one protocol simulation and write its report as JSON");
  demo->add_option("name", demo_name, "teleport | densecode | bobsolo | noisy-i | noisy-ii | butterfly")->required();
  demo->add_option("--d", d, "Qudit dimension")->check(CLI::Range(2, 4));
  demo->add_option("--x", x, "Depolarizing parameter")->check(CLI::Range(0.0, 1.0));
  demo->add_option("--q", q, "Noise mixing probability")->check(CLI::Range(0.0, 1.0));
  demo->add_option("--seed", seed, "Seed for random test states");
  demo->add_option("--out", out_path, "Report file (stdout if omitted)");
  demo->add_option("--tolerance", tolerance, "Largest accepted discrepancy")->check(CLI::NonNegativeNumber);

  auto* threshold = app.add_subcommand("eb-threshold", "Locate the EB threshold of D_x by bisection");
  threshold->add_option("--d", d, "Qudit dimension")->check(CLI::Range(2, 16));

  auto* verify = app.add_subcommand("verify-all", "Run every verification suite up to --d-max");
  verify->add_option("--d-max", d_max, "Largest dimension (2, 3 or 4)")->check(CLI::Range(2, 4));
  verify->add_flag("--parallel", parallel, "Run suites concurrently");

  std::vector<std::string> argv_storage{"ebnet"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kUsageError;
  }

  const std::optional<std::string> path = out_path.empty() ? std::nullopt : std::optional<std::string>(out_path);
  try {
    if (*capacity) return cmd_capacity(d, x, out);
    if (*sweep) return cmd_sweep(d, x_min, x_max, steps, path, format, parallel, out);
    if (*demo) return cmd_demo(demo_name, d, x, q, seed, tolerance, path, out);
    if (*threshold) return cmd_eb_threshold(d, out);
    if (*verify) return cmd_verify_all(d_max, parallel, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace ebnet::cli
