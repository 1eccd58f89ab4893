#include "modkit/cli.hpp"

#include <cstdio>

#include "CLI11.hpp"
#include "modkit/suites.hpp"

namespace modkit {

namespace {

std::vector<std::string> command_names() {
  std::vector<std::string> c = suite_names();
  c.push_back("all");
  return c;
}

void print_summary(const Report& r, std::ostream& out) {
  for (const auto& c : r.checks) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e <= %.1e", c.residual, c.tolerance);
    out << (c.passed ? "PASS " : "FAIL ") << c.group << '/' << c.name << "  " << buf << '\n';
  }
  std::size_t passed = 0;
  for (const auto& c : r.checks) passed += c.passed ? 1 : 0;
  out << r.command << ": " << passed << '/' << r.checks.size() << " checks passed in " << r.wall_time << " s\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical verification suites for modular theory of standard subspaces", "modkit_cli"};
  std::string command;
  SuiteOptions opts;
  double tol = -1.0;
  std::string out_path, plot_path;
  app.add_option("command", command, "Suite to run")->required()->check(CLI::IsMember(command_names()));
  app.add_option("--dim", opts.dim, "Complex dimension (standard), algebra size cap (vn), spacetime dimension (wedge)")
      ->check(CLI::Range(1, 16));
  app.add_option("--trials", opts.trials, "Number of random trials")->check(CLI::Range(1, 100000));
  app.add_option("--seed", opts.seed, "Master seed");
  app.add_option("--tol", tol, "Override every tolerance")->check(CLI::NonNegativeNumber);
  app.add_option("--grid-n", opts.grid_n, "Grid size of the affine model")->check(CLI::Range(8, 1 << 16));
  app.add_option("--grid-l", opts.grid_l, "Half length of the affine grid")->check(CLI::PositiveNumber);
  app.add_option("--fermi-dim", opts.fermi_dim, "One-particle dimension of the fermionic checks")
      ->check(CLI::Range(1, 5));
  app.add_option("--preset", opts.preset, "Group preset or 'convergence' for the affine refinement study");
  app.add_option("--out", out_path, "Report path (JSON)");
  app.add_option("--plot", plot_path, "Residual plot path (SVG)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPassed;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (tol >= 0.0) opts.tol = tol;

  Report report;
  try {
    report = run_suite(command, opts);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (!plot_path.empty()) {
      if (report.series.empty()) throw Error(ErrorKind::IoError, "command '" + command + "' produces no series to plot");
      emit_plot(report.series, plot_path);
      report.artifacts.push_back(plot_path);
    }
    if (!out_path.empty()) {
      report.artifacts.push_back(out_path);
      write_report(report, out_path);
      print_summary(report, out);
    } else {
      out << serialize(report) << '\n';
    }
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
  return report.all_passed() ? kExitPassed : kExitCheckFailure;
}

}  // namespace modkit
