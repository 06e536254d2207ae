#include <iostream>

#include "CLI11.hpp"
#include "qmix/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Wave-mixing simulator for a driven qubit"};
  app.require_subcommand(1);
  qmix::cli::GlobalOptions g;
  app.add_flag("--quiet", g.quiet, "Only write files and errors");
  app.add_flag("--json-errors", g.json_errors, "Report errors as JSON on stderr only");

  qmix::cli::SimulateOptions sim;
  auto* s = app.add_subcommand("simulate", "Integrate, extract the spectrum and write CSV/JSON outputs");
  s->add_option("--config", sim.config, "TOML config")->required()->check(CLI::ExistingFile);
  s->add_option("--out", sim.out, "Output directory")->required();
  s->add_flag("--gnuplot", sim.gnuplot, "Also write a gnuplot script for the spectrum");

  qmix::cli::ValidateOptions val;
  std::string mode;
  std::string spectrum, report;
  auto* v = app.add_subcommand("validate", "Compare the numeric spectrum with the analytic oracle");
  v->add_option("--config", val.config, "TOML config")->required()->check(CLI::ExistingFile);
  v->add_option("--rel-tol", val.rel_tol, "Relative tolerance");
  v->add_option("--abs-floor", val.abs_floor, "Absolute tolerance floor");
  v->add_option("--mode", mode, "magnitude or complex")->check(CLI::IsMember({"magnitude", "complex"}));
  v->add_option("--spectrum", spectrum, "Existing spectrum.csv to check instead of re-running")
      ->check(CLI::ExistingFile);
  v->add_option("--report", report, "Write the comparison report JSON here");

  qmix::cli::SweepOptions sw;
  auto* w = app.add_subcommand("sweep", "Run one simulation per parameter value");
  w->add_option("--config", sw.config, "TOML config")->required()->check(CLI::ExistingFile);
  w->add_option("--axis", sw.axis, "omega1, nu, n_bath, m_bath, delta_w or period")->required();
  w->add_option("--values", sw.values, "a,b,c | lin:a:b:n | log:a:b:n | logspace(a,b,n)")->required();
  w->add_option("--out", sw.out, "Output directory")->required();
  w->add_option("--threads", sw.threads, "Worker count (default: QMIX_THREADS or all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : qmix::cli::kConfig;
  }

  if (*s) return qmix::cli::cmd_simulate(sim, g, std::cout, std::cerr);
  if (*v) {
    if (!mode.empty())
      val.mode = mode == "complex" ? qmix::CompareMode::Complex : qmix::CompareMode::Magnitude;
    if (!spectrum.empty()) val.spectrum = spectrum;
    if (!report.empty()) val.report = report;
    return qmix::cli::cmd_validate(val, g, std::cout, std::cerr);
  }
  return qmix::cli::cmd_sweep(sw, g, std::cout, std::cerr);
}
