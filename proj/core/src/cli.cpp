#include "qmix/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <ostream>

#include "qmix/config.hpp"
#include "qmix/error.hpp"
#include "qmix/io.hpp"
#include "qmix/run.hpp"

namespace qmix::cli {

namespace {

std::string timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* e = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::strtoll(e, nullptr, 10));
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int report_error(const std::exception& e, const GlobalOptions& g, std::ostream& err) {
  const int code = exit_code_for(e);
  const auto* qe = dynamic_cast<const Error*>(&e);
  const char* kind = qe ? qe->kind() : "error";
  if (!g.json_errors) err << "qmix: " << kind << ": " << e.what() << "\n";
  err << error_json(kind, e.what(), code);
  return code;
}

void ensure_dir(const std::filesystem::path& p) {
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec) throw ConfigError("cannot create output directory " + p.string() + ": " + ec.message());
}

// Spectrum and report in the units of the config file.
SpectrumTable physical(SpectrumTable t, double gamma_rad) {
  t.delta_w *= gamma_rad;
  t.t_start /= gamma_rad;
  t.t_end /= gamma_rad;
  return t;
}

PeakReport physical(PeakReport r, double gamma_rad) {
  r.delta_w *= gamma_rad;
  return r;
}

void print_report(const PeakReport& r, std::ostream& out) {
  char line[160];
  for (const auto& e : r.entries) {
    if (e.oracle_abs) {
      std::snprintf(line, sizeof line, "n=%+3d  |S|=%.6e  oracle=%.6e  delta=%.3e  %s\n", e.n, e.abs,
                    *e.oracle_abs, e.delta.value_or(0.0), e.pass ? "pass" : "FAIL");
    } else {
      std::snprintf(line, sizeof line, "n=%+3d  |S|=%.6e  %s  %s\n", e.n, e.abs,
                    e.above_floor ? "present" : "absent ", e.pass ? "ok" : "UNEXPECTED");
    }
    out << line;
  }
  std::snprintf(line, sizeof line, "floor=%.3e\n", r.floor);
  out << line;
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kConfig;
  if (dynamic_cast<const NoOracleError*>(&e)) return kNoOracle;
  if (dynamic_cast<const Error*>(&e)) return kIntegration;
  return kFailure;
}

int cmd_simulate(const SimulateOptions& o, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  try {
    const auto cfg = load_config(o.config);
    if (!g.quiet)
      for (const auto& w : cfg.warnings) err << "qmix: warning: " << w << "\n";
    ensure_dir(o.out);
    const auto r = simulate(cfg);
    const double G = r.plan.gamma_rad;
    const auto spec = physical(r.spectrum, G);
    const auto rep = physical(r.report, G);

    ManifestInfo m;
    m.config_path = o.config.string();
    m.hash = cfg.hash;
    m.command = "simulate";
    m.outputs = {"trajectory.csv", "spectrum.csv", "peaks.json"};
    if (o.gnuplot) m.outputs.push_back("spectrum.gp");
    m.notes = r.plan.notes;
    for (const auto& w : cfg.warnings) m.notes.push_back("warning: " + w);
    m.generated_at = timestamp();

    write_file(o.out / "trajectory.csv", trajectory_csv(r.trajectory, cfg.hash, 1.0 / G));
    write_file(o.out / "spectrum.csv", spectrum_csv(spec, cfg.hash));
    write_file(o.out / "peaks.json", peak_report_json(rep, cfg.hash));
    if (o.gnuplot) write_file(o.out / "spectrum.gp", gnuplot_script("spectrum.csv"));
    write_file(o.out / "manifest.json", manifest_json(r, m));

    if (!g.quiet) {
      for (const auto& n : r.plan.notes) err << "qmix: note: " << n << "\n";
      print_report(rep, out);
      if (r.trajectory.stats.max_purity > 1.0 + kPhysTol)
        err << "qmix: warning: purity bound exceeded (max 4|sm|^2 + sz^2 = "
            << r.trajectory.stats.max_purity << ")\n";
    }
    return kOk;
  } catch (const std::exception& e) {
    return report_error(e, g, err);
  }
}

int cmd_validate(const ValidateOptions& o, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  try {
    auto cfg = load_config(o.config);
    if (o.rel_tol) cfg.validate.rel_tol = *o.rel_tol;
    if (o.abs_floor) cfg.validate.abs_floor = *o.abs_floor;
    if (o.mode) cfg.validate.mode = *o.mode;
    revalidate(cfg);
    const auto plan = plan_run(cfg);

    // Fail fast on scenarios without an oracle before integrating.
    std::vector<int> probe{1};
    oracle_table(plan, probe);

    SpectrumTable numeric;
    if (o.spectrum) {
      auto f = parse_spectrum_csv(read_file(*o.spectrum));
      if (f.hash != cfg.hash)
        throw ConfigError("config hash mismatch: " + o.spectrum->string() + " was produced by " + f.hash +
                          ", config is " + cfg.hash);
      numeric = std::move(f.table);
      numeric.delta_w /= plan.gamma_rad;
    } else {
      numeric = simulate(cfg).spectrum;
    }
    const auto rep = validate_spectrum(numeric, plan, cfg.validate);
    const auto phys = physical(rep, plan.gamma_rad);
    if (o.report) write_file(*o.report, peak_report_json(phys, cfg.hash));
    if (!g.quiet) print_report(phys, out);
    if (!rep.all_pass()) {
      if (!g.json_errors) err << "qmix: comparison failed\n";
      err << error_json("comparison", "numeric spectrum differs from the analytic oracle", kComparison);
      return kComparison;
    }
    return kOk;
  } catch (const std::exception& e) {
    return report_error(e, g, err);
  }
}

int cmd_sweep(const SweepOptions& o, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  try {
    const auto cfg = load_config(o.config);
    const auto axis = sweep_axis_from_string(o.axis);
    if (!axis)
      throw ConfigError("unknown sweep axis '" + o.axis + "' (omega1, nu, n_bath, m_bath, delta_w, period)");
    const auto values = parse_values(o.values);
    const auto kind0 = cfg.problem.kind();
    const bool fits = (*axis != SweepAxis::Nu && *axis != SweepAxis::Period) || kind0 == ScenarioKind::Fock;
    const bool fits2 = (*axis != SweepAxis::NBath && *axis != SweepAxis::MBath) || kind0 == ScenarioKind::Squeezed;
    if (!fits || !fits2)
      throw ConfigError("sweep axis " + o.axis + " does not apply to scenario " + std::string(to_string(kind0)));
    ensure_dir(o.out);
    const auto pts = run_sweep(cfg, *axis, values, o.threads);
    const auto kind = cfg.problem.kind();
    write_file(o.out / "sweep.csv", sweep_csv(pts, cfg.hash));
    write_file(o.out / "fits.json", sweep_json(pts, *axis, kind, cfg.integrator.n_max, cfg.hash));
    std::size_t failed = 0;
    for (const auto& p : pts) {
      if (p.spectrum) continue;
      ++failed;
      if (!g.json_errors) err << "qmix: point " << p.value << " failed: " << p.error << "\n";
      err << error_json(p.error_kind, p.error, kIntegration);
    }
    if (!g.quiet) out << pts.size() - failed << "/" << pts.size() << " points ok\n";
    return failed ? kIntegration : kOk;
  } catch (const std::exception& e) {
    return report_error(e, g, err);
  }
}

}  // namespace qmix::cli
