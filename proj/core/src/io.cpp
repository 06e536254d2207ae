#include "qmix/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qmix/error.hpp"
#include "qmix/multiphoton.hpp"

namespace qmix {

using nlohmann::ordered_json;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, ptr);
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IntegrationError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IntegrationError("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trajectory_csv(const Trajectory& traj, const std::string& hash, double time_scale) {
  std::string out = "# config_hash: " + hash + "\nt,re_sm,im_sm,sz\n";
  out.reserve(out.size() + traj.samples.size() * 80);
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const auto& s = traj.samples[i];
    out += format_double(traj.time_at(i) * time_scale);
    out += ',';
    out += format_double(s.sm.real());
    out += ',';
    out += format_double(s.sm.imag());
    out += ',';
    out += format_double(s.sz);
    out += '\n';
  }
  return out;
}

std::string spectrum_csv(const SpectrumTable& t, const std::string& hash) {
  std::string out = "# config_hash: " + hash + "\n# delta_w: " + format_double(t.delta_w) +
                    "\n# floor: " + format_double(t.floor) + "\n";
  out += "n,freq_over_delta_w,re,im,abs,above_floor\n";
  for (const auto& [n, v] : t.entries) {
    out += std::to_string(n) + ',' + format_double(static_cast<double>(n)) + ',' +
           format_double(v.real()) + ',' + format_double(v.imag()) + ',' + format_double(std::abs(v)) +
           ',' + (above_floor(t, n) ? "true" : "false") + '\n';
  }
  return out;
}

namespace {

double to_number(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ConfigError("spectrum csv: bad " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

}  // namespace

SpectrumFile parse_spectrum_csv(std::string_view text) {
  SpectrumFile f;
  bool header = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto colon = line.find(':');
      if (colon == std::string_view::npos) continue;
      auto key = line.substr(1, colon - 1);
      auto val = line.substr(colon + 1);
      while (!key.empty() && key.front() == ' ') key.remove_prefix(1);
      while (!val.empty() && val.front() == ' ') val.remove_prefix(1);
      if (key == "config_hash") f.hash = std::string(val);
      if (key == "delta_w") f.table.delta_w = to_number(val, "delta_w");
      if (key == "floor") f.table.floor = to_number(val, "floor");
      continue;
    }
    if (!header) {
      if (line != "n,freq_over_delta_w,re,im,abs,above_floor")
        throw ConfigError("spectrum csv: unexpected header '" + std::string(line) + "'");
      header = true;
      continue;
    }
    std::vector<std::string_view> cols;
    std::size_t s = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        cols.push_back(line.substr(s, i - s));
        s = i + 1;
      }
    }
    if (cols.size() != 6) throw ConfigError("spectrum csv: expected 6 columns in '" + std::string(line) + "'");
    const double n = to_number(cols[0], "index");
    f.table.entries[static_cast<int>(n)] = {to_number(cols[2], "re"), to_number(cols[3], "im")};
  }
  if (!header) throw ConfigError("spectrum csv: missing header row");
  if (f.hash.empty()) throw ConfigError("spectrum csv: missing config_hash");
  return f;
}

namespace {

ordered_json descriptor_json(ScenarioKind kind, int n) {
  const auto d = process_descriptor(kind, n);
  ordered_json j;
  j["output"] = d.output_label();
  j["coh_absorbed"] = d.coh_absorbed;
  if (kind == ScenarioKind::TwoTone) j["tone2_absorbed"] = d.tone2_absorbed;
  if (kind == ScenarioKind::Squeezed) j["pairs_absorbed"] = d.pairs_absorbed;
  if (kind == ScenarioKind::Fock) j["fock_photon"] = d.fock_photon;
  ordered_json s;
  s["omega1_power"] = d.scaling.omega1_power;
  if (kind == ScenarioKind::TwoTone) s["omega2_power"] = d.scaling.omega2_power;
  if (kind == ScenarioKind::Squeezed) {
    s["m_power"] = d.scaling.m_power;
    s["m_conjugate"] = d.scaling.m_conjugate;
    s["series_f_power"] = d.scaling.series_f_power;
    s["folded_f_power"] = d.scaling.folded_f_power;
  }
  if (kind == ScenarioKind::Fock) s["sin_theta_power"] = d.scaling.sin_theta_power;
  j["scaling"] = s;
  return j;
}

}  // namespace

std::string peak_report_json(const PeakReport& r, const std::string& hash) {
  ordered_json j;
  j["scenario"] = std::string(to_string(r.scenario));
  j["delta_w"] = r.delta_w;
  ordered_json entries = ordered_json::array();
  for (const auto& e : r.entries) {
    ordered_json x;
    x["n"] = e.n;
    x["abs"] = e.abs;
    x["phase"] = e.phase;
    x["pass"] = e.pass;
    x["above_floor"] = e.above_floor;
    if (e.oracle_abs) x["oracle_abs"] = *e.oracle_abs;
    if (e.delta) x["delta"] = *e.delta;
    if (is_allowed(r.scenario, e.n)) {
      x["process"] = descriptor_json(r.scenario, e.n);
    } else {
      x["forbidden"] = *forbidden_reason(r.scenario, e.n);
    }
    entries.push_back(x);
  }
  j["entries"] = entries;
  j["floor"] = r.floor;
  j["all_pass"] = r.all_pass();
  j["config_hash"] = hash;
  return j.dump(2) + "\n";
}

std::string manifest_json(const RunResult& r, const ManifestInfo& m) {
  const auto& p = r.plan;
  const double scale = 1.0 / p.gamma_rad;
  ordered_json j;
  j["config_path"] = m.config_path;
  j["config_hash"] = m.hash;
  j["command"] = m.command;
  j["scenario"] = std::string(to_string(p.problem.kind()));
  ordered_json in;
  in["dt"] = p.dt * scale;
  in["t_end"] = p.t_end() * scale;
  in["period"] = p.period * scale;
  in["delta_w"] = p.problem.frame.delta_w * p.gamma_rad;
  in["steps"] = r.trajectory.stats.steps;
  in["sample_stride"] = p.stride;
  in["samples_per_period"] = p.samples_per_period();
  in["settle_periods"] = p.settle_periods;
  in["window"] = {r.window.t_start * scale, r.window.t_end * scale};
  in["window_periods"] = p.window_periods;
  in["steady_index"] = r.steady_index;
  j["integrator"] = in;
  ordered_json st;
  st["max_purity"] = r.trajectory.stats.max_purity;
  st["min_sz"] = r.trajectory.stats.min_sz;
  st["max_sz"] = r.trajectory.stats.max_sz;
  st["purity_bound_held"] = r.trajectory.stats.max_purity <= 1.0 + kPhysTol;
  j["stats"] = st;
  j["outputs"] = m.outputs;
  j["notes"] = m.notes;
  j["deterministic"] = true;
  j["generated_at"] = m.generated_at;
  return j.dump(2) + "\n";
}

std::string sweep_csv(const std::vector<SweepPoint>& pts, const std::string& hash) {
  std::string out = "# config_hash: " + hash + "\nvalue,n,abs_S_n,above_floor\n";
  for (const auto& p : pts) {
    if (!p.spectrum) continue;
    for (const auto& [n, v] : p.spectrum->entries) {
      out += format_double(p.value) + ',' + std::to_string(n) + ',' + format_double(std::abs(v)) + ',' +
             (above_floor(*p.spectrum, n) ? "true" : "false") + '\n';
    }
  }
  return out;
}

std::string sweep_json(const std::vector<SweepPoint>& pts, SweepAxis axis, ScenarioKind kind,
                       int n_max, const std::string& hash) {
  ordered_json j;
  j["axis"] = std::string(to_string(axis));
  j["scenario"] = std::string(to_string(kind));
  j["config_hash"] = hash;
  ordered_json fits = ordered_json::array();
  for (int n : allowed_indices(kind, n_max)) {
    ordered_json f;
    f["n"] = n;
    if (auto fit = fit_slope(pts, n)) {
      f["slope"] = fit->slope;
      f["intercept"] = fit->intercept;
      f["points"] = fit->points;
    } else {
      f["slope"] = nullptr;
    }
    if (axis == SweepAxis::Omega1) f["predicted_slope"] = predicted_scaling(kind, n).omega1_power;
    // Location of the largest peak along the axis.
    double best = -1.0, arg = 0.0;
    for (const auto& p : pts) {
      if (!p.spectrum) continue;
      const double a = std::abs(p.spectrum->at(n));
      if (a > best) {
        best = a;
        arg = p.value;
      }
    }
    if (best >= 0.0) f["argmax"] = arg;
    fits.push_back(f);
  }
  j["fits"] = fits;
  ordered_json failures = ordered_json::array();
  for (const auto& p : pts) {
    if (p.spectrum) continue;
    failures.push_back({{"value", p.value}, {"error", p.error_kind}, {"message", p.error}});
  }
  j["failures"] = failures;
  return j.dump(2) + "\n";
}

std::string gnuplot_script(const std::string& spectrum_file) {
  return "set datafile separator ','\n"
         "set key off\n"
         "set xlabel '(w - w_d) / delta_w'\n"
         "set ylabel '|S_n|'\n"
         "set logscale y\n"
         "set style fill solid\n"
         "plot '" + spectrum_file + "' every ::1 using 2:5 with impulses lw 3\n";
}

std::string error_json(std::string_view kind, std::string_view message, int exit_code) {
  ordered_json j;
  j["error"] = std::string(kind);
  j["message"] = std::string(message);
  j["exit_code"] = exit_code;
  return j.dump() + "\n";
}

}  // namespace qmix
