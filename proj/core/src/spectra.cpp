#include "qmix/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qmix/error.hpp"
#include "qmix/multiphoton.hpp"

namespace qmix {

namespace {

struct SampleRange {
  std::size_t first = 0;
  std::size_t intervals = 0;
};

SampleRange resolve(const Trajectory& traj, const Window& w) {
  if (traj.samples.empty() || !(traj.dt > 0.0)) throw ExtractionError("extraction: empty trajectory");
  if (!(traj.frame.delta_w > 0.0)) throw ExtractionError("extraction: delta_w must be positive");
  const double len = w.t_end - w.t_start;
  const double beat = 2.0 * std::numbers::pi / traj.frame.delta_w;
  const double periods = len / beat;
  if (!(len > 0.0) || std::abs(periods - std::round(periods)) > 1e-6 || std::round(periods) < 1.0) {
    std::ostringstream os;
    os << "window misaligned: length " << len << " is " << periods << " beat periods, not an integer";
    throw ExtractionError(os.str());
  }
  const double a = (w.t_start - traj.t0) / traj.dt;
  const double b = (w.t_end - traj.t0) / traj.dt;
  const double ia = std::round(a), ib = std::round(b);
  if (std::abs(a - ia) > 1e-6 || std::abs(b - ib) > 1e-6)
    throw ExtractionError("window misaligned: edges are not on the sample grid");
  if (ia < 0.0 || ib > static_cast<double>(traj.samples.size() - 1))
    throw ExtractionError("window lies outside the trajectory");
  return {static_cast<std::size_t>(ia), static_cast<std::size_t>(ib - ia)};
}

}  // namespace

double SpectrumTable::max_abs() const {
  double m = 0.0;
  for (const auto& [n, v] : entries) m = std::max(m, std::abs(v));
  return m;
}

cplx extract_component(const Trajectory& traj, int n, const Window& w) {
  const int idx[] = {n};
  SpectrumTable t = spectrum_table(traj, std::span<const int>(idx), w, ScenarioKind::TwoTone);
  return t.entries.at(n);
}

SpectrumTable spectrum_table(const Trajectory& traj, std::span<const int> indices, const Window& w,
                             ScenarioKind kind) {
  const auto r = resolve(traj, w);
  if (indices.empty()) throw ExtractionError("extraction: no indices requested");
  int lo = 0, hi = 0;
  for (int n : indices) {
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }
  const std::size_t width = static_cast<std::size_t>(hi - lo + 1);
  std::vector<cplx> acc(width);
  const double wd = traj.frame.delta_w;
  for (std::size_t k = 0; k <= r.intervals; ++k) {
    const std::size_t i = r.first + k;
    const double weight = (k == 0 || k == r.intervals) ? 0.5 : 1.0;
    const cplx base = std::polar(1.0, wd * traj.time_at(i));
    cplx z{1.0, 0.0};
    for (int p = 0; p < -lo; ++p) z *= std::conj(base);
    const cplx s = weight * traj.samples[i].sm;
    for (std::size_t j = 0; j < width; ++j) {
      acc[j] += s * z;
      z *= base;
    }
  }
  SpectrumTable out;
  out.delta_w = wd;
  out.t_start = traj.time_at(r.first);
  out.t_end = traj.time_at(r.first + r.intervals);
  const double norm = 1.0 / static_cast<double>(r.intervals);
  for (int n : indices) out.entries[n] = acc[static_cast<std::size_t>(n - lo)] * norm;
  out.floor = estimate_floor(out, kind);
  return out;
}

SpectrumTable spectrum_table(const Trajectory& traj, int n_max, const Window& w, ScenarioKind kind) {
  std::vector<int> idx;
  for (int n = -n_max; n <= n_max; ++n) idx.push_back(n);
  return spectrum_table(traj, std::span<const int>(idx), w, kind);
}

double estimate_floor(const SpectrumTable& t, ScenarioKind kind) {
  std::vector<double> v;
  for (const auto& [n, s] : t.entries)
    if (!is_allowed(kind, n)) v.push_back(std::abs(s));
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double presence_threshold(double floor) { return std::max(100.0 * floor, 1e-13); }

bool above_floor(const SpectrumTable& t, int n) {
  return std::abs(t.at(n)) > presence_threshold(t.floor);
}

cplx emitted_amplitude(cplx s, const QubitParams& q) {
  return cplx{0.0, -1.0} * q.gamma_rad * s / q.dipole_scale;
}

bool PeakReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const PeakEntry& e) { return e.pass; });
}

double PeakReport::max_delta() const {
  double m = 0.0;
  for (const auto& e : entries)
    if (e.delta) m = std::max(m, *e.delta);
  return m;
}

namespace {

void sort_entries(std::vector<PeakEntry>& v) {
  std::sort(v.begin(), v.end(), [](const PeakEntry& a, const PeakEntry& b) {
    const int aa = std::abs(a.n), bb = std::abs(b.n);
    return aa != bb ? aa < bb : a.n < b.n;
  });
}

PeakEntry entry_for(const SpectrumTable& t, int n, cplx v) {
  PeakEntry e;
  e.n = n;
  e.abs = std::abs(v);
  e.phase = std::arg(v);
  e.above_floor = e.abs > presence_threshold(t.floor);
  return e;
}

}  // namespace

PeakReport peak_report(const SpectrumTable& t, ScenarioKind kind) {
  PeakReport r;
  r.scenario = kind;
  r.delta_w = t.delta_w;
  r.floor = t.floor;
  for (const auto& [n, v] : t.entries) {
    PeakEntry e = entry_for(t, n, v);
    e.pass = e.above_floor == is_allowed(kind, n);
    r.entries.push_back(e);
  }
  sort_entries(r.entries);
  return r;
}

PeakReport compare_tables(const SpectrumTable& numeric, const SpectrumTable& oracle, double rel_tol,
                          double abs_floor, ScenarioKind kind, CompareMode mode) {
  if (numeric.entries.size() != oracle.entries.size() ||
      !std::equal(numeric.entries.begin(), numeric.entries.end(), oracle.entries.begin(),
                  [](const auto& a, const auto& b) { return a.first == b.first; }))
    throw PreconditionError("compare_tables: index-set mismatch");
  const double scale = std::max(std::abs(numeric.delta_w), std::abs(oracle.delta_w));
  if (std::abs(numeric.delta_w - oracle.delta_w) > 1e-12 * scale)
    throw PreconditionError("compare_tables: delta_w differs between tables");
  PeakReport r;
  r.scenario = kind;
  r.delta_w = numeric.delta_w;
  r.floor = numeric.floor;
  for (const auto& [n, v] : numeric.entries) {
    const cplx o = oracle.entries.at(n);
    PeakEntry e = entry_for(numeric, n, v);
    e.oracle_abs = std::abs(o);
    e.delta = mode == CompareMode::Complex ? std::abs(v - o) : std::abs(std::abs(v) - std::abs(o));
    e.pass = *e.delta <= rel_tol * std::abs(o) + abs_floor;
    r.entries.push_back(e);
  }
  sort_entries(r.entries);
  return r;
}

}  // namespace qmix
