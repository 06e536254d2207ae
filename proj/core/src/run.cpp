#include "qmix/run.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "qmix/analytic.hpp"
#include "qmix/dynamics.hpp"
#include "qmix/error.hpp"
#include "qmix/multiphoton.hpp"

namespace qmix {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t ceil_steps(double span, double dt) {
  return static_cast<std::size_t>(std::ceil(span / dt * (1.0 - 1e-12)));
}

std::size_t round_up(std::size_t x, std::size_t k) { return (x + k - 1) / k * k; }

}  // namespace

RunPlan plan_run(const RunConfig& cfg) {
  RunPlan plan;
  plan.gamma_rad = cfg.problem.qubit.gamma_rad;
  plan.problem = normalize(cfg.problem);
  auto& p = plan.problem;
  const auto& in = cfg.integrator;
  const std::size_t min_samples = in.min_samples_per_period;

  if (auto* fk = std::get_if<Fock>(&p.scenario)) {
    if (!cfg.commensurate)
      throw ConfigError(cfg.origin + ": Fock runs need commensurate = true for spectral extraction");
    const double T = fk->period;
    const double beat = kTwoPi / p.frame.delta_w;
    long long q = 1;
    if (beat >= T) {
      q = std::max(1LL, std::llround(beat / T));
      p.frame.delta_w = kTwoPi / (static_cast<double>(q) * T);
      plan.period = static_cast<double>(q) * T;
    } else {
      const long long k = std::max(1LL, std::llround(T / beat));
      p.frame.delta_w = kTwoPi * static_cast<double>(k) / T;
      plan.period = T;
    }
    plan.pulses_per_period = q;
    if (p.frame.delta_w != normalize(cfg.problem).frame.delta_w) {
      std::ostringstream os;
      os.precision(10);
      os << "delta_w snapped to " << p.frame.delta_w * plan.gamma_rad << " so that one beat period holds "
         << q << " pulse period(s)";
      plan.notes.push_back(os.str());
    }
    const EquationsOfMotion eom(p);
    const double cap = std::min(in.dt_max, eom.max_dt());
    const std::size_t mT0 = ceil_steps(T, cap);
    const std::size_t qq = static_cast<std::size_t>(q);
    std::size_t stride = std::max<std::size_t>(1, qq * mT0 / min_samples);
    stride = std::min(stride, mT0);
    std::size_t mT = round_up(mT0, stride);
    if ((qq * (mT / stride)) % 2 != 0) mT += stride;
    plan.stride = stride;
    plan.steps_per_period = qq * mT;
    plan.dt = T / static_cast<double>(mT);
  } else {
    plan.period = kTwoPi / p.frame.delta_w;
    const std::size_t req = p.kind() == ScenarioKind::Squeezed ? 4 : 2;
    const EquationsOfMotion eom(p);
    const double cap = std::min(in.dt_max, eom.max_dt());
    const std::size_t m0 = ceil_steps(plan.period, cap);
    const std::size_t stride = std::max<std::size_t>(1, m0 / min_samples);
    const std::size_t per = round_up((m0 + stride - 1) / stride, req);
    plan.stride = stride;
    plan.steps_per_period = per * stride;
    plan.dt = plan.period / static_cast<double>(plan.steps_per_period);
  }

  const double g = derive_gamma(p.qubit);
  const double settle = in.settle_time ? *in.settle_time : 60.0 / std::min(g, p.qubit.gamma_rad);
  plan.settle_periods = static_cast<int>(std::ceil(settle / plan.period * (1.0 - 1e-12)));
  plan.window_periods = in.window_periods;
  plan.total_periods = plan.settle_periods + plan.window_periods + 1;
  return plan;
}

RunResult simulate(const RunConfig& cfg) {
  RunResult r;
  r.plan = plan_run(cfg);
  const auto& plan = r.plan;
  const EquationsOfMotion eom(plan.problem);
  r.trajectory = integrate(eom, BlochState{}, 0.0, plan.t_end(), plan.dt, IntegrateOptions{plan.stride});
  const std::size_t per = plan.samples_per_period();
  r.steady_index = steady_state_detect(r.trajectory, per, cfg.integrator.steady_tol);
  const std::size_t last = r.trajectory.samples.size() - 1;
  const std::size_t span = per * static_cast<std::size_t>(plan.window_periods);
  if (span > last || r.steady_index > last - span)
    throw SteadyStateError("no steady state within window: transient extends into the extraction window");
  r.window = {r.trajectory.time_at(last - span), r.trajectory.time_at(last)};
  const auto kind = plan.problem.kind();
  r.spectrum = spectrum_table(r.trajectory, cfg.integrator.n_max, r.window, kind);
  r.spectrum.notes = plan.notes;
  r.report = peak_report(r.spectrum, kind);
  return r;
}

SpectrumTable oracle_table(const RunPlan& plan, const std::vector<int>& indices) {
  const auto& p = plan.problem;
  SpectrumTable out;
  out.delta_w = p.frame.delta_w;
  int n_max = 0;
  for (int n : indices) n_max = std::max(n_max, std::abs(n));
  switch (p.kind()) {
    case ScenarioKind::TwoTone: {
      const auto& s = std::get<TwoTone>(p.scenario);
      if (s.omega1 * s.omega2 > 0.0) {
        std::vector<int> odd;
        for (int n : indices)
          if (n % 2 != 0) odd.push_back(n);
        if (odd.empty()) odd.push_back(1);
        const auto t = two_tone_spectrum(s, p.qubit, p.frame, std::span<const int>(odd));
        for (int n : indices) out.entries[n] = t.at(n);
      } else {
        // Single drive: one carrier, nothing else.
        const auto b = two_tone_steady(0.0, s, p.qubit, p.frame);
        for (int n : indices) out.entries[n] = 0.0;
        if (s.omega2 == 0.0) out.entries[1] = b.sm;
        if (s.omega1 == 0.0) out.entries[-1] = b.sm;
      }
      break;
    }
    case ScenarioKind::Squeezed: {
      const auto t = squeezed_exact_spectrum(std::get<Squeezed>(p.scenario), p.qubit, p.frame, n_max);
      for (int n : indices) out.entries[n] = t.at(n);
      break;
    }
    case ScenarioKind::Fock: {
      const auto& s = std::get<Fock>(p.scenario);
      if (p.frame.big_delta != 0.0)
        throw NoOracleError("no analytic oracle: Fock closed forms exist only for big_delta = 0");
      const auto c = fock_coeffs(s, p.qubit, p.frame);
      const auto b = single_drive_steady(0.0, s, p.qubit, p.frame);
      for (int n : indices) out.entries[n] = 0.0;
      out.entries[1] = b.sm;
      out.entries[-1] = c.c1_avg;
      out.entries[3] = c.cm3;
      for (auto it = out.entries.begin(); it != out.entries.end();) {
        if (std::find(indices.begin(), indices.end(), it->first) == indices.end()) {
          it = out.entries.erase(it);
        } else {
          ++it;
        }
      }
      break;
    }
  }
  return out;
}

PeakReport validate_spectrum(const SpectrumTable& numeric, const RunPlan& plan,
                             const ValidateSettings& v) {
  std::vector<int> idx;
  for (const auto& [n, s] : numeric.entries) idx.push_back(n);
  SpectrumTable ora = oracle_table(plan, idx);
  ora.delta_w = numeric.delta_w;
  const double floor = v.abs_floor ? *v.abs_floor : 1e-6 * ora.max_abs();
  return compare_tables(numeric, ora, v.rel_tol, floor, plan.problem.kind(), v.mode);
}

std::optional<SweepAxis> sweep_axis_from_string(std::string_view s) {
  if (s == "omega1") return SweepAxis::Omega1;
  if (s == "nu") return SweepAxis::Nu;
  if (s == "n_bath") return SweepAxis::NBath;
  if (s == "m_bath") return SweepAxis::MBath;
  if (s == "delta_w") return SweepAxis::DeltaW;
  if (s == "period") return SweepAxis::Period;
  return std::nullopt;
}

std::string_view to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::Omega1: return "omega1";
    case SweepAxis::Nu: return "nu";
    case SweepAxis::NBath: return "n_bath";
    case SweepAxis::MBath: return "m_bath";
    case SweepAxis::DeltaW: return "delta_w";
    case SweepAxis::Period: return "period";
  }
  return "unknown";
}

RunConfig with_axis_value(const RunConfig& cfg, SweepAxis axis, double value) {
  RunConfig out = cfg;
  auto& sc = out.problem.scenario;
  auto wrong = [&](std::string_view need) {
    throw ConfigError("sweep axis " + std::string(to_string(axis)) + " needs a " + std::string(need) +
                      " scenario, got " + std::string(to_string(kind_of(sc))));
  };
  switch (axis) {
    case SweepAxis::Omega1:
      std::visit([&](auto& s) { s.omega1 = value; }, sc);
      break;
    case SweepAxis::DeltaW:
      out.problem.frame.delta_w = value;
      break;
    case SweepAxis::Nu:
      if (auto* f = std::get_if<Fock>(&sc)) f->nu = value; else wrong("fock");
      break;
    case SweepAxis::Period:
      if (auto* f = std::get_if<Fock>(&sc)) f->period = value; else wrong("fock");
      break;
    case SweepAxis::NBath:
      if (auto* s = std::get_if<Squeezed>(&sc)) s->n_bath = value; else wrong("squeezed");
      break;
    case SweepAxis::MBath:
      if (auto* s = std::get_if<Squeezed>(&sc)) s->m_bath = {value, 0.0}; else wrong("squeezed");
      break;
  }
  revalidate(out);
  return out;
}

namespace {

double parse_double(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ConfigError("values: cannot parse '" + std::string(s) + "' as a number");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::vector<double> make_range(bool log, double a, double b, double count) {
  const auto n = static_cast<long long>(count);
  if (static_cast<double>(n) != count || n < 1) throw ConfigError("values: point count must be a positive integer");
  if (log && !(a > 0.0 && b > 0.0)) throw ConfigError("values: log ranges need positive end points");
  std::vector<double> out;
  for (long long i = 0; i < n; ++i) {
    const double u = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    out.push_back(log ? std::exp(std::log(a) + u * (std::log(b) - std::log(a))) : a + u * (b - a));
  }
  return out;
}

}  // namespace

std::vector<double> parse_values(std::string_view spec) {
  auto fn = [&](std::string_view name) -> std::optional<std::vector<std::string_view>> {
    if (spec.substr(0, name.size()) != name || spec.size() < name.size() + 2) return std::nullopt;
    if (spec[name.size()] != '(' || spec.back() != ')') return std::nullopt;
    return split(spec.substr(name.size() + 1, spec.size() - name.size() - 2), ',');
  };
  std::optional<std::vector<std::string_view>> args;
  bool log = false;
  if ((args = fn("logspace"))) {
    log = true;
  } else if ((args = fn("linspace"))) {
    log = false;
  } else if (spec.substr(0, 4) == "log:" || spec.substr(0, 4) == "lin:") {
    log = spec[1] == 'o';
    args = split(spec.substr(4), ':');
  }
  if (args) {
    if (args->size() != 3) throw ConfigError("values: a range needs start, stop and count");
    return make_range(log, parse_double((*args)[0]), parse_double((*args)[1]), parse_double((*args)[2]));
  }
  std::vector<double> out;
  for (auto part : split(spec, ',')) out.push_back(parse_double(part));
  if (out.empty()) throw ConfigError("values: empty list");
  return out;
}

unsigned worker_count(std::size_t jobs, unsigned requested) {
  unsigned n = requested;
  if (n == 0) {
    n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("QMIX_THREADS")) {
      unsigned cap = 0;
      const std::string_view s(env);
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
      if (ec == std::errc{} && ptr == s.data() + s.size() && cap > 0) n = std::min(n, cap);
    }
  }
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, jobs)));
}

std::vector<SweepPoint> run_sweep(const RunConfig& cfg, SweepAxis axis, std::vector<double> values,
                                  unsigned threads) {
  std::sort(values.begin(), values.end());
  std::vector<SweepPoint> pts(values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < pts.size(); i = next++) {
      auto& pt = pts[i];
      pt.value = values[i];
      try {
        const auto point_cfg = with_axis_value(cfg, axis, values[i]);
        pt.spectrum = simulate(point_cfg).spectrum;
      } catch (const Error& e) {
        pt.error_kind = e.kind();
        pt.error = e.what();
      } catch (const std::exception& e) {
        pt.error_kind = "error";
        pt.error = e.what();
      }
    }
  };
  const unsigned n = worker_count(pts.size(), threads);
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return pts;
}

std::optional<SlopeFit> fit_slope(const std::vector<SweepPoint>& pts, int n) {
  std::vector<std::pair<double, double>> xy;
  for (const auto& p : pts) {
    if (!p.spectrum || !(p.value > 0.0)) continue;
    const double a = std::abs(p.spectrum->at(n));
    if (!above_floor(*p.spectrum, n) || !(a > 0.0)) continue;
    xy.emplace_back(std::log(p.value), std::log(a));
  }
  if (xy.size() < 2) return std::nullopt;
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : xy) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(xy.size());
  my /= static_cast<double>(xy.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : xy) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (!(sxx > 0.0)) return std::nullopt;
  SlopeFit f;
  f.n = n;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.points = xy.size();
  return f;
}

}  // namespace qmix
