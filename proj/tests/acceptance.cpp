// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
// Exit status is the number of failed criteria (capped at 1).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "exact_two_tone.hpp"
#include "qmix/analytic.hpp"
#include "qmix/dynamics.hpp"
#include "qmix/multiphoton.hpp"
#include "qmix/oracle.hpp"
#include "qmix/run.hpp"
#include "support.hpp"

using namespace qmix;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> details;

  void check(bool ok, std::string what) {
    pass = pass && ok;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Worst purity seen by any run, per scenario.
std::map<std::string, double> g_purity;

void note_purity(const std::string& label, const Trajectory& tr) {
  auto& p = g_purity[label];
  p = std::max(p, tr.stats.max_purity);
}

RunConfig load(const char* name) {
  return load_config(std::filesystem::path(QMIX_CONFIG_DIR) / name);
}

RunResult run(const RunConfig& cfg, const std::string& label) {
  auto r = simulate(cfg);
  note_purity(label, r.trajectory);
  return r;
}

double max_abs(const SpectrumTable& t, int n_max) {
  double m = 0.0;
  for (int n = -n_max; n <= n_max; ++n) m = std::max(m, std::abs(t.at(n)));
  return m;
}

RunResult g_fig1;  // shared by criteria 1 and 2

Outcome criterion1() {
  Outcome o;
  g_fig1 = run(load("fig1.toml"), "two_tone");
  const auto& plan = g_fig1.plan;
  const auto& s = std::get<TwoTone>(plan.problem.scenario);
  const auto ora = two_tone_spectrum(s, plan.problem.qubit, plan.problem.frame, 3);
  double worst = 0.0, worst_cplx = 0.0;
  for (int n = -7; n <= 7; n += 2) {
    const double a = std::abs(g_fig1.spectrum.at(n)), b = std::abs(ora.at(n));
    const double rel = std::abs(a - b) / b;
    worst = std::max(worst, rel);
    worst_cplx = std::max(worst_cplx, std::abs(g_fig1.spectrum.at(n) - ora.at(n)) / b);
    o.check(rel <= 0.02, fmt("n=%+d |S|=%.6e oracle=%.6e rel=%.2e", n, a, b, rel));
  }
  const double mx = max_abs(g_fig1.spectrum, 8);
  double worst_even = 0.0;
  for (int n = -8; n <= 8; n += 2) worst_even = std::max(worst_even, std::abs(g_fig1.spectrum.at(n)));
  o.check(worst_even < 1e-6 * mx, fmt("even |n|<=8: max |S|=%.2e < %.2e", worst_even, 1e-6 * mx));
  o.details.push_back(fmt("info complex-amplitude deviation (retardation phase) max %.2e", worst_cplx));
  o.summary = fmt("two-tone oracle equivalence (max rel %.2e, tol 2e-2)", worst);
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto& p = g_fig1.plan.problem;
  const auto& s = std::get<TwoTone>(p.scenario);
  const double th = theta_mix(s.omega1, s.omega2, p.frame.big_delta, derive_gamma(p.qubit), p.qubit.gamma_rad);
  const double r = std::tan(0.5 * th);
  o.details.push_back(fmt("info sin(theta)=%.6f tan(theta/2)=%.6e", std::sin(th), r));
  double worst = 0.0;
  for (int n : {3, 5}) {
    for (int sgn : {1, -1}) {
      const double ratio = std::abs(g_fig1.spectrum.at(sgn * (n + 2)) / g_fig1.spectrum.at(sgn * n));
      const double rel = std::abs(ratio / r - 1.0);
      worst = std::max(worst, rel);
      o.check(rel <= 0.02, fmt("|S_%+d/S_%+d|=%.6e rel=%.2e", sgn * (n + 2), sgn * n, ratio, rel));
    }
  }
  o.summary = fmt("geometric side-peak ratio (max rel %.2e, tol 2e-2)", worst);
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto r = run(load("fig2.toml"), "squeezed");
  const double mx = max_abs(r.spectrum, 8);
  for (int n : {-5, -1, 3, 7}) {
    const double a = std::abs(r.spectrum.at(n));
    o.check(a < 1e-6 * mx, fmt("n=%+d |S|=%.2e < %.2e", n, a, 1e-6 * mx));
  }
  for (int n : {1, -3, 5, -7})
    o.check(above_floor(r.spectrum, n),
            fmt("n=%+d |S|=%.6e above floor %.2e", n, std::abs(r.spectrum.at(n)), r.spectrum.floor));

  // weak drive: f = omega1 for a pure bath at Gamma = 2 gamma
  auto cfg = load("fig2.toml");
  std::get<Squeezed>(cfg.problem.scenario).omega1 = 0.05;
  revalidate(cfg);
  const auto w = run(cfg, "squeezed");
  const auto wd = squeezed_weak_drive(std::get<Squeezed>(w.plan.problem.scenario), w.plan.problem.qubit);
  const double ratio = std::abs(w.spectrum.at(-3) / w.spectrum.at(1));
  const double m = 2.0 * std::sqrt(6.0) / 5.0;
  const double rel = std::abs(ratio / m - 1.0);
  o.check(wd.f <= 0.05 + 1e-12 && rel <= 0.05,
          fmt("f=%.3f |S_-3/S_1|=%.6f vs |m|=%.6f rel=%.2e", wd.f, ratio, m, rel));
  o.summary = fmt("squeezed selection rule and |S_-3/S_1| = |m| (rel %.2e, tol 5e-2)", rel);
  return o;
}

Outcome criterion4() {
  Outcome o;
  auto cfg = load("fig2.toml");
  std::get<Squeezed>(cfg.problem.scenario).omega1 = 0.0;
  revalidate(cfg);
  const auto r = run(cfg, "squeezed");
  double worst = 0.0;
  bool any = false;
  for (const auto& [n, v] : r.spectrum.entries) {
    worst = std::max(worst, std::abs(v));
    any = any || above_floor(r.spectrum, n);
  }
  o.check(!any, fmt("max |S_n| = %.2e, presence threshold %.2e", worst,
                    presence_threshold(r.spectrum.floor)));
  o.summary = "squeezed light alone produces no peaks";
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto r = run(load("fig3.toml"), "fock");
  for (const auto& n : r.plan.notes) o.details.push_back("info " + n);
  const double mx = max_abs(r.spectrum, 8);
  for (int n = -7; n <= 7; ++n) {
    const double a = std::abs(r.spectrum.at(n));
    if (n == -1 || n == 1 || n == 3)
      o.check(above_floor(r.spectrum, n), fmt("n=%+d |S|=%.6e present", n, a));
    else
      o.check(a < 1e-6 * mx, fmt("n=%+d |S|=%.2e < %.2e", n, a, 1e-6 * mx));
  }
  o.summary = "Fock drive shows exactly {-1, 1, 3}";
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto base = load("fig3.toml");

  std::vector<SweepPoint> pts;
  for (double w : parse_values("logspace(0.01,0.1,8)")) {
    const auto r = run(with_axis_value(base, SweepAxis::Omega1, w), "fock");
    pts.push_back({w, r.spectrum, {}, {}});
  }
  const auto fit = fit_slope(pts, 3);
  const double slope = fit ? fit->slope : 0.0;
  o.check(fit && std::abs(slope - 2.0) <= 0.05, fmt("d log|S_3| / d log W1 = %.4f (2 +- 0.05)", slope));

  double best = -1.0, arg = 0.0;
  std::string row;
  for (int k = 1; k <= 9; ++k) {
    const double nu = 0.1 * k;
    const auto r = run(with_axis_value(base, SweepAxis::Nu, nu), "fock");
    const double a = std::abs(r.spectrum.at(3));
    row += fmt(" %.3e", a);
    if (a > best) best = a, arg = nu;
  }
  o.details.push_back("info |S_3| over nu=0.1..0.9:" + row);
  o.check(std::abs(arg - 0.5) < 1e-12, fmt("argmax_nu |S_3| = %.1f", arg));

  // weakest drive of the sweep
  const auto& weak = *pts.front().spectrum;
  auto cfg = with_axis_value(base, SweepAxis::Omega1, pts.front().value);
  const auto plan = plan_run(cfg);
  const auto c = fock_coeffs(std::get<Fock>(plan.problem.scenario), plan.problem.qubit, plan.problem.frame);
  // classical carrier (w1, our n = +1) against c_{-1}
  const double s1 = std::abs(weak.at(1)), cm1 = std::abs(c.cm1);
  const double rel1 = std::abs(s1 / cm1 - 1.0);
  o.check(rel1 <= 0.03, fmt("W1=%.3f |S(w1)|=%.6e vs |c_-1|=W1/2gamma=%.6e rel=%.2e", pts.front().value, s1,
                            cm1, rel1));
  // emitter carrier (w2, our n = -1) against c_1
  const double s2 = std::abs(weak.at(-1)), c1 = std::abs(c.c1);
  const double rel2 = std::abs(s2 / c1 - 1.0);
  o.check(rel2 <= 0.05, fmt("|S(w2)|=%.6e vs |c_1|=sqrt(ge/g) sin(theta)/2=%.6e rel=%.2e", s2, c1, rel2));
  o.details.push_back(fmt("info period-averaged c_1 <e^{-(Gamma+ge) tau}> = %.6e (rel %.2e)",
                          std::abs(c.c1_avg), std::abs(s2 / std::abs(c.c1_avg) - 1.0)));
  o.summary = fmt("Fock scaling: slope %.3f, argmax nu %.1f, carriers %.1e / %.1e", slope, arg, rel1, rel2);
  return o;
}

double oracle_deviation(const Problem& p, const std::string& label) {
  const double dt = 1e-3, t1 = 100.0;
  const auto x0 = fixtures::start_state(p);
  const auto a = integrate(EquationsOfMotion(p), x0, 0.0, t1, dt);
  const auto b = density_matrix_oracle(p, DensityMatrix2::from_bloch(x0), 0.0, t1, dt);
  note_purity(label, a);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i)
    worst = std::max(worst, fixtures::sup_dist(a.samples[i], b.samples[i]));
  return worst;
}

Outcome criterion7() {
  Outcome o;
  double worst = 0.0;
  const std::vector<std::pair<std::string, Problem>> cases{
      {"two_tone", fixtures::fig1_problem()},
      {"squeezed", fixtures::fig2_problem()},
      {"fock", fixtures::fig3_problem(0.5, 0.05)}};
  for (const auto& [label, p] : cases) {
    try {
      const double d = oracle_deviation(p, label);
      worst = std::max(worst, d);
      o.check(d < 1e-8, fmt("%s: sup |bloch - density matrix| = %.2e over t <= 100", label.c_str(), d));
    } catch (const std::exception& e) {
      o.check(false, label + ": " + e.what());
    }
  }
  o.details.push_back("info Fock leg at W1=0.5, nu=0.05 from the classical-drive fixed point (the oracle refuses non-positive states)");
  o.summary = fmt("Bloch vs density-matrix integration (max %.2e, tol 1e-8)", worst);
  return o;
}

Outcome criterion8() {
  Outcome o;
  double worst = 0.0;
  for (const auto& [label, p] : g_purity) {
    worst = std::max(worst, p);
    o.check(p <= 1.0 + kPhysTol, fmt("%s runs: max 4|sm|^2 + sz^2 = %.12f", label.c_str(), p));
  }
  const TwoTone s{0.15, 0.15};
  Problem p;
  // t = 5 at detuning 2 keeps the error far above roundoff down to dt = 0.01
  p.frame = {0.0, 2.0};
  p.scenario = s;
  const EquationsOfMotion eom(p);
  const auto exact = fixtures::exact_two_tone(s, 2.0, BlochState{}, 5.0);
  std::vector<double> err;
  for (double dt : {0.04, 0.02, 0.01}) {
    const auto tr = integrate(eom, BlochState{}, 0.0, 5.0, dt);
    err.push_back(fixtures::sup_dist(tr.samples.back(), exact));
  }
  const double r1 = err[0] / err[1], r2 = err[1] / err[2];
  o.check(r1 >= 15.0 && r2 >= 15.0,
          fmt("RK4 error %.2e %.2e %.2e at dt 0.04/0.02/0.01: ratios %.1f %.1f", err[0], err[1], err[2], r1, r2));
  o.summary = fmt("physicality (max purity %.4f) and RK4 order (ratios %.1f, %.1f)", worst, r1, r2);
  return o;
}

Outcome criterion9() {
  Outcome o;
  auto cfg = load("fig1.toml");
  std::get<TwoTone>(cfg.problem.scenario) = TwoTone{0.15, 0.08};
  revalidate(cfg);
  const auto a = run(cfg, "two_tone");
  std::get<TwoTone>(cfg.problem.scenario) = TwoTone{0.08, 0.15};
  revalidate(cfg);
  const auto b = run(cfg, "two_tone");
  double worst = 0.0;
  for (int n = -7; n <= 7; n += 2) {
    const double x = std::abs(a.spectrum.at(n)), y = std::abs(b.spectrum.at(-n));
    worst = std::max(worst, std::abs(x - y) / x);
  }
  o.check(worst <= 0.02, fmt("mirror |S_n(W1,W2)| vs |S_-n(W2,W1)|, |n|<=7: max rel %.2e", worst));

  // synthetic harmonics on a whole number of beats
  const double w = 0.01, beat = 2 * kPi / w;
  Trajectory tr;
  tr.dt = beat / 2000;
  tr.frame = {w, 0.0};
  const cplx A{0.3, -0.4};
  for (int i = 0; i <= 4000; ++i)
    tr.samples.push_back({A * std::exp(cplx{0.0, -3 * w * tr.time_at(static_cast<std::size_t>(i))}), 0.0});
  double leak = 0.0, hit = 0.0;
  for (int n = -8; n <= 8; ++n) {
    const cplx v = extract_component(tr, n, {0.0, 2 * beat});
    if (n == 3) hit = std::abs(v - A);
    else leak = std::max(leak, std::abs(v));
  }
  o.check(hit <= 1e-10 && leak <= 1e-10, fmt("orthogonality: |S_3 - A| = %.1e, leakage %.1e", hit, leak));

  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double deg = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const BlochState x{{u(rng), u(rng)}, u(rng)};
    const FrameConfig f{0.002, u(rng)};
    const double t = 1e4 * std::abs(u(rng)), W = std::abs(u(rng));
    deg = std::max(deg, fixtures::sup_dist(rhs_squeezed(x, t, Squeezed{W, 0.0, {}}, QubitParams{}, f),
                                           rhs_two_tone(x, t, TwoTone{W, 0.0}, QubitParams{}, f)));
  }
  o.check(deg <= 1e-12, fmt("squeezed(N=M=0) vs two-tone(W2=0) RHS: max %.1e", deg));
  o.summary = "property suite (mirror, orthogonality, coherent limit)";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
      {6, criterion6}, {7, criterion7}, {9, criterion9}, {8, criterion8}};
  std::map<int, Outcome> results;
  for (const auto& [id, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("aborted: ") + e.what();
    }
    results[id] = o;
  }
  int failed = 0;
  for (const auto& [id, o] : results) {
    std::printf("%s  %d  %s\n", o.pass ? "PASS" : "FAIL", id, o.summary.c_str());
    for (const auto& d : o.details) std::printf("        %s\n", d.c_str());
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
