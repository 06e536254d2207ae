#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "qmix/analytic.hpp"
#include "qmix/config.hpp"
#include "qmix/dynamics.hpp"
#include "qmix/run.hpp"
#include "qmix/spectra.hpp"

using namespace qmix;

namespace {

Problem problem_of(ScenarioKind kind) {
  Problem p;
  p.frame = {0.002, 0.0};
  switch (kind) {
    case ScenarioKind::TwoTone:
      p.scenario = TwoTone{0.15, 0.15};
      break;
    case ScenarioKind::Squeezed:
      p.scenario = Squeezed{0.15, 2.0, cplx{std::sqrt(6.0), 0.0}};
      break;
    case ScenarioKind::Fock: {
      Fock s;
      s.omega1 = 0.15;
      s.gamma_e = 0.5;
      s.nu = 0.5;
      s.period = 10.0;
      p.frame.delta_w = 2.0 * std::numbers::pi / (314.0 * 10.0);
      p.scenario = s;
      break;
    }
  }
  return p;
}

void BM_Rk4Step(benchmark::State& st) {
  const EquationsOfMotion eom(problem_of(static_cast<ScenarioKind>(st.range(0))));
  BlochState x{{0.1, 0.05}, -0.9};
  double t = 0.0;
  for (auto _ : st) {
    x = rk4_step([&](const BlochState& y, double s) { return eom(y, s, 0.0); }, x, t, 0.01);
    t += 0.01;
    benchmark::DoNotOptimize(x);
  }
  st.SetLabel(std::string(to_string(eom.kind())));
}
BENCHMARK(BM_Rk4Step)
    ->Arg(static_cast<int>(ScenarioKind::TwoTone))
    ->Arg(static_cast<int>(ScenarioKind::Squeezed))
    ->Arg(static_cast<int>(ScenarioKind::Fock));

// One beat period at the default step, every sample stored.
void BM_IntegrateBeat(benchmark::State& st) {
  const Problem p = problem_of(ScenarioKind::TwoTone);
  const EquationsOfMotion eom(p);
  const double beat = 2.0 * std::numbers::pi / p.frame.delta_w;
  for (auto _ : st) {
    auto tr = integrate(eom, BlochState{}, 0.0, beat, 0.01);
    benchmark::DoNotOptimize(tr.samples.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long long>(beat / 0.01));
}
BENCHMARK(BM_IntegrateBeat)->Unit(benchmark::kMillisecond);

void BM_SpectrumTable(benchmark::State& st) {
  const Problem p = problem_of(ScenarioKind::TwoTone);
  const double beat = 2.0 * std::numbers::pi / p.frame.delta_w;
  const auto tr = integrate(EquationsOfMotion(p), two_tone_steady(0.0, std::get<TwoTone>(p.scenario),
                                                                  p.qubit, p.frame),
                            0.0, beat, 0.01);
  const Window w{0.0, tr.time_at(tr.samples.size() - 1)};
  const int n_max = static_cast<int>(st.range(0));
  for (auto _ : st) {
    auto t = spectrum_table(tr, n_max, w, ScenarioKind::TwoTone);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_SpectrumTable)->Arg(7)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_TwoToneSpectrum(benchmark::State& st) {
  const Problem p = problem_of(ScenarioKind::TwoTone);
  for (auto _ : st) {
    auto t = two_tone_spectrum(std::get<TwoTone>(p.scenario), p.qubit, p.frame, 15);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_TwoToneSpectrum);

// Full simulate pipeline on a short two-tone run.
void BM_SimulateSmall(benchmark::State& st) {
  const auto cfg = parse_config(
      "[frame]\ndelta_w = 0.01\n[scenario]\nkind = \"two_tone\"\nomega1 = 0.15\nomega2 = 0.15\n"
      "[integrator]\nwindow_periods = 5\n");
  for (auto _ : st) {
    auto r = simulate(cfg);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_SimulateSmall)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
