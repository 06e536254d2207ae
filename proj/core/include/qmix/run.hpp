#pragma once

// End-to-end pipeline: plan the grid, integrate, detect the steady state,
// extract the spectrum and (optionally) compare it with an analytic oracle.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qmix/config.hpp"
#include "qmix/spectra.hpp"

namespace qmix {

// All times and rates in units of gamma_rad.
struct RunPlan {
  Problem problem;          // normalized, delta_w possibly snapped (Fock)
  double gamma_rad = 1.0;   // original scale, for converting outputs back
  double period = 0.0;      // joint period of all explicit time dependence
  std::size_t steps_per_period = 0;
  std::size_t stride = 1;   // integrator steps per stored sample
  double dt = 0.0;
  int settle_periods = 0;
  int window_periods = 0;
  int total_periods = 0;
  long long pulses_per_period = 0;  // Fock only
  std::vector<std::string> notes;

  std::size_t samples_per_period() const { return steps_per_period / stride; }
  double t_end() const { return period * total_periods; }
};

RunPlan plan_run(const RunConfig& cfg);

struct RunResult {
  RunPlan plan;
  Trajectory trajectory;  // normalized time
  std::size_t steady_index = 0;
  Window window;
  SpectrumTable spectrum;
  PeakReport report;
};

RunResult simulate(const RunConfig& cfg);

// Analytic spectrum on `indices`. Throws NoOracleError
// when the scenario has no closed form for these parameters.
SpectrumTable oracle_table(const RunPlan& plan, const std::vector<int>& indices);

PeakReport validate_spectrum(const SpectrumTable& numeric, const RunPlan& plan,
                             const ValidateSettings& v);

// Sweep support.
enum class SweepAxis { Omega1, Nu, NBath, MBath, DeltaW, Period };
std::optional<SweepAxis> sweep_axis_from_string(std::string_view s);
std::string_view to_string(SweepAxis a);
// Returns a copy with the axis parameter set to `value` and re-validated.
RunConfig with_axis_value(const RunConfig& cfg, SweepAxis axis, double value);

// "a,b,c", "lin:a:b:n", "log:a:b:n", "linspace(a,b,n)" or "logspace(a,b,n)".
std::vector<double> parse_values(std::string_view spec);

struct SweepPoint {
  double value = 0.0;
  std::optional<SpectrumTable> spectrum;
  std::string error_kind;
  std::string error;
};

struct SlopeFit {
  int n = 0;
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;
  std::optional<int> predicted;
};

// Runs every point on a worker pool of at most `threads` workers (0 = use
// QMIX_THREADS or the hardware concurrency). Results are ordered by value.
std::vector<SweepPoint> run_sweep(const RunConfig& cfg, SweepAxis axis, std::vector<double> values,
                                  unsigned threads = 0);

// Least-squares slope of log|S_n| against log(value) over points where the
// peak is present. Empty when fewer than two usable points.
std::optional<SlopeFit> fit_slope(const std::vector<SweepPoint>& pts, int n);

unsigned worker_count(std::size_t jobs, unsigned requested = 0);

}  // namespace qmix
