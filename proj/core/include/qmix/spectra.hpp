#pragma once

// Harmonic extraction from steady-state trajectories and comparison against
// analytic tables.

#include <optional>
#include <span>
#include <vector>

#include "qmix/model.hpp"
#include "qmix/spectrum_table.hpp"

namespace qmix {

// Time window; must hold a whole number of beat periods 2 pi / delta_w and
// lie on the sample grid.
struct Window {
  double t_start = 0.0;
  double t_end = 0.0;
};

// (1/W) int_window sm(t) e^{+i n delta_w t} dt, composite trapezoid.
cplx extract_component(const Trajectory& traj, int n, const Window& w);

// Every index in [-n_max, n_max]; the floor is the median |S_n| over the
// indices `kind` forbids.
SpectrumTable spectrum_table(const Trajectory& traj, int n_max, const Window& w, ScenarioKind kind);
SpectrumTable spectrum_table(const Trajectory& traj, std::span<const int> indices, const Window& w,
                             ScenarioKind kind);

// Median |S_n| over the indices of `t` that `kind` forbids (0 if none).
double estimate_floor(const SpectrumTable& t, ScenarioKind kind);
// Presence threshold used for `above_floor`.
double presence_threshold(double floor);
bool above_floor(const SpectrumTable& t, int n);

// Scattered field amplitude -i Gamma s / mu.
cplx emitted_amplitude(cplx s, const QubitParams& q);

enum class CompareMode { Magnitude, Complex };

struct PeakEntry {
  int n = 0;
  double abs = 0.0;
  double phase = 0.0;
  bool above_floor = false;
  bool pass = true;
  std::optional<double> oracle_abs;
  std::optional<double> delta;  // |num - ora| (or ||num| - |ora||)
};

struct PeakReport {
  ScenarioKind scenario = ScenarioKind::TwoTone;
  double delta_w = 0.0;
  double floor = 0.0;
  std::vector<PeakEntry> entries;  // sorted by |n|, then n

  bool all_pass() const;
  double max_delta() const;
};

// Structure-only report: an entry passes when its presence matches the
// selection rule of `kind`.
PeakReport peak_report(const SpectrumTable& t, ScenarioKind kind);

// An index passes if |num - ora| <= rel_tol |ora| + abs_floor (moduli in
// Magnitude mode). Throws PreconditionError on differing index sets or delta_w.
PeakReport compare_tables(const SpectrumTable& numeric, const SpectrumTable& oracle, double rel_tol,
                          double abs_floor, ScenarioKind kind,
                          CompareMode mode = CompareMode::Complex);

}  // namespace qmix
