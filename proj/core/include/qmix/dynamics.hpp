#pragma once

// Rotating-frame equations of motion, the fixed-step RK4 integrator and the
// pulsed-source correlator drive.

#include <cstddef>
#include <optional>
#include <utility>

#include "qmix/model.hpp"

namespace qmix {

inline BlochState operator+(const BlochState& a, const BlochState& b) {
  return {a.sm + b.sm, a.sz + b.sz};
}
inline BlochState operator*(double k, const BlochState& a) { return {k * a.sm, k * a.sz}; }

// Classical 4th-order Runge-Kutta step for any vector-space-like state.
template <typename State, typename F>
State rk4_step(const F& f, const State& x, double t, double dt) {
  const State k1 = f(x, t);
  const State k2 = f(x + (0.5 * dt) * k1, t + 0.5 * dt);
  const State k3 = f(x + (0.5 * dt) * k2, t + 0.5 * dt);
  const State k4 = f(x + dt * k3, t + dt);
  return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Pulse values of the factorized correlators and how they decay afterwards.
struct CorrelatorDrive {
  double zc_mag = 0.0;
  double zc_sign = -1.0;
  double pc_mag = 0.0;
  double pc_phase0 = 0.0;
  EnvelopeMode envelope_mode = EnvelopeMode::Exact;
  double step_cutoff = 1.0;
};

struct EnvelopeRates {
  double zc_decay = 0.0;  // Gamma + gamma_e
  double pc_decay = 0.0;  // gamma + gamma_e
  double delta_w = 0.0;
  double big_delta = 0.0;
};

CorrelatorDrive make_correlator_drive(const Fock& s, const QubitParams& q, const FrameConfig& f);
EnvelopeRates make_envelope_rates(const Fock& s, const QubitParams& q, const FrameConfig& f);

struct CorrelatorValues {
  cplx zc;
  cplx pc;
};

// Drive at time t, with the most recent pulse at t_pulse <= t.
CorrelatorValues correlator_envelopes_since(double t, double t_pulse, const CorrelatorDrive& d,
                                            const EnvelopeRates& r);
// Same with t_pulse = floor(t / T) T.
CorrelatorValues correlator_envelopes(double t, const CorrelatorDrive& d, double period,
                                      const EnvelopeRates& r);

BlochState rhs_two_tone(const BlochState& x, double t, const TwoTone& s, const QubitParams& q,
                        const FrameConfig& f);
BlochState rhs_squeezed(const BlochState& x, double t, const Squeezed& s, const QubitParams& q,
                        const FrameConfig& f);
BlochState rhs_fock(const BlochState& x, double t, double t_pulse, const Fock& s,
                    const QubitParams& q, const FrameConfig& f, const CorrelatorDrive& d);
BlochState rhs_fock(const BlochState& x, double t, const Fock& s, const QubitParams& q,
                    const FrameConfig& f, const CorrelatorDrive& d);

// Scenario-tagged right-hand side. Construction with a kind that does not
// match the problem's scenario throws PreconditionError.
class EquationsOfMotion {
 public:
  explicit EquationsOfMotion(Problem p);
  EquationsOfMotion(ScenarioKind kind, Problem p);

  ScenarioKind kind() const { return problem_.kind(); }
  const Problem& problem() const { return problem_; }
  const std::optional<CorrelatorDrive>& drive() const { return drive_; }

  // Period of the explicit pulse train, or 0 when there is none.
  double pulse_period() const;

  BlochState operator()(const BlochState& x, double t) const;
  BlochState operator()(const BlochState& x, double t, double t_pulse) const;

  // Largest admissible step: 1 / (50 max(gamma, W1, W2, gamma_e)).
  double max_dt() const;

 private:
  Problem problem_;
  std::optional<CorrelatorDrive> drive_;
};

struct IntegrateOptions {
  std::size_t sample_stride = 1;  // store every k-th step
};

// Fixed-step RK4 from t0 to t1. The step is shrunk so that it divides the
// span exactly, and for pulsed drives so that pulses fall on the grid (t0
// must then be a pulse time). Throws IntegrationError on a step above
// `max_dt()` or a non-finite state.
Trajectory integrate(const EquationsOfMotion& eom, const BlochState& x0, double t0, double t1,
                     double dt, const IntegrateOptions& opts = {});

// Step actually used by `integrate` for the given request.
double aligned_step(const EquationsOfMotion& eom, double t0, double t1, double dt);

// Earliest sample index after which x(i + P) matches x(i) to `tol` (sup-norm
// over re sm, im sm, sz), P = period_samples. Throws SteadyStateError if the
// tail never becomes periodic.
std::size_t steady_state_detect(const Trajectory& traj, std::size_t period_samples, double tol);
// Period given as a time; must be a whole number of samples.
std::size_t steady_state_detect(const Trajectory& traj, double period, double tol);

}  // namespace qmix
