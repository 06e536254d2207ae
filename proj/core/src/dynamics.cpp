#include "qmix/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qmix/analytic.hpp"
#include "qmix/error.hpp"

namespace qmix {

namespace {

constexpr cplx I{0.0, 1.0};

// Bloch equations of a qubit under a classical field E(t) in the rotating frame.
BlochState coherent_rhs(const BlochState& x, cplx E, double big_delta, double gamma,
                        double gamma_rad) {
  BlochState d;
  d.sm = x.sm * cplx{-gamma, -big_delta} - 0.5 * I * E * x.sz;
  d.sz = -gamma_rad * (x.sz + 1.0) + std::real(I * (E * std::conj(x.sm) - std::conj(E) * x.sm));
  return d;
}

bool finite(const BlochState& x) {
  return std::isfinite(x.sm.real()) && std::isfinite(x.sm.imag()) && std::isfinite(x.sz);
}

}  // namespace

CorrelatorDrive make_correlator_drive(const Fock& s, const QubitParams& q, const FrameConfig& f) {
  const auto pc0 = pulse_correlators(s, q, f, 0);
  CorrelatorDrive d;
  d.zc_mag = std::abs(pc0.zc);
  d.zc_sign = s.paper_literal_sign ? 1.0 : -1.0;
  d.pc_mag = std::abs(pc0.pc);
  d.pc_phase0 = s.paper_literal_sign ? 0.0 : std::arg(pc0.pc);
  d.envelope_mode = s.envelope_mode;
  d.step_cutoff = s.cutoff();
  return d;
}

EnvelopeRates make_envelope_rates(const Fock& s, const QubitParams& q, const FrameConfig& f) {
  return {q.gamma_rad + s.gamma_e, derive_gamma(q) + s.gamma_e, f.delta_w, f.big_delta};
}

CorrelatorValues correlator_envelopes_since(double t, double t_pulse, const CorrelatorDrive& d,
                                            const EnvelopeRates& r) {
  const double tau = t - t_pulse;
  double env_z = 0.0, env_p = 0.0;
  if (d.envelope_mode == EnvelopeMode::Exact) {
    env_z = std::exp(-r.zc_decay * tau);
    env_p = std::exp(-r.pc_decay * tau);
  } else {
    env_z = env_p = tau <= d.step_cutoff ? 1.0 : 0.0;
  }
  CorrelatorValues v;
  v.zc = d.zc_sign * d.zc_mag * env_z * std::exp(I * (r.delta_w * t));
  v.pc = d.pc_mag * env_p *
         std::exp(I * (d.pc_phase0 - 2.0 * r.delta_w * t + (r.delta_w - r.big_delta) * tau));
  return v;
}

CorrelatorValues correlator_envelopes(double t, const CorrelatorDrive& d, double period,
                                      const EnvelopeRates& r) {
  return correlator_envelopes_since(t, std::floor(t / period) * period, d, r);
}

BlochState rhs_two_tone(const BlochState& x, double t, const TwoTone& s, const QubitParams& q,
                        const FrameConfig& f) {
  const cplx E = s.omega1 * std::exp(-I * (f.delta_w * t)) + s.omega2 * std::exp(I * (f.delta_w * t));
  return coherent_rhs(x, E, f.big_delta, derive_gamma(q), q.gamma_rad);
}

BlochState rhs_squeezed(const BlochState& x, double t, const Squeezed& s, const QubitParams& q,
                        const FrameConfig& f) {
  const double g = derive_gamma(q);
  const double N1 = 1.0 + 2.0 * s.n_bath;
  const cplx E = s.omega1 * std::exp(-I * (f.delta_w * t));
  BlochState d = coherent_rhs(x, E, f.big_delta, g * N1, q.gamma_rad);
  d.sm -= 2.0 * g * s.m_bath * std::exp(2.0 * I * (f.delta_w * t)) * std::conj(x.sm);
  d.sz -= 2.0 * s.n_bath * q.gamma_rad * x.sz;
  return d;
}

BlochState rhs_fock(const BlochState& x, double t, double t_pulse, const Fock& s,
                    const QubitParams& q, const FrameConfig& f, const CorrelatorDrive& d) {
  const double g = derive_gamma(q);
  const cplx E = s.omega1 * std::exp(-I * (f.delta_w * t));
  BlochState out = coherent_rhs(x, E, f.big_delta, g, q.gamma_rad);
  const auto c = correlator_envelopes_since(t, t_pulse, d, make_envelope_rates(s, q, f));
  const double k = std::sqrt(g * s.gamma_e);
  out.sm += k * c.zc;
  out.sz += 4.0 * k * c.pc.real();
  return out;
}

BlochState rhs_fock(const BlochState& x, double t, const Fock& s, const QubitParams& q,
                    const FrameConfig& f, const CorrelatorDrive& d) {
  return rhs_fock(x, t, std::floor(t / s.period) * s.period, s, q, f, d);
}

EquationsOfMotion::EquationsOfMotion(Problem p) : problem_(std::move(p)) {
  if (const auto* fk = std::get_if<Fock>(&problem_.scenario)) {
    drive_ = make_correlator_drive(*fk, problem_.qubit, problem_.frame);
  }
}

EquationsOfMotion::EquationsOfMotion(ScenarioKind kind, Problem p) : EquationsOfMotion(std::move(p)) {
  if (kind != problem_.kind())
    throw PreconditionError("equations of motion: kind " + std::string(to_string(kind)) +
                            " does not match scenario " + std::string(to_string(problem_.kind())));
}

double EquationsOfMotion::pulse_period() const {
  if (const auto* fk = std::get_if<Fock>(&problem_.scenario)) return fk->period;
  return 0.0;
}

BlochState EquationsOfMotion::operator()(const BlochState& x, double t, double t_pulse) const {
  const auto& q = problem_.qubit;
  const auto& f = problem_.frame;
  switch (problem_.kind()) {
    case ScenarioKind::TwoTone:
      return rhs_two_tone(x, t, std::get<TwoTone>(problem_.scenario), q, f);
    case ScenarioKind::Squeezed:
      return rhs_squeezed(x, t, std::get<Squeezed>(problem_.scenario), q, f);
    case ScenarioKind::Fock:
      return rhs_fock(x, t, t_pulse, std::get<Fock>(problem_.scenario), q, f, *drive_);
  }
  return {};
}

BlochState EquationsOfMotion::operator()(const BlochState& x, double t) const {
  const double T = pulse_period();
  return (*this)(x, t, T > 0.0 ? std::floor(t / T) * T : 0.0);
}

double EquationsOfMotion::max_dt() const {
  double rate = derive_gamma(problem_.qubit);
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        rate = std::max(rate, s.omega1);
        if constexpr (std::is_same_v<S, TwoTone>) rate = std::max(rate, s.omega2);
        if constexpr (std::is_same_v<S, Fock>) rate = std::max(rate, s.gamma_e);
      },
      problem_.scenario);
  return 1.0 / (50.0 * rate);
}

double aligned_step(const EquationsOfMotion& eom, double t0, double t1, double dt) {
  if (!(dt > 0.0) || !(t1 > t0)) throw IntegrationError("integrate: need dt > 0 and t1 > t0");
  const double T = eom.pulse_period();
  if (T > 0.0) {
    const double per = std::ceil(T / dt * (1.0 - 1e-12));
    return T / per;
  }
  const double steps = std::ceil((t1 - t0) / dt * (1.0 - 1e-12));
  return (t1 - t0) / steps;
}

Trajectory integrate(const EquationsOfMotion& eom, const BlochState& x0, double t0, double t1,
                     double dt, const IntegrateOptions& opts) {
  if (opts.sample_stride == 0) throw IntegrationError("integrate: sample stride must be positive");
  const double h = aligned_step(eom, t0, t1, dt);
  if (h > eom.max_dt() * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "integrate: step " << h << " exceeds the accuracy bound " << eom.max_dt();
    throw IntegrationError(os.str());
  }
  const double T = eom.pulse_period();
  std::size_t per_pulse = 0;
  long long pulse0 = 0;
  if (T > 0.0) {
    per_pulse = static_cast<std::size_t>(std::llround(T / h));
    const double k0 = t0 / T;
    pulse0 = std::llround(k0);
    if (std::abs(k0 - static_cast<double>(pulse0)) > 1e-9)
      throw IntegrationError("integrate: t0 must coincide with a pulse time");
  }
  const auto steps = static_cast<std::size_t>(std::llround((t1 - t0) / h));

  Trajectory tr;
  tr.t0 = t0;
  tr.dt = h * static_cast<double>(opts.sample_stride);
  tr.frame = eom.problem().frame;
  tr.samples.reserve(steps / opts.sample_stride + 1);

  auto record = [&](const BlochState& x) {
    const double p = purity(x);
    tr.stats.max_purity = std::max(tr.stats.max_purity, p);
    tr.stats.min_sz = std::min(tr.stats.min_sz, x.sz);
    tr.stats.max_sz = std::max(tr.stats.max_sz, x.sz);
  };

  BlochState x = x0;
  record(x);
  tr.samples.push_back(x);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = t0 + static_cast<double>(k) * h;
    if (T > 0.0) {
      const double tp = (static_cast<double>(pulse0) + static_cast<double>(k / per_pulse)) * T;
      x = rk4_step([&](const BlochState& y, double s) { return eom(y, s, tp); }, x, t, h);
    } else {
      x = rk4_step([&](const BlochState& y, double s) { return eom(y, s); }, x, t, h);
    }
    if (!finite(x)) {
      std::ostringstream os;
      os << "integrate: non-finite state at t = " << t + h << " (step " << k + 1 << ")";
      throw IntegrationError(os.str());
    }
    record(x);
    if ((k + 1) % opts.sample_stride == 0) tr.samples.push_back(x);
  }
  tr.stats.steps = steps;
  return tr;
}

std::size_t steady_state_detect(const Trajectory& traj, std::size_t period_samples, double tol) {
  const auto& s = traj.samples;
  if (period_samples == 0 || s.size() <= period_samples)
    throw SteadyStateError("no steady state within window: trajectory shorter than one period");
  std::size_t first = 0;
  for (std::size_t i = 0; i + period_samples < s.size(); ++i) {
    const auto& a = s[i];
    const auto& b = s[i + period_samples];
    const double dev = std::max({std::abs(a.sm.real() - b.sm.real()),
                                 std::abs(a.sm.imag() - b.sm.imag()), std::abs(a.sz - b.sz)});
    if (!(dev <= tol)) first = i + 1;
  }
  if (first + period_samples >= s.size())
    throw SteadyStateError("no steady state within window");
  return first;
}

std::size_t steady_state_detect(const Trajectory& traj, double period, double tol) {
  const double k = period / traj.dt;
  const auto p = static_cast<std::size_t>(std::llround(k));
  if (std::abs(k - static_cast<double>(p)) > 1e-6 * k)
    throw SteadyStateError("steady_state_detect: period is not a whole number of samples");
  return steady_state_detect(traj, p, tol);
}

}  // namespace qmix
