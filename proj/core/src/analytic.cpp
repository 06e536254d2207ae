#include "qmix/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "qmix/error.hpp"

namespace qmix {

namespace {

constexpr cplx I{0.0, 1.0};

cplx ipow(cplx z, int k) {
  cplx r{1.0, 0.0};
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// (1/T) int_0^T env(tau) e^{-(rate - i w) tau} dtau for the two envelope modes.
cplx period_average(const Fock& s, double rate, double w) {
  const cplx a{rate, -w};
  const double T = s.period;
  if (s.envelope_mode == EnvelopeMode::Step) {
    const double c = std::min(s.cutoff(), T);
    if (w == 0.0) return c / T;
    return (std::exp(I * w * c) - 1.0) / (I * w * T);
  }
  return (1.0 - std::exp(-a * T)) / (a * T);
}

}  // namespace

double theta_mix(double omega1, double omega2, double big_delta, double gamma, double gamma_rad) {
  if (!(gamma > 0.0) || !(gamma_rad > 0.0)) throw DomainError("theta_mix: gamma and Gamma must be positive");
  const double num = 2.0 * gamma * omega1 * omega2;
  const double den = gamma_rad * (big_delta * big_delta + gamma * gamma) +
                     gamma * (omega1 * omega1 + omega2 * omega2);
  const double arg = num / den;
  if (!(arg <= 1.0) || arg < 0.0) throw DomainError("unphysical mixing angle: sin(theta) = " + std::to_string(arg));
  return std::asin(arg);
}

cplx lambda_mix(double omega1, double omega2, double big_delta, double gamma, double gamma_rad) {
  if (omega1 * omega2 == 0.0)
    throw DomainError("lambda_mix: undefined for a single drive (W1 W2 = 0)");
  if (!(gamma > 0.0) || !(gamma_rad > 0.0)) throw DomainError("lambda_mix: gamma and Gamma must be positive");
  return 4.0 * gamma * omega1 * omega2 / (gamma_rad * cplx{big_delta, gamma});
}

TwoToneMixing two_tone_mixing(const TwoTone& s, const QubitParams& q, const FrameConfig& f) {
  const double g = derive_gamma(q);
  return {lambda_mix(s.omega1, s.omega2, f.big_delta, g, q.gamma_rad),
          theta_mix(s.omega1, s.omega2, f.big_delta, g, q.gamma_rad)};
}

BlochState two_tone_steady(double t, const TwoTone& s, const QubitParams& q, const FrameConfig& f) {
  const double g = derive_gamma(q);
  const double D = f.big_delta;
  const cplx E = s.omega1 * std::exp(-I * f.delta_w * t) + s.omega2 * std::exp(I * f.delta_w * t);
  const double sz = -1.0 / (1.0 + (g / q.gamma_rad) * std::norm(E) / (D * D + g * g));
  const cplx sm = 0.5 * E / cplx{D, -g} * (-sz);
  return {sm, sz};
}

cplx two_tone_series_sm(double t, const TwoTone& s, const QubitParams& q, const FrameConfig& f,
                        int p_max) {
  const auto mix = two_tone_mixing(s, q, f);
  const double r = -std::tan(0.5 * mix.theta_mix);
  const cplx beat = std::exp(2.0 * I * f.delta_w * t);
  cplx sum{1.0, 0.0};
  cplx up{1.0, 0.0}, down{1.0, 0.0};
  double rp = 1.0;
  for (int p = 1; p <= p_max; ++p) {
    rp *= r;
    up *= beat;
    down /= beat;
    sum += rp * (up + down);
  }
  const cplx E = s.omega1 * std::exp(-I * f.delta_w * t) + s.omega2 * std::exp(I * f.delta_w * t);
  return std::tan(mix.theta_mix) / mix.lambda_mix * E * sum;
}

SpectrumTable two_tone_spectrum(const TwoTone& s, const QubitParams& q, const FrameConfig& f,
                                std::span<const int> indices) {
  if (!indices.empty() && std::all_of(indices.begin(), indices.end(), [](int n) { return n % 2 == 0; }))
    throw DomainError("two_tone_spectrum: only even indices requested; all vanish identically");
  const auto mix = two_tone_mixing(s, q, f);
  const double r = -std::tan(0.5 * mix.theta_mix);
  const cplx pre = std::tan(mix.theta_mix) / mix.lambda_mix;
  SpectrumTable out;
  out.delta_w = f.delta_w;
  for (int n : indices) {
    if (n % 2 != 0) {
      const int k1 = std::abs((n - 1) / 2);
      const int k2 = std::abs((n + 1) / 2);
      out.entries[n] = pre * (s.omega1 * ipow(r, k1) + s.omega2 * ipow(r, k2));
    } else {
      out.entries[n] = 0.0;
    }
  }
  return out;
}

SpectrumTable two_tone_spectrum(const TwoTone& s, const QubitParams& q, const FrameConfig& f,
                                int p_max) {
  if (p_max < 0) throw DomainError("two_tone_spectrum: p_max must be >= 0");
  std::vector<int> idx;
  for (int n = -(2 * p_max + 1); n <= 2 * p_max + 1; n += 2) idx.push_back(n);
  return two_tone_spectrum(s, q, f, std::span<const int>(idx));
}

BlochState squeezed_steady(double t, const Squeezed& s, const QubitParams& q, const FrameConfig& f) {
  const double g = derive_gamma(q);
  const double G = q.gamma_rad;
  const double D = f.big_delta;
  const double w = f.delta_w;
  const double N1 = 2.0 * s.n_bath + 1.0;
  const double K = N1 * N1 - 4.0 * std::norm(s.m_bath);
  const double D0 = D * D + g * g * K;
  const double B = N1 + 2.0 * std::real(s.m_bath * std::exp(4.0 * I * w * t));
  const double den = N1 * G * D0 + g * s.omega1 * s.omega1 * B;
  if (D0 == 0.0 || den == 0.0 || !std::isfinite(den))
    throw DomainError("squeezed_steady: singular denominator");
  const double sz = -G * D0 / den;
  const cplx bracket = cplx{g * N1, -D} * std::exp(-I * w * t) +
                       2.0 * g * s.m_bath * std::exp(3.0 * I * w * t);
  const cplx sm = -0.5 * I * s.omega1 * sz * bracket / D0;
  return {sm, sz};
}

SqueezedWeakDrive squeezed_weak_drive(const Squeezed& s, const QubitParams& q) {
  const double g = derive_gamma(q);
  const double N1 = 2.0 * s.n_bath + 1.0;
  const double K = N1 * N1 - 4.0 * std::norm(s.m_bath);
  if (!(K > 0.0)) throw DomainError("squeezed_weak_drive: (2N+1)^2 - 4|M|^2 must be positive");
  return {s.omega1 / std::sqrt(2.0 * q.gamma_rad * g * K), 2.0 * s.m_bath / N1};
}

SpectrumTable squeezed_weak_spectrum(const Squeezed& s, const QubitParams& q, const FrameConfig& f,
                                     int order) {
  if (f.big_delta != 0.0) throw PreconditionError("squeezed_weak_spectrum: requires big_delta = 0");
  if (q.gamma_phi != 0.0) throw PreconditionError("squeezed_weak_spectrum: requires gamma_phi = 0");
  if (order < 1) throw PreconditionError("squeezed_weak_spectrum: order must be >= 1");
  if (s.omega1 == 0.0) throw PreconditionError("squeezed_weak_spectrum: requires omega1 > 0");
  const auto wd = squeezed_weak_drive(s, q);
  SpectrumTable out;
  out.delta_w = f.delta_w;
  if (wd.f > 0.3) out.notes.push_back("f = " + std::to_string(wd.f) + " > 0.3: outside the weak-drive regime");
  const cplx pre = I * wd.f * q.gamma_rad / s.omega1;
  for (int j = 0; j < order; ++j) {
    const int n = (j % 2 == 0 ? 1 : -1) * (2 * j + 1);
    cplx term;
    if (n == 1) {
      term = wd.f;
    } else if (n < 0) {
      const int k = (1 - n) / 4;
      term = (k % 2 == 1 ? 1.0 : -1.0) * ipow(wd.f, 2 * k - 1) * ipow(wd.m, k);
    } else {
      const int k = (n - 1) / 4;
      term = (k % 2 == 0 ? 1.0 : -1.0) * ipow(wd.f, 2 * k + 1) * ipow(std::conj(wd.m), k);
    }
    out.entries[n] = pre * term;
  }
  return out;
}

SpectrumTable squeezed_exact_spectrum(const Squeezed& s, const QubitParams& q,
                                      const FrameConfig& f, int n_max) {
  const double g = derive_gamma(q);
  const double D = f.big_delta;
  const double N1 = 2.0 * s.n_bath + 1.0;
  const double K = N1 * N1 - 4.0 * std::norm(s.m_bath);
  const double D0 = D * D + g * g * K;
  const double kappa = g * s.omega1 * s.omega1 / q.gamma_rad;
  const cplx mu = s.m_bath / N1;
  // Full denominator c + 2 beta cos(4 w t + phi).
  const double c = D0 + kappa;
  const double beta = kappa * std::abs(mu);
  const double phi = std::arg(mu);
  if (!(c > 2.0 * beta)) throw DomainError("squeezed_exact_spectrum: singular denominator");
  const double root = std::sqrt(c * c - 4.0 * beta * beta);
  const double rho = -2.0 * beta / (c + root);
  const cplx A{D / N1, g};
  const cplx B = I * g * 2.0 * s.m_bath / N1;
  const cplx pre = 0.5 * s.omega1 / root;

  auto term = [&](int p) { return ipow(rho, std::abs(p)) * std::exp(I * (p * phi)); };

  SpectrumTable out;
  out.delta_w = f.delta_w;
  for (int n = -n_max; n <= n_max; ++n) {
    cplx v{};
    if (floor_div(n - 1, 4) * 4 == n - 1) {
      const int pa = (1 - n) / 4;
      const int pb = -(n + 3) / 4;
      v = pre * (A * term(pa) + B * term(pb));
    }
    out.entries[n] = v;
  }
  return out;
}

BlochState single_drive_steady(double t, const Fock& s, const QubitParams& q, const FrameConfig& f) {
  return two_tone_steady(t, TwoTone{s.omega1, 0.0}, q, f);
}

EmitterState emitter_pulse_state(double nu, long long n, double period, double delta_w) {
  const double mag = std::sqrt(std::max(0.0, nu * (1.0 - nu)));
  const double ph = delta_w * period * static_cast<double>(n);
  return {mag * std::exp(I * ph), 2.0 * nu - 1.0};
}

PulseCorrelators pulse_correlators(const Fock& s, const QubitParams& q, const FrameConfig& f,
                                   long long n) {
  const double tn = s.period * static_cast<double>(n);
  const auto qb = single_drive_steady(tn, s, q, f);
  const auto em = emitter_pulse_state(s.nu, n, s.period, f.delta_w);
  if (s.paper_literal_sign) return {std::abs(qb.sz * em.sm), std::abs(qb.sm * std::conj(em.sm))};
  return {qb.sz * em.sm, qb.sm * std::conj(em.sm)};
}

FockCoeffs fock_coeffs(const Fock& s, const QubitParams& q, const FrameConfig& f) {
  if (f.big_delta != 0.0) throw PreconditionError("fock_coeffs: closed forms exist only for big_delta = 0");
  const double g = derive_gamma(q);
  const double G = q.gamma_rad;
  const double ge = s.gamma_e;
  const double half_sin = std::sqrt(std::max(0.0, s.nu * (1.0 - s.nu)));
  const double sign = s.paper_literal_sign ? 1.0 : -1.0;

  FockCoeffs c;
  c.c1 = sign * std::sqrt(ge / g) * half_sin;
  c.cm1 = I * s.omega1 / (2.0 * g);
  c.c1_avg = c.c1 * period_average(s, G + ge, 0.0);
  const double amp = s.omega1 * s.omega1 / (2.0 * g * g) * std::sqrt(g * ge) / G * half_sin;
  // The pc envelope carries e^{i delta_w tau}; the zc term follows the drive sign.
  const cplx bracket = period_average(s, g + ge, f.delta_w) + sign * period_average(s, G + ge, 0.0);
  c.cm3 = amp * bracket;
  return c;
}

}  // namespace qmix
