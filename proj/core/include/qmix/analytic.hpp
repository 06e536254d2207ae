#pragma once

// Closed-form quasi-static solutions (valid for delta_w << gamma) and the
// harmonic series derived from them. These are the oracles the numerical
// path is checked against.

#include <span>

#include "qmix/model.hpp"
#include "qmix/spectrum_table.hpp"

namespace qmix {

struct TwoToneMixing {
  cplx lambda_mix;
  double theta_mix = 0.0;
};

// arcsin[2 gamma W1 W2 / (Gamma (D^2 + gamma^2) + gamma (W1^2 + W2^2))]
double theta_mix(double omega1, double omega2, double big_delta, double gamma, double gamma_rad);
// 4 gamma W1 W2 / (Gamma (D + i gamma)); DomainError when W1 W2 = 0.
cplx lambda_mix(double omega1, double omega2, double big_delta, double gamma, double gamma_rad);
TwoToneMixing two_tone_mixing(const TwoTone& s, const QubitParams& q, const FrameConfig& f);

BlochState two_tone_steady(double t, const TwoTone& s, const QubitParams& q, const FrameConfig& f);

// <sigma_-> at time t from the geometric series in e^{2 i delta_w t},
// truncated at |p| <= p_max.
cplx two_tone_series_sm(double t, const TwoTone& s, const QubitParams& q, const FrameConfig& f,
                        int p_max);

// Odd n with |n| <= 2 p_max + 1.
SpectrumTable two_tone_spectrum(const TwoTone& s, const QubitParams& q, const FrameConfig& f,
                                int p_max);
// Arbitrary index set; even n map to 0. DomainError if every index is even.
SpectrumTable two_tone_spectrum(const TwoTone& s, const QubitParams& q, const FrameConfig& f,
                                std::span<const int> indices);

BlochState squeezed_steady(double t, const Squeezed& s, const QubitParams& q, const FrameConfig& f);

struct SqueezedWeakDrive {
  double f = 0.0;
  cplx m;
};

// f = W1 / sqrt(2 Gamma gamma ((2N+1)^2 - 4|M|^2)), m = 2M / (2N+1).
SqueezedWeakDrive squeezed_weak_drive(const Squeezed& s, const QubitParams& q);

// Leading-order weak-drive amplitudes for the first `order` indices of
// 1, -3, 5, -7, ... Requires big_delta = 0 and gamma_phi = 0.
SpectrumTable squeezed_weak_spectrum(const Squeezed& s, const QubitParams& q, const FrameConfig& f,
                                     int order);

// Exact harmonic expansion of `squeezed_steady` (all orders in the drive).
// Nonzero only for n = 1 (mod 4).
SpectrumTable squeezed_exact_spectrum(const Squeezed& s, const QubitParams& q,
                                      const FrameConfig& f, int n_max);

// Classical-drive-only steady state. Identical to two_tone_steady with W2 = 0.
BlochState single_drive_steady(double t, const Fock& s, const QubitParams& q, const FrameConfig& f);

struct EmitterState {
  cplx sm;
  double sz = 0.0;
};

// Emitter state right after pulse n: magnitude sqrt(nu(1-nu)), rotating-frame
// phase e^{+i delta_w T n}, inversion 2 nu - 1.
EmitterState emitter_pulse_state(double nu, long long n, double period, double delta_w);

struct PulseCorrelators {
  cplx zc;  // <sigma_z sigma_-^e>(Tn)
  cplx pc;  // <sigma_- sigma_+^e>(Tn)
};

// Factorized correlators at pulse n. With paper_literal_sign the drive is
// taken as +|zc| and |pc| (no phases).
PulseCorrelators pulse_correlators(const Fock& s, const QubitParams& q, const FrameConfig& f,
                                   long long n);

// Leading-order coefficients at big_delta = 0.
//   c1  : coefficient of e^{+i delta_w t} (emitter carrier, S_{-1}) while the
//         emitter envelope is on
//   cm1 : coefficient of e^{-i delta_w t} (classical carrier, S_1)
//   cm3 : coefficient of e^{-3 i delta_w t} (S_3), averaged over one period
//   c1_avg : c1 averaged over one period of the decaying envelope
struct FockCoeffs {
  cplx c1;
  cplx cm1;
  cplx cm3;
  cplx c1_avg;
};

FockCoeffs fock_coeffs(const Fock& s, const QubitParams& q, const FrameConfig& f);

}  // namespace qmix
