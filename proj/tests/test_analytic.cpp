#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include "qmix/analytic.hpp"
#include "qmix/error.hpp"
#include "support.hpp"

using namespace qmix;
using qmix::fixtures::sup_dist;

namespace {
constexpr double kPi = std::numbers::pi;
const QubitParams Q{};
const FrameConfig F0{0.002, 0.0};

cplx series_sum(const SpectrumTable& t, double delta_w, double time) {
  cplx s{};
  for (const auto& [n, v] : t.entries) s += v * std::exp(cplx{0.0, -n * delta_w * time});
  return s;
}
}  // namespace

// Frozen: sin(theta) = 2*0.5*0.0225 / (1*0.25 + 0.5*0.045) = 0.0225 / 0.2725.
TEST(ThetaMix, Fig1Value) {
  const double th = theta_mix(0.15, 0.15, 0.0, 0.5, 1.0);
  EXPECT_NEAR(std::sin(th), 0.0225 / 0.2725, 1e-15);
  EXPECT_NEAR(std::sin(th), 0.082569, 1e-6);
}

TEST(ThetaMix, SingleDriveAndSymmetry) {
  EXPECT_EQ(theta_mix(0.15, 0.0, 0.0, 0.5, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(theta_mix(0.1, 0.3, 0.2, 0.5, 1.0), theta_mix(0.3, 0.1, 0.2, 0.5, 1.0));
  const double W = 0.2, g = 0.5, G = 1.0;
  EXPECT_NEAR(theta_mix(W, W, 0.0, g, G), std::asin(2 * g * W * W / (G * g * g + 2 * g * W * W)),
              1e-15);
}

TEST(ThetaMix, Unphysical) {
  EXPECT_THROW(theta_mix(-0.1, 0.1, 0.0, 0.5, 1.0), DomainError);
  EXPECT_THROW(theta_mix(0.1, 0.1, 0.0, 0.0, 1.0), DomainError);
}

TEST(LambdaMix, Examples) {
  const cplx L = lambda_mix(0.15, 0.15, 0.0, 0.5, 1.0);
  EXPECT_NEAR(L.real(), 0.0, 1e-16);
  EXPECT_NEAR(L.imag(), -0.09, 1e-15);
  EXPECT_THROW(lambda_mix(0.15, 0.0, 0.0, 0.5, 1.0), DomainError);
  EXPECT_LT(std::abs(lambda_mix(0.15, 0.15, 1e8, 0.5, 1.0)), 1e-8);
  const cplx a = lambda_mix(0.1, 0.2, 0.3, 0.5, 1.0);
  const cplx b = lambda_mix(0.3, 0.6, 0.3, 0.5, 1.0);
  EXPECT_NEAR(std::abs(b - 9.0 * a), 0.0, 1e-15);
}

// Frozen: sm = i (0.15 / 1) / (1 + 0.0225 / 0.5) = i 0.143540, sz = -1 / 1.045.
TEST(TwoToneSteady, SingleDrive) {
  for (double t : {0.0, 1.3, 777.0}) {
    const auto x = two_tone_steady(t, TwoTone{0.15, 0.0}, Q, F0);
    const cplx expect_sm = cplx{0.0, 0.15 / 1.045} * std::exp(cplx{0.0, -0.002 * t});
    EXPECT_NEAR(std::abs(x.sm - expect_sm), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(x.sm), 0.143540, 1e-6);
    EXPECT_NEAR(x.sz, -0.956938, 1e-6);
  }
}

TEST(TwoToneSteady, UndrivenAndBeatPeriodic) {
  const auto x = two_tone_steady(5.0, TwoTone{0.0, 0.0}, Q, F0);
  EXPECT_EQ(x.sm, cplx{});
  EXPECT_EQ(x.sz, -1.0);
  // sz repeats with the beat pi / delta_w; sm picks up a global e^{-i pi} there
  // and is periodic over 2 pi / delta_w.
  const TwoTone s{0.15, 0.1};
  for (double t : {0.0, 13.0, 400.0}) {
    const auto a = two_tone_steady(t, s, Q, F0);
    const auto b = two_tone_steady(t + kPi / F0.delta_w, s, Q, F0);
    const auto c = two_tone_steady(t + 2 * kPi / F0.delta_w, s, Q, F0);
    EXPECT_NEAR(a.sz, b.sz, 1e-12);
    EXPECT_NEAR(std::abs(a.sm + b.sm), 0.0, 1e-12);
    EXPECT_LT(sup_dist(a, c), 1e-12);
  }
}

TEST(TwoToneSeries, MatchesClosedFormAtRandomTimes) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> amp(0.01, 1.0), det(-1.0, 1.0), tt(0.0, 1e4);
  for (int trial = 0; trial < 20; ++trial) {
    const TwoTone s{amp(rng), amp(rng)};
    const FrameConfig f{0.002, det(rng)};
    for (int i = 0; i < 200; ++i) {
      const double t = tt(rng);
      const cplx exact = two_tone_steady(t, s, Q, f).sm;
      const cplx series = two_tone_series_sm(t, s, Q, f, 40);
      EXPECT_LT(std::abs(series - exact), 1e-10 * std::abs(exact)) << "t=" << t;
    }
  }
}

TEST(TwoToneSpectrum, Structure) {
  const TwoTone s{0.15, 0.15};
  const auto t = two_tone_spectrum(s, Q, F0, 3);
  ASSERT_EQ(t.entries.size(), 8u);
  for (const auto& [n, v] : t.entries) {
    EXPECT_NE(n % 2, 0);
    EXPECT_NEAR(std::abs(v - t.at(-n)), 0.0, 1e-15);  // symmetric drive
  }
  const double r = std::tan(0.5 * theta_mix(0.15, 0.15, 0.0, 0.5, 1.0));
  for (int n : {3, 5}) {
    EXPECT_NEAR(std::abs((t.at(n + 2) / t.at(n)) + r), 0.0, 1e-14);
    EXPECT_NEAR(std::abs((t.at(-n - 2) / t.at(-n)) + r), 0.0, 1e-14);
  }
}

TEST(TwoToneSpectrum, Fig1Values) {
  const auto t = two_tone_spectrum(TwoTone{0.15, 0.15}, Q, F0, 3);
  // Monotone geometric decay away from the carriers.
  EXPECT_GT(std::abs(t.at(1)), std::abs(t.at(3)));
  EXPECT_GT(std::abs(t.at(3)), std::abs(t.at(5)));
  EXPECT_GT(std::abs(t.at(5)), std::abs(t.at(7)));
}

TEST(TwoToneSpectrum, ReconstructsSteadyState) {
  const TwoTone s{0.3, 0.12};
  const FrameConfig f{0.002, 0.25};
  const auto t = two_tone_spectrum(s, Q, f, 40);
  for (double time : {0.0, 100.0, 1234.5}) {
    const cplx exact = two_tone_steady(time, s, Q, f).sm;
    EXPECT_LT(std::abs(series_sum(t, f.delta_w, time) - exact), 1e-12);
  }
}

TEST(TwoToneSpectrum, IndexSets) {
  const TwoTone s{0.15, 0.15};
  const std::vector<int> mixed{-2, 0, 1, 3};
  const auto t = two_tone_spectrum(s, Q, F0, std::span<const int>(mixed));
  EXPECT_EQ(t.at(-2), cplx{});
  EXPECT_EQ(t.at(0), cplx{});
  EXPECT_NE(t.at(3), cplx{});
  const std::vector<int> even{-2, 0, 2};
  EXPECT_THROW(two_tone_spectrum(s, Q, F0, std::span<const int>(even)), DomainError);
  EXPECT_THROW(two_tone_spectrum(TwoTone{0.15, 0.0}, Q, F0, 2), DomainError);
}

TEST(SqueezedSteady, NoDrive) {
  const Squeezed s{0.0, 2.0, {std::sqrt(6.0), 0.0}};
  for (double t : {0.0, 50.0, 321.0}) {
    const auto x = squeezed_steady(t, s, Q, F0);
    EXPECT_EQ(std::abs(x.sm), 0.0);
    EXPECT_NEAR(x.sz, -1.0 / 5.0, 1e-15);
  }
}

TEST(SqueezedSteady, CoherentLimit) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double w = u(rng);
    const FrameConfig f{0.002, u(rng) - 0.5};
    const QubitParams q{1.0, 0.3 * u(rng), 1.0};
    const double t = 1e4 * u(rng);
    const auto a = squeezed_steady(t, Squeezed{w, 0.0, {}}, q, f);
    const auto b = two_tone_steady(t, TwoTone{w, 0.0}, q, f);
    EXPECT_LT(sup_dist(a, b), 1e-12);
  }
}

TEST(SqueezedSteady, QuarterBeatPeriodicInInversion) {
  const Squeezed s{0.15, 2.0, {std::sqrt(6.0), 0.0}};
  for (double t : {0.0, 77.0}) {
    const auto a = squeezed_steady(t, s, Q, F0);
    const auto b = squeezed_steady(t + 2 * kPi / (4 * F0.delta_w), s, Q, F0);
    EXPECT_NEAR(a.sz, b.sz, 1e-12);
    // sm carries the carrier e^{-i delta_w t}: one quarter beat rotates it by -pi/2
    EXPECT_NEAR(std::abs(b.sm - a.sm * cplx{0.0, -1.0}), 0.0, 1e-12);
  }
}

TEST(SqueezedSteady, SatisfiesPurityForPhysicalBaths) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double N = 3.0 * u(rng);
    const double M = std::sqrt(N * (N + 1)) * u(rng);
    const Squeezed s{u(rng), N, std::polar(M, 6.0 * u(rng))};
    const FrameConfig f{0.002, u(rng) - 0.5};
    const auto x = squeezed_steady(1e3 * u(rng), s, Q, f);
    EXPECT_TRUE(purity_check(x, kPhysTol)) << purity(x);
    const auto y = two_tone_steady(1e3 * u(rng), TwoTone{u(rng), u(rng)}, Q, f);
    EXPECT_TRUE(purity_check(y, kPhysTol)) << purity(y);
  }
}

TEST(SqueezedExactSpectrum, ReconstructsSteadyState) {
  const Squeezed s{0.4, 2.0, std::polar(2.3, 0.4)};
  const FrameConfig f{0.002, 0.1};
  const auto t = squeezed_exact_spectrum(s, Q, f, 81);
  for (const auto& [n, v] : t.entries)
    if (((n - 1) % 4 + 4) % 4 != 0) {
      EXPECT_EQ(v, cplx{}) << n;
    }
  for (double time : {0.0, 10.0, 999.0}) {
    const cplx exact = squeezed_steady(time, s, Q, f).sm;
    EXPECT_LT(std::abs(series_sum(t, f.delta_w, time) - exact), 1e-10);
  }
}

// Frozen: pure bath (K = 1) gives f = 0.15 / sqrt(2 * 1 * 0.5) = 0.15.
TEST(SqueezedWeakSpectrum, Examples) {
  const Squeezed s{0.15, 2.0, {std::sqrt(6.0), 0.0}};
  const auto wd = squeezed_weak_drive(s, Q);
  EXPECT_NEAR(wd.f, 0.15, 1e-12);
  EXPECT_NEAR(std::abs(wd.m), 2.0 * std::sqrt(6.0) / 5.0, 1e-15);
  const auto t = squeezed_weak_spectrum(s, Q, F0, 4);
  ASSERT_EQ(t.entries.size(), 4u);
  for (int n : {1, -3, 5, -7}) EXPECT_TRUE(t.entries.count(n)) << n;
  EXPECT_NEAR(std::abs(t.at(-3) / t.at(1)), std::abs(wd.m), 1e-14);
  EXPECT_TRUE(t.notes.empty());

  const auto t0 = squeezed_weak_spectrum(Squeezed{0.15, 0.5, {}}, Q, F0, 4);
  for (const auto& [n, v] : t0.entries) {
    if (n == 1) {
      EXPECT_GT(std::abs(v), 0.0);
    } else {
      EXPECT_EQ(std::abs(v), 0.0) << n;
    }
  }
}

TEST(SqueezedWeakSpectrum, Preconditions) {
  const Squeezed s{0.15, 2.0, {std::sqrt(6.0), 0.0}};
  EXPECT_THROW(squeezed_weak_spectrum(s, Q, FrameConfig{0.002, 0.1}, 3), PreconditionError);
  EXPECT_THROW(squeezed_weak_spectrum(s, QubitParams{1.0, 0.1, 1.0}, F0, 3), PreconditionError);
  EXPECT_THROW(squeezed_weak_spectrum(s, Q, F0, 0), PreconditionError);
  const auto strong = squeezed_weak_spectrum(Squeezed{0.5, 2.0, {std::sqrt(6.0), 0.0}}, Q, F0, 2);
  EXPECT_EQ(strong.notes.size(), 1u);
}

TEST(SqueezedWeakSpectrum, LeadingOrderOfExact) {
  // Relative error of each weak-drive term is O(f^2): about 3 f^2 for the
  // carriers, 5 f^2 for |n| = 5, 7.
  std::map<int, double> prev;
  for (double w : {0.02, 0.01}) {
    const Squeezed s{w, 2.0, {std::sqrt(6.0), 0.0}};
    const auto weak = squeezed_weak_spectrum(s, Q, F0, 4);
    const auto exact = squeezed_exact_spectrum(s, Q, F0, 7);
    for (int n : {1, -3, 5, -7}) {
      const double rel = std::abs(weak.at(n) - exact.at(n)) / std::abs(exact.at(n));
      EXPECT_LT(rel, 6.0 * w * w) << "n=" << n << " omega1=" << w;
      if (prev.count(n)) {
        EXPECT_NEAR(prev[n] / rel, 4.0, 0.1) << "n=" << n;
      }
      prev[n] = rel;
    }
  }
}

TEST(SingleDriveSteady, Examples) {
  Fock s;
  s.omega1 = 0.0;
  const auto z = single_drive_steady(3.0, s, Q, F0);
  EXPECT_EQ(z.sm, cplx{});
  EXPECT_EQ(z.sz, -1.0);
  s.omega1 = 0.15;
  for (double t : {0.0, 10.0, 2000.0}) {
    const auto a = single_drive_steady(t, s, Q, F0);
    const auto b = two_tone_steady(t, TwoTone{0.15, 0.0}, Q, F0);
    EXPECT_EQ(a.sm, b.sm);
    EXPECT_EQ(a.sz, b.sz);
    EXPECT_NEAR(std::abs(a.sm), 0.143540, 1e-6);
  }
}

TEST(EmitterPulseState, Examples) {
  const auto h = emitter_pulse_state(0.5, 0, 10.0, 0.002);
  EXPECT_DOUBLE_EQ(std::abs(h.sm), 0.5);
  EXPECT_DOUBLE_EQ(h.sz, 0.0);
  EXPECT_EQ(std::abs(emitter_pulse_state(0.0, 3, 10.0, 0.002).sm), 0.0);
  EXPECT_EQ(std::abs(emitter_pulse_state(1.0, 3, 10.0, 0.002).sm), 0.0);
  const auto k = emitter_pulse_state(0.5, 7, 10.0, 0.002);
  EXPECT_NEAR(std::arg(k.sm), 0.14, 1e-15);
}

// Frozen: |zc| = 0.956938 / 2, |pc| = 0.143540 / 2.
TEST(PulseCorrelators, Examples) {
  Fock s;
  s.omega1 = 0.15;
  s.nu = 0.5;
  const auto c = pulse_correlators(s, Q, F0, 0);
  EXPECT_NEAR(std::abs(c.zc), 0.478469, 1e-6);
  EXPECT_NEAR(std::abs(c.pc), 0.071770, 1e-6);
  EXPECT_LT(c.zc.real(), 0.0);  // signed product, sz < 0

  s.nu = 0.0;
  const auto z = pulse_correlators(s, Q, F0, 4);
  EXPECT_EQ(std::abs(z.zc), 0.0);
  EXPECT_EQ(std::abs(z.pc), 0.0);

  s.nu = 0.5;
  s.omega1 = 0.0;
  const auto d = pulse_correlators(s, Q, F0, 5);
  EXPECT_NEAR(std::abs(d.zc + 0.5 * std::exp(cplx{0.0, 0.002 * 50.0})), 0.0, 1e-15);
  EXPECT_EQ(std::abs(d.pc), 0.0);

  s.omega1 = 0.15;
  s.paper_literal_sign = true;
  const auto lit = pulse_correlators(s, Q, F0, 3);
  EXPECT_NEAR(lit.zc.real(), 0.478469, 1e-6);
  EXPECT_EQ(lit.zc.imag(), 0.0);
  EXPECT_NEAR(lit.pc.real(), 0.071770, 1e-6);
}

TEST(FockCoeffs, Examples) {
  Fock s;
  s.omega1 = 0.15;
  s.gamma_e = 0.5;  // = gamma
  s.nu = 0.5;
  const auto c = fock_coeffs(s, Q, F0);
  EXPECT_NEAR(std::abs(c.c1 - cplx{-0.5, 0.0}), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c.cm1 - cplx{0.0, 0.15}), 0.0, 1e-15);
  EXPECT_LT(std::abs(c.c1_avg), std::abs(c.c1));

  for (double nu : {0.0, 1.0}) {
    s.nu = nu;
    const auto e = fock_coeffs(s, Q, F0);
    EXPECT_EQ(std::abs(e.c1), 0.0);
    EXPECT_EQ(std::abs(e.cm3), 0.0);
    EXPECT_GT(std::abs(e.cm1), 0.0);
  }
  EXPECT_THROW(fock_coeffs(s, Q, FrameConfig{0.002, 0.3}), PreconditionError);
}

TEST(FockCoeffs, QuadraticInDrive) {
  Fock s;
  s.nu = 0.5;
  s.gamma_e = 0.5;
  s.omega1 = 0.05;
  const double a = std::abs(fock_coeffs(s, Q, F0).cm3);
  s.omega1 = 0.1;
  const double b = std::abs(fock_coeffs(s, Q, F0).cm3);
  EXPECT_NEAR(b / a, 4.0, 1e-12);
  s.omega1 = 0.0;
  EXPECT_EQ(std::abs(fock_coeffs(s, Q, F0).cm3), 0.0);
}

TEST(FockCoeffs, StrongestAtHalf) {
  Fock s;
  s.omega1 = 0.1;
  double best = -1.0, arg = 0.0;
  for (int k = 1; k <= 9; ++k) {
    s.nu = 0.1 * k;
    const double v = std::abs(fock_coeffs(s, Q, F0).cm3);
    if (v > best) best = v, arg = s.nu;
  }
  EXPECT_DOUBLE_EQ(arg, 0.5);
}
