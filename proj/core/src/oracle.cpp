#include "qmix/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qmix/analytic.hpp"
#include "qmix/dynamics.hpp"
#include "qmix/error.hpp"

namespace qmix {

namespace {

constexpr cplx I{0.0, 1.0};

Mat2 make(cplx a00, cplx a01, cplx a10, cplx a11) {
  Mat2 m;
  m.a = {{{a00, a01}, {a10, a11}}};
  return m;
}

const Mat2 kSm = make(0, 0, 1, 0);  // |g><e|
const Mat2 kSp = make(0, 1, 0, 0);  // |e><g|
const Mat2 kSz = make(1, 0, 0, -1);

// L rho L^+ - {L^+ L, rho} / 2
Mat2 dissipator(const Mat2& L, const Mat2& rho) {
  const Mat2 Ld = L.adjoint();
  const Mat2 LdL = Ld * L;
  return L * rho * Ld - 0.5 * (LdL * rho + rho * LdL);
}

}  // namespace

Mat2 Mat2::operator+(const Mat2& o) const {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.a[i][j] = a[i][j] + o.a[i][j];
  return r;
}

Mat2 Mat2::operator-(const Mat2& o) const { return *this + (-1.0) * o; }

Mat2 Mat2::operator*(const Mat2& o) const {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.a[i][j] = a[i][0] * o.a[0][j] + a[i][1] * o.a[1][j];
  return r;
}

Mat2 Mat2::adjoint() const {
  return make(std::conj(a[0][0]), std::conj(a[1][0]), std::conj(a[0][1]), std::conj(a[1][1]));
}

Mat2 operator*(cplx k, const Mat2& m) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.a[i][j] = k * m.a[i][j];
  return r;
}

Mat2 operator*(double k, const Mat2& m) { return cplx{k, 0.0} * m; }

Mat2 lindblad_rhs(const Problem& p, const Mat2& rho, double t, double t_pulse) {
  const double G = p.qubit.gamma_rad;
  const double Gphi = p.qubit.gamma_phi;
  const double w = p.frame.delta_w;
  double n_th = 0.0;
  cplx m_sq{};
  cplx E{};
  Mat2 source;
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        E = s.omega1 * std::exp(-I * (w * t));
        if constexpr (std::is_same_v<S, TwoTone>) {
          E += s.omega2 * std::exp(I * (w * t));
        } else if constexpr (std::is_same_v<S, Squeezed>) {
          n_th = s.n_bath;
          m_sq = s.m_bath;
        } else {
          const auto drive = make_correlator_drive(s, p.qubit, p.frame);
          const auto c = correlator_envelopes_since(t, t_pulse, drive, make_envelope_rates(s, p.qubit, p.frame));
          const double k = std::sqrt(derive_gamma(p.qubit) * s.gamma_e);
          const double pop = 2.0 * k * c.pc.real();
          source = make(pop, k * c.zc, k * std::conj(c.zc), -pop);
        }
      },
      p.scenario);

  const Mat2 H = (0.5 * p.frame.big_delta) * kSz - (0.5 * E) * kSp - (0.5 * std::conj(E)) * kSm;
  Mat2 d = (-I) * (H * rho - rho * H);
  d = d + (G * (n_th + 1.0)) * dissipator(kSm, rho);
  d = d + (G * n_th) * dissipator(kSp, rho);
  d = d + (0.5 * Gphi * (1.0 + 2.0 * n_th)) * dissipator(kSz, rho);
  if (m_sq != cplx{}) {
    const double g = derive_gamma(p.qubit);
    const cplx c = -2.0 * g * m_sq * std::exp(2.0 * I * (w * t));
    d = d + c * (kSp * rho * kSp) + std::conj(c) * (kSm * rho * kSm);
  }
  return d + source;
}

Trajectory density_matrix_oracle(const Problem& p, const DensityMatrix2& rho0, double t0,
                                 double t1, double dt, std::size_t sample_stride) {
  if (!rho0.positive(kPhysTol) || rho0.rho_ee < -kPhysTol || rho0.rho_ee > 1.0 + kPhysTol)
    throw IntegrationError("density_matrix_oracle: initial state is not a density matrix");
  if (sample_stride == 0) throw IntegrationError("density_matrix_oracle: sample stride must be positive");
  const EquationsOfMotion eom(p);
  const double h = aligned_step(eom, t0, t1, dt);
  const double T = eom.pulse_period();
  const auto steps = static_cast<std::size_t>(std::llround((t1 - t0) / h));
  const std::size_t per_pulse = T > 0.0 ? static_cast<std::size_t>(std::llround(T / h)) : 0;
  const long long pulse0 = T > 0.0 ? std::llround(t0 / T) : 0;

  Mat2 rho = make(rho0.rho_ee, rho0.rho_eg, std::conj(rho0.rho_eg), 1.0 - rho0.rho_ee);
  auto to_dm = [](const Mat2& m) { return DensityMatrix2{m.a[0][0].real(), m.a[0][1]}; };

  Trajectory tr;
  tr.t0 = t0;
  tr.dt = h * static_cast<double>(sample_stride);
  tr.frame = p.frame;
  tr.samples.push_back(to_dm(rho).to_bloch());
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = t0 + static_cast<double>(k) * h;
    const double tp = T > 0.0 ? (static_cast<double>(pulse0) + static_cast<double>(k / per_pulse)) * T : 0.0;
    rho = rk4_step([&](const Mat2& r, double s) { return lindblad_rhs(p, r, s, tp); }, rho, t, h);
    const auto dm = to_dm(rho);
    const double tr_err = std::abs(rho.trace() - 1.0);
    if (!(tr_err <= 1e-12)) {
      std::ostringstream os;
      os << "density_matrix_oracle: trace drifted by " << tr_err << " at t = " << t + h;
      throw IntegrationError(os.str());
    }
    if (!dm.positive(kPhysTol) || dm.rho_ee < -kPhysTol || dm.rho_ee > 1.0 + kPhysTol) {
      std::ostringstream os;
      os << "density_matrix_oracle: positivity violated at t = " << t + h
         << " (purity " << purity(dm.to_bloch()) << ")";
      throw IntegrationError(os.str());
    }
    const auto b = dm.to_bloch();
    tr.stats.max_purity = std::max(tr.stats.max_purity, purity(b));
    tr.stats.min_sz = std::min(tr.stats.min_sz, b.sz);
    tr.stats.max_sz = std::max(tr.stats.max_sz, b.sz);
    if ((k + 1) % sample_stride == 0) tr.samples.push_back(b);
  }
  tr.stats.steps = steps;
  return tr;
}

}  // namespace qmix
