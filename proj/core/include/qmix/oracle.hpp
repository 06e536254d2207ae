#pragma once

// Independent density-matrix integration of the same dynamics, used to
// cross-check the Bloch-vector path.

#include <array>

#include "qmix/model.hpp"

namespace qmix {

// Basis order (e, g). The coherence is stored as <e|rho|g>, which equals
// <sigma_->.
struct DensityMatrix2 {
  double rho_ee = 0.0;
  cplx rho_eg{0.0, 0.0};

  static DensityMatrix2 ground() { return {}; }
  static DensityMatrix2 from_bloch(const BlochState& b) { return {0.5 * (1.0 + b.sz), b.sm}; }
  BlochState to_bloch() const { return {rho_eg, 2.0 * rho_ee - 1.0}; }
  bool positive(double tol) const { return std::norm(rho_eg) <= rho_ee * (1.0 - rho_ee) + tol; }
};

// Full 2x2 matrix used internally by the oracle.
struct Mat2 {
  std::array<std::array<cplx, 2>, 2> a{};

  Mat2 operator+(const Mat2& o) const;
  Mat2 operator-(const Mat2& o) const;
  Mat2 operator*(const Mat2& o) const;
  Mat2 adjoint() const;
  cplx trace() const { return a[0][0] + a[1][1]; }
};
Mat2 operator*(double k, const Mat2& m);
Mat2 operator*(cplx k, const Mat2& m);

// Lindblad generator (plus the pulsed-source term for Fock problems) at time
// t with the latest pulse at t_pulse.
Mat2 lindblad_rhs(const Problem& p, const Mat2& rho, double t, double t_pulse);

// Integrates rho with RK4 on the same aligned grid as `integrate` and returns
// the Bloch means. Aborts with IntegrationError on loss of positivity or of
// unit trace (1e-12).
Trajectory density_matrix_oracle(const Problem& p, const DensityMatrix2& rho0, double t0,
                                 double t1, double dt, std::size_t sample_stride = 1);

}  // namespace qmix
