#pragma once

// Parameter sets shared by the tests and the acceptance binary.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qmix/analytic.hpp"
#include "qmix/model.hpp"

namespace qmix::fixtures {

inline QubitParams unit_qubit() { return {}; }

inline Problem fig1_problem(double delta_w = 0.002) {
  Problem p;
  p.frame = {delta_w, 0.0};
  p.scenario = TwoTone{0.15, 0.15};
  return p;
}

inline Problem fig2_problem(double omega1 = 0.15, double delta_w = 0.002) {
  Problem p;
  p.frame = {delta_w, 0.0};
  p.scenario = Squeezed{omega1, 2.0, cplx{std::sqrt(6.0), 0.0}};
  return p;
}

inline Problem fig3_problem(double omega1 = 0.15, double nu = 0.5) {
  Problem p;
  p.frame = {2.0 * std::numbers::pi / (314.0 * 10.0), 0.0};
  Fock s;
  s.omega1 = omega1;
  s.gamma_e = 0.5;
  s.nu = nu;
  s.period = 10.0;
  p.scenario = s;
  return p;
}

// Start state for cross checks. Pulsed sources kick a pure state straight out
// of the Bloch ball, so Fock runs start from the mixed classical-drive fixed point.
inline BlochState start_state(const Problem& p) {
  if (const auto* fk = std::get_if<Fock>(&p.scenario))
    return single_drive_steady(0.0, *fk, p.qubit, p.frame);
  return BlochState{};
}

// Largest of |d re sm|, |d im sm|, |d sz|.
inline double sup_dist(const BlochState& a, const BlochState& b) {
  return std::max({std::abs(a.sm.real() - b.sm.real()), std::abs(a.sm.imag() - b.sm.imag()),
                   std::abs(a.sz - b.sz)});
}

}  // namespace qmix::fixtures
