#pragma once

// Photon bookkeeping of the elastic peaks: which harmonic indices a scenario
// can populate and the leading-order process behind each one.

#include <optional>
#include <string>
#include <vector>

#include "qmix/model.hpp"

namespace qmix {

// Leading-order exponents of |S_n|.
//  * TwoTone: S_n ~ W1^omega1_power W2^omega2_power.
//  * Squeezed: the weak-drive series term is f^series_f_power (m or m*)^m_power
//    and carries the prefactor i f Gamma / W1; folded_f_power includes that
//    extra f. The net W1 exponent is omega1_power (f / W1 is drive independent).
//  * Fock: S_n ~ W1^omega1_power sin(theta)^sin_theta_power.
struct Scaling {
  int omega1_power = 0;
  int omega2_power = 0;
  int m_power = 0;
  bool m_conjugate = false;
  int series_f_power = 0;
  int folded_f_power = 0;
  int sin_theta_power = 0;
};

// Counts are absorbed photons (negative = emitted). The emitted photon at
// w_d + n delta_w balances
//   coh_absorbed w1 + tone2_absorbed w2 + 2 pairs_absorbed w2 + fock_photon w2.
struct ProcessDescriptor {
  ScenarioKind kind = ScenarioKind::TwoTone;
  int n = 0;
  int coh_absorbed = 0;
  int tone2_absorbed = 0;  // two-tone only
  int pairs_absorbed = 0;  // squeezed only
  int fock_photon = 0;     // Fock only, |fock_photon| <= 1
  Scaling scaling;

  // Net photon number (must be 1) and frequency offset in units of delta_w.
  int photon_balance() const;
  int frequency_offset() const;
  bool closes() const { return photon_balance() == 1 && frequency_offset() == n; }
  // e.g. "2w1-w2"
  std::string output_label() const;
};

std::optional<std::string> forbidden_reason(ScenarioKind kind, int n);
bool is_allowed(ScenarioKind kind, int n);
std::vector<int> allowed_indices(ScenarioKind kind, int n_max);

// Throws ForbiddenIndexError with the reason for indices outside the allowed set.
ProcessDescriptor process_descriptor(ScenarioKind kind, int n);
Scaling predicted_scaling(ScenarioKind kind, int n);

}  // namespace qmix
