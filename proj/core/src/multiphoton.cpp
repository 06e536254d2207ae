#include "qmix/multiphoton.hpp"

#include <cstdlib>

#include "qmix/error.hpp"

namespace qmix {

namespace {

int mod(int a, int b) { return ((a % b) + b) % b; }

void append_term(std::string& out, int count, const char* name) {
  if (count == 0) return;
  if (count < 0) {
    out += '-';
  } else if (!out.empty()) {
    out += '+';
  }
  if (std::abs(count) != 1) out += std::to_string(std::abs(count));
  out += name;
}

}  // namespace

int ProcessDescriptor::photon_balance() const {
  return coh_absorbed + tone2_absorbed + 2 * pairs_absorbed + fock_photon;
}

int ProcessDescriptor::frequency_offset() const {
  return coh_absorbed - tone2_absorbed - 2 * pairs_absorbed - fock_photon;
}

std::string ProcessDescriptor::output_label() const {
  const int w2 = tone2_absorbed + 2 * pairs_absorbed + fock_photon;
  std::string s;
  if (coh_absorbed >= 0) {
    append_term(s, coh_absorbed, "w1");
    append_term(s, w2, "w2");
  } else {
    append_term(s, w2, "w2");
    append_term(s, coh_absorbed, "w1");
  }
  return s.empty() ? "0" : s;
}

std::optional<std::string> forbidden_reason(ScenarioKind kind, int n) {
  if (mod(n, 2) == 0) return "parity: even index needs an even number of photons";
  switch (kind) {
    case ScenarioKind::TwoTone:
      return std::nullopt;
    case ScenarioKind::Squeezed:
      if (mod(n, 4) != 1) return "mod-4 class: n = 3 (mod 4) would need an unpaired squeezed photon";
      return std::nullopt;
    case ScenarioKind::Fock:
      if (n < -1 || n > 3) return "photon-number ceiling: the pulsed field holds at most one photon";
      return std::nullopt;
  }
  return std::nullopt;
}

bool is_allowed(ScenarioKind kind, int n) { return !forbidden_reason(kind, n).has_value(); }

std::vector<int> allowed_indices(ScenarioKind kind, int n_max) {
  std::vector<int> out;
  for (int n = -n_max; n <= n_max; ++n)
    if (is_allowed(kind, n)) out.push_back(n);
  return out;
}

ProcessDescriptor process_descriptor(ScenarioKind kind, int n) {
  if (auto why = forbidden_reason(kind, n))
    throw ForbiddenIndexError("forbidden index n = " + std::to_string(n) + " for " +
                              std::string(to_string(kind)) + ": " + *why);
  ProcessDescriptor d;
  d.kind = kind;
  d.n = n;
  d.coh_absorbed = (1 + n) / 2;
  auto& sc = d.scaling;
  switch (kind) {
    case ScenarioKind::TwoTone:
      d.tone2_absorbed = (1 - n) / 2;
      sc.omega1_power = std::abs(d.coh_absorbed);
      sc.omega2_power = std::abs(d.tone2_absorbed);
      break;
    case ScenarioKind::Squeezed:
      d.pairs_absorbed = (1 - n) / 4;
      sc.omega1_power = std::abs(d.coh_absorbed);
      sc.m_power = std::abs(d.pairs_absorbed);
      sc.m_conjugate = d.pairs_absorbed < 0;
      sc.series_f_power = sc.omega1_power;
      sc.folded_f_power = sc.series_f_power + 1;
      break;
    case ScenarioKind::Fock:
      d.fock_photon = (1 - n) / 2;
      sc.omega1_power = std::abs(d.coh_absorbed);
      sc.sin_theta_power = std::abs(d.fock_photon);
      break;
  }
  return d;
}

Scaling predicted_scaling(ScenarioKind kind, int n) { return process_descriptor(kind, n).scaling; }

}  // namespace qmix
