#pragma once

// Domain types shared by every module.
//
// Conventions:
//  * All dynamics live in the frame rotating at w_d = (w1 + w2) / 2.
//    w1 = w_d + delta_w is the classical tone, w2 = w_d - delta_w is the
//    second (classical, squeezed or single-photon) field.
//  * Internally every rate is measured in units of gamma_rad (see
//    `normalize`); configs with an explicit gamma_rad are rescaled on
//    ingestion and rescaled back on output.

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qmix {

using cplx = std::complex<double>;

// Headroom on the purity bound for integrator roundoff.
inline constexpr double kPhysTol = 1e-9;

struct QubitParams {
  double gamma_rad = 1.0;     // radiative decay rate
  double gamma_phi = 0.0;     // pure dephasing rate
  double dipole_scale = 1.0;  // only rescales the emitted amplitude
};

// gamma = gamma_rad / 2 + gamma_phi
double derive_gamma(const QubitParams& q);

struct FrameConfig {
  double delta_w = 0.0;    // half the splitting of the two tones
  double big_delta = 0.0;  // qubit detuning from w_d
};

enum class EnvelopeMode { Exact, Step };

struct TwoTone {
  double omega1 = 0.0;
  double omega2 = 0.0;
};

struct Squeezed {
  double omega1 = 0.0;
  double n_bath = 0.0;
  cplx m_bath{0.0, 0.0};
};

struct Fock {
  double omega1 = 0.0;
  double gamma_e = 1.0;
  double nu = 0.5;
  double period = 10.0;
  EnvelopeMode envelope_mode = EnvelopeMode::Exact;
  // Step-mode cutoff on the time since the last pulse; defaults to 1/gamma_e.
  std::optional<double> step_cutoff;
  // Reproduce the correlator drive exactly as printed (+|zc|, |pc|) instead
  // of the signed products of the factorized pulse correlators.
  bool paper_literal_sign = false;

  double cutoff() const { return step_cutoff.value_or(1.0 / gamma_e); }
};

using ScenarioConfig = std::variant<TwoTone, Squeezed, Fock>;

enum class ScenarioKind { TwoTone, Squeezed, Fock };

ScenarioKind kind_of(const ScenarioConfig& s);
std::string_view to_string(ScenarioKind k);
std::optional<ScenarioKind> scenario_kind_from_string(std::string_view s);
double omega1_of(const ScenarioConfig& s);

// Everything needed to pose one simulation.
struct Problem {
  QubitParams qubit;
  FrameConfig frame;
  ScenarioConfig scenario = TwoTone{};

  ScenarioKind kind() const { return kind_of(scenario); }
};

// Rotating-frame mean values <sigma_-> and <sigma_z>.
struct BlochState {
  cplx sm{0.0, 0.0};
  double sz = -1.0;
};

// 4|sm|^2 + sz^2; equals 1 for pure states.
double purity(const BlochState& b);
bool purity_check(const BlochState& b, double tol);

// Aggregates collected over every integrator step (not just stored samples).
struct IntegrationStats {
  std::size_t steps = 0;
  double max_purity = 0.0;
  double min_sz = 1.0;
  double max_sz = -1.0;
};

struct Trajectory {
  double t0 = 0.0;
  double dt = 0.0;  // spacing of stored samples
  std::vector<BlochState> samples;
  FrameConfig frame;
  IntegrationStats stats;

  double time_at(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
  double t_end() const { return time_at(samples.empty() ? 0 : samples.size() - 1); }
};

struct ValidationItem {
  enum class Severity { Violation, Warning, Flag };
  Severity severity;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationItem> items;

  bool ok() const;
  bool has_flag(std::string_view needle) const;
  std::vector<std::string> violations() const;
  std::vector<std::string> warnings() const;
};

// Checks the scenario invariants only. Total over finite and non-finite input.
ValidationReport validate_scenario(const ScenarioConfig& s);
// Scenario invariants plus qubit and frame invariants.
ValidationReport validate_problem(const Problem& p);

// Rescales all rates by 1/gamma_rad and all times by gamma_rad.
Problem normalize(const Problem& p);
// Inverse of `normalize` given the original gamma_rad.
Problem denormalize(const Problem& p, double gamma_rad);

}  // namespace qmix
