#pragma once

// TOML run configuration.
//
//   [qubit]      gamma_rad, gamma_phi, dipole_scale
//   [frame]      delta_w, big_delta
//   [scenario]   kind = "two_tone" | "squeezed" | "fock" plus
//                  two_tone: omega1, omega2
//                  squeezed: omega1, n_bath, m_bath (number or [re, im])
//                  fock:     omega1, gamma_e, nu, period, envelope_mode
//                            ("exact" | "step"), step_cutoff,
//                            paper_literal_sign, commensurate
//   [integrator] dt_max, window_periods, settle_time, steady_tol, n_max,
//                min_samples_per_period
//   [validate]   rel_tol, abs_floor, mode ("magnitude" | "complex")
//
// Unknown tables or keys are errors. Rates may be given in any unit; the
// run is carried out in units of gamma_rad.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmix/model.hpp"
#include "qmix/spectra.hpp"

namespace qmix {

struct IntegratorSettings {
  double dt_max = 1e-2;                      // in 1/gamma_rad
  int window_periods = 10;                   // beat periods in the extraction window
  std::optional<double> settle_time;         // in 1/gamma_rad; default 60 / min(gamma, Gamma)
  double steady_tol = 1e-10;
  int n_max = 8;
  std::size_t min_samples_per_period = 4096;
};

struct ValidateSettings {
  double rel_tol = 0.02;
  std::optional<double> abs_floor;  // default 1e-6 max |S_oracle|
  CompareMode mode = CompareMode::Magnitude;
};

struct RunConfig {
  Problem problem;  // as written, not normalized
  IntegratorSettings integrator;
  ValidateSettings validate;
  bool commensurate = true;  // Fock: snap delta_w onto a whole number of pulse periods
  std::string hash;          // FNV-1a 64 of the source bytes, hex
  std::string origin;
  std::vector<std::string> warnings;
};

std::string config_hash(std::string_view bytes);

// Throws ConfigError on syntax errors, unknown keys, wrong types and
// invariant violations.
RunConfig parse_config(std::string_view text, std::string origin = "<string>");
RunConfig load_config(const std::filesystem::path& path);

// Re-checks the invariants after programmatic edits (e.g. sweep overrides).
void revalidate(RunConfig& cfg);

}  // namespace qmix
