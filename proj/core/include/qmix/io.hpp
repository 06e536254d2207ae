#pragma once

// Deterministic text serialization of trajectories, spectra and reports.
// Every file carries the hash of the config that produced it.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmix/run.hpp"
#include "qmix/spectra.hpp"

namespace qmix {

// Shortest round-trip representation, '.' decimal separator.
std::string format_double(double x);

// Writes through a temporary file and renames it into place.
void write_file(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

// Columns t, re_sm, im_sm, sz; t multiplied by `time_scale`.
std::string trajectory_csv(const Trajectory& traj, const std::string& hash, double time_scale = 1.0);

// Columns n, freq_over_delta_w, re, im, abs, above_floor, preceded by
// "# key: value" lines for config_hash, delta_w and floor.
std::string spectrum_csv(const SpectrumTable& t, const std::string& hash);

struct SpectrumFile {
  std::string hash;
  SpectrumTable table;
};
// Throws ConfigError on malformed input.
SpectrumFile parse_spectrum_csv(std::string_view text);

// {scenario, delta_w, entries: [{n, abs, phase, pass, ...}], floor, config_hash}
std::string peak_report_json(const PeakReport& r, const std::string& hash);

struct ManifestInfo {
  std::string config_path;
  std::string hash;
  std::string command;
  std::vector<std::string> outputs;
  std::vector<std::string> notes;
  std::string generated_at;  // the only non-deterministic field
};
std::string manifest_json(const RunResult& r, const ManifestInfo& m);

// Long format: value, n, abs_S_n, above_floor.
std::string sweep_csv(const std::vector<SweepPoint>& pts, const std::string& hash);
std::string sweep_json(const std::vector<SweepPoint>& pts, SweepAxis axis, ScenarioKind kind,
                       int n_max, const std::string& hash);

std::string gnuplot_script(const std::string& spectrum_file);

// Machine-readable error record for stderr.
std::string error_json(std::string_view kind, std::string_view message, int exit_code);

}  // namespace qmix
