#include "qmix/config.hpp"

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include "toml.hpp"

#include "qmix/error.hpp"

namespace qmix {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

void check_keys(const toml::table& t, const std::string& where, std::initializer_list<std::string_view> allowed) {
  const std::set<std::string_view> ok(allowed);
  for (const auto& [k, v] : t) {
    (void)v;
    if (!ok.count(k.str())) fail(where, "unknown key '" + std::string(k.str()) + "'");
  }
}

const toml::table* subtable(const toml::table& root, std::string_view name, bool required) {
  const toml::node* n = root.get(name);
  if (!n) {
    if (required) fail(std::string(name), "missing table");
    return nullptr;
  }
  if (!n->is_table()) fail(std::string(name), "expected a table");
  return n->as_table();
}

std::optional<double> number(const toml::table& t, const std::string& where, std::string_view key) {
  const toml::node* n = t.get(key);
  if (!n) return std::nullopt;
  if (auto i = n->value_exact<int64_t>()) return static_cast<double>(*i);
  if (auto d = n->value_exact<double>()) return *d;
  fail(where + "." + std::string(key), "expected a number");
}

double number_or(const toml::table& t, const std::string& where, std::string_view key, double dflt) {
  return number(t, where, key).value_or(dflt);
}

double required_number(const toml::table& t, const std::string& where, std::string_view key) {
  if (auto v = number(t, where, key)) return *v;
  fail(where, "missing key '" + std::string(key) + "'");
}

std::optional<std::string> string(const toml::table& t, const std::string& where, std::string_view key) {
  const toml::node* n = t.get(key);
  if (!n) return std::nullopt;
  if (auto s = n->value_exact<std::string>()) return *s;
  fail(where + "." + std::string(key), "expected a string");
}

std::optional<bool> boolean(const toml::table& t, const std::string& where, std::string_view key) {
  const toml::node* n = t.get(key);
  if (!n) return std::nullopt;
  if (auto b = n->value_exact<bool>()) return *b;
  fail(where + "." + std::string(key), "expected true or false");
}

std::optional<int64_t> integer(const toml::table& t, const std::string& where, std::string_view key) {
  const toml::node* n = t.get(key);
  if (!n) return std::nullopt;
  if (auto i = n->value_exact<int64_t>()) return *i;
  fail(where + "." + std::string(key), "expected an integer");
}

cplx complex_value(const toml::table& t, const std::string& where, std::string_view key) {
  const toml::node* n = t.get(key);
  if (!n) return {};
  if (const auto* arr = n->as_array()) {
    if (arr->size() != 2) fail(where + "." + std::string(key), "expected [re, im]");
    double parts[2];
    for (std::size_t i = 0; i < 2; ++i) {
      const toml::node& e = *arr->get(i);
      if (auto v = e.value_exact<int64_t>()) {
        parts[i] = static_cast<double>(*v);
      } else if (auto d = e.value_exact<double>()) {
        parts[i] = *d;
      } else {
        fail(where + "." + std::string(key), "expected [re, im] numbers");
      }
    }
    return {parts[0], parts[1]};
  }
  return {required_number(t, where, key), 0.0};
}

ScenarioConfig parse_scenario(const toml::table& t) {
  const std::string w = "scenario";
  const auto kind_name = string(t, w, "kind");
  if (!kind_name) fail(w, "missing key 'kind'");
  const auto kind = scenario_kind_from_string(*kind_name);
  if (!kind) fail(w + ".kind", "unknown scenario '" + *kind_name + "' (two_tone, squeezed, fock)");
  switch (*kind) {
    case ScenarioKind::TwoTone:
      check_keys(t, w, {"kind", "omega1", "omega2"});
      return TwoTone{required_number(t, w, "omega1"), required_number(t, w, "omega2")};
    case ScenarioKind::Squeezed:
      check_keys(t, w, {"kind", "omega1", "n_bath", "m_bath"});
      return Squeezed{required_number(t, w, "omega1"), required_number(t, w, "n_bath"),
                      complex_value(t, w, "m_bath")};
    case ScenarioKind::Fock: {
      check_keys(t, w, {"kind", "omega1", "gamma_e", "nu", "period", "envelope_mode", "step_cutoff",
                        "paper_literal_sign", "commensurate"});
      Fock f;
      f.omega1 = required_number(t, w, "omega1");
      f.gamma_e = required_number(t, w, "gamma_e");
      f.nu = required_number(t, w, "nu");
      f.period = required_number(t, w, "period");
      if (auto m = string(t, w, "envelope_mode")) {
        if (*m == "exact") {
          f.envelope_mode = EnvelopeMode::Exact;
        } else if (*m == "step") {
          f.envelope_mode = EnvelopeMode::Step;
        } else {
          fail(w + ".envelope_mode", "expected \"exact\" or \"step\"");
        }
      }
      f.step_cutoff = number(t, w, "step_cutoff");
      f.paper_literal_sign = boolean(t, w, "paper_literal_sign").value_or(false);
      return f;
    }
  }
  fail(w, "unreachable");
}

}  // namespace

std::string config_hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

void revalidate(RunConfig& cfg) {
  const auto rep = validate_problem(cfg.problem);
  if (!rep.ok()) {
    std::string msg;
    for (const auto& v : rep.violations()) msg += (msg.empty() ? "" : "; ") + v;
    throw ConfigError(cfg.origin + ": " + msg);
  }
  cfg.warnings = rep.warnings();
  const auto& in = cfg.integrator;
  if (!(in.dt_max > 0.0)) throw ConfigError(cfg.origin + ": integrator.dt_max must be positive");
  if (in.window_periods < 5) throw ConfigError(cfg.origin + ": integrator.window_periods must be >= 5");
  if (in.settle_time && !(*in.settle_time >= 0.0))
    throw ConfigError(cfg.origin + ": integrator.settle_time must be >= 0");
  if (!(in.steady_tol > 0.0)) throw ConfigError(cfg.origin + ": integrator.steady_tol must be positive");
  if (in.n_max < 1) throw ConfigError(cfg.origin + ": integrator.n_max must be >= 1");
  if (in.min_samples_per_period < 8)
    throw ConfigError(cfg.origin + ": integrator.min_samples_per_period must be >= 8");
  if (!(cfg.validate.rel_tol >= 0.0)) throw ConfigError(cfg.origin + ": validate.rel_tol must be >= 0");
  if (cfg.validate.abs_floor && !(*cfg.validate.abs_floor >= 0.0))
    throw ConfigError(cfg.origin + ": validate.abs_floor must be >= 0");
}

RunConfig parse_config(std::string_view text, std::string origin) {
  toml::table root;
  try {
    root = toml::parse(text, origin);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << origin << ":" << e.source().begin.line << ":" << e.source().begin.column << ": "
       << e.description();
    throw ConfigError(os.str());
  }
  check_keys(root, origin, {"qubit", "frame", "scenario", "integrator", "validate"});

  RunConfig cfg;
  cfg.origin = origin;
  cfg.hash = config_hash(text);

  if (const auto* q = subtable(root, "qubit", false)) {
    check_keys(*q, "qubit", {"gamma_rad", "gamma_phi", "dipole_scale"});
    cfg.problem.qubit.gamma_rad = number_or(*q, "qubit", "gamma_rad", 1.0);
    cfg.problem.qubit.gamma_phi = number_or(*q, "qubit", "gamma_phi", 0.0);
    cfg.problem.qubit.dipole_scale = number_or(*q, "qubit", "dipole_scale", 1.0);
  }
  const auto* f = subtable(root, "frame", true);
  check_keys(*f, "frame", {"delta_w", "big_delta"});
  cfg.problem.frame.delta_w = required_number(*f, "frame", "delta_w");
  cfg.problem.frame.big_delta = number_or(*f, "frame", "big_delta", 0.0);

  const auto* s = subtable(root, "scenario", true);
  cfg.problem.scenario = parse_scenario(*s);
  cfg.commensurate = boolean(*s, "scenario", "commensurate").value_or(true);

  if (const auto* in = subtable(root, "integrator", false)) {
    const std::string w = "integrator";
    check_keys(*in, w, {"dt_max", "window_periods", "settle_time", "steady_tol", "n_max",
                        "min_samples_per_period"});
    auto& it = cfg.integrator;
    it.dt_max = number_or(*in, w, "dt_max", it.dt_max);
    it.window_periods = static_cast<int>(integer(*in, w, "window_periods").value_or(it.window_periods));
    it.settle_time = number(*in, w, "settle_time");
    it.steady_tol = number_or(*in, w, "steady_tol", it.steady_tol);
    it.n_max = static_cast<int>(integer(*in, w, "n_max").value_or(it.n_max));
    const auto sp = integer(*in, w, "min_samples_per_period");
    if (sp && *sp < 0) fail(w + ".min_samples_per_period", "must be positive");
    if (sp) it.min_samples_per_period = static_cast<std::size_t>(*sp);
  }
  if (const auto* v = subtable(root, "validate", false)) {
    const std::string w = "validate";
    check_keys(*v, w, {"rel_tol", "abs_floor", "mode"});
    cfg.validate.rel_tol = number_or(*v, w, "rel_tol", cfg.validate.rel_tol);
    cfg.validate.abs_floor = number(*v, w, "abs_floor");
    if (auto m = string(*v, w, "mode")) {
      if (*m == "magnitude") {
        cfg.validate.mode = CompareMode::Magnitude;
      } else if (*m == "complex") {
        cfg.validate.mode = CompareMode::Complex;
      } else {
        fail(w + ".mode", "expected \"magnitude\" or \"complex\"");
      }
    }
  }
  revalidate(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

}  // namespace qmix
