#include "qmix/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qmix {

namespace {

std::string num(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

void violation(ValidationReport& r, std::string msg) {
  r.items.push_back({ValidationItem::Severity::Violation, std::move(msg)});
}
void warning(ValidationReport& r, std::string msg) {
  r.items.push_back({ValidationItem::Severity::Warning, std::move(msg)});
}
void flag(ValidationReport& r, std::string msg) {
  r.items.push_back({ValidationItem::Severity::Flag, std::move(msg)});
}

// Adds a violation unless `x` is finite and satisfies `ok`.
template <typename Pred>
void require(ValidationReport& r, std::string_view name, double x, Pred ok,
             std::string_view bound) {
  if (!std::isfinite(x)) {
    violation(r, std::string(name) + " is not finite");
  } else if (!ok(x)) {
    violation(r, std::string(name) + "=" + num(x) + " violates " + std::string(bound));
  }
}

const auto nonneg = [](double x) { return x >= 0.0; };
const auto positive = [](double x) { return x > 0.0; };

void check(ValidationReport& r, const TwoTone& s) {
  require(r, "omega1", s.omega1, nonneg, "omega1 >= 0");
  require(r, "omega2", s.omega2, nonneg, "omega2 >= 0");
}

void check(ValidationReport& r, const Squeezed& s) {
  require(r, "omega1", s.omega1, nonneg, "omega1 >= 0");
  require(r, "n_bath", s.n_bath, nonneg, "N >= 0");
  if (!std::isfinite(s.m_bath.real()) || !std::isfinite(s.m_bath.imag())) {
    violation(r, "m_bath is not finite");
    return;
  }
  if (!std::isfinite(s.n_bath) || s.n_bath < 0.0) return;
  const double m2 = std::norm(s.m_bath);
  const double bound = s.n_bath * (s.n_bath + 1.0);
  const double slack = 1e-12 * std::max(1.0, bound);
  if (m2 > bound + slack) {
    violation(r, "|M|^2 > N(N+1)=" + num(bound) + " (|M|^2=" + num(m2) + ")");
  } else if (bound > 0.0 && m2 >= bound - slack) {
    flag(r, "pure squeezed state");
  }
}

void check(ValidationReport& r, const Fock& s) {
  require(r, "omega1", s.omega1, nonneg, "omega1 >= 0");
  require(r, "gamma_e", s.gamma_e, positive, "gamma_e > 0");
  require(r, "nu", s.nu, [](double x) { return x >= 0.0 && x <= 1.0; }, "0 <= nu <= 1");
  require(r, "period", s.period, positive, "T > 0");
  if (s.step_cutoff) require(r, "step_cutoff", *s.step_cutoff, positive, "step_cutoff > 0");
  if (std::isfinite(s.period) && std::isfinite(s.gamma_e) && s.gamma_e > 0.0 &&
      s.period > 0.0 && s.period * s.gamma_e < 3.0) {
    warning(r, "T*gamma_e=" + num(s.period * s.gamma_e) +
                   " < 3: pulses overlap, single-photon picture is unreliable");
  }
}

}  // namespace

double derive_gamma(const QubitParams& q) { return 0.5 * q.gamma_rad + q.gamma_phi; }

ScenarioKind kind_of(const ScenarioConfig& s) {
  return static_cast<ScenarioKind>(s.index());
}

std::string_view to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::TwoTone: return "two_tone";
    case ScenarioKind::Squeezed: return "squeezed";
    case ScenarioKind::Fock: return "fock";
  }
  return "unknown";
}

std::optional<ScenarioKind> scenario_kind_from_string(std::string_view s) {
  if (s == "two_tone") return ScenarioKind::TwoTone;
  if (s == "squeezed") return ScenarioKind::Squeezed;
  if (s == "fock") return ScenarioKind::Fock;
  return std::nullopt;
}

double omega1_of(const ScenarioConfig& s) {
  return std::visit([](const auto& v) { return v.omega1; }, s);
}

double purity(const BlochState& b) { return 4.0 * std::norm(b.sm) + b.sz * b.sz; }

bool purity_check(const BlochState& b, double tol) { return purity(b) <= 1.0 + tol; }

bool ValidationReport::ok() const {
  return std::none_of(items.begin(), items.end(), [](const ValidationItem& i) {
    return i.severity == ValidationItem::Severity::Violation;
  });
}

bool ValidationReport::has_flag(std::string_view needle) const {
  return std::any_of(items.begin(), items.end(), [&](const ValidationItem& i) {
    return i.severity == ValidationItem::Severity::Flag && i.message.find(needle) != std::string::npos;
  });
}

std::vector<std::string> ValidationReport::violations() const {
  std::vector<std::string> out;
  for (const auto& i : items)
    if (i.severity == ValidationItem::Severity::Violation) out.push_back(i.message);
  return out;
}

std::vector<std::string> ValidationReport::warnings() const {
  std::vector<std::string> out;
  for (const auto& i : items)
    if (i.severity == ValidationItem::Severity::Warning) out.push_back(i.message);
  return out;
}

ValidationReport validate_scenario(const ScenarioConfig& s) {
  ValidationReport r;
  std::visit([&](const auto& v) { check(r, v); }, s);
  return r;
}

ValidationReport validate_problem(const Problem& p) {
  ValidationReport r = validate_scenario(p.scenario);
  require(r, "gamma_rad", p.qubit.gamma_rad, positive, "gamma_rad > 0");
  require(r, "gamma_phi", p.qubit.gamma_phi, nonneg, "gamma_phi >= 0");
  require(r, "dipole_scale", p.qubit.dipole_scale, positive, "dipole_scale > 0");
  require(r, "delta_w", p.frame.delta_w, positive, "delta_w > 0");
  require(r, "big_delta", p.frame.big_delta, [](double) { return true; }, "finite");
  const double g = derive_gamma(p.qubit);
  if (std::isfinite(g) && g > 0.0 && std::isfinite(p.frame.delta_w) && p.frame.delta_w > g / 10.0) {
    warning(r, "delta_w=" + num(p.frame.delta_w) + " exceeds gamma/10=" + num(g / 10.0) +
                   ": quasi-static closed forms lose accuracy");
  }
  return r;
}

namespace {

Problem rescale(const Problem& p, double rate_factor) {
  Problem out = p;
  const double time_factor = 1.0 / rate_factor;
  out.qubit.gamma_rad *= rate_factor;
  out.qubit.gamma_phi *= rate_factor;
  out.frame.delta_w *= rate_factor;
  out.frame.big_delta *= rate_factor;
  std::visit(
      [&](auto& s) {
        using T = std::decay_t<decltype(s)>;
        s.omega1 *= rate_factor;
        if constexpr (std::is_same_v<T, TwoTone>) {
          s.omega2 *= rate_factor;
        } else if constexpr (std::is_same_v<T, Fock>) {
          s.gamma_e *= rate_factor;
          s.period *= time_factor;
          if (s.step_cutoff) *s.step_cutoff *= time_factor;
        }
      },
      out.scenario);
  return out;
}

}  // namespace

Problem normalize(const Problem& p) { return rescale(p, 1.0 / p.qubit.gamma_rad); }

Problem denormalize(const Problem& p, double gamma_rad) { return rescale(p, gamma_rad); }

}  // namespace qmix
