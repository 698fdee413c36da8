// scenario.cpp — validation and evaluation of the drive protocols
#include "oscamp/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

namespace oscamp {

namespace {

void require(bool condition, const std::string& message) {
  if (!condition) throw ParameterError(message);
}

// Index k of the sample segment [t_k, t_{k+1}] containing t.
std::size_t segment_index(const Tabulated& tab, double t) {
  if (t < tab.t.front() || t > tab.t.back()) {
    throw RangeError("Tabulated drive sampled at t=" + std::to_string(t) +
                     " outside grid [" + std::to_string(tab.t.front()) + ", " +
                     std::to_string(tab.t.back()) + "]");
  }
  auto it = std::upper_bound(tab.t.begin(), tab.t.end(), t);
  std::size_t k = static_cast<std::size_t>(it - tab.t.begin());
  if (k == 0) k = 1;                          // t == front
  if (k == tab.t.size()) k = tab.t.size() - 1;  // t == back
  return k - 1;
}

}  // namespace

Scenario::Scenario(Constant c) : v_(c) {
  require(std::isfinite(c.Omega0) && std::isfinite(c.omega0),
          "Constant drive: parameters must be finite");
  require(c.omega0 >= 0.0, "Constant drive: omega0 must be nonnegative");
}

Scenario::Scenario(Rabi r) : v_(r) {
  require(std::isfinite(r.Omega0) && std::isfinite(r.omega0) &&
              std::isfinite(r.nu0),
          "Rabi drive: parameters must be finite");
  require(r.omega0 >= 0.0, "Rabi drive: omega0 must be nonnegative");
}

Scenario::Scenario(Lmsz l) : v_(l) {
  require(std::isfinite(l.gamma) && std::isfinite(l.omega0) &&
              std::isfinite(l.tau_i) && std::isfinite(l.tau_f),
          "Lmsz drive: parameters must be finite");
  require(l.gamma > 0.0, "Lmsz drive: gamma must be positive");
  require(l.omega0 >= 0.0, "Lmsz drive: omega0 must be nonnegative");
  require(l.tau_i < l.tau_f, "Lmsz drive: tau_i must be below tau_f");
}

Scenario::Scenario(Tabulated tab) : v_(std::move(tab)) {
  const auto& t = std::get<Tabulated>(v_);
  require(t.t.size() >= 2, "Tabulated drive: need at least 2 samples");
  require(t.Omega.size() == t.t.size() && t.omega.size() == t.t.size(),
          "Tabulated drive: t, Omega, omega arrays must have equal length");
  for (std::size_t k = 0; k < t.t.size(); ++k) {
    require(std::isfinite(t.t[k]) && std::isfinite(t.Omega[k]) &&
                std::isfinite(t.omega[k].real()) &&
                std::isfinite(t.omega[k].imag()),
            "Tabulated drive: samples must be finite");
    if (k > 0) {
      require(t.t[k] > t.t[k - 1],
              "Tabulated drive: sample times must be strictly increasing");
    }
  }
}

std::string_view Scenario::name() const {
  switch (v_.index()) {
    case 0: return "constant";
    case 1: return "rabi";
    case 2: return "lmsz";
    default: return "tabulated";
  }
}

DriveValues evaluate(const Scenario& s, double t) {
  if (s.holds<Constant>()) {
    const auto& c = s.get<Constant>();
    return {c.Omega0, Complex{c.omega0, 0.0}};
  }
  if (s.holds<Rabi>()) {
    const auto& r = s.get<Rabi>();
    return {r.Omega0, r.omega0 * std::exp(Complex{0.0, -r.nu0 * t})};
  }
  if (s.holds<Lmsz>()) {
    const auto& l = s.get<Lmsz>();
    return {l.gamma * t, Complex{l.omega0, 0.0}};
  }
  const auto& tab = s.get<Tabulated>();
  const std::size_t k = segment_index(tab, t);
  const double w = (t - tab.t[k]) / (tab.t[k + 1] - tab.t[k]);
  return {tab.Omega[k] + w * (tab.Omega[k + 1] - tab.Omega[k]),
          tab.omega[k] + w * (tab.omega[k + 1] - tab.omega[k])};
}

double dimensionless_time(const Scenario& s, double t) {
  if (s.holds<Rabi>()) return s.get<Rabi>().nu0 * t;
  if (s.holds<Lmsz>()) return std::sqrt(s.get<Lmsz>().gamma) * t;
  throw UnsupportedVariantError(
      "dimensionless_time is defined only for Rabi and Lmsz drives (got " +
      std::string(s.name()) + ")");
}

double anchor_time(const Scenario& s) {
  if (s.holds<Lmsz>()) return s.get<Lmsz>().t_i();
  if (s.holds<Tabulated>()) return s.get<Tabulated>().t.front();
  return 0.0;
}

double integral_Omega(const Scenario& s, double t) {
  if (s.holds<Constant>()) return s.get<Constant>().Omega0 * t;
  if (s.holds<Rabi>()) return s.get<Rabi>().Omega0 * t;
  if (s.holds<Lmsz>()) {
    const auto& l = s.get<Lmsz>();
    const double ti = l.t_i();
    return 0.5 * l.gamma * (t * t - ti * ti);
  }
  const auto& tab = s.get<Tabulated>();
  const std::size_t k_end = segment_index(tab, t);
  double acc = 0.0;
  for (std::size_t k = 0; k < k_end; ++k) {
    acc += 0.5 * (tab.Omega[k] + tab.Omega[k + 1]) * (tab.t[k + 1] - tab.t[k]);
  }
  const double dt = t - tab.t[k_end];
  const double w = dt / (tab.t[k_end + 1] - tab.t[k_end]);
  const double Omega_t =
      tab.Omega[k_end] + w * (tab.Omega[k_end + 1] - tab.Omega[k_end]);
  return acc + 0.5 * (tab.Omega[k_end] + Omega_t) * dt;
}

}  // namespace oscamp
