// scenario.hpp — time-dependence protocols for the drive parameters Ω(t), ω(t)
#pragma once

#include <cmath>
#include <string_view>
#include <variant>
#include <vector>

#include "oscamp/errors.hpp"
#include "oscamp/types.hpp"

namespace oscamp {

// Ω(t) = Omega0, ω(t) = omega0.
struct Constant {
  double Omega0{1.0};  // level-splitting parameter (ħ=1 energy units)
  double omega0{0.1};  // transverse coupling, real and nonnegative
};

// Ω(t) = Omega0, ω(t) = omega0·e^{−i·nu0·t} (rotating-wave drive).
struct Rabi {
  double Omega0{1.0};  // static level splitting
  double omega0{0.1};  // coupling amplitude, |ω(t)| = omega0 for all t
  double nu0{1.0};     // drive angular frequency (free; not pinned to resonance)
};

// Ω(t) = gamma·t (linear sweep through the crossing), ω(t) = omega0.
// Times are usually quoted through the dimensionless τ = √gamma·t; the
// window [tau_i, tau_f] bounds the sweep considered by the solvers.
struct Lmsz {
  double gamma{1.0};    // sweep rate, > 0
  double omega0{1.0};   // constant transverse coupling, ≥ 0
  double tau_i{-20.0};  // dimensionless initial time of the sweep window
  double tau_f{20.0};   // dimensionless final time of the sweep window

  // Sweep-strength parameter χ = 2ω₀²/γ governing the crossing transition.
  double chi() const { return 2.0 * omega0 * omega0 / gamma; }
  // Window endpoints in real time, t = τ/√γ.
  double t_i() const { return tau_i / std::sqrt(gamma); }
  double t_f() const { return tau_f / std::sqrt(gamma); }
};

// Sampled drive: piecewise-linear interpolation of (Ω, ω) between samples.
struct Tabulated {
  std::vector<double> t;       // strictly increasing sample times, ≥ 2 entries
  std::vector<double> Omega;   // Ω at each sample
  std::vector<Complex> omega;  // ω at each sample
};

// Instantaneous values of the drive parameters.
struct DriveValues {
  double Omega{0.0};
  Complex omega{0.0, 0.0};
};

// A validated drive protocol.  Construction enforces the per-variant
// invariants (Constant/Rabi/Lmsz: ω₀ ≥ 0; Lmsz: γ > 0 and τ_i < τ_f;
// Tabulated: matching array lengths, ≥ 2 samples, strictly increasing
// times) and throws ParameterError on violation.  Immutable afterwards.
class Scenario {
 public:
  using Variant = std::variant<Constant, Rabi, Lmsz, Tabulated>;

  Scenario(Constant c);
  Scenario(Rabi r);
  Scenario(Lmsz l);
  Scenario(Tabulated tab);

  const Variant& variant() const { return v_; }

  template <class T>
  bool holds() const {
    return std::holds_alternative<T>(v_);
  }
  template <class T>
  const T& get() const {
    return std::get<T>(v_);
  }

  // Lower-case tag used in config files: "constant", "rabi", "lmsz",
  // "tabulated".
  std::string_view name() const;

 private:
  Variant v_;
};

// Instantaneous drive parameters (Ω(t), ω(t)).  Pure and deterministic.
// Tabulated scenarios throw RangeError outside their sample grid.
DriveValues evaluate(const Scenario& s, double t);

// Scenario-native dimensionless time: Rabi → ν₀·t, Lmsz → √γ·t.
// Throws UnsupportedVariantError for Constant and Tabulated, which have
// no preferred time scale.
double dimensionless_time(const Scenario& s, double t);

// Reference time at which the pair solution starts from (a, b) = (1, 0):
// 0 for Constant/Rabi, the window start t_i for Lmsz, the first sample
// time for Tabulated.
double anchor_time(const Scenario& s);

// ∫ Ω(t′) dt′ from anchor_time(s) to t, in closed form per variant
// (Constant/Rabi: Ω₀·t; Lmsz: γ(t² − t_i²)/2).  For Tabulated the
// piecewise-linear interpolant is integrated exactly (each panel of the
// interpolant is linear, so the trapezoid sums are not approximations);
// out-of-range t throws RangeError.
double integral_Omega(const Scenario& s, double t);

}  // namespace oscamp
