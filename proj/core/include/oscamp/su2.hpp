// su2.hpp — pair dynamics (a, b) per drive protocol and the spin-s propagator
#pragma once

#include <Eigen/Dense>

#include "oscamp/errors.hpp"
#include "oscamp/ode.hpp"
#include "oscamp/scenario.hpp"
#include "oscamp/types.hpp"

namespace oscamp {

// The two complex functions parameterizing the elementary 2×2 propagator
//   u(t) = [[a, b], [−b*, a*]],
// solutions of ȧ = −i(Ω/2)a + iω b*, ḃ = −iω a* − i(Ω/2)b with
// (a, b) = (1, 0) at the scenario's anchor time.
struct AmplitudePair {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};
  double t{0.0};  // time the pair refers to
};

// ||a|² + |b|² − 1|, the unitarity defect of the pair.
double norm_defect(const AmplitudePair& p);

// The 2×2 propagator [[a, b], [−b*, a*]].
Eigen::Matrix2cd pair_matrix(const AmplitudePair& p);

// Dense-output numeric solution of the pair ODE over [t_start, t_end].
// Oracle-grade: local error controlled at `tol`.  With `omega_only` the
// longitudinal term is dropped (Ω ≡ 0), which is the pair the two-identical-
// oscillator model evolves by.  Immutable; safe for concurrent sampling.
class PairSolution {
 public:
  PairSolution(const Scenario& s, double t_start, double t_end, double tol,
               bool omega_only = false);

  AmplitudePair at(double t) const;
  double t_start() const { return sol_.t_start(); }
  double t_end() const { return sol_.t_end(); }

  // Largest ||a|²+|b|²−1| over the accepted-step endpoints (norm drift is
  // monitored, never enforced, so it doubles as a quality signal).
  double max_norm_defect() const { return max_norm_defect_; }

 private:
  DenseSolution sol_;
  double max_norm_defect_{0.0};
};

// Numeric pair solution with initial data (1, 0) at t_start.
// Preconditions: t_end > t_start, tol ∈ [1e−13, 1e−4] (ParameterError).
PairSolution solve_numeric(const Scenario& s, double t_start, double t_end,
                           double tol);

// Closed-form pair for constant drive (Ω₀, ω₀), anchored at t = 0:
//   a = cos(νt) − i(Ω₀/2ν)sin(νt),  b = −i(ω₀/ν)sin(νt),
//   ν = √(Ω₀²/4 + ω₀²);  the ν → 0 limit is (1, 0).
AmplitudePair solve_constant(double Omega0, double omega0, double t);

// Closed-form pair for the rotating drive ω(t) = ω₀e^{−iν₀t} with constant
// longitudinal Ω₀, anchored at t = 0.  With ΔΩ = Ω₀ − ν₀ and
// ν̃ = √(ΔΩ²/4 + ω₀²):
//   a = e^{−iν₀t/2}[cos ν̃t − i(ΔΩ/2ν̃)sin ν̃t],
//   b = −i(ω₀/ν̃)e^{−iν₀t/2} sin ν̃t.
// On resonance (ν₀ = Ω₀) this is full-transfer precession at rate ω₀.
AmplitudePair rotating_drive_pair(double Omega0, double omega0, double nu0,
                                  double t);

// Rabi-scenario pair: rotating_drive_pair restricted to Ω₀ > 0 so the
// population-transfer ratio k = ω₀/Ω₀ is well defined.
// Throws ParameterError when Ω₀ ≤ 0.
AmplitudePair solve_rabi(double Omega0, double omega0, double nu0, double t);

// Closed-form pair for the linear sweep Ω = γt with constant coupling ω₀,
// anchored at dimensionless time τ_i (τ = √γ·t), evaluated with parabolic
// cylinder functions.  Repeated evaluations at many τ share the cached
// τ_i-dependent factors.
class LmszPair {
 public:
  // Preconditions: gamma > 0, omega0 ≥ 0 (ParameterError).
  LmszPair(double gamma, double omega0, double tau_i);

  // Pair at dimensionless time τ ≥ τ_i (ParameterError below the anchor);
  // the returned .t is the real time τ/√γ.
  AmplitudePair at_tau(double tau) const;

  // Pair at real time t (= at_tau(√γ·t)).
  AmplitudePair at(double t) const;

  double tau_i() const { return tau_i_; }

 private:
  double gamma_{1.0};
  double omega0_{1.0};
  double tau_i_{-20.0};
  double lambda_{0.0};     // ω₀²/γ = χ/2
  Complex prefactor_;      // Γ(1 − iλ)/√(2π)
  Complex d_at_minus_ti_;  // D_{iλ}(−c·τ_i), c = e^{−iπ/4}
  Complex d_at_plus_ti_;   // D_{iλ}(+c·τ_i)
};

// One-shot convenience wrapper over LmszPair.
AmplitudePair solve_lmsz(double gamma, double omega0, double tau_i, double tau);

// The (2s+1)×(2s+1) unitary built from an AmplitudePair by the SU(2)
// group-element formula, in the ordered basis m = s, s−1, …, −s.
struct SpinPropagator {
  int two_s{1};            // 2s, a nonnegative integer
  Eigen::MatrixXcd matrix; // (2s+1)×(2s+1)

  double s() const { return 0.5 * two_s; }
  int dim() const { return two_s + 1; }
};

// Builds U_s(a, b) as the μ-summation
//   U_s^{m,m′} = Σ_μ (−1)^μ √((s+m)!(s−m)!(s+m′)!(s−m′)!) /
//                (μ!(s+m′−μ)!(s−m−μ)!(m−m′+μ)!) ·
//                a^{s+m′−μ}(a*)^{s−m−μ} b^{m−m′+μ}(b*)^μ,
// μ ∈ [max(0, m′−m), min(s+m′, s−m)].  Exact-factorial path for 2s ≤ 20,
// log-factorial otherwise (no overflow for any 2s).  For s = 1/2 this is
// exactly [[a, b], [−b*, a*]].
// Preconditions: two_s ≥ 0; p unitary within 1e−6 (ParameterError).
SpinPropagator spin_propagator(int two_s, const AmplitudePair& p);

// ‖U†U − I‖_max, the elementwise unitarity defect of a square matrix.
double unitarity_defect(const Eigen::MatrixXcd& U);

}  // namespace oscamp
