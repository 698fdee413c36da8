// oscillator.hpp — the two bosonic models as block evolutions over N-subspaces
#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "oscamp/errors.hpp"
#include "oscamp/scenario.hpp"
#include "oscamp/su2.hpp"
#include "oscamp/types.hpp"

namespace oscamp {

// The two coupled-mode models.  Amplifier: H = (Ω/2)(α†α − β†β) + ωα†β +
// ω*αβ† (one mode inverted, the drive splitting enters the subspace
// dynamics).  Standard: H = (Ω/2)(α†α + β†β) + ωα†β + ω*αβ† (two ordinary
// modes; Ω only contributes a scalar dynamical phase per subspace).
enum class ModelKind { Amplifier, Standard };

// State restricted to the N-excitation subspace, over the ordered basis
// |n, N−n⟩ with n = N, N−1, …, 0 (spin correspondence m = n − N/2).
struct SubspaceState {
  int N{1};
  Eigen::VectorXcd amplitudes;  // length N+1, unit norm
};

// Effective two-level parameters of a model at instantaneous drive values.
struct EffectiveParams {
  double Omega_eff{0.0};                  // longitudinal term entering the pair ODE
  Complex omega_eff{0.0, 0.0};            // transverse coupling entering the pair ODE
  double phase_rate_per_excitation{0.0};  // scalar-phase generator, (N/2)·(this·2) per subspace
};

// Amplifier → (Ω, ω, 0); Standard → (0, ω, Ω/2): the longitudinal drive
// decouples from the standard model's pair dynamics and reappears as the
// scalar phase rate (N/2)·Ω of the N-subspace.
EffectiveParams spin_hamiltonian_params(ModelKind kind, double Omega,
                                        Complex omega);

// Evolution operator of one N-excitation subspace: full block = phase·matrix.
struct BlockEvolution {
  int N{1};
  Eigen::MatrixXcd matrix;   // (N+1)×(N+1) unitary spin-N/2 propagator
  Complex phase{1.0, 0.0};   // scalar dynamical phase (1 for Amplifier)

  Eigen::MatrixXcd full() const { return phase * matrix; }
};

// Model-aware pair evaluation for a scenario: analytic closed forms for
// Constant/Rabi/Lmsz, dense numeric integration (built once over the sample
// span) for Tabulated.  For Standard the pair is solved with Ω ≡ 0.
// Immutable after construction; safe for concurrent sampling.
class PairEvaluator {
 public:
  PairEvaluator(const Scenario& s, ModelKind kind, double tol = 1e-12);

  AmplitudePair at(double t) const;

  // Time at which at() returns (1, 0) — the scenario's anchor.
  double anchor() const { return anchor_; }

  ModelKind kind() const { return kind_; }
  double tolerance() const { return tol_; }

 private:
  Scenario scenario_;
  ModelKind kind_;
  double tol_{1e-12};
  double anchor_{0.0};
  std::optional<LmszPair> lmsz_;          // Amplifier+Lmsz closed form
  std::optional<PairSolution> numeric_;   // Tabulated
};

// The N-subspace evolution operator at time t, measured from the scenario
// anchor: Amplifier → matrix = U_{N/2}(pair), phase = 1; Standard →
// matrix = U_{N/2}(Ω≡0 pair), phase = e^{−i(N/2)∫Ω dt′}.
// Preconditions: N ≥ 1 (ParameterError); Tabulated t within grid.
BlockEvolution block_evolution(ModelKind kind, const Scenario& s, int N,
                               double t, double tol = 1e-12);

// Same, but reusing an existing evaluator (avoids re-integrating Tabulated
// scenarios when sweeping t).  The evaluator's kind must match `kind`.
BlockEvolution block_evolution(ModelKind kind, const Scenario& s, int N,
                               double t, const PairEvaluator& pairs);

// Closed-form pair of the Standard model (Ω-independent by construction):
// Constant → (cos ω₀t, −i sin ω₀t); Rabi → rotating_drive_pair(0, ω₀, ν₀, t);
// Lmsz → (cos[√(χ/2)(τ−τ_i)], −i sin[√(χ/2)(τ−τ_i)]), anchored at the
// window start.  Throws UnsupportedVariantError for Tabulated (no closed
// form; use block_evolution, which integrates numerically).
AmplitudePair standard_scenario_pair(const Scenario& s, double t);

// Normalized harmonic-oscillator eigenfunctions ψ_0…ψ_nmax at position x for
// length scale x0, by the stable normalized three-term recurrence
//   ψ_{n+1} = √(2/(n+1))·(x/x0)·ψ_n − √(n/(n+1))·ψ_{n−1},
// seeded with ψ_0 = π^{−1/4} x0^{−1/2} e^{−x²/2x0²}.
// Preconditions: x0 > 0 (ParameterError), nmax ≤ 60 (RangeError).
std::vector<double> oscillator_wavefunctions(int nmax, double x, double x0);

// Single-subspace coordinate-representation propagation amplitude
//   K = Σ_{n,m=0}^{N} ψ_n(x1′)ψ_{N−n}(x2′) ⟨n,N−n|V_N(t)|m,N−m⟩ ψ_m(x1)ψ_{N−m}(x2)
// with mode length scales x01, x02.  At t = 0 this is the projection kernel
// onto the N-excitation subspace.
// Preconditions: 1 ≤ N (ParameterError), N ≤ 60 (RangeError), x01, x02 > 0.
Complex coordinate_kernel(ModelKind kind, const Scenario& s, int N, double t,
                          double x1p, double x2p, double x1, double x2,
                          double x01, double x02, double tol = 1e-12);

}  // namespace oscamp
