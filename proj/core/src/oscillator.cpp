// oscillator.cpp — model dispatch, subspace blocks, and coordinate kernels
#include "oscamp/oscillator.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace oscamp {

EffectiveParams spin_hamiltonian_params(ModelKind kind, double Omega,
                                        Complex omega) {
  if (kind == ModelKind::Amplifier) {
    return {Omega, omega, 0.0};
  }
  return {0.0, omega, 0.5 * Omega};
}

PairEvaluator::PairEvaluator(const Scenario& s, ModelKind kind, double tol)
    : scenario_(s), kind_(kind), tol_(tol), anchor_(anchor_time(s)) {
  if (!(tol >= 1e-13 && tol <= 1e-4)) {
    throw ParameterError("PairEvaluator: tol must lie in [1e-13, 1e-4]");
  }
  if (s.holds<Tabulated>()) {
    const auto& tab = s.get<Tabulated>();
    numeric_.emplace(s, tab.t.front(), tab.t.back(), tol,
                     /*omega_only=*/kind == ModelKind::Standard);
  } else if (s.holds<Lmsz>() && kind == ModelKind::Amplifier) {
    const auto& l = s.get<Lmsz>();
    lmsz_.emplace(l.gamma, l.omega0, l.tau_i);
  }
}

AmplitudePair PairEvaluator::at(double t) const {
  if (numeric_) {
    return numeric_->at(t);
  }
  if (kind_ == ModelKind::Standard) {
    return standard_scenario_pair(scenario_, t);
  }
  if (scenario_.holds<Constant>()) {
    const auto& c = scenario_.get<Constant>();
    return solve_constant(c.Omega0, c.omega0, t);
  }
  if (scenario_.holds<Rabi>()) {
    const auto& r = scenario_.get<Rabi>();
    return rotating_drive_pair(r.Omega0, r.omega0, r.nu0, t);
  }
  return lmsz_->at(t);
}

BlockEvolution block_evolution(ModelKind kind, const Scenario& s, int N,
                               double t, const PairEvaluator& pairs) {
  if (N < 1) {
    throw ParameterError("block_evolution: N must be at least 1");
  }
  if (pairs.kind() != kind) {
    throw ParameterError(
        "block_evolution: evaluator was built for the other model");
  }
  SpinPropagator sp = spin_propagator(N, pairs.at(t));
  Complex phase{1.0, 0.0};
  if (kind == ModelKind::Standard) {
    phase = std::exp(Complex{0.0, -0.5 * N * integral_Omega(s, t)});
  }
  return {N, std::move(sp.matrix), phase};
}

BlockEvolution block_evolution(ModelKind kind, const Scenario& s, int N,
                               double t, double tol) {
  const PairEvaluator pairs(s, kind, tol);
  return block_evolution(kind, s, N, t, pairs);
}

AmplitudePair standard_scenario_pair(const Scenario& s, double t) {
  if (s.holds<Constant>()) {
    return solve_constant(0.0, s.get<Constant>().omega0, t);
  }
  if (s.holds<Rabi>()) {
    const auto& r = s.get<Rabi>();
    return rotating_drive_pair(0.0, r.omega0, r.nu0, t);
  }
  if (s.holds<Lmsz>()) {
    const auto& l = s.get<Lmsz>();
    const double arg = l.omega0 * (t - l.t_i());
    return {Complex{std::cos(arg), 0.0}, Complex{0.0, -std::sin(arg)}, t};
  }
  throw UnsupportedVariantError(
      "standard_scenario_pair: no closed form for tabulated drives");
}

std::vector<double> oscillator_wavefunctions(int nmax, double x, double x0) {
  if (nmax < 0) {
    throw ParameterError("oscillator_wavefunctions: nmax must be nonnegative");
  }
  if (nmax > 60) {
    throw RangeError("oscillator_wavefunctions: nmax capped at 60, got " +
                     std::to_string(nmax));
  }
  if (!(x0 > 0.0) || !std::isfinite(x0) || !std::isfinite(x)) {
    throw ParameterError(
        "oscillator_wavefunctions: x must be finite and x0 positive");
  }
  const double u = x / x0;
  std::vector<double> psi(static_cast<std::size_t>(nmax) + 1);
  psi[0] = std::pow(std::numbers::pi, -0.25) / std::sqrt(x0) *
           std::exp(-0.5 * u * u);
  if (nmax >= 1) {
    psi[1] = std::numbers::sqrt2 * u * psi[0];
  }
  for (int n = 1; n < nmax; ++n) {
    psi[static_cast<std::size_t>(n) + 1] =
        std::sqrt(2.0 / (n + 1)) * u * psi[static_cast<std::size_t>(n)] -
        std::sqrt(static_cast<double>(n) / (n + 1)) *
            psi[static_cast<std::size_t>(n) - 1];
  }
  return psi;
}

Complex coordinate_kernel(ModelKind kind, const Scenario& s, int N, double t,
                          double x1p, double x2p, double x1, double x2,
                          double x01, double x02, double tol) {
  if (N < 1) {
    throw ParameterError("coordinate_kernel: N must be at least 1");
  }
  if (N > 60) {
    throw RangeError("coordinate_kernel: N capped at 60, got " +
                     std::to_string(N));
  }
  const Eigen::MatrixXcd V = block_evolution(kind, s, N, t, tol).full();
  const std::vector<double> psi1p = oscillator_wavefunctions(N, x1p, x01);
  const std::vector<double> psi2p = oscillator_wavefunctions(N, x2p, x02);
  const std::vector<double> psi1 = oscillator_wavefunctions(N, x1, x01);
  const std::vector<double> psi2 = oscillator_wavefunctions(N, x2, x02);
  // Basis index i encodes |n, N−n⟩ with n = N−i, so mode 1 carries ψ_{N−i}
  // and mode 2 carries ψ_i.
  Complex k{0.0, 0.0};
  for (int i = 0; i <= N; ++i) {
    Complex row{0.0, 0.0};
    for (int j = 0; j <= N; ++j) {
      row += V(i, j) * psi1[static_cast<std::size_t>(N - j)] *
             psi2[static_cast<std::size_t>(j)];
    }
    k += psi1p[static_cast<std::size_t>(N - i)] *
         psi2p[static_cast<std::size_t>(i)] * row;
  }
  return k;
}

}  // namespace oscamp
