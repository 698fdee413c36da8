// observables.cpp — operator matrices, matrix-pathway expectations, traces
#include "oscamp/observables.hpp"

#include <cmath>
#include <string>

namespace oscamp {

namespace {

void require_subspace(int N, const char* who) {
  if (N < 1) {
    throw ParameterError(std::string(who) + ": N must be at least 1");
  }
}

}  // namespace

SubspaceState noon_state(const NoonSpec& spec) {
  require_subspace(spec.N, "noon_state");
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(spec.N + 1);
  amp(0) = Complex{std::cos(spec.theta), 0.0};
  amp(spec.N) = std::exp(Complex{0.0, spec.phi}) * std::sin(spec.theta);
  return {spec.N, std::move(amp)};
}

Eigen::MatrixXcd sz_matrix(int N) {
  require_subspace(N, "sz_matrix");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(N + 1, N + 1);
  for (int i = 0; i <= N; ++i) {
    m(i, i) = Complex{0.5 * N - i, 0.0};
  }
  return m;
}

Eigen::MatrixXcd exchange_matrix(int N) {
  require_subspace(N, "exchange_matrix");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(N + 1, N + 1);
  // αβ†|n, N−n⟩ = √(n(N−n+1))|n−1, N−n+1⟩: row i+1, column i carries
  // √((N−i)(i+1)) with n = N−i.
  for (int i = 0; i < N; ++i) {
    m(i + 1, i) = Complex{std::sqrt(double(N - i) * (i + 1)), 0.0};
  }
  return m;
}

Eigen::MatrixXcd hamiltonian_matrix(ModelKind kind, int N,
                                    const DriveValues& drive) {
  require_subspace(N, "hamiltonian_matrix");
  const Eigen::MatrixXcd lower = exchange_matrix(N);
  Eigen::MatrixXcd h = drive.omega * lower.adjoint() +
                       std::conj(drive.omega) * lower;
  if (kind == ModelKind::Amplifier) {
    h += drive.Omega * sz_matrix(N);
  } else {
    h += 0.5 * N * drive.Omega *
         Eigen::MatrixXcd::Identity(N + 1, N + 1);
  }
  return h;
}

Eigen::MatrixXcd observable_matrix(Observable op, ModelKind kind, int N,
                                   const DriveValues& drive) {
  switch (op) {
    case Observable::Sz:
      return sz_matrix(N);
    case Observable::AlphaBetaDag:
      return exchange_matrix(N);
    case Observable::AlphaDagBeta:
      return exchange_matrix(N).adjoint();
    case Observable::SzSquared: {
      const Eigen::MatrixXcd sz = sz_matrix(N);
      return sz * sz;
    }
    case Observable::AlphaBetaDagSquared: {
      const Eigen::MatrixXcd ex = exchange_matrix(N);
      return ex * ex;
    }
    case Observable::AlphaDagBetaSquared: {
      const Eigen::MatrixXcd raise = exchange_matrix(N).adjoint();
      return raise * raise;
    }
    case Observable::Energy:
      return hamiltonian_matrix(kind, N, drive);
  }
  throw ParameterError("observable_matrix: unknown observable");
}

Complex expectation(ModelKind kind, const Scenario& s,
                    const SubspaceState& state0, Observable op, double t,
                    double tol) {
  require_subspace(state0.N, "expectation");
  if (state0.amplitudes.size() != state0.N + 1) {
    throw ParameterError("expectation: state length must be N + 1");
  }
  const Eigen::MatrixXcd V = block_evolution(kind, s, state0.N, t, tol).full();
  const Eigen::VectorXcd psi = V * state0.amplitudes;
  const Eigen::MatrixXcd M = observable_matrix(op, kind, state0.N,
                                               evaluate(s, t));
  return psi.dot(M * psi);
}

Complex noon_expectation_closed_form(Observable op, const NoonSpec& spec,
                                     const AmplitudePair& p,
                                     const DriveValues& drive) {
  require_subspace(spec.N, "noon_expectation_closed_form");
  const int N = spec.N;
  const Complex a = p.a;
  const Complex b = p.b;
  const double c2 = std::cos(2.0 * spec.theta);
  const double s2 = std::sin(2.0 * spec.theta);
  const Complex em_phi = std::exp(Complex{0.0, -spec.phi});
  const Complex ep_phi = std::exp(Complex{0.0, spec.phi});
  switch (op) {
    case Observable::Sz: {
      double v = 0.5 * N * (std::norm(a) - std::norm(b)) * c2;
      if (N == 1) {
        v += (a * std::conj(b) * em_phi).real() * s2;
      }
      return Complex{v, 0.0};
    }
    case Observable::AlphaBetaDag: {
      Complex v = -double(N) * a * b * c2;
      if (N == 1) {
        v += 0.5 * (a * a * em_phi - b * b * ep_phi) * s2;
      }
      return v;
    }
    case Observable::AlphaDagBeta:
      return std::conj(
          noon_expectation_closed_form(Observable::AlphaBetaDag, spec, p));
    case Observable::SzSquared: {
      if (N != 2) {
        throw ParameterError(
            "noon_expectation_closed_form: SzSquared quoted only for N = 2");
      }
      const Complex abc = a * std::conj(b);
      const double v = std::norm(a) * std::norm(a) +
                       std::norm(b) * std::norm(b) +
                       2.0 * (abc * abc * em_phi).real() * s2;
      return Complex{v, 0.0};
    }
    case Observable::AlphaBetaDagSquared: {
      if (N != 2) {
        throw ParameterError(
            "noon_expectation_closed_form: AlphaBetaDagSquared quoted only "
            "for N = 2");
      }
      const double cs = std::cos(spec.theta) * std::sin(spec.theta);
      return 0.5 * ((a * a * a * a * em_phi + b * b * b * b * ep_phi) * cs +
                    a * a * b * b);
    }
    case Observable::AlphaDagBetaSquared:
      return std::conj(noon_expectation_closed_form(
          Observable::AlphaBetaDagSquared, spec, p));
    case Observable::Energy: {
      const Complex sz =
          noon_expectation_closed_form(Observable::Sz, spec, p);
      const Complex ex =
          noon_expectation_closed_form(Observable::AlphaBetaDag, spec, p);
      const double v = drive.Omega * sz.real() +
                       2.0 * (std::conj(drive.omega) * ex).real();
      return Complex{v, 0.0};
    }
  }
  throw ParameterError("noon_expectation_closed_form: unknown observable");
}

std::vector<double> TimeGrid::points() const {
  if (n < 1) {
    throw ParameterError("TimeGrid: n must be at least 1");
  }
  if (!std::isfinite(t_start) || !std::isfinite(t_end)) {
    throw ParameterError("TimeGrid: endpoints must be finite");
  }
  std::vector<double> ts(static_cast<std::size_t>(n));
  if (n == 1) {
    ts[0] = t_start;
    return ts;
  }
  const double h = (t_end - t_start) / (n - 1);
  for (int k = 0; k < n; ++k) {
    ts[static_cast<std::size_t>(k)] = t_start + k * h;
  }
  ts.back() = t_end;  // exact endpoint regardless of roundoff
  return ts;
}

ObservableTrace energy_trace(ModelKind kind, const Scenario& s,
                             const NoonSpec& spec, const TimeGrid& grid,
                             double tol) {
  const SubspaceState state0 = noon_state(spec);
  const PairEvaluator pairs(s, kind, tol);
  ObservableTrace tr;
  tr.label = "energy";
  tr.t = grid.points();
  tr.value.reserve(tr.t.size());
  for (double t : tr.t) {
    const Eigen::MatrixXcd V =
        block_evolution(kind, s, state0.N, t, pairs).full();
    const Eigen::VectorXcd psi = V * state0.amplitudes;
    const Eigen::MatrixXcd H =
        hamiltonian_matrix(kind, state0.N, evaluate(s, t));
    tr.value.push_back(psi.dot(H * psi).real());
  }
  return tr;
}

double transition_probability(ModelKind kind, const Scenario& s, int N,
                              double t, double tol) {
  require_subspace(N, "transition_probability");
  return std::norm(block_evolution(kind, s, N, t, tol).matrix(N, 0));
}

ObservableTrace transition_trace(ModelKind kind, const Scenario& s, int N,
                                 const TimeGrid& grid, double tol) {
  require_subspace(N, "transition_trace");
  const PairEvaluator pairs(s, kind, tol);
  ObservableTrace tr;
  tr.label = "transition_probability";
  tr.t = grid.points();
  tr.value.reserve(tr.t.size());
  for (double t : tr.t) {
    tr.value.push_back(
        std::norm(block_evolution(kind, s, N, t, pairs).matrix(N, 0)));
  }
  return tr;
}

}  // namespace oscamp
