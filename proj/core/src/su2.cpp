// su2.cpp — pair dynamics and the spin-s propagator
#include "oscamp/su2.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "oscamp/specfun.hpp"

namespace oscamp {

namespace {

// RHS of the pair ODE in real components y = (Re a, Im a, Re b, Im b):
//   ȧ = −i(Ω/2)a + iω b*,  ḃ = −iω a* − i(Ω/2)b.
OdeRhs pair_rhs(Scenario s, bool omega_only) {
  return [s = std::move(s), omega_only](double t, const Eigen::VectorXd& y,
                                        Eigen::VectorXd& dy) {
    const DriveValues dv = evaluate(s, t);
    const double Om = omega_only ? 0.0 : dv.Omega;
    const double wr = dv.omega.real();
    const double wi = dv.omega.imag();
    const double ar = y[0], ai = y[1], br = y[2], bi = y[3];
    dy[0] = 0.5 * Om * ai - wi * br + wr * bi;
    dy[1] = -0.5 * Om * ar + wr * br + wi * bi;
    dy[2] = wi * ar - wr * ai + 0.5 * Om * bi;
    dy[3] = -(wr * ar + wi * ai) - 0.5 * Om * br;
  };
}

AmplitudePair pair_from_state(const Eigen::VectorXd& y, double t) {
  return {Complex{y[0], y[1]}, Complex{y[2], y[3]}, t};
}

// e^{−iπ/4}, the ray on which all cylinder-function arguments lie.
const Complex kCylRay{std::numbers::sqrt2 / 2.0, -std::numbers::sqrt2 / 2.0};

std::vector<Complex> power_table(Complex z, int nmax) {
  std::vector<Complex> p(static_cast<std::size_t>(nmax) + 1);
  p[0] = Complex{1.0, 0.0};  // 0^0 = 1 by the empty-product convention
  for (int k = 1; k <= nmax; ++k) {
    p[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(k - 1)] * z;
  }
  return p;
}

}  // namespace

double norm_defect(const AmplitudePair& p) {
  return std::abs(std::norm(p.a) + std::norm(p.b) - 1.0);
}

Eigen::Matrix2cd pair_matrix(const AmplitudePair& p) {
  Eigen::Matrix2cd u;
  u << p.a, p.b, -std::conj(p.b), std::conj(p.a);
  return u;
}

PairSolution::PairSolution(const Scenario& s, double t_start, double t_end,
                           double tol, bool omega_only)
    : sol_(integrate_rk54(pair_rhs(s, omega_only),
                          (Eigen::VectorXd(4) << 1.0, 0.0, 0.0, 0.0).finished(),
                          t_start, t_end, tol)) {
  for (double t : sol_.step_times()) {
    max_norm_defect_ =
        std::max(max_norm_defect_, norm_defect(pair_from_state(sol_.at(t), t)));
  }
}

AmplitudePair PairSolution::at(double t) const {
  return pair_from_state(sol_.at(t), t);
}

PairSolution solve_numeric(const Scenario& s, double t_start, double t_end,
                           double tol) {
  if (!(t_end > t_start)) {
    throw ParameterError("solve_numeric requires t_end > t_start");
  }
  return PairSolution(s, t_start, t_end, tol);
}

AmplitudePair solve_constant(double Omega0, double omega0, double t) {
  const double nu = std::hypot(0.5 * Omega0, omega0);
  if (nu == 0.0) {
    return {Complex{1.0, 0.0}, Complex{0.0, 0.0}, t};
  }
  const double cs = std::cos(nu * t);
  const double sn = std::sin(nu * t);
  return {Complex{cs, -0.5 * Omega0 / nu * sn}, Complex{0.0, -omega0 / nu * sn},
          t};
}

AmplitudePair rotating_drive_pair(double Omega0, double omega0, double nu0,
                                  double t) {
  const double dOm = Omega0 - nu0;
  const double nut = std::hypot(0.5 * dOm, omega0);
  const Complex frame = std::exp(Complex{0.0, -0.5 * nu0 * t});
  if (nut == 0.0) {
    return {frame, Complex{0.0, 0.0}, t};
  }
  const double cs = std::cos(nut * t);
  const double sn = std::sin(nut * t);
  return {frame * Complex{cs, -0.5 * dOm / nut * sn},
          frame * Complex{0.0, -omega0 / nut * sn}, t};
}

AmplitudePair solve_rabi(double Omega0, double omega0, double nu0, double t) {
  if (!(Omega0 > 0.0)) {
    throw ParameterError("solve_rabi requires Omega0 > 0");
  }
  return rotating_drive_pair(Omega0, omega0, nu0, t);
}

LmszPair::LmszPair(double gamma, double omega0, double tau_i)
    : gamma_(gamma), omega0_(omega0), tau_i_(tau_i) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw ParameterError("LmszPair: gamma must be positive and finite");
  }
  if (!(omega0 >= 0.0) || !std::isfinite(omega0)) {
    throw ParameterError("LmszPair: omega0 must be nonnegative and finite");
  }
  if (!std::isfinite(tau_i)) {
    throw ParameterError("LmszPair: tau_i must be finite");
  }
  lambda_ = omega0 * omega0 / gamma;
  if (lambda_ > 0.0) {
    prefactor_ = gamma_complex(Complex{1.0, -lambda_}) /
                 std::sqrt(2.0 * std::numbers::pi);
    const Complex order{0.0, lambda_};
    d_at_minus_ti_ = pcf_d(order, -kCylRay * tau_i_);
    d_at_plus_ti_ = pcf_d(order, kCylRay * tau_i_);
  }
}

AmplitudePair LmszPair::at_tau(double tau) const {
  if (!(tau >= tau_i_ - 1e-12)) {
    throw ParameterError("LmszPair evaluated below the anchor tau_i");
  }
  const double t = tau / std::sqrt(gamma_);
  if (lambda_ == 0.0) {
    // Uncoupled sweep: ȧ = −i(γt/2)a integrates to a quadratic phase.
    const double phase = -0.25 * (tau * tau - tau_i_ * tau_i_);
    return {std::exp(Complex{0.0, phase}), Complex{0.0, 0.0}, t};
  }
  const Complex order_a{-1.0, lambda_};
  const Complex order_b{0.0, lambda_};
  const Complex zp = kCylRay * tau;
  const Complex zm = -zp;
  const Complex a =
      prefactor_ * (d_at_minus_ti_ * pcf_d(order_a, zp) +
                    d_at_plus_ti_ * pcf_d(order_a, zm));
  const Complex bbar =
      prefactor_ * (kCylRay / (kImag * std::sqrt(lambda_))) *
      (-d_at_minus_ti_ * pcf_d(order_b, zp) +
       d_at_plus_ti_ * pcf_d(order_b, zm));
  return {a, std::conj(bbar), t};
}

AmplitudePair LmszPair::at(double t) const {
  return at_tau(std::sqrt(gamma_) * t);
}

AmplitudePair solve_lmsz(double gamma, double omega0, double tau_i,
                         double tau) {
  return LmszPair(gamma, omega0, tau_i).at_tau(tau);
}

SpinPropagator spin_propagator(int two_s, const AmplitudePair& p) {
  if (two_s < 0) {
    throw ParameterError("spin_propagator: two_s must be nonnegative");
  }
  const double defect = norm_defect(p);
  if (!(defect <= 1e-6)) {
    throw ParameterError("spin_propagator: pair norm defect " +
                         std::to_string(defect) + " exceeds 1e-6");
  }
  const int dim = two_s + 1;
  const auto pow_a = power_table(p.a, two_s);
  const auto pow_ac = power_table(std::conj(p.a), two_s);
  const auto pow_b = power_table(p.b, two_s);
  const auto pow_bc = power_table(std::conj(p.b), two_s);

  // Row i carries m = s − i, column j carries m′ = s − j, so the factorial
  // arguments are s+m = 2s−i, s−m = i, s+m′ = 2s−j, s−m′ = j and the μ-range
  // is [max(0, i−j), min(2s−j, i)].
  Eigen::MatrixXcd U(dim, dim);
  const bool exact = two_s <= 20;
  std::array<long double, 21> fact{};
  std::vector<double> log_fact;
  if (exact) {
    fact[0] = 1.0L;
    for (int k = 1; k <= 20; ++k) {
      fact[static_cast<std::size_t>(k)] =
          fact[static_cast<std::size_t>(k - 1)] * k;
    }
  } else {
    log_fact.resize(static_cast<std::size_t>(two_s) + 1);
    for (int k = 0; k <= two_s; ++k) {
      log_fact[static_cast<std::size_t>(k)] = std::lgamma(k + 1.0);
    }
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const int mu_lo = std::max(0, i - j);
      const int mu_hi = std::min(two_s - j, i);
      Complex sum{0.0, 0.0};
      for (int mu = mu_lo; mu <= mu_hi; ++mu) {
        double coeff;
        if (exact) {
          const long double num = sqrtl(fact[two_s - i] * fact[i] *
                                        fact[two_s - j] * fact[j]);
          const long double den = fact[mu] * fact[two_s - j - mu] *
                                  fact[i - mu] * fact[j - i + mu];
          coeff = static_cast<double>(num / den);
        } else {
          const double half_num = 0.5 * (log_fact[two_s - i] + log_fact[i] +
                                         log_fact[two_s - j] + log_fact[j]);
          coeff = std::exp(half_num - log_fact[mu] - log_fact[two_s - j - mu] -
                           log_fact[i - mu] - log_fact[j - i + mu]);
        }
        if (mu % 2 != 0) coeff = -coeff;
        sum += coeff * pow_a[two_s - j - mu] * pow_ac[i - mu] *
               pow_b[j - i + mu] * pow_bc[mu];
      }
      U(i, j) = sum;
    }
  }
  return {two_s, std::move(U)};
}

double unitarity_defect(const Eigen::MatrixXcd& U) {
  if (U.size() == 0) return 0.0;
  const Eigen::MatrixXcd g =
      U.adjoint() * U -
      Eigen::MatrixXcd::Identity(U.rows(), U.cols());
  return g.cwiseAbs().maxCoeff();
}

}  // namespace oscamp
