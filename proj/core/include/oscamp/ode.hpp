// ode.hpp — adaptive embedded Runge-Kutta 5(4) integrator with dense output
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "oscamp/errors.hpp"

namespace oscamp {

// Right-hand side of y′ = f(t, y); writes the derivative into `dydt`
// (already sized like `y`).
using OdeRhs =
    std::function<void(double t, const Eigen::VectorXd& y, Eigen::VectorXd& dydt)>;

// Continuously differentiable interpolant of an accepted integration,
// valid on the closed span between t_start and t_end (either direction).
// Immutable after construction; safe to sample concurrently.
class DenseSolution {
 public:
  double t_start() const { return t_start_; }
  double t_end() const { return t_end_; }
  std::size_t step_count() const { return segments_.size(); }
  const Eigen::VectorXd& final_state() const { return y_end_; }

  // Accepted-step boundary times (t_start, each interior step, t_end).
  std::vector<double> step_times() const;

  // State at time t.  Throws RangeError outside the integration span
  // (beyond a small roundoff allowance).
  Eigen::VectorXd at(double t) const;

 private:
  friend DenseSolution integrate_rk54(const OdeRhs& f, Eigen::VectorXd y0,
                                      double t_start, double t_end, double tol);

  // One accepted step [t0, t0+h] with its quartic interpolation polynomial:
  // y(t0+θh) = r1 + θ(r2 + (1−θ)(r3 + θ(r4 + (1−θ)r5))).
  struct Segment {
    double t0{0.0};
    double h{0.0};
    Eigen::VectorXd r1, r2, r3, r4, r5;
  };

  std::vector<Segment> segments_;
  Eigen::VectorXd y_end_;
  double t_start_{0.0};
  double t_end_{0.0};
};

// Integrates y′ = f(t, y) from t_start to t_end (t_end < t_start integrates
// backwards) with the Dormand-Prince 5(4) pair, FSAL, PI-free standard step
// control, and a free quartic interpolant on every accepted step.  `tol` is
// used as both the absolute and relative local error tolerance and must lie
// in [1e−13, 1e−4] (ParameterError otherwise; also thrown when
// t_start == t_end or inputs are not finite).  Step-size underflow or
// exceeding the internal step cap throws StiffnessError.
DenseSolution integrate_rk54(const OdeRhs& f, Eigen::VectorXd y0,
                             double t_start, double t_end, double tol);

}  // namespace oscamp
