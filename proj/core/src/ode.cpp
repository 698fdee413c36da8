// ode.cpp — Dormand-Prince 5(4) with FSAL and a free quartic interpolant
#include "oscamp/ode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace oscamp {

namespace {

// Dormand-Prince tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
// Embedded 4th-order error coefficients (b5 − b4).
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output coefficients of the quartic interpolant.
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

constexpr std::size_t kMaxSteps = 1000000;

// Hairer-style starting step size.
double initial_step(const OdeRhs& f, double t0, const Eigen::VectorXd& y0,
                    const Eigen::VectorXd& f0, double dir, double span,
                    double tol) {
  const auto sc = (tol + tol * y0.array().abs()).matrix().eval();
  const double n = static_cast<double>(y0.size());
  const double d0 = std::sqrt((y0.array() / sc.array()).square().sum() / n);
  const double d1n = std::sqrt((f0.array() / sc.array()).square().sum() / n);
  double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
  h0 = std::min(h0, span);
  Eigen::VectorXd y1 = y0 + dir * h0 * f0;
  Eigen::VectorXd f1(y0.size());
  f(t0 + dir * h0, y1, f1);
  const double d2 =
      std::sqrt(((f1 - f0).array() / sc.array()).square().sum() / n) / h0;
  double h1;
  if (std::max(d1n, d2) <= 1e-15) {
    h1 = std::max(1e-6, h0 * 1e-3);
  } else {
    h1 = std::pow(0.01 / std::max(d1n, d2), 0.2);
  }
  return std::min({100.0 * h0, h1, span});
}

}  // namespace

Eigen::VectorXd DenseSolution::at(double t) const {
  const double lo_t = std::min(t_start_, t_end_);
  const double hi_t = std::max(t_start_, t_end_);
  const double slack = 1e-9 * (hi_t - lo_t) + 1e-300;
  if (t < lo_t - slack || t > hi_t + slack) {
    throw RangeError("DenseSolution sampled at t=" + std::to_string(t) +
                     " outside span [" + std::to_string(t_start_) + ", " +
                     std::to_string(t_end_) + "]");
  }
  // Binary search for the segment containing t (segments are chronological
  // in the direction of integration).
  const double dir = (t_end_ > t_start_) ? 1.0 : -1.0;
  std::size_t lo = 0, hi = segments_.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi + 1) / 2;
    if (dir * (t - segments_[mid].t0) >= 0.0) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  const Segment& seg = segments_[lo];
  const double theta = std::clamp((t - seg.t0) / seg.h, 0.0, 1.0);
  const double omt = 1.0 - theta;
  return seg.r1 +
         theta * (seg.r2 + omt * (seg.r3 + theta * (seg.r4 + omt * seg.r5)));
}

std::vector<double> DenseSolution::step_times() const {
  std::vector<double> times;
  times.reserve(segments_.size() + 1);
  for (const Segment& seg : segments_) times.push_back(seg.t0);
  times.push_back(t_end_);
  return times;
}

DenseSolution integrate_rk54(const OdeRhs& f, Eigen::VectorXd y0,
                             double t_start, double t_end, double tol) {
  if (!(tol >= 1e-13 && tol <= 1e-4)) {
    throw ParameterError("integrate_rk54: tol must lie in [1e-13, 1e-4]");
  }
  if (!std::isfinite(t_start) || !std::isfinite(t_end) || t_start == t_end) {
    throw ParameterError("integrate_rk54: need finite, distinct t_start/t_end");
  }
  if (y0.size() == 0 || !y0.allFinite()) {
    throw ParameterError("integrate_rk54: initial state must be finite, nonempty");
  }

  const double dir = (t_end > t_start) ? 1.0 : -1.0;
  const double span = std::abs(t_end - t_start);
  const auto n = y0.size();

  DenseSolution sol;
  sol.t_start_ = t_start;
  sol.t_end_ = t_end;

  Eigen::VectorXd y = std::move(y0);
  Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  Eigen::VectorXd ytmp(n), y1(n), err(n);
  f(t_start, y, k1);

  double t = t_start;
  double h = initial_step(f, t_start, y, k1, dir, span, tol);
  bool rejected = false;

  while (dir * (t - t_end) < 0.0) {
    if (sol.segments_.size() >= kMaxSteps) {
      throw StiffnessError(
          "integrate_rk54: step cap exceeded before reaching t_end");
    }
    if (h < 1e-14 * span || t + dir * h == t) {
      throw StiffnessError("integrate_rk54: step size underflow at t=" +
                           std::to_string(t));
    }
    if (dir * (t + dir * h - t_end) > 0.0) h = std::abs(t_end - t);
    const double hs = dir * h;

    ytmp = y + hs * (a21 * k1);
    f(t + c2 * hs, ytmp, k2);
    ytmp = y + hs * (a31 * k1 + a32 * k2);
    f(t + c3 * hs, ytmp, k3);
    ytmp = y + hs * (a41 * k1 + a42 * k2 + a43 * k3);
    f(t + c4 * hs, ytmp, k4);
    ytmp = y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    f(t + c5 * hs, ytmp, k5);
    ytmp = y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    f(t + hs, ytmp, k6);
    y1 = y + hs * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    f(t + hs, y1, k7);  // FSAL stage

    err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double err_norm = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double sc =
          tol + tol * std::max(std::abs(y[i]), std::abs(y1[i]));
      const double q = err[i] / sc;
      err_norm += q * q;
    }
    err_norm = std::sqrt(err_norm / static_cast<double>(n));

    if (err_norm <= 1.0) {
      DenseSolution::Segment seg;
      seg.t0 = t;
      seg.h = hs;
      const Eigen::VectorXd ydiff = y1 - y;
      const Eigen::VectorXd bspl = hs * k1 - ydiff;
      seg.r1 = y;
      seg.r2 = ydiff;
      seg.r3 = bspl;
      seg.r4 = ydiff - hs * k7 - bspl;
      seg.r5 = hs * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
      sol.segments_.push_back(std::move(seg));

      t = (dir * (t + hs - t_end) >= 0.0) ? t_end : t + hs;
      y.swap(y1);
      k1.swap(k7);

      double fac = 0.9 * std::pow(err_norm > 0.0 ? err_norm : 1e-10, -0.2);
      fac = std::clamp(fac, 0.2, rejected ? 1.0 : 5.0);
      h = std::min(h * fac, span);
      rejected = false;
    } else {
      const double fac = std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 1.0);
      h *= fac;
      rejected = true;
    }
  }

  sol.y_end_ = y;
  return sol;
}

}  // namespace oscamp
