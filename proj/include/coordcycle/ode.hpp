#ifndef COORDCYCLE_ODE_HPP_
#define COORDCYCLE_ODE_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <utility>

#include "coordcycle/errors.hpp"

namespace coordcycle::ode {

template <int N>
using Vector = Eigen::Matrix<double, N, 1>;

// Continuous extension of one Dormand-Prince step (Hairer's dopri5 form).
template <int N>
struct DenseStep {
  double t0 = 0.0;
  double h = 0.0;
  Vector<N> r1, r2, r3, r4, r5;

  Vector<N> operator()(double t) const {
    const double theta = (t - t0) / h;
    const double theta1 = 1.0 - theta;
    return r1 +
           theta * (r2 + theta1 * (r3 + theta * (r4 + theta1 * r5)));
  }
};

template <int N>
struct StepResult {
  Vector<N> next;
  Vector<N> error;
  DenseStep<N> dense;
};

namespace dp {
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                        c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                        a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113,
                        a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                        a76 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                        e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;
inline constexpr double d1 = -12715105075.0 / 11282082432.0,
                        d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0,
                        d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0,
                        d7 = 69997945.0 / 29380423.0;
}  // namespace dp

// One explicit Dormand-Prince 5(4) step of an autonomous system.
template <int N, typename Rhs>
StepResult<N> dormand_prince_step(const Rhs &f, double t, const Vector<N> &u,
                                  double h) {
  using namespace dp;
  const Vector<N> k1 = f(u);
  const Vector<N> k2 = f(Vector<N>(u + h * a21 * k1));
  const Vector<N> k3 = f(Vector<N>(u + h * (a31 * k1 + a32 * k2)));
  const Vector<N> k4 = f(Vector<N>(u + h * (a41 * k1 + a42 * k2 + a43 * k3)));
  const Vector<N> k5 = f(
      Vector<N>(u + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
  const Vector<N> k6 = f(Vector<N>(
      u + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
  StepResult<N> out;
  out.next = u + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
  const Vector<N> k7 = f(out.next);
  out.error =
      h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

  DenseStep<N> &d = out.dense;
  d.t0 = t;
  d.h = h;
  d.r1 = u;
  d.r2 = out.next - u;
  d.r3 = h * k1 - d.r2;
  d.r4 = d.r2 - h * k7 - d.r3;
  d.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
  return out;
}

// Classic fourth-order Runge-Kutta step; used by the fixed-step reference.
template <int N, typename Rhs>
Vector<N> rk4_step(const Rhs &f, const Vector<N> &u, double h) {
  const Vector<N> k1 = f(u);
  const Vector<N> k2 = f(Vector<N>(u + 0.5 * h * k1));
  const Vector<N> k3 = f(Vector<N>(u + 0.5 * h * k2));
  const Vector<N> k4 = f(Vector<N>(u + h * k3));
  return u + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct StepControl {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double max_step = 1.0;
  double min_step = 1e-14;
};

template <int N>
struct AcceptedStep {
  double t0 = 0.0;
  double t1 = 0.0;
  Vector<N> u0;
  Vector<N> u1;
  DenseStep<N> dense;
};

// Adaptive driver: each advance() returns one accepted step. The caller may
// replace the current point with reset() (clamping, event restarts).
template <int N>
class AdaptiveStepper {
 public:
  AdaptiveStepper(StepControl control, double t0, const Vector<N> &u0)
      : control_(control), t_(t0), u_(u0) {}

  double t() const { return t_; }
  const Vector<N> &u() const { return u_; }

  void reset(double t, const Vector<N> &u) {
    t_ = t;
    u_ = u;
  }

  template <typename Rhs>
  AcceptedStep<N> advance(const Rhs &f, double t_end) {
    if (h_ <= 0.0) h_ = initial_step(f);
    for (;;) {
      double h = std::min(h_, control_.max_step);
      bool last = false;
      if (t_ + h >= t_end) {
        h = t_end - t_;
        last = true;
      }
      StepResult<N> step = dormand_prince_step<N>(f, t_, u_, h);
      const double err = error_norm(step);
      if (!std::isfinite(err)) {
        h_ = 0.25 * h;
      } else if (err <= 1.0) {
        const double grow =
            err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        AcceptedStep<N> accepted{t_, last ? t_end : t_ + h, u_, step.next,
                                 step.dense};
        // Keep the controller's proposal when the step was shortened to land
        // on t_end.
        if (!last) h_ = h * grow;
        t_ = accepted.t1;
        u_ = accepted.u1;
        return accepted;
      } else {
        h_ = h * std::max(0.2, 0.9 * std::pow(err, -0.2));
      }
      if (h_ < control_.min_step) {
        throw InternalError("adaptive step size underflow");
      }
    }
  }

 private:
  double scale(double a, double b) const {
    return control_.abs_tol +
           control_.rel_tol * std::max(std::abs(a), std::abs(b));
  }

  double error_norm(const StepResult<N> &step) const {
    double norm = 0.0;
    for (Eigen::Index i = 0; i < u_.size(); ++i) {
      norm = std::max(norm,
                      std::abs(step.error[i]) / scale(u_[i], step.next[i]));
    }
    return norm;
  }

  template <typename Rhs>
  double initial_step(const Rhs &f) const {
    const Vector<N> f0 = f(u_);
    double d0 = 0.0, d1 = 0.0;
    for (Eigen::Index i = 0; i < u_.size(); ++i) {
      const double sc = scale(u_[i], u_[i]);
      d0 = std::max(d0, std::abs(u_[i]) / sc);
      d1 = std::max(d1, std::abs(f0[i]) / sc);
    }
    const double h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    return std::clamp(h, 1e-6, control_.max_step);
  }

  StepControl control_;
  double t_;
  Vector<N> u_;
  double h_ = 0.0;
};

// Root of a scalar function of time inside a sign-changing bracket.
// Illinois-modified regula falsi with a bisection fallback whenever the
// interpolation point leaves the bracket. Stops once |f| < tol or the bracket
// is narrower than tol.
template <typename F>
double locate_event(F &&f, double t_lo, double t_hi, double tol) {
  if (t_lo > t_hi) std::swap(t_lo, t_hi);
  double f_lo = f(t_lo);
  double f_hi = f(t_hi);
  if (f_lo == 0.0) return t_lo;
  if (f_hi == 0.0) return t_hi;
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw BracketError("locate_event: function has equal signs at both ends");
  }
  int last_side = 0;
  for (int iter = 0; iter < 500 && t_hi - t_lo >= tol; ++iter) {
    double t = (t_lo * f_hi - t_hi * f_lo) / (f_hi - f_lo);
    if (!(t > t_lo && t < t_hi)) t = 0.5 * (t_lo + t_hi);
    const double ft = f(t);
    if (std::abs(ft) < tol || ft == 0.0) return t;
    if (std::signbit(ft) == std::signbit(f_hi)) {
      t_hi = t;
      f_hi = ft;
      if (last_side == -1) f_lo *= 0.5;
      last_side = -1;
    } else {
      t_lo = t;
      f_lo = ft;
      if (last_side == 1) f_hi *= 0.5;
      last_side = 1;
    }
  }
  return std::abs(f_lo) <= std::abs(f_hi) ? t_lo : t_hi;
}

}  // namespace coordcycle::ode

#endif  // COORDCYCLE_ODE_HPP_
