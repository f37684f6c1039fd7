#ifndef COORDCYCLE_GAME_HPP_
#define COORDCYCLE_GAME_HPP_

#include <Eigen/Dense>

#include <utility>

#include "coordcycle/errors.hpp"

namespace coordcycle {

// Symmetric 2x2 game
//
//          L   R
//     L  [ a   b ]
//     R  [ c   d ]
//
// Row player payoffs; stored as four independent entries so that the
// alignment is always recomputed from the current payoffs.
template <typename Scalar>
using PayoffMatrix = Eigen::Matrix<Scalar, 2, 2>;

using PayoffMatrixd = PayoffMatrix<double>;

template <typename Scalar>
PayoffMatrix<Scalar> make_payoff_matrix(Scalar a, Scalar b, Scalar c,
                                        Scalar d) {
  PayoffMatrix<Scalar> m;
  m << a, b, c, d;
  return m;
}

template <typename Derived>
typename Derived::Scalar payoff_a(const Eigen::MatrixBase<Derived> &m) {
  return m(0, 0);
}
template <typename Derived>
typename Derived::Scalar payoff_b(const Eigen::MatrixBase<Derived> &m) {
  return m(0, 1);
}
template <typename Derived>
typename Derived::Scalar payoff_c(const Eigen::MatrixBase<Derived> &m) {
  return m(1, 0);
}
template <typename Derived>
typename Derived::Scalar payoff_d(const Eigen::MatrixBase<Derived> &m) {
  return m(1, 1);
}

// Population state x (share playing Left) and indifference state y.
template <typename Scalar>
struct JointState {
  Scalar x{};
  Scalar y{};

  friend bool operator==(const JointState &, const JointState &) = default;
};

using JointStated = JointState<double>;

// Parameters of the payoff-adjustment law and of the logit choice rule.
struct ModelParams {
  double r = 0.1;      // payoff speed relative to strategy revision
  double k = 0.6;      // depletion split
  double x_hat = 0.1;  // capacity rate, 0 < x_hat < min(k, 1 - k)
  double eta = 1.0;    // logit noise level
  double s = 1.0;      // alignment

  friend bool operator==(const ModelParams &, const ModelParams &) = default;
};

// Throws ConfigError naming the first violated constraint.
void validate(const ModelParams &p);

template <typename Derived>
typename Derived::Scalar alignment(const Eigen::MatrixBase<Derived> &m) {
  return payoff_a(m) - payoff_b(m) - payoff_c(m) + payoff_d(m);
}

// Population state at which both strategies earn the same payoff. Leaves
// [0, 1] once one strategy becomes dominant.
template <typename Derived>
typename Derived::Scalar indifference_state(
    const Eigen::MatrixBase<Derived> &m) {
  const auto s = alignment(m);
  if (s == typename Derived::Scalar(0)) {
    throw ZeroAlignment("indifference state undefined: alignment is zero");
  }
  return (payoff_d(m) - payoff_b(m)) / s;
}

// Expected payoffs (f_L, f_R) to a random match at population state x.
template <typename Derived>
std::pair<typename Derived::Scalar, typename Derived::Scalar> payoffs(
    const Eigen::MatrixBase<Derived> &m, typename Derived::Scalar x) {
  using Scalar = typename Derived::Scalar;
  if (!(x >= Scalar(0) && x <= Scalar(1))) {
    throw DomainError("population state must lie in [0, 1]");
  }
  const Scalar f_left = payoff_a(m) * x + payoff_b(m) * (Scalar(1) - x);
  const Scalar f_right = payoff_c(m) * x + payoff_d(m) * (Scalar(1) - x);
  return {f_left, f_right};
}

// f_L - f_R written in reduced coordinates.
template <typename Scalar>
Scalar payoff_difference(Scalar s, const JointState<Scalar> &state) {
  return s * (state.x - state.y);
}

// Rate of change of the payoff matrix. Both entries of a row move together,
// so the implied alignment rate is identically zero.
template <typename Derived>
PayoffMatrix<typename Derived::Scalar> payoff_adjustment(
    const Eigen::MatrixBase<Derived> & /*m*/, const ModelParams &p,
    typename Derived::Scalar x) {
  using Scalar = typename Derived::Scalar;
  const Scalar r(p.r), k(p.k), x_hat(p.x_hat);
  const Scalar left = r * (x_hat - (Scalar(1) - k) * x);
  const Scalar right = r * (x_hat - k * (Scalar(1) - x));
  return make_payoff_matrix(left, left, right, right);
}

// Law of motion of the indifference state.
template <typename Scalar>
Scalar y_dot(const ModelParams &p, Scalar x) {
  return Scalar(p.r) / Scalar(p.s) * (x - Scalar(p.k));
}

}  // namespace coordcycle

#endif  // COORDCYCLE_GAME_HPP_
