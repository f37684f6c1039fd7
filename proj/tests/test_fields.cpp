#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "coordcycle/fields.hpp"

using namespace coordcycle;

namespace {

// Values from a 30-digit evaluation.
constexpr double kSigmaMinus06 = 0.35434369377420454709;
constexpr double kSigmaMinus12MinusX = -0.16852478349901764293;

double br_point(const JointStated &s) {
  const auto v = br_xdot(s);
  REQUIRE(v.is_point());
  return v.lo;
}

}  // namespace

TEST_CASE("best response rate") {
  CHECK(br_point({0.8, 0.65}) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(br_point({0.3, 0.7}) == -0.3);
  const auto on = br_xdot(JointStated{0.5, 0.5});
  CHECK_FALSE(on.is_point());
  CHECK(on.lo == -0.5);
  CHECK(on.hi == 0.5);
  CHECK(on.contains(0.0));
}

TEST_CASE("logit choice probability") {
  CHECK(logit_choice_probability(1.0, 0.3, JointStated{0.4, 0.4}) == 0.5);
  CHECK(logit_choice_probability(1.0, 1e-6, JointStated{1.0, 0.0}) ==
        doctest::Approx(1.0));
  CHECK(std::abs(logit_choice_probability(1.0, 1.0 / 3.0,
                                          JointStated{0.4, 0.6}) -
                 kSigmaMinus06) < 1e-15);
}

TEST_CASE("logistic does not overflow") {
  CHECK(logistic(1e4) == 1.0);
  CHECK(logistic(-1e4) == 0.0);
  CHECK(logistic(-800.0) >= 0.0);
  CHECK(std::isfinite(logistic(710.0)));
  CHECK(logit_choice_probability(1.0, 1e-4, JointStated{1.0, 0.0}) == 1.0);
}

TEST_CASE("logit rate") {
  CHECK(logit_xdot(1.0, 0.2, JointStated{0.5, 0.5}) == 0.0);
  const double k = 0.6, s = 1.0, eta = 1.0 / 3.0;
  const double y = k - eta / s * std::log(k / (1.0 - k));
  CHECK(std::abs(logit_xdot(s, eta, JointStated{k, y})) < 1e-15);
  CHECK(std::abs(logit_xdot(1.0, 1.0 / 6.0, JointStated{0.4, 0.6}) -
                 kSigmaMinus12MinusX) < 1e-15);
}

TEST_CASE("replicator rate") {
  CHECK(replicator_xdot(1.0, JointStated{0.0, 0.3}) == 0.0);
  CHECK(replicator_xdot(1.0, JointStated{1.0, -4.0}) == 0.0);
  CHECK(replicator_xdot(0.17, JointStated{0.4, 0.7}) ==
        doctest::Approx(-0.01224).epsilon(1e-13));
  // Overshoot past the faces is clamped away.
  CHECK(replicator_xdot(1.0, JointStated{-1e-13, 0.5}) == 0.0);
  CHECK(replicator_xdot(1.0, JointStated{1.0 + 1e-13, 0.5}) == 0.0);
}

TEST_CASE("best response geometry") {
  const auto g = br_geometry(ModelParams{0.1, 0.6, 0.1, 1.0, 1.0});
  CHECK(g.alpha == doctest::Approx(0.06 / 1.1).epsilon(1e-14));
  CHECK(g.beta == doctest::Approx(1.06 / 1.1).epsilon(1e-14));
  CHECK(g.alpha == doctest::Approx(0.0545455).epsilon(1e-6));
  CHECK(g.beta == doctest::Approx(0.9636364).epsilon(1e-6));

  const auto sym = br_geometry(ModelParams{1.0, 0.5, 0.1, 1.0, 1.0});
  CHECK(sym.alpha == 0.25);
  CHECK(sym.beta == 0.75);

  const auto tiny = br_geometry(ModelParams{1e-9, 0.6, 0.1, 1.0, 1.0});
  CHECK(tiny.alpha < 1e-8);
  CHECK(tiny.beta > 1.0 - 1e-8);
  CHECK(tiny.width() > 1.0 - 1e-8);
}

TEST_CASE("geometry invariants on random parameters") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    ModelParams p;
    p.k = 0.01 + 0.98 * unit(rng);
    p.r = 1e-3 + 20.0 * unit(rng);
    p.s = 1e-2 + 5.0 * unit(rng);
    const auto g = br_geometry(p);
    CHECK(g.alpha < p.k);
    CHECK(p.k < g.beta);
    CHECK(std::abs(g.width() - p.s / (p.s + p.r)) < 1e-12);
    for (int j = 0; j < 20; ++j) {
      const double x = unit(rng);
      if (std::abs(x - g.alpha) < 1e-12 || std::abs(x - g.beta) < 1e-12) continue;
      CHECK(sliding_feasible(p, x) == (g.alpha <= x && x <= g.beta));
    }
  }
}

TEST_CASE("sliding feasibility") {
  const ModelParams p{0.1, 0.6, 0.1, 1.0, 1.0};
  const auto g = br_geometry(p);
  CHECK(sliding_feasible(p, 0.6));
  CHECK_FALSE(sliding_feasible(p, 0.5 * g.alpha));
  CHECK_FALSE(sliding_feasible(p, 0.5 * (1.0 + g.beta)));
  // At beta the y rate equals 1 - x; compare with the rounding slack of the
  // formula evaluation.
  CHECK(std::abs(y_dot(p, g.beta) - (1.0 - g.beta)) < 1e-15);
}

TEST_CASE("logit approaches best response as noise vanishes") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double x = unit(rng);
    const double y = -0.5 + 2.0 * unit(rng);
    if (std::abs(x - y) < 0.05) continue;
    const double s = 0.5 + unit(rng);
    const JointStated st{x, y};
    const double target = br_point(st);
    double prev = 1e300;
    for (double eta : {1.0, 0.1, 0.01, 0.001}) {
      const double gap = std::abs(logit_xdot(s, eta, st) - target);
      CHECK(gap <= prev);
      prev = gap;
    }
    CHECK(prev < 0.01);
  }
}

TEST_CASE("all three dynamics favour the better strategy") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = 1e-3 + 0.998 * unit(rng);
    const double y = -1.0 + 3.0 * unit(rng);
    if (x == y) continue;
    const JointStated st{x, y};
    const double sign = x > y ? 1.0 : -1.0;
    CHECK(sign * br_point(st) > 0.0);
    CHECK(sign * replicator_xdot(1.3, st) > 0.0);
    // Logit moves x toward a choice probability that is above 1/2 exactly
    // when Left pays more; xdot itself can point either way.
    CHECK(sign * (logit_choice_probability(1.3, 0.2, st) - 0.5) > 0.0);
  }
}

TEST_CASE("logit probability is monotone and symmetric") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = unit(rng), y = unit(rng), d = 1e-3 + unit(rng);
    const double s = 0.2 + unit(rng), eta = 0.05 + unit(rng);
    const double p0 = logit_choice_probability(s, eta, JointStated{x, y});
    const double p1 = logit_choice_probability(s, eta, JointStated{x + d, y});
    CHECK(p1 > p0);
    const double swapped =
        logit_choice_probability(s, eta, JointStated{y, x});
    CHECK(std::abs(p0 - (1.0 - swapped)) < 1e-15);
  }
}

TEST_CASE("counterclockwise rotation around the steady state") {
  // Sign of (xdot, ydot) in the four regions cut by the x-nullcline and the
  // line x = k.
  const ModelParams p{1.0, 0.6, 0.1, 0.2, 1.0};
  for (DynamicKind kind :
       {DynamicKind::BestResponse, DynamicKind::Logit, DynamicKind::Replicator}) {
    for (int i = 1; i < 40; ++i) {
      for (int j = -20; j < 60; ++j) {
        const double x = i / 40.0;
        const double y = j / 40.0 + 1e-3;
        const double null_y = x_nullcline(kind, p, x);
        if (std::abs(x - p.k) < 1e-9 || std::abs(y - null_y) < 1e-9) continue;
        double xdot;
        if (kind == DynamicKind::BestResponse) {
          xdot = br_point({x, y});
        } else {
          xdot = smooth_field(kind, p, JointStated{x, y})[0];
        }
        const double ydot = y_dot(p, x);
        const bool above = y > null_y;
        const bool right = x > p.k;
        CHECK((xdot < 0.0) == above);
        CHECK((ydot > 0.0) == right);
      }
    }
  }
}

TEST_CASE("smooth field rejects best response") {
  CHECK_THROWS_AS(smooth_field(DynamicKind::BestResponse, ModelParams{},
                               JointStated{0.3, 0.4}),
                  Unsupported);
  const auto v =
      smooth_field(DynamicKind::Replicator, ModelParams{3.0, 0.6, 0.1, 1.0, 0.17},
                   JointStated{0.4, 0.7});
  CHECK(v[0] == doctest::Approx(-0.01224));
  CHECK(v[1] == doctest::Approx(3.0 / 0.17 * (0.4 - 0.6)));
}
