#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "coordcycle/analysis.hpp"

using namespace coordcycle;

namespace {

// 0.6 - ln(1.5) / 3 and L(0.4, 0.7) for k = 0.6, s = 0.17, r = 3, from a
// 30-digit evaluation.
constexpr double kLogitY = 0.46484496396394520601;
constexpr double kLyapunovSpiralStart = 0.47730110757823260625;

ModelParams random_params(std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ModelParams p;
  p.k = 0.05 + 0.9 * unit(rng);
  p.x_hat = 0.5 * std::min(p.k, 1.0 - p.k);
  p.r = 0.01 + 10.0 * unit(rng);
  p.s = 0.05 + 3.0 * unit(rng);
  p.eta = 0.01 + 2.0 * unit(rng);
  return p;
}

double char_residual(const Eigen::Matrix2d &j, std::complex<double> l) {
  return std::abs(l * l - j.trace() * l + j.determinant());
}

}  // namespace

TEST_CASE("steady states") {
  ModelParams p;
  p.k = 0.6;
  CHECK(steady_state(DynamicKind::BestResponse, p) == JointStated{0.6, 0.6});
  CHECK(steady_state(DynamicKind::Replicator, p) == JointStated{0.6, 0.6});
  p.k = 0.5;
  p.x_hat = 0.1;
  CHECK(steady_state(DynamicKind::Logit, p) == JointStated{0.5, 0.5});
  p = ModelParams{0.1, 0.6, 0.1, 1.0 / 3.0, 1.0};
  const JointStated ss = steady_state(DynamicKind::Logit, p);
  CHECK(ss.x == 0.6);
  CHECK(std::abs(ss.y - kLogitY) < 1e-15);
}

TEST_CASE("smooth fields vanish at their steady states") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    const ModelParams p = random_params(rng);
    for (DynamicKind k : {DynamicKind::Logit, DynamicKind::Replicator}) {
      CHECK(smooth_field(k, p, steady_state(k, p)).norm() < 1e-10);
    }
  }
}

TEST_CASE("jacobian formulas") {
  const Eigen::Matrix2d rep =
      jacobian_at_steady_state(DynamicKind::Replicator, {3.0, 0.6, 0.1, 1.0, 0.17});
  CHECK(rep(0, 0) == doctest::Approx(0.0408).epsilon(1e-12));
  CHECK(rep(0, 1) == doctest::Approx(-0.0408).epsilon(1e-12));
  CHECK(rep(1, 0) == doctest::Approx(3.0 / 0.17).epsilon(1e-14));
  CHECK(rep(1, 0) == doctest::Approx(17.647).epsilon(1e-4));
  CHECK(rep(1, 1) == 0.0);

  const Eigen::Matrix2d lg =
      jacobian_at_steady_state(DynamicKind::Logit, {1.0, 0.5, 0.1, 1.0, 1.0});
  CHECK(lg(0, 0) == -0.75);
  CHECK(lg(0, 1) == -0.25);
  CHECK(lg(1, 0) == 1.0);
  CHECK(lg(1, 1) == 0.0);

  ModelParams at;
  at.k = 0.6;
  at.s = 1.0;
  at.eta = eta_star(at);
  CHECK(jacobian_at_steady_state(DynamicKind::Logit, at)(0, 0) == 0.0);

  CHECK_THROWS_AS(jacobian_at_steady_state(DynamicKind::BestResponse, ModelParams{}),
                  Unsupported);
}

TEST_CASE("jacobians match finite differences") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 100; ++i) {
    const ModelParams p = random_params(rng);
    for (DynamicKind k : {DynamicKind::Logit, DynamicKind::Replicator}) {
      const Eigen::Matrix2d exact = jacobian_at_steady_state(k, p);
      const Eigen::Matrix2d fd = numerical_jacobian(k, p, steady_state(k, p));
      CHECK((exact - fd).cwiseAbs().maxCoeff() <
            1e-6 * std::max(1.0, exact.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("eigenvalues solve the characteristic polynomial") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 500; ++i) {
    const ModelParams p = random_params(rng);
    for (DynamicKind k : {DynamicKind::Logit, DynamicKind::Replicator}) {
      const StabilityReport rep = classify_stability(k, p);
      REQUIRE(rep.jacobian);
      REQUIRE(rep.eigenvalues);
      for (const auto &l : *rep.eigenvalues) {
        CHECK(char_residual(*rep.jacobian, l) < 1e-10);
      }
      // Explicit forms of the two polynomials.
      const double v = p.k * (1.0 - p.k);
      const double tr = k == DynamicKind::Logit ? p.s / p.eta * v - 1.0 : p.s * v;
      const double det = k == DynamicKind::Logit ? p.r / p.eta * v : p.r * v;
      for (const auto &l : *rep.eigenvalues) {
        CHECK(std::abs(l * l - tr * l + det) < 1e-10 * std::max(1.0, det));
      }
    }
  }
}

TEST_CASE("logit stability flips at eta star") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 50; ++i) {
    ModelParams p = random_params(rng);
    const double star = eta_star(p);
    p.eta = 0.99 * star;
    const auto lo = eigenvalues_2x2(jacobian_at_steady_state(DynamicKind::Logit, p));
    CHECK(std::max(lo[0].real(), lo[1].real()) > 0.0);
    CHECK(classify_stability(DynamicKind::Logit, p).classification ==
          Stability::Repelling);
    p.eta = 1.01 * star;
    const auto hi = eigenvalues_2x2(jacobian_at_steady_state(DynamicKind::Logit, p));
    CHECK(std::max(hi[0].real(), hi[1].real()) < 0.0);
    CHECK(classify_stability(DynamicKind::Logit, p).classification == Stability::Sink);
  }
}

TEST_CASE("classification examples") {
  ModelParams p{0.1, 0.6, 0.1, 1.0 / 6.0, 1.0};
  CHECK(eta_star(p) == doctest::Approx(0.24).epsilon(1e-15));
  StabilityReport r = classify_stability(DynamicKind::Logit, p);
  CHECK(r.classification == Stability::Repelling);
  REQUIRE(r.eta_star);
  CHECK(*r.eta_star == doctest::Approx(0.24));
  p.eta = 1.0 / 3.0;
  CHECK(classify_stability(DynamicKind::Logit, p).classification == Stability::Sink);
  p.eta = eta_star(p);
  CHECK(classify_stability(DynamicKind::Logit, p).classification ==
        Stability::CenterThreshold);

  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const StabilityReport rep =
        classify_stability(DynamicKind::Replicator, random_params(rng));
    CHECK(rep.classification == Stability::Repelling);
    CHECK_FALSE(rep.eta_star);
  }

  const StabilityReport br = classify_stability(DynamicKind::BestResponse, ModelParams{});
  CHECK(br.classification == Stability::Repelling);
  CHECK_FALSE(br.jacobian);
  CHECK_FALSE(br.eigenvalues);
  CHECK(br.steady_state == JointStated{0.6, 0.6});
}

TEST_CASE("classification window") {
  using C = std::complex<double>;
  CHECK(classify_eigenvalues({C(5e-13, 1.0), C(5e-13, -1.0)}) ==
        Stability::CenterThreshold);
  CHECK(classify_eigenvalues({C(2e-12, 1.0), C(2e-12, -1.0)}) == Stability::Repelling);
  CHECK(classify_eigenvalues({C(-2e-12, 0.0), C(-1.0, 0.0)}) == Stability::Sink);
}

TEST_CASE("Lyapunov function values") {
  const ModelParams p{3.0, 0.6, 0.1, 1.0, 0.17};
  CHECK(std::abs(lyapunov(p, {0.6, 0.6}).value) < 1e-15);
  CHECK(lyapunov(p, {0.6, 3.0}).time_derivative == 0.0);
  const LyapunovEvaluation e = lyapunov(p, {0.4, 0.7});
  CHECK(std::abs(e.value - kLyapunovSpiralStart) < 1e-14);
  CHECK(e.value > 0.0);
  CHECK_THROWS_AS(lyapunov(p, {0.0, 0.5}), DomainError);
  CHECK_THROWS_AS(lyapunov(p, {1.0, 0.5}), DomainError);
}

TEST_CASE("Lyapunov derivative identity") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const ModelParams p = random_params(rng);
    const JointStated s{1e-3 + 0.998 * unit(rng), -2.0 + 5.0 * unit(rng)};
    const double expected = (s.x - p.k) * (s.x - p.k);
    CHECK(std::abs(lyapunov(p, s).time_derivative - expected) < 1e-10);
  }
}

TEST_CASE("Lyapunov function is positive away from the steady state") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const ModelParams p = random_params(rng);
    for (int i = 1; i < 100; ++i) {
      for (int j = -50; j <= 150; j += 2) {
        const JointStated s{i / 100.0, j / 100.0};
        if (std::hypot(s.x - p.k, s.y - p.k) < 1e-6) continue;
        CHECK(lyapunov(p, s).value > 1e-12);
      }
    }
  }
}

TEST_CASE("orbit detection on best response") {
  for (double r : {0.1, 3.5, 7.0}) {
    const ModelParams p{r, 0.6, 0.1, 1.0, 1.0};
    const Trajectory t = br_integrate_analytic(p, {0.8, 0.65}, 60);
    const OrbitReport o = detect_orbit(t, p);
    CHECK(o.converged);
    CHECK(o.upper_tail.size() == 5);
    CHECK(o.lower_tail.size() == 5);
    REQUIRE(o.orbit_width_lower_bound);
    CHECK(*o.orbit_width_lower_bound == doctest::Approx(1.0 / (1.0 + r)));
    CHECK(o.upper_limit - o.lower_limit >= *o.orbit_width_lower_bound - 1e-9);
    const BRGeometry g = br_geometry(p);
    for (double x : o.upper_tail) {
      CHECK(x > g.beta);
      CHECK(x <= 1.0);
    }
    CHECK(o.residual < 1e-6);
  }
}

TEST_CASE("replicator orbit does not converge") {
  const ModelParams p{3.0, 0.6, 0.1, 1.0, 0.17};
  IntegratorConfig cfg;
  cfg.max_time = 1000.0;
  const Trajectory t = integrate(DynamicKind::Replicator, p, {0.4, 0.7}, cfg);
  const OrbitReport o = detect_orbit(t, p, 1e-6, 5, DynamicKind::Replicator);
  CHECK_FALSE(o.converged);
  CHECK_FALSE(o.orbit_width_lower_bound);
  for (Region side : {Region::SPlus, Region::SMinus}) {
    CHECK(strictly_increasing(crossing_amplitudes(t, p, side)));
  }
}

TEST_CASE("stable logit runs have too few crossings for an orbit") {
  const ModelParams p{0.1, 0.6, 0.1, 1.0 / 3.0, 1.0};
  IntegratorConfig cfg;
  cfg.max_time = 200.0;
  const Trajectory t = integrate(DynamicKind::Logit, p, {0.4, 0.6}, cfg);
  CHECK_THROWS_AS(detect_orbit(t, p, 1e-6, 5, DynamicKind::Logit),
                  InsufficientCrossings);
}

TEST_CASE("orbit detection on a hand-built crossing list") {
  const ModelParams p{1.0, 0.5, 0.1, 1.0, 1.0};
  Trajectory t;
  for (int i = 0; i < 6; ++i) {
    t.crossings.push_back({2.0 * i, 0.9 + 1e-9 * i, Region::SMinus});
    t.crossings.push_back({2.0 * i + 1, 0.1 - 1e-9 * i, Region::SPlus});
  }
  OrbitReport o = detect_orbit(t, p);
  CHECK(o.converged);
  CHECK(o.residual == doctest::Approx(1e-9).epsilon(1e-3));

  // A jump in the tail breaks convergence.
  t.crossings.back().x = 0.05;
  CHECK_FALSE(detect_orbit(t, p).converged);

  // Non-monotone tails with gaps above the noise floor are rejected.
  Trajectory zig;
  for (int i = 0; i < 6; ++i) {
    zig.crossings.push_back({2.0 * i, 0.9 + (i % 2 ? 1e-7 : 0.0), Region::SMinus});
    zig.crossings.push_back({2.0 * i + 1, 0.1, Region::SPlus});
  }
  CHECK_FALSE(detect_orbit(zig, p).converged);

  Trajectory few;
  few.crossings.assign(t.crossings.begin(), t.crossings.begin() + 9);
  CHECK_THROWS_AS(detect_orbit(few, p), InsufficientCrossings);
}

TEST_CASE("strictly increasing helper") {
  CHECK(strictly_increasing({}));
  CHECK(strictly_increasing({1.0}));
  CHECK(strictly_increasing({1.0, 2.0, 3.0}));
  CHECK_FALSE(strictly_increasing({1.0, 1.0}));
  CHECK_FALSE(strictly_increasing({2.0, 1.0}));
}

TEST_CASE("best response orbits turn counterclockwise around (k, k)") {
  const ModelParams p{0.1, 0.6, 0.1, 1.0, 1.0};
  const Trajectory t = br_integrate_analytic(p, {0.8, 0.65}, 20);
  const double w = winding_number(t.samples, {0.6, 0.6});
  CHECK(w > 9.0);
  CHECK(w < 11.0);
}
