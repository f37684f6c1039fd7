#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "coordcycle/fields.hpp"
#include "coordcycle/game.hpp"

using namespace coordcycle;

TEST_CASE("alignment sums the diagonal against the off-diagonal") {
  CHECK(alignment(make_payoff_matrix(2.0, 0.0, 0.0, 1.0)) == 3.0);
  CHECK(alignment(make_payoff_matrix(1.0, 1.0, 1.0, 1.0)) == 0.0);
  CHECK(alignment(make_payoff_matrix(3.0, 1.0, 2.0, 4.0)) == 4.0);
}

TEST_CASE("indifference state") {
  CHECK(indifference_state(make_payoff_matrix(2.0, 0.0, 0.0, 1.0)) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(indifference_state(make_payoff_matrix(1.0, 0.0, 0.0, 1.0)) == 0.5);
  CHECK(indifference_state(make_payoff_matrix(1.0, 2.0, 0.0, 3.0)) == 0.5);
  CHECK_THROWS_AS(indifference_state(make_payoff_matrix(1.0, 1.0, 1.0, 1.0)),
                  ZeroAlignment);
}

TEST_CASE("indifference state may leave the unit interval") {
  // Left strictly dominant: a > c and b > d.
  const auto m = make_payoff_matrix(3.0, 2.0, 1.0, 1.0);
  CHECK(indifference_state(m) < 0.0);
}

TEST_CASE("expected payoffs") {
  const auto m = make_payoff_matrix(2.0, 0.0, 0.0, 1.0);
  CHECK(payoffs(m, 1.0) == std::pair{2.0, 0.0});
  CHECK(payoffs(m, 0.0) == std::pair{0.0, 1.0});
  const auto [fl, fr] = payoffs(m, 1.0 / 3.0);
  CHECK(fl == doctest::Approx(2.0 / 3.0));
  CHECK(fr == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(payoffs(m, -0.1), DomainError);
  CHECK_THROWS_AS(payoffs(m, 1.5), DomainError);
}

TEST_CASE("payoff difference in reduced coordinates") {
  CHECK(payoff_difference(3.0, JointStated{1.0 / 3.0, 1.0 / 3.0}) == 0.0);
  CHECK(payoff_difference(1.0, JointStated{0.8, 0.65}) ==
        doctest::Approx(0.15).epsilon(1e-14));
  CHECK(payoff_difference(2.0, JointStated{0.0, 1.0}) == -2.0);

  // s = 1, y = 0.65: a - c = 0.35, d - b = 0.65.
  const auto m = make_payoff_matrix(0.35, 0.0, 0.0, 0.65);
  const auto [fl, fr] = payoffs(m, 0.8);
  CHECK(fl - fr == doctest::Approx(0.15).epsilon(1e-14));
}

TEST_CASE("payoff difference identity on random games") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pay(-5.0, 5.0), unit(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const auto m = make_payoff_matrix(pay(rng), pay(rng), pay(rng), pay(rng));
    if (std::abs(alignment(m)) < 1e-3) continue;
    const double x = unit(rng);
    const auto [fl, fr] = payoffs(m, x);
    const double d =
        payoff_difference(alignment(m), JointStated{x, indifference_state(m)});
    CHECK(std::abs(d - (fl - fr)) < 1e-12 * std::max(1.0, std::abs(alignment(m))));
  }
}

TEST_CASE("payoff adjustment rows") {
  const ModelParams p{0.5, 0.6, 0.1, 1.0, 1.0};
  const auto m = make_payoff_matrix(2.0, 0.0, 0.0, 1.0);
  const auto at1 = payoff_adjustment(m, p, 1.0);
  CHECK(at1(0, 0) == doctest::Approx(0.5 * (0.1 - 0.4)));
  CHECK(at1(0, 1) == at1(0, 0));
  CHECK(at1(1, 0) == doctest::Approx(0.5 * 0.1));
  CHECK(at1(1, 1) == at1(1, 0));
  const auto at0 = payoff_adjustment(m, p, 0.0);
  CHECK(at0(0, 0) == doctest::Approx(0.5 * 0.1));
  CHECK(at0(1, 1) == doctest::Approx(0.5 * (0.1 - 0.6)));

  ModelParams frozen = p;
  frozen.r = 0.0;
  CHECK(payoff_adjustment(m, frozen, 0.37).isZero(0.0));
}

TEST_CASE("payoff adjustment conserves alignment and drives y") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0), pay(-3.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    ModelParams p;
    p.k = 0.05 + 0.9 * unit(rng);
    p.x_hat = std::min(p.k, 1.0 - p.k) * (0.01 + 0.98 * unit(rng));
    p.r = 10.0 * unit(rng);
    auto m = make_payoff_matrix(pay(rng), pay(rng), pay(rng), pay(rng));
    m(1, 1) += 7.0;  // keep s clearly positive
    p.s = alignment(m);
    const double x = unit(rng);
    const auto rate = payoff_adjustment(m, p, x);
    CHECK(alignment(rate) == 0.0);
    const double from_matrix = (rate(1, 1) - rate(0, 1)) / p.s;
    CHECK(std::abs(y_dot(p, x) - from_matrix) < 1e-12);
  }
}

TEST_CASE("y rate") {
  const ModelParams p{0.1, 0.6, 0.1, 1.0, 1.0};
  CHECK(y_dot(p, 0.6) == 0.0);
  CHECK(y_dot(p, 1.0) == doctest::Approx(0.04).epsilon(1e-14));
  CHECK(y_dot(p, 0.0) == doctest::Approx(-0.06).epsilon(1e-14));
}

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(validate(ModelParams{}));
  auto bad = [](auto mutate) {
    ModelParams p;
    mutate(p);
    return p;
  };
  CHECK_THROWS_AS(validate(bad([](ModelParams &p) { p.k = 0.0; })), ConfigError);
  CHECK_THROWS_AS(validate(bad([](ModelParams &p) { p.k = 1.0; })), ConfigError);
  CHECK_THROWS_AS(validate(bad([](ModelParams &p) { p.x_hat = 0.0; })), ConfigError);
  CHECK_THROWS_AS(validate(bad([](ModelParams &p) { p.x_hat = 0.4; })), ConfigError);
  CHECK_THROWS_AS(validate(bad([](ModelParams &p) { p.r = -1e-9; })), ConfigError);
  CHECK_THROWS_AS(validate(bad([](ModelParams &p) { p.eta = 0.0; })), ConfigError);
  CHECK_THROWS_AS(validate(bad([](ModelParams &p) { p.s = 0.0; })), ConfigError);
  CHECK_NOTHROW(validate(bad([](ModelParams &p) { p.r = 0.0; })));
}

TEST_CASE("dynamic names round-trip") {
  for (auto k : {DynamicKind::BestResponse, DynamicKind::Logit,
                 DynamicKind::Replicator}) {
    CHECK(parse_dynamic_kind(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_dynamic_kind("smith"), ConfigError);
}

TEST_CASE("templates accept other scalar types") {
  const auto m = make_payoff_matrix<long double>(2, 0, 0, 1);
  CHECK(alignment(m) == 3.0L);
  const JointState<float> s{0.8f, 0.65f};
  CHECK(payoff_difference(1.0f, s) == doctest::Approx(0.15f));
}
