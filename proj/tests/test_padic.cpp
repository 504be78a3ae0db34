#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "padicdyn/padic.hpp"
#include "test_support.hpp"

using namespace padicdyn;
using test_support::Rng;
using test_support::oracle_valuation;
using test_support::random_rational;

TEST_CASE("valuations of exact scalars") {
  CHECK(PadicScalar::exact(2, mpq_class(3, 2)).valuation() == Valuation::finite(-1));
  CHECK(PadicScalar::zero(2).valuation().is_infinite());
  // -4912/2 = -2456 = -2^3 * 307
  CHECK(PadicScalar::exact(2, mpq_class(-4912, 2)).certain_valuation() == 3);
  CHECK(oracle_valuation(mpq_class(-2456), 2) == 3);
}

TEST_CASE("exact arithmetic examples") {
  const auto x = PadicScalar::exact(2, mpq_class(3, 2)) + PadicScalar::exact(2, mpq_class(1, 2));
  CHECK(x.rational() == 2);
  CHECK(x.certain_valuation() == 1);

  // f_1(-1/2) for f_1 = z^3 - (3/2) z^2 is the fixed point -1/2.
  const auto h = PadicScalar::exact(2, mpq_class(-1, 2));
  const auto v = h * h * h - PadicScalar::exact(2, mpq_class(3, 2)) * PadicScalar::one(2) * h * h;
  CHECK(v.rational() == mpq_class(-1, 2));
}

TEST_CASE("truncated cancellation becomes a zero to precision") {
  const auto a = PadicScalar::truncated(2, 0, mpz_class(1 + 16 * 5), 4);
  const auto d = a - PadicScalar::one(2);
  CHECK(d.is_zero_to_precision());
  CHECK(d.valuation() == Valuation::at_least(4));
}

TEST_CASE("division by zero and precision contract") {
  try {
    (void)(PadicScalar::one(3) / PadicScalar::zero(3));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DivisionByZero);
  }
  try {
    (void)(PadicScalar::one(3) / PadicScalar::zero_to(3, 5));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PrecisionExhausted);
  }
  CHECK_THROWS_AS(PadicScalar::one(2) + PadicScalar::one(3), Error);
}

TEST_CASE("valuation laws on random rationals") {
  Rng rng(11);
  for (int n = 0; n < 2000; ++n) {
    const Prime p = test_support::pick(rng, {2, 3, 5, 7});
    const mpq_class x = random_rational(rng, p, -5, 5);
    const mpq_class y = random_rational(rng, p, -5, 5);
    const auto px = PadicScalar::exact(p, x);
    const auto py = PadicScalar::exact(p, y);
    CHECK((px * py).certain_valuation() == oracle_valuation(x, p) + oracle_valuation(y, p));
    const mpq_class s = x + y;
    if (sgn(s) == 0) continue;
    const long vs = (px + py).certain_valuation();
    CHECK(vs == oracle_valuation(s, p));
    const long vx = oracle_valuation(x, p);
    const long vy = oracle_valuation(y, p);
    CHECK(vs >= std::min(vx, vy));
    if (vx != vy) CHECK(vs == std::min(vx, vy));
  }
}

TEST_CASE("truncated arithmetic agrees with exact arithmetic") {
  Rng rng(12);
  long checked = 0;
  for (int n = 0; n < 10000; ++n) {
    const Prime p = test_support::pick(rng, {2, 3, 5});
    const mpq_class x = random_rational(rng, p, -4, 4);
    const mpq_class y = random_rational(rng, p, -4, 4);
    const long nx = test_support::uniform(rng, 1, 30);
    const long ny = test_support::uniform(rng, 1, 30);
    const auto tx = PadicScalar::from_relative(p, x, nx);
    const auto ty = PadicScalar::from_relative(p, y, ny);
    const int op = static_cast<int>(test_support::uniform(rng, 0, 3));
    mpq_class exact;
    PadicScalar got;
    try {
      switch (op) {
        case 0: exact = x + y; got = tx + ty; break;
        case 1: exact = x - y; got = tx - ty; break;
        case 2: exact = x * y; got = tx * ty; break;
        default: exact = x / y; got = tx / ty; break;
      }
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::PrecisionExhausted);
      continue;
    }
    const long ax = oracle_valuation(x, p) + nx;
    const long ay = oracle_valuation(y, p) + ny;
    if (got.is_zero_to_precision()) {
      CHECK((sgn(exact) == 0 || oracle_valuation(exact, p) >= got.valuation().value));
    } else {
      const long abs_prec = *got.absolute_precision();
      const mpq_class diff = got.representative() - exact;
      CHECK((sgn(diff) == 0 || oracle_valuation(diff, p) >= abs_prec));
      if (op < 2) CHECK(abs_prec <= std::min(ax, ay));
      if (op >= 2) CHECK(*got.relative_precision() <= std::min(nx, ny));
    }
    ++checked;
  }
  CHECK(checked > 9000);
}

TEST_CASE("ball arithmetic examples") {
  const PadicBall one(PadicScalar::one(2), RadiusExp(-3));
  const PadicBall sq = ball_arith(one, one, BallOp::Mul);
  CHECK(sq == PadicBall(PadicScalar::one(2), RadiusExp(-3)));

  const PadicBall a(PadicScalar::integer(2, 2), RadiusExp(-1));
  const PadicBall b(PadicScalar::integer(2, 4), RadiusExp(-2));
  const PadicBall ab = ball_arith(a, b, BallOp::Mul);
  CHECK(ab == PadicBall(PadicScalar::integer(2, 8), RadiusExp(-3)));
  // Every product of residues of A and B mod 2^6 lands in the output ball.
  for (long i = 0; i < 32; ++i)
    for (long j = 0; j < 16; ++j) {
      const long x = 2 + 2 * i;
      const long y = 4 + 4 * j;
      CHECK(oracle_valuation(mpq_class(x * y - 8), 2) >= 3);
      CHECK(ball_contains(ab, PadicScalar::integer(2, x * y)));
    }

  const PadicBall s = ball_arith(PadicBall(PadicScalar::zero(2), RadiusExp(-1)),
                                 PadicBall(PadicScalar::one(2), RadiusExp(-2)), BallOp::Add);
  CHECK(s == PadicBall(PadicScalar::one(2), RadiusExp(-1)));
}

TEST_CASE("ball containment examples") {
  CHECK_FALSE(ball_contains(PadicBall(PadicScalar::zero(2), RadiusExp(-1)), PadicScalar::exact(2, mpq_class(-1, 2))));
  CHECK(ball_subset(PadicBall(PadicScalar::one(2), RadiusExp(-4)), PadicBall(PadicScalar::one(2), RadiusExp(-1))));
  CHECK(ball_subset(PadicBall(PadicScalar::integer(2, 17), RadiusExp(-5)),
                    PadicBall(PadicScalar::one(2), RadiusExp(-4))));
  CHECK_FALSE(ball_subset(PadicBall(PadicScalar::integer(2, 3), RadiusExp(-5)),
                          PadicBall(PadicScalar::one(2), RadiusExp(-4))));
}

TEST_CASE("ball arithmetic is sound on random members") {
  Rng rng(13);
  for (int n = 0; n < 1000; ++n) {
    const Prime p = test_support::pick(rng, {2, 3, 5});
    const mpq_class ca = random_rational(rng, p, -3, 3);
    const mpq_class cb = random_rational(rng, p, -3, 3);
    const long sa = test_support::uniform(rng, -4, 2);
    const long sb = test_support::uniform(rng, -4, 2);
    const PadicBall A(PadicScalar::exact(p, ca), RadiusExp(sa));
    const PadicBall B(PadicScalar::exact(p, cb), RadiusExp(sb));
    const BallOp op = test_support::uniform(rng, 0, 1) ? BallOp::Add : BallOp::Mul;
    const PadicBall C = ball_arith(A, B, op);
    const mpq_class cc = C.center().representative();
    const mpq_class rc = C.radius_exp().value();
    bool all = true;
    for (int k = 0; k < 100; ++k) {
      const mpq_class x = ca + test_support::pow_p(p, -sa) * test_support::uniform(rng, -500, 500);
      const mpq_class y = cb + test_support::pow_p(p, -sb) * test_support::uniform(rng, -500, 500);
      const mpq_class z = op == BallOp::Add ? mpq_class(x + y) : mpq_class(x * y);
      const mpq_class diff = z - cc;
      all = all && (sgn(diff) == 0 || oracle_valuation(diff, p) >= -rc);
    }
    CHECK(all);
  }
}

TEST_CASE("balls are equal under recentering") {
  Rng rng(14);
  for (int n = 0; n < 500; ++n) {
    const Prime p = test_support::pick(rng, {2, 3, 7});
    const mpq_class a = random_rational(rng, p, -3, 3);
    const long s = test_support::uniform(rng, -5, 3);
    const mpq_class h = test_support::pow_p(p, -s) * test_support::uniform(rng, -100, 100);
    CHECK(PadicBall(PadicScalar::exact(p, a), RadiusExp(s)) ==
          PadicBall(PadicScalar::exact(p, mpq_class(a + h)), RadiusExp(s)));
    CHECK_FALSE(PadicBall(PadicScalar::exact(p, a), RadiusExp(s)) ==
                PadicBall(PadicScalar::exact(p, mpq_class(a + test_support::pow_p(p, -s - 1))), RadiusExp(s)));
  }
}

TEST_CASE("printed scalars parse back") {
  Rng rng(15);
  for (int n = 0; n < 500; ++n) {
    const Prime p = test_support::pick(rng, {2, 3, 5, 11});
    const mpq_class x = random_rational(rng, p, -6, 6);
    const auto exact = PadicScalar::exact(p, x);
    CHECK(PadicScalar::parse(p, exact.to_string()) == exact);
    const auto trunc = PadicScalar::from_relative(p, x, test_support::uniform(rng, 1, 20));
    CHECK(PadicScalar::parse(p, trunc.to_string()) == trunc);
  }
  const auto z = PadicScalar::zero_to(3, 7);
  CHECK(PadicScalar::parse(3, z.to_string()) == z);
  CHECK(PadicScalar::parse(2, "1 + O(2^5)").absolute_precision() == 5);
  CHECK_THROWS_AS(PadicScalar::parse(2, "1/0"), Error);
  CHECK_THROWS_AS(PadicScalar::parse(2, "x"), Error);
}
