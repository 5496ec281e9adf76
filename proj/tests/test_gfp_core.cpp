#include <random>

#include "gtest/gtest.h"

#include "oracles.hpp"
#include "tighthilb/expression.hpp"
#include "tighthilb/field.hpp"
#include "tighthilb/polynomial.hpp"

using namespace tighthilb;

namespace {

RingPtr make_ring(std::uint64_t p, std::vector<std::string> names, MonomialOrder order = MonomialOrder::grevlex()) {
  return PolyRing::create(PrimeField(p), std::move(names), order);
}

}  // namespace

TEST(PrimeField, RejectsComposites) {
  EXPECT_THROW(PrimeField(6), Error);
  EXPECT_THROW(PrimeField(1), Error);
  EXPECT_NO_THROW(PrimeField(2147483647));
  try {
    PrimeField(9);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPrime);
  }
}

TEST(PrimeField, Arithmetic) {
  EXPECT_EQ(PrimeField(5).inv(2), 3u);
  EXPECT_EQ(PrimeField(2).add(1, 1), 0u);
  EXPECT_EQ(PrimeField(7).mul(3, 5), 1u);
  EXPECT_EQ(PrimeField(7).neg(3), 4u);
  EXPECT_EQ(PrimeField(7).reduce(-1), 6u);
}

TEST(PrimeField, InverseOfZero) {
  try {
    PrimeField(5).inv(0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivisionByZero);
  }
}

TEST(PrimeField, InverseRoundTrip) {
  PrimeField k(2147483647);
  for (Coeff a : {1u, 2u, 12345u, 2147483646u}) EXPECT_EQ(k.mul(a, k.inv(a)), 1u);
}

TEST(Polynomial, FrobeniusAdditivityInCharTwo) {
  auto r = make_ring(2, {"x", "y"});
  auto f = parse_polynomial(r, "x + y");
  EXPECT_EQ(f * f, parse_polynomial(r, "x^2 + y^2"));
}

TEST(Polynomial, FreshmansDreamCharThree) {
  auto r = make_ring(3, {"x", "y"});
  EXPECT_EQ(parse_polynomial(r, "x + y").pow(3), parse_polynomial(r, "x^3 + y^3"));
}

TEST(Polynomial, AdditiveInverse) {
  auto r = make_ring(5, {"x", "y", "z"});
  auto f = parse_polynomial(r, "3*x^2*y - z + 1");
  EXPECT_TRUE((f + (-f)).is_zero());
  EXPECT_TRUE((f - f).terms().empty());
}

TEST(Polynomial, ArityMismatch) {
  auto r = make_ring(5, {"x", "y"});
  auto s = make_ring(5, {"x", "y", "z"});
  try {
    auto h = Polynomial::variable(r, 0) + Polynomial::variable(s, 0);
    FAIL() << format(h);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ArityError);
  }
}

TEST(Polynomial, FormatAndParseAgree) {
  auto r = make_ring(7, {"x", "y", "z"});
  auto f = parse_polynomial(r, "3*x^2*y - z + 1 + 2*x*y*z");
  EXPECT_EQ(format(f), "3*x^2*y + 2*x*y*z - z + 1");
  EXPECT_EQ(parse_polynomial(r, format(f)), f);
  EXPECT_EQ(format(Polynomial(r)), "0");
}

TEST(Polynomial, ParseRejectsUnknownVariable) {
  auto r = make_ring(7, {"x"});
  try {
    parse_polynomial(r, "x + w");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UndefinedIdentifier);
  }
}

TEST(Frobenius, SemilinearOverPrimeField) {
  auto r = make_ring(3, {"x", "y"});
  EXPECT_EQ(frobenius_power(parse_polynomial(r, "x + 2*y"), 1), parse_polynomial(r, "x^3 + 2*y^3"));
}

TEST(Frobenius, IdentityAtZero) {
  auto r = make_ring(5, {"x", "y"});
  auto f = parse_polynomial(r, "x^2 - 3*x*y + 4");
  EXPECT_EQ(frobenius_power(f, 0), f);
}

TEST(Frobenius, MatchesRepeatedSquaring) {
  auto r = make_ring(2, {"x", "y"});
  auto f = parse_polynomial(r, "x + y + 1");
  auto squared_twice = (f * f) * (f * f);
  EXPECT_EQ(squared_twice, parse_polynomial(r, "x^4 + y^4 + 1"));
  EXPECT_EQ(frobenius_power(f, 2), squared_twice);
}

TEST(Frobenius, RandomizedAgainstNaivePower) {
  std::mt19937_64 rng(7);
  for (std::uint64_t p : {2u, 3u, 5u}) {
    auto r = make_ring(p, {"x", "y", "z"});
    for (int trial = 0; trial < 30; ++trial) {
      auto f = oracle::random_polynomial(r, rng, 3, 4);
      auto g = oracle::random_polynomial(r, rng, 3, 4);
      for (unsigned e : {0u, 1u, 2u}) {
        const std::uint64_t q = e == 0 ? 1 : (e == 1 ? p : p * p);
        if (q <= 25) EXPECT_EQ(frobenius_power(f, e), oracle::naive_power(f, q));
        EXPECT_EQ(frobenius_power(f + g, e), frobenius_power(f, e) + frobenius_power(g, e));
        EXPECT_EQ(frobenius_power(f * g, e), frobenius_power(f, e) * frobenius_power(g, e));
      }
    }
  }
}

TEST(Polynomial, RingAxiomsRandomized) {
  std::mt19937_64 rng(11);
  for (std::uint64_t p : {2u, 3u, 5u}) {
    auto r = make_ring(p, {"x", "y", "z"});
    for (int trial = 0; trial < 1000; ++trial) {
      auto f = oracle::random_polynomial(r, rng, 3, 3);
      auto g = oracle::random_polynomial(r, rng, 3, 3);
      auto h = oracle::random_polynomial(r, rng, 3, 3);
      ASSERT_EQ((f * g) * h, f * (g * h));
      ASSERT_EQ(f * g, g * f);
      ASSERT_EQ(f * (g + h), f * g + f * h);
    }
  }
}

TEST(MonomialOrder, TotalMultiplicativeGlobal) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<unsigned> e(0, 5);
  auto random_monomial = [&] { return Monomial{e(rng), e(rng), e(rng), e(rng)}; };
  for (auto order : {MonomialOrder::grevlex(), MonomialOrder::lex(), MonomialOrder::block_elimination(2)}) {
    for (int trial = 0; trial < 2000; ++trial) {
      Monomial u = random_monomial(), v = random_monomial(), w = random_monomial();
      int c = order.compare(u, v);
      EXPECT_EQ(c == 0, u == v);
      EXPECT_EQ(c, -order.compare(v, u));
      if (c < 0) EXPECT_LT(order.compare(u * w, v * w), 0);
      if (!u.is_one()) EXPECT_GT(order.compare(u, Monomial(4)), 0);
      if (order.less(u, v) && order.less(v, w)) EXPECT_TRUE(order.less(u, w));
    }
  }
}

TEST(MonomialOrder, GrevlexSmallCases) {
  auto o = MonomialOrder::grevlex();
  EXPECT_GT(o.compare(Monomial{1, 0, 0}, Monomial{0, 1, 0}), 0);
  EXPECT_GT(o.compare(Monomial{0, 2, 0}, Monomial{1, 0, 1}), 0);
  EXPECT_GT(o.compare(Monomial{0, 0, 2}, Monomial{1, 0, 0}), 0);
  auto block = MonomialOrder::block_elimination(1);
  EXPECT_GT(block.compare(Monomial{1, 0, 0}, Monomial{0, 5, 5}), 0);
}

TEST(Polynomial, PartialDerivative) {
  auto r = make_ring(3, {"x", "y"});
  auto f = parse_polynomial(r, "x^3 + x^2*y + y^2");
  EXPECT_EQ(partial_derivative(f, 0), parse_polynomial(r, "2*x*y"));
  EXPECT_EQ(partial_derivative(f, 1), parse_polynomial(r, "x^2 + 2*y"));
}
