#include <gtest/gtest.h>

#include "effbound/polynomial.hpp"

using namespace effbound;

namespace {

IntPoly P(std::vector<long> c) {
  std::vector<mpz_class> z(c.begin(), c.end());
  return IntPoly(std::move(z));
}

}  // namespace

TEST(Polynomial, Printing) {
  EXPECT_EQ(P({-1, -1, 1}).to_string(), "x^2 - x - 1");
  EXPECT_EQ(P({-1, 0, 2}).to_string(), "2x^2 - 1");
}

TEST(Polynomial, ArithmeticAndEvaluation) {
  const IntPoly a = P({-1, 1}), b = P({2, 1});
  EXPECT_EQ(a * b, P({-2, 1, 1}));
  EXPECT_EQ(a + b, P({1, 2}));
  EXPECT_EQ((a * b).evaluate(3), 10);
  EXPECT_EQ(P({1, 2, 3}).derivative(), P({2, 6}));
  EXPECT_TRUE(evaluate(P({-2, 0, 1}), sqrt(Interval(2, 128))).contains(0L));
}

TEST(Polynomial, GcdAndSquarefree) {
  const IntPoly f = P({-1, 1}) * P({-2, 1});
  const IntPoly g = P({-1, 1}) * P({3, 1});
  EXPECT_EQ(primitive_part(gcd(to_rational(f), to_rational(g))), P({-1, 1}));
  EXPECT_TRUE(is_squarefree(f));
  EXPECT_FALSE(is_squarefree(P({1, -2, 1})));
  EXPECT_FALSE(is_squarefree(P({-1, 1}) * P({-1, 1}) * P({5, 0, 1})));
}

TEST(Polynomial, ContentAndPrimitivePart) {
  EXPECT_EQ(content(P({4, 6, 10})), 2);
  EXPECT_EQ(primitive_part(P({4, 6, 10})), P({2, 3, 5}));
}

TEST(Polynomial, ExactQuotient) {
  auto q = exact_quotient(P({-2, 1, 1}), P({-1, 1}));
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, P({2, 1}));
  EXPECT_FALSE(exact_quotient(P({1, 0, 1}), P({-1, 1})).has_value());
}

TEST(Polynomial, CubicDiscriminant) {
  EXPECT_EQ(cubic_discriminant(P({-1, -1, -1, 1})), -44);  // Tribonacci
  EXPECT_EQ(cubic_discriminant(P({0, -1, 0, 1})), 4);      // x^3 - x
}

TEST(Polynomial, DivisionWithRemainder) {
  auto [q, r] = divmod(to_rational(P({1, 0, 0, 1})), to_rational(P({1, 1})));
  EXPECT_EQ(q.degree(), 2);
  EXPECT_TRUE(r.is_zero());
}
