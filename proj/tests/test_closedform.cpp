#include <gtest/gtest.h>

#include "atansum/closedform.hpp"
#include "atansum/parser.hpp"

using namespace atansum;

namespace {
ClosedFormExpr cf(const char* s) { return parse_closed_form(s); }
}  // namespace

TEST(ClosedForm, WhitelistRewrites) {
  EXPECT_EQ(to_string(simplify(cf("atan(1)*atan(1)"))), "1/16*pi^2");
  EXPECT_EQ(to_string(simplify(cf("atan(sqrt(3))^3"))), "1/27*pi^3");
  EXPECT_EQ(to_string(simplify(cf("atan(1)^3"))), "1/64*pi^3");
  EXPECT_EQ(to_string(simplify(cf("atan(1/sqrt(3))"))), "1/6*pi");
  EXPECT_EQ(to_string(simplify(cf("atan(2)"))), "atan(2)");
  EXPECT_EQ(to_string(simplify(cf("atan(0)*atan(5)+1"))), "1");
  EXPECT_EQ(to_string(simplify(cf("atan(-2)"))), "-atan(2)");
}

TEST(ClosedForm, HalfPiAtom) {
  auto e = ClosedFormExpr::half_pi() * ClosedFormExpr::atan(ExactScalar::sqrt_of(Rational(3)));
  EXPECT_EQ(to_string(simplify(e)), "1/6*pi^2");
  EXPECT_EQ(to_string(simplify(ClosedFormExpr::half_pi() * ClosedFormExpr::atan(2))), "1/2*pi*atan(2)");
}

TEST(ClosedForm, CanonicalText) {
  EXPECT_EQ(to_string(simplify(cf("pi^3/64"))), "1/64*pi^3");
  EXPECT_EQ(to_string(simplify(cf("atan(1/2)*atan(sqrt(3))*atan(sqrt(3)) + 0"))), "1/9*pi^2*atan(1/2)");
  EXPECT_EQ(to_string(simplify(cf("atan(2*sqrt(3))^2*atan(1/2)"))), "atan(1/2)*atan(2*sqrt(3))^2");
}

TEST(ClosedForm, SimplifyIdempotentAndMerges) {
  auto e = cf("atan(1)+atan(1/2)+atan(1/3)+atan(1/2)-atan(1/2)*2");
  auto s = simplify(e);
  EXPECT_EQ(to_string(s), to_string(simplify(s)));
  EXPECT_EQ(to_string(s), "1/4*pi+atan(1/3)");
}

TEST(ClosedForm, Evaluation) {
  PrecisionContext ctx(30);
  auto v = eval_expr(cf("pi^2/8"), ctx);
  EXPECT_EQ(v.str(10), "1.2337005501");
  EXPECT_TRUE(expr_equal(cf("atan(1)+atan(1/2)+atan(1/3)"), cf("pi/2"), ctx));
  EXPECT_TRUE(expr_equal(cf("pi/4"), cf("atan(1)"), ctx));
  EXPECT_FALSE(expr_equal(cf("pi^2/8"), cf("pi^2/9"), PrecisionContext(20)));
  EXPECT_TRUE(expr_equal(ClosedFormExpr::half_pi() * ClosedFormExpr::atan(ExactScalar::sqrt_of(Rational(3))),
                         cf("pi^2/6"), ctx));
}

TEST(ClosedForm, SimplifyPreservesValue) {
  const char* samples[] = {"atan(1)^2*atan(3)-pi/7", "atan(-sqrt(3))*atan(1/3)+atan(0)", "3*atan(1/sqrt(3))^2"};
  for (const char* s : samples) {
    for (unsigned d : {15U, 40U}) {
      PrecisionContext ctx(d);
      EXPECT_TRUE(expr_equal(cf(s), simplify(cf(s)), ctx)) << s;
    }
  }
}

TEST(ClosedForm, PrintParseRoundTrip) {
  const char* samples[] = {"1/64*pi^3", "1/2*pi*atan(2)", "atan(sqrt(3))^2*atan(1/2)", "-atan(2/3)+5/4*pi",
                           "pi^2/8-1/3*atan(1/7)^2"};
  PrecisionContext ctx(50);
  for (const char* s : samples) {
    auto e = cf(s);
    auto back = cf(to_string(e).c_str());
    EXPECT_TRUE(expr_equal(e, back, ctx)) << s;
    EXPECT_EQ(to_string(simplify(e)), to_string(simplify(back)));
  }
}
