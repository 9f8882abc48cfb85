#include <gtest/gtest.h>

#include <random>

#include "atansum/parser.hpp"
#include "atansum/telescope.hpp"

using namespace atansum;

namespace {

LemmaConfig cfg(LemmaVariant v, const char* f, const char* alpha, unsigned m, unsigned q) {
  return {v, parse_sequence(f), parse_scalar(alpha), m, q};
}

BoundedReal lit(const char* digits, const PrecisionContext& ctx) {
  // decimal literal -> exact rational -> bounded real
  return BoundedReal::exact(parse_scalar(digits).coefficient(), ctx);
}

BoundedReal cf(const char* s, const PrecisionContext& ctx) { return eval_expr(parse_closed_form(s), ctx); }

const PrecisionContext kCtx(30);

}  // namespace

TEST(Telescope, Atoms) {
  EXPECT_TRUE(difference_below(atom(cfg(LemmaVariant::L1, "k", "1", 1, 1), 3, kCtx), cf("atan(1/3)", kCtx), -30));
  EXPECT_TRUE(difference_below(atom(cfg(LemmaVariant::L1, "k^2-3*k+2", "1", 1, 1), 1, kCtx), cf("pi/2", kCtx), -30));
  EXPECT_TRUE(difference_below(atom(cfg(LemmaVariant::L1, "k-1", "1", 1, 1), 1, kCtx), cf("pi/2", kCtx), -30));
}

TEST(Telescope, Boundaries) {
  EXPECT_TRUE(difference_below(boundary(cfg(LemmaVariant::L1, "k", "1", 1, 1), 1, kCtx), cf("pi/4", kCtx), -30));
  EXPECT_TRUE(difference_below(boundary(cfg(LemmaVariant::L1, "k-1", "1", 2, 1), 1, kCtx), cf("pi^2/8", kCtx), -30));
  EXPECT_TRUE(difference_below(boundary(cfg(LemmaVariant::LP, "k-1/2", "1/2", 1, 1), 1, kCtx), cf("pi^2/16", kCtx), -30));
}

TEST(Telescope, Terms) {
  auto t = lhs_term(cfg(LemmaVariant::L1, "k", "1", 1, 1), 1, kCtx);
  EXPECT_TRUE(t.branch_ok);
  EXPECT_TRUE(difference_below(t.term, cf("atan(1/3)", kCtx), -30));
  auto a = lhs_term(cfg(LemmaVariant::L1, "k^2-3*k+1", "1", 3, 1), 1, kCtx);
  EXPECT_TRUE(difference_below(a.term, lit("0.60623657852030225441222412287961543191244858", kCtx), -30));
  auto z = lhs_term(cfg(LemmaVariant::L1, "k+2", "0", 2, 1), 4, kCtx);
  EXPECT_TRUE(z.term.is_exact_zero());
}

TEST(Telescope, RhsExact) {
  EXPECT_EQ(to_string(rhs_exact(cfg(LemmaVariant::L1, "k", "1", 1, 3))), "1/4*pi+atan(1/3)+atan(1/2)");
  EXPECT_TRUE(difference_below(eval_expr(rhs_exact(cfg(LemmaVariant::L1, "k", "1", 1, 3)), kCtx), cf("pi/2", kCtx), -30));
  EXPECT_EQ(to_string(rhs_exact(cfg(LemmaVariant::L1, "k-1", "1", 1, 1))), "1/2*pi");
  EXPECT_EQ(to_string(rhs_exact(cfg(LemmaVariant::L2_ODD, "k-1/2", "1/2", 1, 1))), "1/4*pi");
  EXPECT_EQ(to_string(rhs_exact(cfg(LemmaVariant::L1, "k-1", "sqrt(3)", 2, 1))), "1/6*pi^2");
  EXPECT_THROW(rhs_exact(cfg(LemmaVariant::L1, "k-1", "0", 1, 1)), Error);
  // empty product: one boundary term per k, no cofactors
  EXPECT_EQ(rhs_exact(cfg(LemmaVariant::L1, "k+1", "1", 1, 1)).terms().size(), 1U);
}

TEST(Telescope, PartialSums) {
  auto c = cfg(LemmaVariant::L1, "k-1", "1", 1, 1);
  EXPECT_TRUE(difference_below(partial_sum_boundary(c, 1, kCtx), cf("pi/4", kCtx), -30));
  EXPECT_TRUE(difference_below(partial_sum_direct(c, 1, kCtx), cf("pi/4", kCtx), -30));
  auto ten = lit("1.47112767430373459185287557176173085185530638", kCtx);
  EXPECT_TRUE(difference_below(partial_sum_boundary(c, 10, kCtx), ten, -30));
  EXPECT_TRUE(difference_below(partial_sum_direct(c, 10, kCtx), ten, -30));
  auto sq = lit("0.780423080066594232231267350605772073210044794", kCtx);
  EXPECT_TRUE(difference_below(partial_sum_direct(cfg(LemmaVariant::L1, "k", "1", 1, 1), 200, kCtx), sq, -30));
}

TEST(Telescope, Remainder) {
  auto c = cfg(LemmaVariant::L1, "k-1", "1", 1, 1);
  EXPECT_TRUE(difference_below(tail_remainder(c, 100, kCtx), cf("atan(1/100)", kCtx), -30));
  try {
    tail_remainder(cfg(LemmaVariant::L1, "k^2-3*k+1", "1", 3, 1), 1, kCtx);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInMonotoneRegime);
  }
}

TEST(Telescope, RegimeStart) {
  EXPECT_EQ(regime_start(cfg(LemmaVariant::L1, "k", "1", 1, 1)), 1);
  EXPECT_EQ(regime_start(cfg(LemmaVariant::L1, "k-1", "1", 1, 1)), 2);
  EXPECT_EQ(regime_start(cfg(LemmaVariant::L1, "k^2-3*k+1", "1", 3, 1)), 3);
  EXPECT_EQ(regime_start(cfg(LemmaVariant::LP, "k", "5/2", 1, 1)), 3);
}

TEST(Telescope, EvaluateHeadline) {
  struct Case {
    LemmaConfig c;
    const char* rhs;
  } cases[] = {
      {cfg(LemmaVariant::L1, "k", "1", 1, 3), "pi/2"},
      {cfg(LemmaVariant::L1, "k^2-k", "1/2", 1, 1), "pi/2"},
      {cfg(LemmaVariant::L1, "k-1", "1", 2, 1), "pi^2/8"},
      {cfg(LemmaVariant::L1, "k^2-3*k+1", "1", 3, 1), "pi^3/64"},
      {cfg(LemmaVariant::LP, "k^2-5*k+5", "1", 3, 1), nullptr},
  };
  for (auto& cs : cases) {
    auto r = evaluate(cs.c, 30);
    EXPECT_TRUE(r.match) << cs.c.str();
    EXPECT_LE(r.N, kMaxDirectTerms);
    if (cs.rhs) {
      EXPECT_TRUE(difference_below(r.lhs, cf(cs.rhs, kCtx), -28)) << cs.c.str();
    }
  }
}

TEST(Telescope, ResidualDespiteBranchFlag) {
  // k = 1 and 2 of this config flag the subtraction, but nothing jumps
  auto c = cfg(LemmaVariant::L1, "k^2-3*k+1", "1", 3, 1);
  for (long k = 1; k <= 50; ++k) EXPECT_TRUE(difference_below(telescoping_residual(c, k, kCtx), BoundedReal(), -30)) << k;
  auto m = cfg(LemmaVariant::L1, "k-1", "1", 1, 1);
  auto simple = cfg(LemmaVariant::L1, "k", "1", 1, 1);
  for (long k = 1; k <= 50; ++k) {
    EXPECT_TRUE(difference_below(telescoping_residual(m, k, kCtx), BoundedReal(), -30));
    EXPECT_TRUE(difference_below(telescoping_residual(simple, k, kCtx), BoundedReal(), -30));
  }
}

TEST(Telescope, ResidualDetectsJump) {
  // alpha = 1, f(k) = k - 3/2: f(1) = -1/2, f(2) = 1/2, xy + 1 = 3/4 but the sub condition fails
  auto c = cfg(LemmaVariant::L1, "k-3/2", "1", 1, 1);
  auto t = lhs_term(c, 1, kCtx);
  EXPECT_FALSE(t.branch_ok);
  auto r = telescoping_residual(c, 1, kCtx);
  auto pi = pi_const(kCtx);
  EXPECT_TRUE(overlaps(r, pi) || overlaps(r, -pi));
}

TEST(Telescope, LpaltMatchesSquaredEvenStride) {
  // LPALT with q equals the squared alternating form with index step 2q
  auto alt = cfg(LemmaVariant::LPALT, "k", "1", 2, 1);
  Telescope t(alt, kCtx);
  for (long k = 1; k <= 20; ++k) {
    BoundedReal expect = t.atom(k) * t.atom(k) * t.atom(k + 2) * t.atom(k + 2);
    if (k % 2 == 0) expect = -expect;
    EXPECT_TRUE(overlaps(t.signed_boundary(k), expect));
  }
  EXPECT_EQ(alt.stride(), 2);
  EXPECT_EQ(alt.span(), 4);
}

// Oracle pair: direct accumulation vs exact telescoping, plus parity in alpha.
TEST(Telescope, RandomBoundaryVsDirect) {
  const char* families[] = {"k", "k+1", "k-1", "k^2-3*k+2", "(k-1)^3", "k^2-5*k+5"};
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> fam(0, 5), mm(1, 4), qq(1, 4), an(-30, 30), nn(1, 200), var(0, 4);
  PrecisionContext ctx(25);
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    Rational a(an(rng), 10);
    a.canonicalize();
    if (a == 0) a = 1;
    auto v = static_cast<LemmaVariant>(var(rng));
    unsigned q = static_cast<unsigned>(qq(rng));
    if (v == LemmaVariant::L2_EVEN && q % 2) ++q;
    if (v == LemmaVariant::L2_ODD && q % 2 == 0) --q;
    LemmaConfig c(v, parse_sequence(families[fam(rng)]), ExactScalar(a), static_cast<unsigned>(mm(rng)), q);
    long N = nn(rng);
    Telescope t(c, ctx);
    bool all_ok = true;
    for (long k = 1; k <= N; ++k) all_ok = all_ok && overlaps(t.residual(k), BoundedReal());
    if (!all_ok) continue;
    ++checked;
    EXPECT_TRUE(overlaps(partial_sum_direct(c, N, ctx), partial_sum_boundary(c, N, ctx))) << c.str() << " N=" << N;
  }
  EXPECT_GT(checked, 20);
}
