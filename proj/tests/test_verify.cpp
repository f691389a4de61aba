#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "bvft/testfns.hpp"
#include "bvft/transforms.hpp"
#include "bvft/verify.hpp"

using namespace bvft;
using std::numbers::pi;

namespace {

const double kLambdas[] = {0.25, 4.0};

std::vector<double> small_grid() { return geometric_grid(1e-2, 1e2, 4); }

// Catalan's constant.
constexpr double kCatalan = 0.915965594177219015;

}  // namespace

TEST(Verdicts, FinitenessAndConjunction) {
  QuadratureResult r;
  EXPECT_EQ(finiteness(r), Verdict::yes);
  r.status = QuadStatus::divergence_suspected;
  EXPECT_EQ(finiteness(r), Verdict::no);
  r.status = QuadStatus::max_depth_reached;
  EXPECT_EQ(finiteness(r), Verdict::undecided);
  EXPECT_EQ(both(Verdict::yes, Verdict::undecided), Verdict::undecided);
  EXPECT_EQ(both(Verdict::undecided, Verdict::no), Verdict::no);
  EXPECT_EQ(both(Verdict::yes, Verdict::yes), Verdict::yes);
  EXPECT_EQ(to_string(Verdict::undecided), "undecided");
}

TEST(NormReport, ExpVariationIsOne) {
  const NormReport n = norm_report(registry_get("exp"));
  EXPECT_EQ(n.function_id, "exp");
  EXPECT_NEAR(n.l1_fprime.value, 1.0, 1e-9);
  // T of -e^{-u} is integrable with norm ln 3.
  EXPECT_NEAR(n.l1_T_fprime.value, std::log(3.0), 1e-4 * std::log(3.0));
  EXPECT_NEAR(n.hq_integral.value, 4.0 * kCatalan / pi, 1e-4);
}

TEST(NormReport, TriangleCosineNormIsHalfPi) {
  const NormReport n = norm_report(registry_get("triangle"));
  EXPECT_NEAR(n.l1_ft_cosine.value, pi / 2.0, 1e-4 * pi / 2.0);
  EXPECT_NEAR(n.l1_fprime.value, 1.0, 1e-9);
}

TEST(NormReport, CancellationOfOddExtension) {
  for (const char* id : {"exp", "triangle", "gaussian", "rational"}) {
    const TestFunction f = registry_get(id);
    NormOptions o;
    const auto c = cancellation(f.fprime(), o);
    EXPECT_NEAR(c.value, 0.0, 1e-9) << id;
    const NormReport n = norm_report(f);
    EXPECT_NEAR(n.half_line_integral.value, -f.eval_f(0.0), 1e-9) << id;
  }
}

TEST(NormReport, OddOverloadLeavesCosineEmpty) {
  const NormReport n = norm_report(odd_function("bump"));
  EXPECT_EQ(n.l1_ft_cosine.value, 0.0);
  EXPECT_TRUE(n.l1_ft_cosine.converged());
  EXPECT_NEAR(n.l1_fprime.value, 0.5, 1e-9);
  EXPECT_NEAR(n.q0_integral.value, pi / 4.0, 1e-6);
}

TEST(CosineBound, ZeroIsDegenerate) { EXPECT_THROW(check_thm1(registry_get("zero")), DegenerateInput); }

TEST(CosineBound, ExpRatiosBelowCeiling) {
  const Thm1Result r = check_thm1(registry_get("exp"));
  EXPECT_TRUE(r.finite());
  EXPECT_LT(r.r_c, 10.0);
  EXPECT_LT(r.r_s, 10.0);
  EXPECT_GT(r.r_c, 0.0);
}

TEST(CosineBound, TriangleFOracle) {
  // ||F||_1 for the triangle is gamma + ln(pi/2).
  const Thm1Result r = check_thm1(registry_get("triangle"));
  EXPECT_NEAR(r.l1_F.value, 0.5772156649015329 + std::log(pi / 2.0), 1e-4);
}

TEST(CosineBound, DilationInvariance) {
  for (const char* id : {"exp", "gaussian"}) {
    const double base = check_thm1(registry_get(id)).r_c;
    for (double lambda : kLambdas) {
      const double r = check_thm1(registry_get(id, {{"lambda", lambda}})).r_c;
      EXPECT_NEAR(r, base, 1e-3 * base) << id << " lambda=" << lambda;
    }
  }
}

TEST(CosineIntegrability, ExpResidualAtOne) {
  const std::vector<double> grid{1.0};
  const Thm2Result r = check_thm2(registry_get("exp"), grid);
  ASSERT_EQ(r.residual.values.size(), 1u);
  EXPECT_LE(r.residual.values[0].value, 1e-6);
  EXPECT_EQ(r.cosine_integrable, Verdict::yes);
  EXPECT_TRUE(r.agree());
}

TEST(CosineIntegrability, NormsMatchForIntegrableFamilies) {
  for (const char* id : {"exp", "gaussian", "triangle"}) {
    const Thm2Result r = check_thm2(registry_get(id), small_grid());
    EXPECT_TRUE(r.agree()) << id;
    EXPECT_LE(r.max_residual, 1e-6) << id;
    EXPECT_NEAR(r.l1_ft_cosine.value, r.q0_fprime.value,
                r.l1_ft_cosine.abs_error_estimate + r.q0_fprime.abs_error_estimate +
                    1e-4 * r.l1_ft_cosine.value)
        << id;
  }
}

TEST(CosineIntegrability, LogDecayVerdictsAgree) {
  // f_c(x) ~ (pi/2) / (x ln^2(1/x)) near 0: integrable, but the dyadic
  // blocks only fall off like 1/k^2, so neither side may claim divergence.
  const Thm2Result r = check_thm2(registry_get("log_decay"), small_grid());
  EXPECT_TRUE(r.agree());
  EXPECT_NE(r.cosine_integrable, Verdict::no);
  EXPECT_NE(r.fprime_in_q0, Verdict::no);
}

TEST(SineDecomposition, ZeroGivesZeroGrids) {
  const DecompositionReport d = check_thm3(registry_get("zero"), small_grid());
  for (const TransformGrid* g : {&d.grid, &d.leading_term, &d.h0t_term, &d.g_residual, &d.f_residual}) {
    for (const auto& v : g->values) EXPECT_EQ(v.value, 0.0);
  }
  EXPECT_TRUE(d.reconstruction_exact());
}

TEST(SineDecomposition, ExpRatioAndReconstruction) {
  const DecompositionReport d = check_thm3(registry_get("exp"), small_grid());
  EXPECT_TRUE(d.reconstruction_exact());
  EXPECT_GT(d.ratio_G, 0.0);
  EXPECT_LT(d.ratio_G, 10.0);
  d.grid.validate();
  EXPECT_EQ(d.g_residual.points, d.grid.points);
}

TEST(SineDecomposition, ReconstructionIsBitwise) {
  for (const char* id : {"triangle", "gaussian", "rational"}) {
    const DecompositionReport d = check_thm3(registry_get(id), small_grid());
    for (std::size_t i = 0; i < d.grid.points.size(); ++i) {
      EXPECT_EQ(d.leading_term.values[i].value + d.h0t_term.values[i].value +
                    d.g_residual.values[i].value,
                d.grid.values[i].value)
          << id << " x=" << d.grid.points[i];
    }
  }
}

TEST(SineDecomposition, DilationInvariance) {
  const std::vector<double> grid{1.0};
  const double base = check_thm3(registry_get("exp"), grid).ratio_G;
  for (double lambda : kLambdas) {
    const double r = check_thm3(registry_get("exp", {{"lambda", lambda}}), grid).ratio_G;
    EXPECT_NEAR(r, base, 1e-3 * base) << lambda;
  }
}

TEST(QuotientHilbertBound, ZeroIsDegenerate) {
  EXPECT_THROW(check_prop1(odd_function("zero")), DegenerateInput);
  EXPECT_THROW(check_hardy(odd_function("zero")), DegenerateInput);
}

TEST(QuotientHilbertBound, BumpRatioFiniteAndDilationInvariant) {
  const RatioResult base = check_prop1(odd_function("bump"));
  EXPECT_FALSE(base.undecided);
  EXPECT_TRUE(std::isfinite(base.ratio));
  EXPECT_GT(base.ratio, 0.0);
  for (double lambda : kLambdas) {
    const RatioResult r = check_prop1(odd_function("bump", {{"lambda", lambda}}));
    EXPECT_NEAR(r.ratio, base.ratio, 1e-3 * base.ratio) << lambda;
  }
}

TEST(Hardy, BumpNumeratorIsHalfPi) {
  const RatioResult r = check_hardy(odd_function("bump"));
  EXPECT_NEAR(r.numerator.value, pi / 2.0, 1e-6);
  EXPECT_TRUE(std::isfinite(r.ratio));
  EXPECT_FALSE(r.undecided);
}

TEST(Hardy, DilationInvariance) {
  const double base = check_hardy(odd_function("bump")).ratio;
  for (double lambda : kLambdas) {
    const double r = check_hardy(odd_function("bump", {{"lambda", lambda}})).ratio;
    EXPECT_NEAR(r, base, 1e-3 * base) << lambda;
  }
}

TEST(Fubini, RightSideIsHalfPiForUnitVariation) {
  for (const char* id : {"exp", "triangle", "gaussian"}) {
    const FubiniResult r = check_fubini(registry_get(id));
    EXPECT_NEAR(r.rhs.value, pi / 2.0, 1e-9) << id;
    EXPECT_LE(r.relative_residual, 1e-6) << id;
  }
}

TEST(Fubini, HoldsUnderDilation) {
  for (double lambda : kLambdas) {
    const FubiniResult r = check_fubini(registry_get("rational", {{"lambda", lambda}}));
    EXPECT_LE(r.relative_residual, 1e-6) << lambda;
  }
}

TEST(Membership, BumpInQ0) {
  const MembershipVerdict v = classify_membership(odd_function("bump"));
  EXPECT_EQ(v.in_L10, Verdict::yes);
  EXPECT_EQ(v.in_Q0, Verdict::yes);
  ASSERT_TRUE(v.q0.has_value());
  EXPECT_NEAR(v.q0->value, pi / 4.0, 1e-6);
  EXPECT_TRUE(v.monotone());
}

TEST(Membership, ZeroInEverySpace) {
  const MembershipVerdict v = classify_membership(odd_function("zero"));
  EXPECT_EQ(v.in_L10, Verdict::yes);
  EXPECT_EQ(v.in_Q0, Verdict::yes);
  EXPECT_EQ(v.in_H1Q, Verdict::yes);
  EXPECT_EQ(v.in_H10, Verdict::yes);
}

TEST(Membership, LogSpectrumIsNotInQ0) {
  const MembershipVerdict v = classify_spectrum("log_spectrum", log_spectrum);
  EXPECT_EQ(v.in_Q0, Verdict::no);
  EXPECT_EQ(v.in_H1Q, Verdict::no);
  EXPECT_EQ(v.in_H10, Verdict::no);
  EXPECT_TRUE(v.monotone());
}

TEST(Membership, ChainIsMonotoneForShippedOddFunctions) {
  for (const std::string& id : odd_function_ids()) {
    const MembershipVerdict v = classify_membership(odd_function(id));
    EXPECT_TRUE(v.monotone()) << id;
  }
}

TEST(Membership, MonotoneRejectsContradictions) {
  MembershipVerdict v;
  v.in_H10 = Verdict::yes;
  v.in_Q0 = Verdict::no;
  EXPECT_FALSE(v.monotone());
  v.in_Q0 = Verdict::undecided;
  EXPECT_TRUE(v.monotone());
}

TEST(Gamma, L1BoundedByVariation) {
  NormOptions o;
  for (const char* id : {"exp", "gaussian", "triangle"}) {
    const HalfLineFunction g = registry_get(id).fprime();
    const auto gam = l1_gamma(g, o);
    const auto l1 = l1_norm(g, o);
    EXPECT_TRUE(gam.converged()) << id;
    EXPECT_LT(gam.value / l1.value, 10.0) << id;
  }
}
