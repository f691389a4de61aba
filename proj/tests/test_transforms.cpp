#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "bvft/quadrature.hpp"
#include "bvft/specfun.hpp"
#include "bvft/testfns.hpp"
#include "bvft/transforms.hpp"

using namespace bvft;
using std::numbers::pi;

namespace {

QuadratureOptions tight() {
  QuadratureOptions o;
  o.abs_tol = 1e-12;
  return o;
}

HalfLineFunction bump() { return odd_function("bump"); }

HalfLineFunction zero_fn() { return odd_function("zero"); }

// Closed forms for g(t) = t/(1+t^2)^2.
double bump_h0(double x) { return (1.0 - x * x) / (2.0 * (1.0 + x * x) * (1.0 + x * x)); }
double bump_script_t(double x) { return pi / 4.0 * std::exp(-x); }

const char* kParts[] = {"exp", "triangle", "gaussian", "rational"};

}  // namespace

TEST(Fourier, ExpExamples) {
  const TestFunction f = registry_get("exp");
  EXPECT_NEAR(fourier_cosine(f, 1.0, tight()).value, 0.5, 1e-10);
  EXPECT_NEAR(fourier_cosine(f, 0.0, tight()).value, 1.0, 1e-10);
  EXPECT_NEAR(fourier_sine(f, 1.0, tight()).value, 0.5, 1e-10);
  EXPECT_EQ(fourier_sine(f, 0.0).value, 0.0);
}

TEST(Fourier, TriangleAtPi) {
  const TestFunction f = registry_get("triangle");
  EXPECT_NEAR(fourier_cosine(f, pi, tight()).value, 2.0 / (pi * pi), 1e-10);
  EXPECT_NEAR(fourier_sine(f, pi, tight()).value, 1.0 / pi, 1e-10);
}

TEST(Fourier, SineVanishesLinearlyAtZero) {
  const double x = 1e-6;
  for (const char* id : kParts) {
    const TestFunction f = registry_get(id);
    const auto moment = integrate_halfline([&](double t) { return t * std::abs(f.eval_f(t)); },
                                           tight(), f.kinks);
    if (std::string(id) == "rational") {
      // 1/(1+t^2) has no first moment; the bound says nothing there.
      EXPECT_EQ(moment.status, QuadStatus::divergence_suspected);
      continue;
    }
    EXPECT_LE(std::abs(fourier_sine(f, x, tight()).value), 2.0 * x * moment.value) << id;
  }
}

TEST(Fourier, PartsIdentityOnDefaultGrid) {
  for (const char* id : kParts) {
    const TestFunction f = registry_get(id);
    const HalfLineFunction g = f.fprime();
    for (double x : default_grid()) {
      const double c = fourier_cosine(f, x, tight()).value;
      const double s = sine_transform(g, x, tight()).value;
      EXPECT_LE(std::abs(c + s / x), 1e-6 * (1.0 + std::abs(c))) << id << " x=" << x;
    }
  }
}

TEST(Fourier, DilationCovariance) {
  for (const char* id : kParts) {
    const TestFunction f = registry_get(id);
    for (double lambda : {0.25, 3.0}) {
      const TestFunction fl = dilate(f, lambda);
      for (double x : {0.05, 0.7, 4.0, 30.0}) {
        const double lhs = fourier_cosine(fl, x, tight()).value;
        const double rhs = fourier_cosine(f, x / lambda, tight()).value / lambda;
        EXPECT_NEAR(lhs, rhs, 1e-8) << id << " lambda=" << lambda << " x=" << x;
      }
    }
  }
}

TEST(TTransform, LocallyConstantGivesZero) {
  HalfLineFunction g;
  g.value = [](double) { return 3.0; };
  g.derivative = [](double) { return 0.0; };
  EXPECT_NEAR(t_transform(g, 1.5).value, 0.0, 1e-14);
}

TEST(TTransform, LinearGivesT) {
  HalfLineFunction g;
  g.value = [](double u) { return u; };
  g.derivative = [](double) { return 1.0; };
  for (double t : {0.01, 1.0, 7.0}) EXPECT_NEAR(t_transform(g, t).value, t, 1e-10 * t);
}

TEST(TTransform, ExponentialAtTwo) {
  HalfLineFunction g;
  g.value = [](double u) { return std::exp(-u); };
  g.derivative = [](double u) { return -std::exp(-u); };
  // -2 e^{-2} Shi(1) with Shi(1) = 1.0572508753757285.
  EXPECT_NEAR(t_transform(g, 2.0, tight()).value, -0.286166693342262, 1e-10);
}

TEST(TTransform, ExcisionLadderWithoutDerivative) {
  HalfLineFunction g;
  g.value = [](double u) { return std::exp(-u); };
  const auto r = t_transform(g, 2.0, tight());
  EXPECT_NEAR(r.value, -0.286166693342262, 1e-7);
}

TEST(TTransform, BumpMatchesNestedOracle) {
  EXPECT_NEAR(t_transform(bump(), 1.0, tight()).value, -0.227131238320737, 1e-9);
  EXPECT_NEAR(t_transform(bump(), 2.0, tight()).value, -0.192196373037412, 1e-9);
}

TEST(Hilbert, ZeroFunction) { EXPECT_EQ(hilbert_odd(zero_fn(), 1.0).value, 0.0); }

TEST(Hilbert, BumpExamples) {
  EXPECT_NEAR(hilbert_odd(bump(), 1.0, tight()).value, 0.0, 1e-8);
  EXPECT_NEAR(hilbert_odd(bump(), 1e-6, tight()).value, 0.5, 1e-7);
}

TEST(Hilbert, BumpClosedFormOnGrid) {
  for (double x : geometric_grid(1e-2, 1e2, 5)) {
    const auto r = hilbert_odd(bump(), x, tight());
    EXPECT_NEAR(r.value, bump_h0(x), 1e-6) << "x=" << x;
  }
}

TEST(Hilbert, FullLineSymmetryExamples) {
  LineFunction even;
  even.value = [](double t) { return 1.0 / (1.0 + t * t); };
  EXPECT_NEAR(hilbert_full(even, 0.0, tight()).value, 0.0, 1e-12);

  LineFunction box;
  box.value = [](double t) { return std::abs(t) < 1.0 ? 1.0 : 0.0; };
  box.kinks = {-1.0, 1.0};
  box.support = 1.0;
  EXPECT_NEAR(hilbert_full(box, 0.0, tight()).value, 0.0, 1e-12);

  EXPECT_NEAR(hilbert_full(odd_extension(bump()), 1.0, tight()).value, 0.0, 1e-8);
}

TEST(Hilbert, OddKernelConsistency) {
  for (const std::string id : {"bump", "fprime:exp", "fprime:gaussian", "fprime:triangle"}) {
    const HalfLineFunction g = odd_function(id);
    const LineFunction e = odd_extension(g);
    // x = 1 is avoided: f' of the triangle jumps there.
    for (double x : {0.3, 1.7, 2.5}) {
      EXPECT_NEAR(hilbert_full(e, x, tight()).value, hilbert_odd(g, x, tight()).value, 1e-8)
          << id << " x=" << x;
    }
  }
}

TEST(ScriptT, BumpExamples) {
  EXPECT_NEAR(script_t(bump(), 1.0, tight()).value, pi / 4.0 * std::exp(-1.0), 1e-9);
  EXPECT_NEAR(script_t(bump(), 0.0, tight()).value, pi / 4.0, 1e-9);
  EXPECT_EQ(script_t(zero_fn(), 1.0).value, 0.0);
}

TEST(ScriptT, BumpClosedFormOnGrid) {
  for (double x : geometric_grid(1e-2, 1e1, 6)) {
    EXPECT_NEAR(script_t(bump(), x, tight()).value, bump_script_t(x), 1e-7) << "x=" << x;
  }
}

TEST(ScriptT, DivergentMomentIsFlagged) {
  HalfLineFunction g;
  g.value = [](double t) { return t / (1.0 + t * t); };
  EXPECT_EQ(script_t(g, 0.0).status, QuadStatus::divergence_suspected);
}

TEST(Bateman, MatchesPvQuadrature) {
  for (double a : {0.5, 1.0, 3.0}) {
    for (double y : {0.4, 1.0, 2.0}) {
      const Integrand h = [a, y](double u) { return std::sin(y * u) / ((a - u) * (a + u)); };
      const auto near = integrate_pv(h, 0.0, 2.0 * a, PvSpec::geometric(a, 0.0, 2.0 * a, 12), tight());
      OscillatoryHints hints;
      hints.lower = 2.0 * a;
      const auto far = integrate_oscillatory(
          [a](double u) { return 1.0 / ((a - u) * (a + u)); }, y, Oscillator::sine, tight(), hints);
      EXPECT_NEAR(bateman_sine_pv(a, y), near.value + far.value, 1e-8) << "a=" << a << " y=" << y;
    }
  }
}

TEST(Cisi, KernelSplitAgreesWithDefinition) {
  for (double v : {0.0, 0.3, 1.0, 4.0, 25.0, 300.0}) {
    const double direct =
        v == 0.0 ? 0.0 : std::cos(v) * specfun::si(v) - std::sin(v) * specfun::ci(v);
    EXPECT_NEAR(cisi_kernel(v), direct, 1e-12) << "v=" << v;
  }
}

TEST(Cisi, ZeroDerivativeGivesZero) { EXPECT_EQ(h0_script_t_cisi(zero_fn(), 1.0).value, 0.0); }

TEST(Cisi, ExpClosedForm) {
  const HalfLineFunction g = registry_get("exp").fprime();
  for (double x : {0.5, 1.0, 2.0, 10.0}) {
    EXPECT_NEAR(h0_script_t_cisi(g, x, tight()).value, 2.0 / pi * std::log(x) / (1.0 + x * x),
                1e-9)
        << "x=" << x;
  }
}

TEST(Cisi, DualPathOnGridExpAndGaussian) {
  for (const char* id : {"exp", "gaussian"}) {
    const HalfLineFunction g = registry_get(id).fprime();
    for (double x : geometric_grid(1e-2, 1e2, 5)) {
      const double a = h0_script_t_cisi(g, x).value;
      const double b = h0_script_t_direct(g, x).value;
      EXPECT_NEAR(a, b, 1e-5) << id << " x=" << x;
    }
  }
}

TEST(Cisi, DualPathTriangleAtTwo) {
  const HalfLineFunction g = registry_get("triangle").fprime();
  EXPECT_NEAR(h0_script_t_cisi(g, 2.0).value, h0_script_t_direct(g, 2.0).value, 1e-5);
}

TEST(Gamma, ZeroAndBump) {
  EXPECT_EQ(gamma_residual(zero_fn(), 1.0).value, 0.0);
  EXPECT_NEAR(gamma_residual(bump(), 1.0, tight()).value, 0.227131238320737, 1e-8);
}

TEST(Tail, TriangleVanishesWhenLowerLimitPassesSupport) {
  const TestFunction f = registry_get("triangle");
  EXPECT_EQ(tail_integral(f, pi / 2.0).value, 0.0);
  EXPECT_EQ(tail_integral(f, 0.3).value, 0.0);
  EXPECT_NE(tail_integral(f, 10.0).value, 0.0);
}

TEST(Tail, ExpComplement) {
  const TestFunction f = registry_get("exp");
  // Head: int_0^{pi/2} e^{-t} sin t dt = (1 - e^{-pi/2}) / 2.
  const double head = 0.5 * (1.0 - std::exp(-pi / 2.0));
  EXPECT_NEAR(tail_integral(f, 1.0, tight()).value, 0.5 - head, 1e-10);
  EXPECT_NEAR(tail_integral(f, 1.0, tight()).value, 0.103939788175381, 1e-10);
}

TEST(Tail, AdditivityWithHead) {
  for (const char* id : kParts) {
    const TestFunction f = registry_get(id);
    for (double x : {0.2, 1.0, 6.0}) {
      const auto tail = tail_integral(f, x, tight());
      const auto head = integrate_finite([&](double t) { return f.eval_f(t) * std::sin(x * t); },
                                         0.0, pi / (2.0 * x), tight(), f.kinks);
      const auto full = fourier_sine(f, x, tight());
      EXPECT_NEAR(tail.value + head.value, full.value,
                  tail.abs_error_estimate + head.abs_error_estimate + full.abs_error_estimate +
                      1e-10)
          << id << " x=" << x;
    }
  }
}

TEST(Grid, DefaultGridShape) {
  const auto g = default_grid();
  ASSERT_EQ(g.size(), 101u);
  EXPECT_DOUBLE_EQ(g.front(), 1e-2);
  EXPECT_DOUBLE_EQ(g.back(), 1e2);
  EXPECT_NEAR(g[25], 1e-1, 1e-15);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_LT(g[i - 1], g[i]);
}

TEST(Grid, ValidateRejectsBadGrids) {
  TransformGrid t;
  t.points = {1.0, 2.0};
  t.values.resize(1);
  EXPECT_THROW(t.validate(), std::invalid_argument);
  t.values.resize(2);
  EXPECT_NO_THROW(t.validate());
  t.points = {2.0, 1.0};
  EXPECT_THROW(t.validate(), std::invalid_argument);
  t.points = {0.0, 1.0};
  EXPECT_THROW(t.validate(), std::invalid_argument);
}

TEST(Grid, SweepIsDeterministicAcrossThreads) {
  const TestFunction f = registry_get("gaussian");
  const auto pts = geometric_grid(1e-2, 1e2, 8);
  const auto fn = [&](double x) { return fourier_cosine(f, x); };
  const TransformGrid a = sweep(pts, fn, 1);
  const TransformGrid b = sweep(pts, fn, 4);
  ASSERT_EQ(a.values.size(), pts.size());
  std::ostringstream sa, sb;
  write_csv(sa, a);
  write_csv(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(Csv, HeaderAndRows) {
  TransformGrid t;
  t.points = {0.5};
  QuadratureResult r;
  r.value = 0.25;
  r.abs_error_estimate = 1e-12;
  r.evaluations = 42;
  t.values = {r};
  std::ostringstream os;
  write_csv(os, t);
  EXPECT_EQ(os.str(), "x,value,abs_error_estimate,status,evaluations\n0.5,0.25,1e-12,converged,42\n");
}

TEST(Csv, NumberFormatRoundTrips) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(std::nan("")), "nan");
  EXPECT_EQ(format_number(INFINITY), "inf");
  EXPECT_EQ(format_number(-INFINITY), "-inf");
  for (double v : {pi, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) {
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
}
