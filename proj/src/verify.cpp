#include "bvft/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bvft {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Folds the status and cost of inner quadratures into the outer result.
struct InnerTracker {
  QuadStatus status = QuadStatus::converged;
  long evaluations = 0;

  double take(const QuadratureResult& r) {
    status = worst(status, r.status);
    evaluations += r.evaluations;
    return r.value;
  }

  QuadratureResult fold(QuadratureResult outer) const {
    outer.status = worst(outer.status, status);
    outer.evaluations += evaluations;
    return outer;
  }
};

// Right end of the region where the function or its features live.
double extent(const HalfLineFunction& g) {
  double e = g.compact() ? g.support : 0.0;
  for (double k : g.kinks) e = std::max(e, k);
  return e;
}

// Sampling step for the sign-change search on a transform of g: a quarter
// of the oscillation period 2 pi / extent when g has compact support.
double transform_spacing(const HalfLineFunction& g) {
  if (!g.compact() || !(g.support > 0.0)) return 0.0;
  return kPi / (2.0 * extent(g));
}

QuadratureResult abs_integral(const Integrand& h, double support, const QuadratureOptions& opts,
                              std::span<const double> breakpoints, double spacing) {
  if (std::isfinite(support)) {
    if (!(support > 0.0)) return {};
    return integrate_abs(h, 0.0, support, opts, breakpoints, spacing);
  }
  // The spacing is a quarter period.
  QuadratureOptions o = opts;
  o.oscillation_period = 4.0 * spacing;
  return integrate_abs_halfline(h, o, breakpoints, spacing);
}

std::vector<double> t_transform_breaks(const HalfLineFunction& g) {
  std::vector<double> b;
  for (double k : g.kinks) {
    b.push_back(2.0 * k / 3.0);
    b.push_back(k);
    b.push_back(2.0 * k);
  }
  if (g.compact()) {
    b.push_back(2.0 * g.support / 3.0);
    b.push_back(g.support);
    b.push_back(2.0 * g.support);
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

std::vector<double> hilbert_breaks(const HalfLineFunction& g) {
  std::vector<double> b = g.kinks;
  if (g.compact()) b.push_back(g.support);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

// Points x = pi/(2k) where f(pi/(2x)) crosses a kink of f.
std::vector<double> leading_breaks(const TestFunction& f) {
  std::vector<double> b;
  for (double k : f.kinks) {
    if (k > 0.0) b.push_back(kPi / (2.0 * k));
  }
  std::sort(b.begin(), b.end());
  return b;
}

double leading_term(const TestFunction& f, double x) { return f.eval_f(kPi / (2.0 * x)) / x; }

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return "yes";
    case Verdict::no:
      return "no";
    case Verdict::undecided:
      return "undecided";
  }
  return "undecided";
}

Verdict finiteness(const QuadratureResult& r) {
  switch (r.status) {
    case QuadStatus::converged:
      return std::isfinite(r.value) ? Verdict::yes : Verdict::undecided;
    case QuadStatus::divergence_suspected:
      return Verdict::no;
    case QuadStatus::max_depth_reached:
      return Verdict::undecided;
  }
  return Verdict::undecided;
}

Verdict both(Verdict a, Verdict b) {
  if (a == Verdict::no || b == Verdict::no) return Verdict::no;
  if (a == Verdict::undecided || b == Verdict::undecided) return Verdict::undecided;
  return Verdict::yes;
}

// ---------------------------------------------------------------------------
// Norms

QuadratureResult l1_norm(const HalfLineFunction& g, const NormOptions& opts) {
  return abs_integral(g.value, g.support, opts.inner, g.kinks, 0.0);
}

QuadratureResult l1_T_norm(const HalfLineFunction& g, const NormOptions& opts) {
  InnerTracker tr;
  const Integrand h = [&](double t) { return tr.take(t_transform(g, t, opts.inner)); };
  const double support = g.compact() ? 2.0 * g.support : kInf;
  return tr.fold(abs_integral(h, support, opts.outer, t_transform_breaks(g), 0.0));
}

QuadratureResult l1_cosine_norm(const TestFunction& f, const NormOptions& opts) {
  const HalfLineFunction fh = f.f();
  InnerTracker tr;
  const Integrand h = [&](double x) { return tr.take(cosine_transform(fh, x, opts.inner)); };
  return tr.fold(abs_integral(h, kInf, opts.outer, {}, transform_spacing(fh)));
}

QuadratureResult q0_integral(const HalfLineFunction& g, const NormOptions& opts) {
  InnerTracker tr;
  const Integrand h = [&](double x) { return tr.take(script_t(g, x, opts.inner)); };
  return tr.fold(abs_integral(h, kInf, opts.outer, {}, transform_spacing(g)));
}

QuadratureResult l1_hilbert_odd(const HalfLineFunction& g, const NormOptions& opts) {
  InnerTracker tr;
  const Integrand h = [&](double x) { return tr.take(hilbert_odd(g, x, opts.inner)); };
  return tr.fold(abs_integral(h, kInf, opts.outer, hilbert_breaks(g), 0.0));
}

QuadratureResult h1_full_norm(const HalfLineFunction& g, const NormOptions& opts) {
  return scaled(combine(l1_norm(g, opts), l1_hilbert_odd(g, opts)), 2.0);
}

QuadratureResult hq_integral(const HalfLineFunction& g, const NormOptions& opts) {
  InnerTracker tr;
  const Integrand h = [&](double x) { return tr.take(h0_script_t_cisi(g, x, opts.inner)); };
  return tr.fold(abs_integral(h, kInf, opts.outer, {}, transform_spacing(g)));
}

QuadratureResult cancellation(const HalfLineFunction& g, const NormOptions& opts) {
  const LineFunction ext = odd_extension(g);
  const RealFn& v = ext.value;
  const Integrand right = [&v](double t) { return v(t); };
  const Integrand left = [&v](double t) { return v(-t); };
  if (std::isfinite(ext.support)) {
    return combine(integrate_finite(right, 0.0, ext.support, opts.inner, g.kinks),
                   integrate_finite(left, 0.0, ext.support, opts.inner, g.kinks));
  }
  return combine(integrate_halfline(right, opts.inner, g.kinks),
                 integrate_halfline(left, opts.inner, g.kinks));
}

QuadratureResult l1_gamma(const HalfLineFunction& g, const NormOptions& opts) {
  InnerTracker tr;
  const Integrand h = [&](double x) { return tr.take(gamma_residual(g, x, opts.inner)); };
  std::vector<double> breaks = t_transform_breaks(g);
  for (double k : hilbert_breaks(g)) breaks.push_back(k);
  std::sort(breaks.begin(), breaks.end());
  return tr.fold(abs_integral(h, kInf, opts.outer, breaks, 0.0));
}

QuadratureResult l1_F(const TestFunction& f, const NormOptions& opts) {
  const HalfLineFunction fh = f.f();
  InnerTracker tr;
  const Integrand h = [&](double x) {
    return tr.take(sine_transform(fh, x, opts.inner)) - leading_term(f, x);
  };
  return tr.fold(abs_integral(h, kInf, opts.outer, leading_breaks(f), transform_spacing(fh)));
}

QuadratureResult l1_G(const TestFunction& f, const NormOptions& opts) {
  const HalfLineFunction fh = f.f();
  const HalfLineFunction g = f.fprime();
  InnerTracker tr;
  const Integrand h = [&](double x) {
    const double s = tr.take(sine_transform(fh, x, opts.inner));
    const double q = tr.take(h0_script_t_cisi(g, x, opts.inner));
    return s - leading_term(f, x) - q;
  };
  return tr.fold(abs_integral(h, kInf, opts.outer, leading_breaks(f), transform_spacing(fh)));
}

// ---------------------------------------------------------------------------
// Reports

NormReport norm_report(const TestFunction& f, const NormOptions& opts) {
  const HalfLineFunction g = f.fprime();
  NormReport r = norm_report(g, opts);
  r.function_id = f.label();
  r.l1_ft_cosine = l1_cosine_norm(f, opts);
  return r;
}

NormReport norm_report(const HalfLineFunction& g, const NormOptions& opts) {
  NormReport r;
  r.function_id = g.id;
  r.l1_fprime = l1_norm(g, opts);
  r.l1_T_fprime = l1_T_norm(g, opts);
  r.q0_integral = q0_integral(g, opts);
  r.h1_full = h1_full_norm(g, opts);
  r.hq_integral = hq_integral(g, opts);
  r.cancellation = cancellation(g, opts);
  r.half_line_integral = g.compact() ? integrate_finite(g.value, 0.0, g.support, opts.inner, g.kinks)
                                     : integrate_halfline(g.value, opts.inner, g.kinks);
  return r;
}

bool Thm1Result::finite() const { return std::isfinite(r_c) && std::isfinite(r_s); }

Thm1Result check_thm1(const TestFunction& f, const NormOptions& opts) {
  const HalfLineFunction g = f.fprime();
  Thm1Result r;
  r.l1_fprime = l1_norm(g, opts);
  r.l1_T_fprime = l1_T_norm(g, opts);
  const double denom = r.l1_fprime.value + r.l1_T_fprime.value;
  if (denom == 0.0) {
    throw DegenerateInput("check_thm1: ||f'||_1 + ||Tf'||_1 vanishes for " + f.label());
  }
  r.l1_ft_cosine = l1_cosine_norm(f, opts);
  r.l1_F = l1_F(f, opts);
  r.r_c = r.l1_ft_cosine.value / denom;
  r.r_s = r.l1_F.value / denom;
  return r;
}

Thm2Result check_thm2(const TestFunction& f, std::span<const double> grid,
                      const NormOptions& opts) {
  const HalfLineFunction fh = f.f();
  const HalfLineFunction g = f.fprime();
  Thm2Result r;
  r.residual = sweep(
      grid,
      [&](double x) {
        const QuadratureResult c = cosine_transform(fh, x, opts.inner);
        const QuadratureResult q = script_t(g, x, opts.inner);
        QuadratureResult d = combine(c, q);
        d.value = std::abs(d.value);
        return d;
      },
      opts.threads);
  for (const QuadratureResult& v : r.residual.values) {
    r.max_residual = std::max(r.max_residual, v.value);
  }
  r.l1_ft_cosine = l1_cosine_norm(f, opts);
  r.q0_fprime = q0_integral(g, opts);
  r.cosine_integrable = finiteness(r.l1_ft_cosine);
  r.fprime_in_q0 = finiteness(r.q0_fprime);
  return r;
}

bool DecompositionReport::reconstruction_exact() const {
  const std::size_t n = grid.points.size();
  if (leading_term.values.size() != n || h0t_term.values.size() != n ||
      g_residual.values.size() != n) {
    return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double sum =
        (leading_term.values[i].value + h0t_term.values[i].value) + g_residual.values[i].value;
    if (sum != grid.values[i].value) return false;
  }
  return true;
}

DecompositionReport check_thm3(const TestFunction& f, std::span<const double> grid,
                               const NormOptions& opts) {
  const HalfLineFunction fh = f.f();
  const HalfLineFunction g = f.fprime();
  DecompositionReport r;
  r.grid = sweep(grid, [&](double x) { return sine_transform(fh, x, opts.inner); }, opts.threads);
  r.h0t_term =
      sweep(grid, [&](double x) { return h0_script_t_cisi(g, x, opts.inner); }, opts.threads);

  const std::size_t n = r.grid.points.size();
  r.leading_term.points = r.grid.points;
  r.g_residual.points = r.grid.points;
  r.f_residual.points = r.grid.points;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = r.grid.points[i];
    const QuadratureResult& s = r.grid.values[i];
    const QuadratureResult& h = r.h0t_term.values[i];
    // All terms are rounded to a common binary grid a few ulps wide so that
    // lead + h and f_s - (lead + h) are exact and the split reassembles bit
    // for bit.
    double lead = leading_term(f, x);
    double hv = h.value;
    double sv = s.value;
    const double m = std::max({std::abs(lead), std::abs(hv), std::abs(sv)});
    if (std::isfinite(m) && m > 0x1p-960) {
      const double q = std::ldexp(1.0, std::ilogb(m) + 2 - std::numeric_limits<double>::digits + 1);
      const auto snap = [q](double v) { return std::nearbyint(v / q) * q; };
      lead = snap(lead);
      hv = snap(hv);
      sv = snap(sv);
    }
    r.grid.values[i].value = sv;
    r.h0t_term.values[i].value = hv;
    r.leading_term.values.push_back({lead, 0.0, QuadStatus::converged, 1});

    QuadratureResult fr = s;
    fr.value = sv - lead;
    r.f_residual.values.push_back(fr);

    const double gv = sv - (lead + hv);
    QuadratureResult gr = combine(s, h);
    gr.value = gv;
    r.g_residual.values.push_back(gr);
  }

  r.l1_fprime = l1_norm(g, opts);
  r.l1_G = l1_G(f, opts);
  r.l1_F = l1_F(f, opts);
  if (r.l1_fprime.value != 0.0) {
    r.ratio_G = r.l1_G.value / r.l1_fprime.value;
  } else {
    r.ratio_G = r.l1_G.value == 0.0 ? 0.0 : kInf;
  }
  return r;
}

RatioResult check_prop1(const HalfLineFunction& g, const NormOptions& opts) {
  RatioResult r;
  r.denominator = combine(l1_norm(g, opts), l1_T_norm(g, opts));
  if (r.denominator.value == 0.0) {
    throw DegenerateInput("check_prop1: ||g||_1 + ||Tg||_1 vanishes for " + g.id);
  }
  r.numerator = hq_integral(g, opts);
  r.ratio = r.numerator.value / r.denominator.value;
  r.undecided = !r.denominator.converged();
  return r;
}

RatioResult check_hardy(const HalfLineFunction& g, const NormOptions& opts) {
  RatioResult r;
  r.denominator = h1_full_norm(g, opts);
  if (r.denominator.value == 0.0) {
    throw DegenerateInput("check_hardy: ||g||_H1 vanishes for " + g.id);
  }
  r.numerator = scaled(q0_integral(g, opts), 2.0);
  r.ratio = r.numerator.value / r.denominator.value;
  r.undecided = !r.denominator.converged();
  return r;
}

FubiniResult check_fubini(const TestFunction& f, const NormOptions& opts) {
  const HalfLineFunction g = f.fprime();
  const RealFn& fp = g.value;
  const Integrand weighted = [&fp](double t) { return t * std::abs(fp(t)); };
  InnerTracker tr;
  const Integrand inner = [&](double x) {
    double upper = kPi / (2.0 * x);
    if (g.compact()) upper = std::min(upper, g.support);
    return tr.take(integrate_finite(weighted, 0.0, upper, opts.inner, g.kinks));
  };
  // The outer integrand is smooth and cheap, so it is held to the inner
  // tolerance rather than the looser one used for transform norms.
  QuadratureOptions outer = opts.inner;
  outer.rel_tol = std::max(opts.inner.rel_tol, 1e-10);
  FubiniResult r;
  r.lhs = tr.fold(integrate_halfline(inner, outer, leading_breaks(f)));
  r.rhs = scaled(l1_norm(g, opts), kPi / 2.0);
  r.relative_residual = r.rhs.value != 0.0 ? std::abs(r.lhs.value - r.rhs.value) / r.rhs.value
                                           : std::abs(r.lhs.value);
  return r;
}

// ---------------------------------------------------------------------------
// Membership

bool MembershipVerdict::monotone() const {
  const Verdict chain[] = {in_H10, in_H1Q, in_Q0, in_L10};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (chain[i] == Verdict::yes && chain[j] == Verdict::no) return false;
    }
  }
  return true;
}

MembershipVerdict classify_membership(const HalfLineFunction& g, const NormOptions& opts) {
  MembershipVerdict v;
  v.function_id = g.id;
  v.l1 = l1_norm(g, opts);
  v.in_L10 = finiteness(v.l1);
  if (v.in_L10 == Verdict::no) {
    v.in_Q0 = v.in_H1Q = v.in_H10 = Verdict::no;
    return v;
  }
  v.q0 = q0_integral(g, opts);
  v.in_Q0 = both(v.in_L10, finiteness(*v.q0));
  if (v.in_Q0 == Verdict::no) {
    v.in_H1Q = Verdict::no;
  } else {
    v.hq = hq_integral(g, opts);
    v.in_H1Q = both(v.in_Q0, finiteness(*v.hq));
  }
  v.hilbert = l1_hilbert_odd(g, opts);
  v.in_H10 = both(v.in_L10, finiteness(*v.hilbert));
  return v;
}

MembershipVerdict classify_spectrum(const std::string& id, const RealFn& spectrum,
                                    const NormOptions& opts) {
  MembershipVerdict v;
  v.function_id = id;
  const Integrand h = [&spectrum](double x) { return spectrum(x) / x; };
  v.q0 = integrate_abs_halfline(h, opts.outer);
  v.in_Q0 = finiteness(*v.q0);
  if (v.in_Q0 == Verdict::no) v.in_H1Q = v.in_H10 = Verdict::no;
  return v;
}

double log_spectrum(double x) { return 1.0 / std::log(std::numbers::e + 1.0 / x); }

}  // namespace bvft
