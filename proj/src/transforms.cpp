#include "bvft/transforms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>

#include "bvft/parallel.hpp"
#include "bvft/specfun.hpp"

namespace bvft {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::invalid_argument(std::string(what) + ": argument must be positive and finite");
  }
}

QuadratureOptions with_abs_tol(QuadratureOptions o, double abs_tol) {
  o.abs_tol = abs_tol;
  return o;
}

OscillatoryHints hints_for(const HalfLineFunction& g, double lower = 0.0) {
  OscillatoryHints h;
  h.lower = lower;
  h.support = g.support;
  h.breakpoints = g.kinks;
  return h;
}

// Integral of h over (0, inf), or over (0, support) when g is compact.
QuadratureResult integrate_over(const HalfLineFunction& g, const Integrand& h,
                                const QuadratureOptions& opts) {
  if (g.compact()) {
    if (!(g.support > 0.0)) return {};
    return integrate_finite(h, 0.0, g.support, opts, g.kinks);
  }
  return integrate_halfline(h, opts, g.kinks);
}

double distance_to_kinks(std::span<const double> kinks, double x) {
  double d = kInf;
  for (double k : kinks) d = std::min(d, std::abs(k - x));
  return d;
}

QuadratureResult singular_result() {
  return {kNaN, kInf, QuadStatus::divergence_suspected, 0};
}

}  // namespace

QuadratureResult cosine_transform(const HalfLineFunction& g, double x,
                                  const QuadratureOptions& opts) {
  if (x == 0.0) return integrate_over(g, g.value, opts);
  require_positive(x, "cosine_transform");
  return integrate_oscillatory(g.value, x, Oscillator::cosine, opts, hints_for(g));
}

QuadratureResult sine_transform(const HalfLineFunction& g, double x,
                                const QuadratureOptions& opts) {
  if (x == 0.0) return {};
  require_positive(x, "sine_transform");
  return integrate_oscillatory(g.value, x, Oscillator::sine, opts, hints_for(g));
}

QuadratureResult fourier_cosine(const TestFunction& f, double x, const QuadratureOptions& opts) {
  return cosine_transform(f.f(), x, opts);
}

QuadratureResult fourier_sine(const TestFunction& f, double x, const QuadratureOptions& opts) {
  return sine_transform(f.f(), x, opts);
}

QuadratureResult t_transform(const HalfLineFunction& g, double t, const QuadratureOptions& opts) {
  require_positive(t, "t_transform");
  if (distance_to_kinks(g.kinks, t) == 0.0) return singular_result();

  const double upper = 0.5 * t;
  std::vector<double> breaks;
  for (double k : g.kinks) {
    const double s = std::abs(k - t);
    if (s > 0.0 && s < upper) breaks.push_back(s);
  }
  const RealFn& v = g.value;
  if (g.has_derivative()) {
    const double limit = 2.0 * g.derivative(t);
    const double cutoff = 1e-7 * t;
    const Integrand q = [&v, t, limit, cutoff](double s) {
      if (s < cutoff) return limit;
      return (v(t + s) - v(t - s)) / s;
    };
    return integrate_finite(q, 0.0, upper, opts, breaks);
  }

  const Integrand q = [&v, t](double s) { return (v(t + s) - v(t - s)) / s; };
  double radius = upper / 8.0;
  for (double b : breaks) radius = std::min(radius, 0.5 * b);
  const PvSpec ladder = PvSpec::with_radius(0.0, radius, opts.pv_ladder_depth);
  return excision_limit(q, upper, ladder.excision_ladder, opts, breaks);
}

QuadratureResult hilbert_odd(const HalfLineFunction& g, double x, const QuadratureOptions& opts) {
  require_positive(x, "hilbert_odd");
  const RealFn& v = g.value;
  const Integrand h = [&v, x](double t) { return (2.0 / kPi) * t * v(t) / ((t - x) * (t + x)); };

  if (g.compact() && x > g.support) {
    if (!(g.support > 0.0)) return {};
    return integrate_finite(h, 0.0, g.support, opts, g.kinks);
  }
  const double d = std::min(distance_to_kinks(g.kinks, x), g.compact() ? g.support - x : kInf);
  if (d == 0.0) return singular_result();

  const double radius = std::min(0.5 * x, 0.5 * d);
  const PvSpec spec = PvSpec::with_radius(x, radius, opts.pv_ladder_depth);
  const double upper = g.compact() ? g.support : kInf;
  return integrate_pv(h, 0.0, upper, spec, opts, g.kinks);
}

QuadratureResult hilbert_full(const LineFunction& g, double x, const QuadratureOptions& opts) {
  if (!std::isfinite(x)) throw std::invalid_argument("hilbert_full: x must be finite");
  const RealFn& v = g.value;
  const Integrand h = [&v, x](double t) { return v(t) / (kPi * (t - x)); };
  const bool compact = g.support < kInf;

  if (compact && std::abs(x) > g.support) {
    return integrate_finite(h, -g.support, g.support, opts, g.kinks);
  }
  double d = distance_to_kinks(g.kinks, x);
  if (compact) d = std::min(d, g.support - std::abs(x));
  if (d == 0.0) return singular_result();

  const double radius = std::min(0.5 * std::max(std::abs(x), 1.0), 0.5 * d);
  const PvSpec spec = PvSpec::with_radius(x, radius, opts.pv_ladder_depth);
  const double lo = compact ? -g.support : -kInf;
  const double hi = compact ? g.support : kInf;
  return integrate_pv(h, lo, hi, spec, opts, g.kinks);
}

QuadratureResult script_t(const HalfLineFunction& g, double x, const QuadratureOptions& opts) {
  if (x == 0.0) {
    const RealFn& v = g.value;
    return integrate_over(g, [&v](double t) { return t * v(t); }, opts);
  }
  require_positive(x, "script_t");
  const QuadratureOptions inner = with_abs_tol(opts, opts.abs_tol * std::min(1.0, x));
  return scaled(sine_transform(g, x, inner), 1.0 / x);
}

HalfLineFunction script_t_function(const HalfLineFunction& g, const QuadratureOptions& opts) {
  HalfLineFunction out;
  out.id = "script_t(" + g.id + ")";
  out.value = [g, opts](double u) { return script_t(g, u, opts).value; };
  return out;
}

double cisi_kernel(double v) {
  if (v == 0.0) return 0.0;
  const specfun::SiCi sc = specfun::sici(v);
  return std::cos(v) * sc.si - std::sin(v) * sc.ci;
}

namespace {

// cos v Si v - sin v Ci v = (pi/2) cos v - f(v) with f the first auxiliary
// function, so the kernel integral splits into (pi/2) g_c(x) and a
// non-oscillating integral of g(t) f(xt), which lives on the scale 1/x.
QuadratureResult h0_cisi_split(const HalfLineFunction& g, double x,
                               const QuadratureOptions& opts) {
  const RealFn& v = g.value;
  const Integrand q = [&v, x](double t) {
    const double gt = v(t);
    return gt == 0.0 ? 0.0 : gt * specfun::auxiliary(x * t).f;
  };
  const double scale = 1.0 / x;
  QuadratureResult mono;
  if (g.compact()) {
    std::vector<double> breaks = g.kinks;
    breaks.push_back(scale);
    mono = g.support > 0.0 ? integrate_multiscale(q, 0.0, g.support, opts, breaks) : mono;
  } else {
    mono = combine(integrate_multiscale(q, 0.0, scale, opts, g.kinks),
                   integrate_tail(q, scale, opts, g.kinks));
  }
  const QuadratureResult cosine = cosine_transform(g, x, opts);
  return combine(scaled(cosine, 1.0 / x), scaled(mono, -2.0 / (kPi * x)));
}

}  // namespace

QuadratureResult h0_script_t_cisi(const HalfLineFunction& g, double x,
                                  const QuadratureOptions& opts) {
  require_positive(x, "h0_script_t_cisi");
  // Partitioned sums with epsilon acceleration are unreliable once the
  // non-oscillating part of the kernel decays slowly, so unbounded supports
  // always take the split.
  if (x > 1.0 || !g.compact()) {
    QuadratureOptions inner = opts;
    inner.abs_tol = 0.25 * opts.abs_tol * x;
    // Both parts are O(1) while the absolute target shrinks with x.
    inner.rel_tol = std::max(opts.rel_tol, 1e-12);
    return h0_cisi_split(g, x, inner);
  }
  const double prefactor = 2.0 / (kPi * x);
  const RealFn& v = g.value;
  const Integrand q = [&v, x](double t) {
    const double gt = v(t);
    return gt == 0.0 ? 0.0 : gt * cisi_kernel(x * t);
  };
  const double step = kPi / x;
  const QuadratureOptions inner = with_abs_tol(opts, opts.abs_tol / prefactor);
  const QuadratureResult r =
      integrate_partitioned(q, 0.0, 0.5 * step, step, inner, g.support, g.kinks);
  return scaled(r, prefactor);
}

QuadratureResult h0_script_t_direct(const HalfLineFunction& g, double x,
                                    const QuadratureOptions& opts) {
  QuadratureOptions inner = opts;
  inner.abs_tol = 0.1 * opts.abs_tol;
  QuadratureOptions outer = opts;
  if (g.compact() && g.support > 0.0) outer.oscillation_period = 2.0 * kPi / g.support;
  return hilbert_odd(script_t_function(g, inner), x, outer);
}

QuadratureResult gamma_residual(const HalfLineFunction& g, double x,
                                const QuadratureOptions& opts) {
  const QuadratureResult h = hilbert_odd(g, x, opts);
  const QuadratureResult t = t_transform(g, x, opts);
  return combine(h, scaled(t, -1.0));
}

QuadratureResult tail_integral(const TestFunction& f, double x, const QuadratureOptions& opts) {
  require_positive(x, "tail_integral");
  const HalfLineFunction g = f.f();
  return integrate_oscillatory(g.value, x, Oscillator::sine, opts, hints_for(g, kPi / (2.0 * x)));
}

double bateman_sine_pv(double a, double y) {
  require_positive(a, "bateman_sine_pv");
  require_positive(y, "bateman_sine_pv");
  const double v = a * y;
  const specfun::SiCi sc = specfun::sici(v);
  return (std::sin(v) * sc.ci - std::cos(v) * sc.si) / a;
}

// ---------------------------------------------------------------------------

void TransformGrid::validate() const {
  if (points.size() != values.size()) {
    throw std::invalid_argument("TransformGrid: points and values differ in length");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i] > 0.0)) throw std::invalid_argument("TransformGrid: points must be positive");
    if (i > 0 && !(points[i] > points[i - 1])) {
      throw std::invalid_argument("TransformGrid: points must be strictly increasing");
    }
  }
}

std::vector<double> geometric_grid(double min, double max, int points_per_decade) {
  if (!(min > 0.0) || !(max > min) || points_per_decade < 1) {
    throw std::invalid_argument("geometric_grid: need 0 < min < max and points_per_decade >= 1");
  }
  const double decades = std::log10(max / min);
  const long n = std::lround(decades * points_per_decade);
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(n) + 1);
  const double lmin = std::log10(min);
  for (long i = 0; i <= n; ++i) {
    pts.push_back(std::pow(10.0, lmin + static_cast<double>(i) / points_per_decade));
  }
  pts.front() = min;
  if (std::abs(pts.back() / max - 1.0) < 1e-9) pts.back() = max;
  return pts;
}

std::vector<double> default_grid() { return geometric_grid(1e-2, 1e2, 25); }

TransformGrid sweep(std::span<const double> points,
                    const std::function<QuadratureResult(double)>& fn, int threads) {
  TransformGrid grid;
  grid.points.assign(points.begin(), points.end());
  grid.values.resize(points.size());
  parallel_for(points.size(), threads, [&](std::size_t i) { grid.values[i] = fn(points[i]); });
  grid.validate();
  return grid;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const TransformGrid& grid) {
  os << "x,value,abs_error_estimate,status,evaluations\n";
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    const QuadratureResult& r = grid.values[i];
    os << format_number(grid.points[i]) << ',' << format_number(r.value) << ','
       << format_number(r.abs_error_estimate) << ',' << to_string(r.status) << ','
       << r.evaluations << '\n';
  }
}

}  // namespace bvft
