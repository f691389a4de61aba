#include "bvft/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace bvft {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};
constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  double roundoff;  // error floor below which bisection cannot help
};

double checked(const Integrand& h, double t) {
  const double v = h(t);
  if (!std::isfinite(v)) throw EvaluationError(t, v);
  return v;
}

Panel kronrod21(const Integrand& h, double a, double b, long& evals) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double abs_half = std::abs(half);

  std::array<double, 10> f1{};
  std::array<double, 10> f2{};
  const double fc = checked(h, center);
  double res_gauss = 0.0;
  double res_kronrod = kKronrodWeights[10] * fc;
  double res_abs = std::abs(res_kronrod);

  for (int j = 0; j < 5; ++j) {
    const int jtw = 2 * j + 1;
    const double dx = half * kKronrodNodes[jtw];
    const double v1 = checked(h, center - dx);
    const double v2 = checked(h, center + dx);
    f1[jtw] = v1;
    f2[jtw] = v2;
    res_gauss += kGaussWeights[j] * (v1 + v2);
    res_kronrod += kKronrodWeights[jtw] * (v1 + v2);
    res_abs += kKronrodWeights[jtw] * (std::abs(v1) + std::abs(v2));
  }
  for (int j = 0; j < 5; ++j) {
    const int jtwm1 = 2 * j;
    const double dx = half * kKronrodNodes[jtwm1];
    const double v1 = checked(h, center - dx);
    const double v2 = checked(h, center + dx);
    f1[jtwm1] = v1;
    f2[jtwm1] = v2;
    res_kronrod += kKronrodWeights[jtwm1] * (v1 + v2);
    res_abs += kKronrodWeights[jtwm1] * (std::abs(v1) + std::abs(v2));
  }
  evals += 21;

  const double mean = 0.5 * res_kronrod;
  double res_asc = kKronrodWeights[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j) {
    res_asc += kKronrodWeights[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }

  Panel p{a, b, res_kronrod * half, 0.0, 0.0};
  res_abs *= abs_half;
  res_asc *= abs_half;
  double err = std::abs((res_kronrod - res_gauss) * half);
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  p.roundoff = 50.0 * kEps * res_abs;
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(p.roundoff, err);
  }
  p.error = err;
  return p;
}

bool error_less(const Panel& x, const Panel& y) {
  if (x.error != y.error) return x.error < y.error;
  return x.a > y.a;
}

std::vector<double> interior_points(double a, double b, std::span<const double> breakpoints) {
  std::vector<double> pts;
  for (double p : breakpoints) {
    if (p > a && p < b) pts.push_back(p);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

QuadratureOptions block_options(const QuadratureOptions& opts, double share) {
  QuadratureOptions o = opts;
  o.abs_tol = opts.abs_tol * share;
  o.rel_tol = opts.rel_tol * share;
  return o;
}

// Adds the points +-2^j inside (a, b) when the interval spans many scales,
// so that features near the unit scale are not stepped over by the first
// Kronrod panel of a long interval.
std::vector<double> multiscale_breaks(double a, double b, std::span<const double> breakpoints) {
  std::vector<double> pts(breakpoints.begin(), breakpoints.end());
  const double near = (a > 0.0) ? a : (b < 0.0 ? -b : 0.0);
  const double far = std::max(std::abs(a), std::abs(b));
  if (far <= 16.0 * near) return pts;
  for (int j = -20; j <= 40; ++j) {
    const double p = std::ldexp(1.0, j);
    if (p > a && p < b) pts.push_back(p);
    if (-p > a && -p < b) pts.push_back(-p);
  }
  return pts;
}


// ---------------------------------------------------------------------------
// Dyadic block series on a half-line.

enum class Direction { up, down };

using BlockIntegral = std::function<QuadratureResult(double, double)>;

double power_decay_exponent(std::span<const double> blocks, std::size_t first_index) {
  // Least-squares slope of ln|b_j| against ln(j + 1).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const double lx = std::log(static_cast<double>(first_index + i + 1));
    const double ly = std::log(std::abs(blocks[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return -slope;
}

struct WynnEstimate {
  double value;
  double error;
};

// Moves a block edge to period * 2^j once the edge is several periods out,
// so that far blocks cover whole oscillations and stay exactly dyadic.
double snap_to_period(double edge, double anchor, double period) {
  if (!(period > 0.0) || edge < 4.0 * period || edge <= anchor) return edge;
  return period * std::exp2(std::round(std::log2(edge / period)));
}

// Extrapolates from windows of 3, 5, 7, ... trailing partial sums and keeps
// the window whose estimate moves least when the window is shifted back by
// one and two terms.  Short windows keep irregular early terms out.
WynnEstimate wynn_with_error(const std::vector<double>& partial, std::size_t window) {
  const std::size_t n = partial.size();
  WynnEstimate best{n == 0 ? 0.0 : partial.back(), std::numeric_limits<double>::infinity()};
  for (std::size_t w = 3; w <= window && w + 2 <= n; w += 2) {
    const double e0 = wynn_epsilon(std::span<const double>(partial.data() + (n - w), w));
    const double e1 = wynn_epsilon(std::span<const double>(partial.data() + (n - 1 - w), w));
    const double e2 = wynn_epsilon(std::span<const double>(partial.data() + (n - 2 - w), w));
    const double err = std::abs(e0 - e1) + std::abs(e0 - e2);
    if (std::isfinite(e0) && err < best.error) best = {e0, err};
  }
  return best;
}

QuadratureResult dyadic_sum(const BlockIntegral& block, double anchor, Direction dir,
                            double must_pass, const QuadratureOptions& opts,
                            double period) {
  constexpr double kGeometricRatio = 0.9;
  constexpr std::size_t kDivergenceWindow = 8;
  constexpr double kCriticalExponent = 1.25;

  std::vector<double> blocks;
  std::vector<double> partial;
  QuadratureResult out;
  double err_sum = 0.0;
  double sum = 0.0;

  auto ratio_ok = [&](std::size_t j) {
    const double prev = std::abs(blocks[j - 1]);
    const double cur = std::abs(blocks[j]);
    if (cur == 0.0) return true;
    if (prev == 0.0) return false;
    return cur / prev <= kGeometricRatio;
  };

  for (int k = 0; k < opts.dyadic_block_limit; ++k) {
    double lo = 0;
    double hi = 0;
    if (dir == Direction::up) {
      lo = snap_to_period(std::ldexp(anchor, k), anchor, period);
      hi = snap_to_period(std::ldexp(anchor, k + 1), anchor, period);
    } else {
      lo = std::ldexp(anchor, -(k + 1));
      hi = std::ldexp(anchor, -k);
    }
    const QuadratureResult r = block(lo, hi);
    out.evaluations += r.evaluations;
    out.status = worst(out.status, r.status);
    err_sum += r.abs_error_estimate;
    blocks.push_back(r.value);
    sum += r.value;
    partial.push_back(sum);

    const bool passed = dir == Direction::up ? hi >= must_pass : lo <= must_pass;
    const std::size_t n = blocks.size();
    if (!passed || n < 3) continue;

    const double tol_dir = 0.5 * opts.tolerance_for(sum);
    const double small = std::max(opts.tail_threshold, 1e-3 * tol_dir);
    if (std::abs(blocks[n - 1]) <= small && std::abs(blocks[n - 2]) <= small) {
      out.value = sum;
      out.abs_error_estimate = err_sum + 2.0 * std::abs(blocks[n - 1]);
      return out;
    }

    if (n >= 5 && ratio_ok(n - 1) && ratio_ok(n - 2) && ratio_ok(n - 3)) {
      const WynnEstimate w = wynn_with_error(partial, 16);
      const bool plausible = std::abs(w.value - sum) <= 10.0 * std::abs(blocks[n - 1]) + small;
      if (plausible && w.error <= tol_dir) {
        out.value = w.value;
        out.abs_error_estimate = err_sum + w.error;
        return out;
      }
    }

    if (n >= kDivergenceWindow + 1) {
      bool stalled = true;
      for (std::size_t j = n - kDivergenceWindow + 1; j < n; ++j) {
        if (blocks[j] == 0.0 || ratio_ok(j)) {
          stalled = false;
          break;
        }
      }
      if (stalled) {
        std::span<const double> window(blocks.data() + (n - kDivergenceWindow),
                                       kDivergenceWindow);
        const double p = power_decay_exponent(window, n - kDivergenceWindow);
        if (p < kCriticalExponent) {
          out.value = sum;
          out.abs_error_estimate = err_sum + std::abs(blocks[n - 1]) * static_cast<double>(n);
          out.status = QuadStatus::divergence_suspected;
          return out;
        }
      }
    }
  }

  out.value = sum;
  out.abs_error_estimate =
      err_sum + (blocks.empty() ? 0.0 : std::abs(blocks.back()) * static_cast<double>(blocks.size()));
  out.status = worst(out.status, QuadStatus::max_depth_reached);
  return out;
}

double max_point(std::span<const double> pts, double fallback) {
  double m = fallback;
  for (double p : pts) m = std::max(m, p);
  return m;
}

double min_positive_point(std::span<const double> pts, double fallback) {
  double m = fallback;
  for (double p : pts) {
    if (p > 0.0) m = std::min(m, p);
  }
  return m;
}

QuadratureResult halfline_impl(const BlockIntegral& block, const QuadratureOptions& opts,
                               std::span<const double> breakpoints) {
  const QuadratureResult down =
      dyadic_sum(block, 1.0, Direction::down, min_positive_point(breakpoints, 1.0), opts, 0.0);
  const QuadratureResult up =
      dyadic_sum(block, 1.0, Direction::up, max_point(breakpoints, 1.0), opts,
                 opts.oscillation_period);
  return combine(down, up);
}

double refine_root(const Integrand& h, double lo, double flo, double hi, double fhi,
                   long& evals) {
  // Illinois variant of regula falsi.
  int side = 0;
  for (int it = 0; it < 60; ++it) {
    if (hi - lo <= 4.0 * kEps * std::max(std::abs(lo), std::abs(hi))) break;
    double mid = (lo * fhi - hi * flo) / (fhi - flo);
    if (!(mid > lo && mid < hi)) mid = 0.5 * (lo + hi);
    const double fm = h(mid);
    ++evals;
    if (!std::isfinite(fm) || fm == 0.0) return mid;
    if ((fm > 0) == (fhi > 0)) {
      hi = mid;
      fhi = fm;
      if (side == 1) flo *= 0.5;
      side = 1;
    } else {
      lo = mid;
      flo = fm;
      if (side == -1) fhi *= 0.5;
      side = -1;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(QuadStatus status) {
  switch (status) {
    case QuadStatus::converged:
      return "converged";
    case QuadStatus::max_depth_reached:
      return "max_depth_reached";
    case QuadStatus::divergence_suspected:
      return "divergence_suspected";
  }
  return "unknown";
}

QuadStatus status_from_string(std::string_view name) {
  if (name == "converged") return QuadStatus::converged;
  if (name == "max_depth_reached") return QuadStatus::max_depth_reached;
  if (name == "divergence_suspected") return QuadStatus::divergence_suspected;
  throw std::invalid_argument("unknown quadrature status: " + std::string(name));
}

QuadStatus worst(QuadStatus a, QuadStatus b) {
  return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

QuadratureResult combine(const QuadratureResult& a, const QuadratureResult& b) {
  return {a.value + b.value, a.abs_error_estimate + b.abs_error_estimate,
          worst(a.status, b.status), a.evaluations + b.evaluations};
}

QuadratureResult scaled(QuadratureResult r, double factor) {
  r.value *= factor;
  r.abs_error_estimate *= std::abs(factor);
  return r;
}

double QuadratureOptions::tolerance_for(double value) const {
  return std::max(abs_tol, rel_tol * std::abs(value));
}

EvaluationError::EvaluationError(double location, double value)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "integrand returned " << value << " at t = " << location;
        return os.str();
      }()),
      location_(location) {}

QuadratureResult integrate_finite(const Integrand& h, double a, double b,
                                  const QuadratureOptions& opts,
                                  std::span<const double> breakpoints) {
  if (!(std::isfinite(a) && std::isfinite(b)) || !(a < b)) {
    throw std::invalid_argument("integrate_finite requires finite a < b");
  }
  if (!(opts.abs_tol > 0.0 || opts.rel_tol > 0.0)) {
    throw std::invalid_argument("integrate_finite requires a positive tolerance");
  }

  QuadratureResult out;
  std::vector<double> edges{a};
  for (double p : interior_points(a, b, breakpoints)) edges.push_back(p);
  edges.push_back(b);

  std::vector<Panel> heap;
  std::vector<Panel> frozen;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    heap.push_back(kronrod21(h, edges[i], edges[i + 1], out.evaluations));
    total += heap.back().value;
    total_err += heap.back().error;
  }
  std::make_heap(heap.begin(), heap.end(), error_less);

  out.status = QuadStatus::max_depth_reached;
  while (true) {
    if (total_err <= opts.tolerance_for(total)) {
      out.status = QuadStatus::converged;
      break;
    }
    if (heap.empty()) break;
    if (static_cast<int>(heap.size() + frozen.size()) >= opts.max_subdivisions) break;

    std::pop_heap(heap.begin(), heap.end(), error_less);
    const Panel worst_panel = heap.back();
    heap.pop_back();

    const double mid = 0.5 * (worst_panel.a + worst_panel.b);
    const double scale = std::max(std::abs(worst_panel.a), std::abs(worst_panel.b));
    if (worst_panel.b - worst_panel.a <= 64.0 * kEps * scale ||
        worst_panel.error <= worst_panel.roundoff) {
      frozen.push_back(worst_panel);
      // The largest remaining error is at its rounding floor.
      if (worst_panel.error <= worst_panel.roundoff) break;
      continue;
    }
    const Panel left = kronrod21(h, worst_panel.a, mid, out.evaluations);
    const Panel right = kronrod21(h, mid, worst_panel.b, out.evaluations);
    total += left.value + right.value - worst_panel.value;
    total_err += left.error + right.error - worst_panel.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), error_less);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), error_less);
  }

  // Re-sum in ascending position so the result does not depend on heap order.
  std::vector<Panel> all = heap;
  all.insert(all.end(), frozen.begin(), frozen.end());
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  double value = 0.0;
  double err = 0.0;
  for (const Panel& p : all) {
    value += p.value;
    err += p.error;
  }
  out.value = value;
  out.abs_error_estimate = err;
  if (out.status != QuadStatus::converged && err <= opts.tolerance_for(value)) {
    out.status = QuadStatus::converged;
  }
  return out;
}

QuadratureResult integrate_multiscale(const Integrand& h, double a, double b,
                                      const QuadratureOptions& opts,
                                      std::span<const double> breakpoints) {
  return integrate_finite(h, a, b, opts, multiscale_breaks(a, b, breakpoints));
}

QuadratureResult integrate_halfline(const Integrand& h, const QuadratureOptions& opts,
                                    std::span<const double> breakpoints) {
  const QuadratureOptions bo = block_options(opts, 0.05);
  const BlockIntegral block = [&](double lo, double hi) {
    return integrate_finite(h, lo, hi, bo, breakpoints);
  };
  return halfline_impl(block, opts, breakpoints);
}

QuadratureResult integrate_tail(const Integrand& h, double a, const QuadratureOptions& opts,
                                std::span<const double> breakpoints) {
  const QuadratureOptions bo = block_options(opts, 0.05);
  const BlockIntegral block = [&](double lo, double hi) {
    return integrate_finite(h, lo, hi, bo, breakpoints);
  };
  if (a >= 1.0) {
    return dyadic_sum(block, a, Direction::up, max_point(breakpoints, a), opts,
                      opts.oscillation_period);
  }
  const QuadratureResult head = integrate_multiscale(h, a, 1.0, bo, breakpoints);
  const QuadratureResult rest =
      dyadic_sum(block, 1.0, Direction::up, max_point(breakpoints, 1.0), opts,
                 opts.oscillation_period);
  return combine(head, rest);
}

QuadratureResult integrate_abs(const Integrand& h, double a, double b,
                               const QuadratureOptions& opts,
                               std::span<const double> breakpoints, double sample_spacing) {
  if (!(a < b)) throw std::invalid_argument("integrate_abs requires a < b");
  QuadratureResult out;

  std::vector<double> edges{a};
  for (double p : interior_points(a, b, breakpoints)) edges.push_back(p);
  edges.push_back(b);

  // Sample at segment midpoints so that endpoints and breakpoints, where
  // the integrand may be singular, are never evaluated.
  std::vector<double> splits{a};
  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    const double lo = edges[s];
    const double hi = edges[s + 1];
    int n = 16;
    if (sample_spacing > 0.0) {
      n = static_cast<int>(std::clamp(std::ceil((hi - lo) / sample_spacing), 16.0, 4096.0));
    }
    const double step = (hi - lo) / n;
    bool have_prev = false;
    double prev_t = 0.0;
    double prev_v = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = lo + (i + 0.5) * step;
      const double v = h(t);
      ++out.evaluations;
      if (!std::isfinite(v)) {
        have_prev = false;
        continue;
      }
      if (have_prev && ((v > 0 && prev_v < 0) || (v < 0 && prev_v > 0))) {
        splits.push_back(refine_root(h, prev_t, prev_v, t, v, out.evaluations));
      }
      if (v != 0.0) {
        prev_t = t;
        prev_v = v;
        have_prev = true;
      }
    }
    if (s + 2 < edges.size()) splits.push_back(hi);
  }
  splits.push_back(b);
  std::sort(splits.begin(), splits.end());
  splits.erase(std::unique(splits.begin(), splits.end()), splits.end());

  const Integrand mag = [&h](double t) { return std::abs(h(t)); };
  for (std::size_t i = 0; i + 1 < splits.size(); ++i) {
    const double lo = splits[i];
    const double hi = splits[i + 1];
    if (!(lo < hi)) continue;
    const QuadratureOptions po = block_options(opts, std::max((hi - lo) / (b - a), 1e-3));
    out = combine(out, integrate_finite(mag, lo, hi, po, breakpoints));
  }
  return out;
}

QuadratureResult integrate_abs_halfline(const Integrand& h, const QuadratureOptions& opts,
                                        std::span<const double> breakpoints,
                                        double sample_spacing) {
  const QuadratureOptions bo = block_options(opts, 0.05);
  const BlockIntegral block = [&](double lo, double hi) {
    return integrate_abs(h, lo, hi, bo, breakpoints, sample_spacing);
  };
  return halfline_impl(block, opts, breakpoints);
}

// ---------------------------------------------------------------------------

double wynn_epsilon(std::span<const double> s) {
  const std::size_t n = s.size();
  if (n == 0) return 0.0;
  if (n < 3) return s.back();

  std::vector<double> prev(n + 1, 0.0);
  std::vector<double> cur(s.begin(), s.end());
  double best = s.back();
  for (std::size_t col = 1; cur.size() >= 2; ++col) {
    std::vector<double> next(cur.size() - 1);
    for (std::size_t j = 0; j + 1 < cur.size(); ++j) {
      const double diff = cur[j + 1] - cur[j];
      const double mag = std::max(std::abs(cur[j]), std::abs(cur[j + 1]));
      if (diff == 0.0 || std::abs(diff) <= 4.0 * kEps * mag) {
        // Column (col - 1) has converged to working precision.
        if ((col - 1) % 2 == 0) best = cur[j + 1];
        return std::isfinite(best) ? best : s.back();
      }
      next[j] = prev[j + 1] + 1.0 / diff;
    }
    prev = std::move(cur);
    cur = std::move(next);
    if (col % 2 == 0) best = cur.back();
  }
  return std::isfinite(best) ? best : s.back();
}

QuadratureResult integrate_partitioned(const Integrand& h, double start, double first_break,
                                       double step, const QuadratureOptions& opts,
                                       double support, std::span<const double> breakpoints) {
  if (!(step > 0.0) || !(first_break >= start)) {
    throw std::invalid_argument("integrate_partitioned requires step > 0 and first_break >= start");
  }
  QuadratureResult out;
  if (support <= start) return out;

  const QuadratureOptions bo = block_options(opts, 0.1);
  std::vector<double> terms;
  std::vector<double> partial;
  double sum = 0.0;
  double err_sum = 0.0;
  WynnEstimate best{0.0, kInf};

  long block_limit = opts.oscillatory_block_limit;
  if (std::isfinite(support)) {
    block_limit = std::max(block_limit, static_cast<long>(std::ceil((support - start) / step)) + 2);
  }
  for (long k = 0; k < block_limit; ++k) {
    double lo = 0;
    double hi = 0;
    if (first_break > start) {
      lo = k == 0 ? start : first_break + (k - 1) * step;
      hi = first_break + k * step;
    } else {
      lo = first_break + k * step;
      hi = first_break + (k + 1) * step;
    }
    const bool last = hi >= support;
    hi = std::min(hi, support);
    if (!(lo < hi)) break;

    const QuadratureResult r = integrate_multiscale(h, lo, hi, bo, breakpoints);
    out.evaluations += r.evaluations;
    err_sum += r.abs_error_estimate;
    if (!r.converged()) out.status = worst(out.status, r.status);
    terms.push_back(r.value);
    sum += r.value;
    partial.push_back(sum);

    if (last) {
      out.value = sum;
      out.abs_error_estimate = err_sum;
      return out;
    }

    // A finite support is summed exactly up to the last block.
    if (std::isfinite(support)) continue;

    const std::size_t n = terms.size();
    const double tol = opts.tolerance_for(sum);
    if (n >= 3 && std::abs(terms[n - 1]) <= 1e-3 * tol && std::abs(terms[n - 2]) <= 1e-3 * tol) {
      out.value = sum;
      out.abs_error_estimate = err_sum + std::abs(terms[n - 1]);
      return out;
    }
    if (n >= 6) {
      best = wynn_with_error(partial, 24);
      if (best.error <= 0.5 * opts.tolerance_for(best.value)) {
        out.value = best.value;
        out.abs_error_estimate = err_sum + best.error;
        return out;
      }
    }
    if (n >= 40) {
      double recent = 0.0;
      double earlier = 0.0;
      for (std::size_t j = n - 10; j < n; ++j) recent += std::abs(terms[j]);
      for (std::size_t j = n - 20; j < n - 10; ++j) earlier += std::abs(terms[j]);
      if (recent >= earlier && recent > 1e-3 * tol) {
        out.value = best.value;
        out.abs_error_estimate = err_sum + best.error + recent;
        out.status = QuadStatus::divergence_suspected;
        return out;
      }
    }
  }

  out.value = std::isfinite(best.error) ? best.value : sum;
  out.abs_error_estimate = err_sum + (std::isfinite(best.error) ? best.error : kInf);
  out.status = worst(out.status, QuadStatus::max_depth_reached);
  return out;
}

QuadratureResult integrate_oscillatory(const Integrand& g, double x, Oscillator kind,
                                       const QuadratureOptions& opts,
                                       const OscillatoryHints& hints) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::invalid_argument("integrate_oscillatory requires a finite frequency x > 0");
  }
  const double step = std::numbers::pi / x;
  const double offset = kind == Oscillator::sine ? 0.0 : 0.5;
  const double k = std::floor(hints.lower / step - offset) + 1.0;
  double first_zero = (k + offset) * step;
  if (first_zero <= hints.lower) first_zero += step;

  Integrand h;
  if (kind == Oscillator::sine) {
    h = [&g, x](double t) { return g(t) * std::sin(x * t); };
  } else {
    h = [&g, x](double t) { return g(t) * std::cos(x * t); };
  }
  return integrate_partitioned(h, hints.lower, first_zero, step, opts, hints.support,
                               hints.breakpoints);
}

// ---------------------------------------------------------------------------

PvSpec PvSpec::geometric(double singularity, double a, double b, int depth) {
  double base = std::isfinite(b - a) ? (b - a) / 8.0 : std::max(1.0, std::abs(singularity)) / 8.0;
  base = std::min(base, 0.5 * (singularity - a));
  base = std::min(base, 0.5 * (b - singularity));
  return with_radius(singularity, base, depth);
}

PvSpec PvSpec::with_radius(double singularity, double radius, int depth) {
  PvSpec spec;
  spec.singularity = singularity;
  for (int k = 0; k <= depth; ++k) spec.excision_ladder.push_back(std::ldexp(radius, -k));
  return spec;
}

void PvSpec::validate() const {
  if (excision_ladder.empty()) throw std::invalid_argument("PvSpec: empty excision ladder");
  for (std::size_t i = 0; i < excision_ladder.size(); ++i) {
    if (!(excision_ladder[i] > 0.0)) throw std::invalid_argument("PvSpec: radii must be positive");
    if (i > 0 && !(excision_ladder[i] < excision_ladder[i - 1])) {
      throw std::invalid_argument("PvSpec: radii must be strictly decreasing");
    }
  }
}

QuadratureResult excision_limit(const Integrand& q, double upper, std::span<const double> ladder,
                                const QuadratureOptions& opts,
                                std::span<const double> breakpoints) {
  if (ladder.empty() || !(ladder[0] <= upper)) {
    throw std::invalid_argument("excision_limit: ladder must start inside (0, upper]");
  }
  const std::size_t n = ladder.size();
  const QuadratureOptions bo = block_options(opts, 1.0 / static_cast<double>(n + 1));

  QuadratureResult out;
  double err_sum = 0.0;
  std::vector<double> values;
  double running = 0.0;
  if (ladder[0] < upper) {
    const QuadratureResult r = integrate_finite(q, ladder[0], upper, bo, breakpoints);
    out.evaluations += r.evaluations;
    err_sum += r.abs_error_estimate;
    running = r.value;
  }
  values.push_back(running);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const QuadratureResult r = integrate_finite(q, ladder[k + 1], ladder[k], bo, breakpoints);
    out.evaluations += r.evaluations;
    err_sum += r.abs_error_estimate;
    running += r.value;
    values.push_back(running);
  }

  if (n < 3) {
    out.value = values.back();
    out.abs_error_estimate = err_sum + std::abs(values.back() - values.front());
    out.status = QuadStatus::max_depth_reached;
    return out;
  }

  // I(delta) = P + c1 delta + c3 delta^3 + ...: eliminate the two leading terms.
  std::vector<double> r1(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double d0 = ladder[k];
    const double d1 = ladder[k + 1];
    r1[k] = (d0 * values[k + 1] - d1 * values[k]) / (d0 - d1);
  }
  std::vector<double> r2(n - 2);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const double m0 = ladder[k] * ladder[k + 1] * (ladder[k] + ladder[k + 1]);
    const double m1 = ladder[k + 1] * ladder[k + 2] * (ladder[k + 1] + ladder[k + 2]);
    r2[k] = (m0 * r1[k + 1] - m1 * r1[k]) / (m0 - m1);
  }
  const double final_value = r2.back();
  const double previous = r2.size() >= 2 ? r2[r2.size() - 2] : r1.back();
  out.value = final_value;
  out.abs_error_estimate = err_sum + std::abs(final_value - previous);
  out.status = out.abs_error_estimate <= opts.tolerance_for(final_value)
                   ? QuadStatus::converged
                   : QuadStatus::max_depth_reached;
  return out;
}

QuadratureResult integrate_pv(const Integrand& h, double a, double b, const PvSpec& spec,
                              const QuadratureOptions& opts,
                              std::span<const double> breakpoints) {
  spec.validate();
  const double s = spec.singularity;
  if (!(a < s && s < b)) throw std::invalid_argument("integrate_pv: singularity must lie in (a, b)");
  const double w = spec.excision_ladder.front();
  if (!(s - w >= a && s + w <= b)) {
    throw std::invalid_argument("integrate_pv: excision window leaves the interval");
  }

  const QuadratureOptions part = block_options(opts, 1.0 / 3.0);
  QuadratureResult out;

  if (std::isfinite(a)) {
    if (s - w > a) out = combine(out, integrate_multiscale(h, a, s - w, part, breakpoints));
  } else {
    std::vector<double> reflected;
    for (double p : breakpoints) reflected.push_back(-p);
    const Integrand hr = [&h](double t) { return h(-t); };
    out = combine(out, integrate_tail(hr, -(s - w), part, reflected));
  }
  if (std::isfinite(b)) {
    if (s + w < b) out = combine(out, integrate_multiscale(h, s + w, b, part, breakpoints));
  } else {
    out = combine(out, integrate_tail(h, s + w, part, breakpoints));
  }

  std::vector<double> folded_breaks;
  for (double p : breakpoints) {
    const double d = std::abs(p - s);
    if (d > 0.0 && d < w) folded_breaks.push_back(d);
  }
  const Integrand folded = [&h, s](double u) { return h(s + u) + h(s - u); };
  out = combine(out, excision_limit(folded, w, spec.excision_ladder, part, folded_breaks));
  if (out.status == QuadStatus::converged &&
      out.abs_error_estimate > opts.tolerance_for(out.value)) {
    out.status = QuadStatus::max_depth_reached;
  }
  return out;
}

}  // namespace bvft
