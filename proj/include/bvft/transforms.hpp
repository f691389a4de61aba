#pragma once

// Integral transforms on the half-line.
//
//   cosine/sine transforms   f_c(x) = int_0^inf f(t) cos(xt) dt,  f_s likewise
//   T-transform              Tg(t)  = int_0^{t/2} (g(t+s) - g(t-s)) / s ds
//   Hilbert transform        Hg(x)  = (1/pi) PV int_R g(t) / (t - x) dt
//   odd Hilbert transform    H0g(x) = (2/pi) PV int_0^inf t g(t) / (t^2 - x^2) dt
//   quotient transform       Tq_g(x) = g_s(x) / x
//
// The composition H0 Tq_g has two independent evaluation routes: the direct
// one (a principal value integral over sine transforms) and the closed
// kernel route through Si and Ci (h0_script_t_cisi).

#include <iosfwd>
#include <span>
#include <vector>

#include "bvft/quadrature.hpp"
#include "bvft/testfns.hpp"

namespace bvft {

QuadratureResult cosine_transform(const HalfLineFunction& g, double x,
                                  const QuadratureOptions& opts = {});
QuadratureResult sine_transform(const HalfLineFunction& g, double x,
                                const QuadratureOptions& opts = {});

/// f_c(x); x = 0 gives the plain integral of f.
QuadratureResult fourier_cosine(const TestFunction& f, double x,
                                const QuadratureOptions& opts = {});
/// f_s(x); x = 0 gives 0.
QuadratureResult fourier_sine(const TestFunction& f, double x,
                              const QuadratureOptions& opts = {});

/// Tg(t) for t > 0.  Near s = 0 the integrand is replaced by its limit
/// 2 g'(t) when g carries a derivative; otherwise the s -> 0 end is handled
/// by a one-sided excision ladder.
QuadratureResult t_transform(const HalfLineFunction& g, double t,
                             const QuadratureOptions& opts = {});

/// H0 g(x) for x > 0, g the restriction of an odd function.
QuadratureResult hilbert_odd(const HalfLineFunction& g, double x,
                             const QuadratureOptions& opts = {});

/// H g(x) for any real x.
QuadratureResult hilbert_full(const LineFunction& g, double x,
                              const QuadratureOptions& opts = {});

/// g_s(x) / x for x > 0; at x = 0 the limit int_0^inf t g(t) dt.
QuadratureResult script_t(const HalfLineFunction& g, double x,
                          const QuadratureOptions& opts = {});

/// The function u -> script_t(g, u) packaged for further transforms.
HalfLineFunction script_t_function(const HalfLineFunction& g, const QuadratureOptions& opts = {});

/// H0 Tq_g(x) through the Si/Ci kernel:
///   (2/(x pi)) int_0^inf g(t) [cos(xt) Si(xt) - sin(xt) Ci(xt)] dt.
QuadratureResult h0_script_t_cisi(const HalfLineFunction& g, double x,
                                  const QuadratureOptions& opts = {});

/// H0 Tq_g(x) evaluated directly as hilbert_odd(script_t(g, .), x).
QuadratureResult h0_script_t_direct(const HalfLineFunction& g, double x,
                                    const QuadratureOptions& opts = {});

/// Gamma(x) = H0 g(x) - T g(x).
QuadratureResult gamma_residual(const HalfLineFunction& g, double x,
                                const QuadratureOptions& opts = {});

/// I(x) = int_{pi/(2x)}^inf f(t) sin(xt) dt.
QuadratureResult tail_integral(const TestFunction& f, double x,
                               const QuadratureOptions& opts = {});

/// PV int_0^inf sin(y u) / (a^2 - u^2) du in closed form,
///   (1/a) [sin(ay) Ci(ay) - cos(ay) Si(ay)],  a, y > 0.
double bateman_sine_pv(double a, double y);

/// Kernel cos(v) Si(v) - sin(v) Ci(v) of the Si/Ci route (0 at v = 0).
double cisi_kernel(double v);

struct TransformGrid {
  std::vector<double> points;
  std::vector<QuadratureResult> values;

  /// Throws std::invalid_argument unless points are positive, strictly
  /// increasing and aligned with values.
  void validate() const;
};

/// Geometric grid from min to max (both included) with the given number of
/// points per decade.
std::vector<double> geometric_grid(double min, double max, int points_per_decade);

/// Default x-grid: 1e-2 .. 1e2, 25 points per decade.
std::vector<double> default_grid();

/// Evaluates fn at every point; results are stored in point order whatever
/// the worker count.
TransformGrid sweep(std::span<const double> points,
                    const std::function<QuadratureResult(double)>& fn, int threads = 1);

/// CSV with header x,value,abs_error_estimate,status,evaluations.
void write_csv(std::ostream& os, const TransformGrid& grid);

/// Shortest round-trip decimal form used in every text output.
std::string format_number(double v);

}  // namespace bvft
