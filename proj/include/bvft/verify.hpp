#pragma once

// Norms, ratios and identity residuals built on the transforms, plus the
// membership classifier for the chain H0^1 within H_Q^1 within Q0 within L0^1.
//
// Ratios stand in for inequalities with an unspecified absolute constant:
// each check records the ratio of the two sides, and callers compare it
// with an advisory ceiling.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bvft/quadrature.hpp"
#include "bvft/testfns.hpp"
#include "bvft/transforms.hpp"

namespace bvft {

/// Raised when a ratio has an identically vanishing denominator.
class DegenerateInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Verdict { yes, no, undecided };
std::string_view to_string(Verdict v);

/// converged -> yes, divergence_suspected -> no, max_depth_reached -> undecided.
Verdict finiteness(const QuadratureResult& r);
/// Three-valued conjunction: no dominates, then undecided.
Verdict both(Verdict a, Verdict b);

struct NormOptions {
  // Pointwise transforms inside an outer integral.
  QuadratureOptions inner = [] {
    QuadratureOptions o;
    o.abs_tol = 1e-10;
    return o;
  }();
  // Integrals over x of |transform|.
  QuadratureOptions outer = [] {
    QuadratureOptions o;
    o.abs_tol = 1e-12;
    o.rel_tol = 1e-4;
    return o;
  }();
  double ratio_ceiling = 10.0;
  int threads = 1;
};

// Single norms.  `g` is the restriction to (0, inf) of an odd function.
QuadratureResult l1_norm(const HalfLineFunction& g, const NormOptions& opts = {});
QuadratureResult l1_T_norm(const HalfLineFunction& g, const NormOptions& opts = {});
/// int_0^inf |f_c(x)| dx.
QuadratureResult l1_cosine_norm(const TestFunction& f, const NormOptions& opts = {});
/// int_0^inf |g_s(x)| / x dx.
QuadratureResult q0_integral(const HalfLineFunction& g, const NormOptions& opts = {});
/// int_0^inf |H0 g(x)| dx.
QuadratureResult l1_hilbert_odd(const HalfLineFunction& g, const NormOptions& opts = {});
/// ||g||_L1(R) + ||H g||_L1(R) = 2 int_0^inf |g| + 2 int_0^inf |H0 g|.
QuadratureResult h1_full_norm(const HalfLineFunction& g, const NormOptions& opts = {});
/// int_0^inf |H0 Tq_g(x)| dx through the Si/Ci route.
QuadratureResult hq_integral(const HalfLineFunction& g, const NormOptions& opts = {});
/// int_R of the odd extension of g.
QuadratureResult cancellation(const HalfLineFunction& g, const NormOptions& opts = {});
/// int_0^inf |H0 g(x) - T g(x)| dx.
QuadratureResult l1_gamma(const HalfLineFunction& g, const NormOptions& opts = {});
/// int_0^inf |f_s(x) - f(pi/(2x))/x| dx.
QuadratureResult l1_F(const TestFunction& f, const NormOptions& opts = {});
/// int_0^inf |f_s(x) - f(pi/(2x))/x - H0 Tq_f'(x)| dx.
QuadratureResult l1_G(const TestFunction& f, const NormOptions& opts = {});

/// Norm bundle of a test function f, with g = f' wherever a function on
/// the odd side is needed.
struct NormReport {
  std::string function_id;
  QuadratureResult l1_fprime;
  QuadratureResult l1_T_fprime;
  QuadratureResult l1_ft_cosine;
  QuadratureResult q0_integral;
  QuadratureResult h1_full;
  QuadratureResult hq_integral;
  QuadratureResult cancellation;
  // int_0^inf f' = -f(0), kept next to the full-line integral.
  QuadratureResult half_line_integral;
};

NormReport norm_report(const TestFunction& f, const NormOptions& opts = {});
/// Same bundle for an odd g; l1_ft_cosine is left empty (status converged, value 0).
NormReport norm_report(const HalfLineFunction& g, const NormOptions& opts = {});

struct Thm1Result {
  double r_c = 0.0;
  double r_s = 0.0;
  QuadratureResult l1_ft_cosine;
  QuadratureResult l1_F;
  QuadratureResult l1_fprime;
  QuadratureResult l1_T_fprime;

  bool finite() const;
};

/// r_c = ||f_c||_1 / (||f'||_1 + ||Tf'||_1),  r_s = ||F||_1 / (same).
/// Throws DegenerateInput when the denominator vanishes.
Thm1Result check_thm1(const TestFunction& f, const NormOptions& opts = {});

struct Thm2Result {
  // |f_c(x) + Tq_f'(x)| on the grid.
  TransformGrid residual;
  double max_residual = 0.0;
  QuadratureResult l1_ft_cosine;
  QuadratureResult q0_fprime;
  Verdict cosine_integrable = Verdict::undecided;
  Verdict fprime_in_q0 = Verdict::undecided;

  /// Both sides reach the same finiteness verdict.
  bool agree() const { return cosine_integrable == fprime_in_q0; }
};

Thm2Result check_thm2(const TestFunction& f, std::span<const double> grid,
                      const NormOptions& opts = {});

struct DecompositionReport {
  TransformGrid grid;          // f_s
  TransformGrid leading_term;  // f(pi/(2x)) / x
  TransformGrid h0t_term;      // H0 Tq_f'(x)
  TransformGrid g_residual;    // G
  TransformGrid f_residual;    // F
  QuadratureResult l1_G;
  QuadratureResult l1_F;
  QuadratureResult l1_fprime;
  double ratio_G = 0.0;

  /// (leading + h0t) + G reproduces f_s bit for bit at every point.
  bool reconstruction_exact() const;
};

DecompositionReport check_thm3(const TestFunction& f, std::span<const double> grid,
                               const NormOptions& opts = {});

struct RatioResult {
  double ratio = 0.0;
  QuadratureResult numerator;
  QuadratureResult denominator;
  // Set when the denominator did not converge.
  bool undecided = false;
};

/// ||H0 Tq_g||_1 / (||g||_1 + ||Tg||_1).
RatioResult check_prop1(const HalfLineFunction& g, const NormOptions& opts = {});

/// Hardy inequality ratio for odd g.  With g_hat the full-line transform
/// int_R g(t) e^{-ixt} dt = -2i g_s(x), the left side int_R |g_hat(x)|/|x| dx
/// equals 4 q0(g); the recorded ratio uses 2 q0(g), so the stated constant
/// absorbs a factor 2.  Denominator: h1_full_norm(g).
RatioResult check_hardy(const HalfLineFunction& g, const NormOptions& opts = {});

struct FubiniResult {
  QuadratureResult lhs;  // int_0^inf int_0^{pi/(2x)} t |f'(t)| dt dx
  QuadratureResult rhs;  // (pi/2) ||f'||_1
  double relative_residual = 0.0;
};

FubiniResult check_fubini(const TestFunction& f, const NormOptions& opts = {});

struct MembershipVerdict {
  std::string function_id;
  Verdict in_L10 = Verdict::undecided;
  Verdict in_Q0 = Verdict::undecided;
  Verdict in_H1Q = Verdict::undecided;
  Verdict in_H10 = Verdict::undecided;
  // Defining quantities: ||g||_1, q0, ||H0 Tq_g||_1, ||H0 g||_1.
  QuadratureResult l1;
  std::optional<QuadratureResult> q0;
  std::optional<QuadratureResult> hq;
  std::optional<QuadratureResult> hilbert;

  /// No decided verdict contradicts the inclusion order.
  bool monotone() const;
};

MembershipVerdict classify_membership(const HalfLineFunction& g, const NormOptions& opts = {});

/// Q0 test on a spectrum supplied directly: finiteness of
/// int_0^inf |spectrum(x)| / x dx.  The time side is unknown, so only
/// in_Q0 is filled in (and in_H1Q, in_H10 are marked "no" when in_Q0 is).
MembershipVerdict classify_spectrum(const std::string& id, const RealFn& spectrum,
                                    const NormOptions& opts = {});

/// 1/ln(e + 1/x).
double log_spectrum(double x);

}  // namespace bvft
