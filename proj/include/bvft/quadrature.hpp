#pragma once

// Numerical integration kernels used throughout the library.
//
// Every kernel returns a QuadratureResult carrying a status instead of
// throwing on slow convergence: callers that classify functions need
// "did not converge" and "looks divergent" as data, not as exceptions.
// Only genuinely invalid input (bad interval, non-finite integrand value)
// raises.

#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bvft {

using Integrand = std::function<double(double)>;

enum class QuadStatus { converged, max_depth_reached, divergence_suspected };

std::string_view to_string(QuadStatus status);
QuadStatus status_from_string(std::string_view name);

/// The more pessimistic of two statuses (divergence > max depth > converged).
QuadStatus worst(QuadStatus a, QuadStatus b);

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  QuadStatus status = QuadStatus::converged;
  long evaluations = 0;

  bool converged() const { return status == QuadStatus::converged; }
};

/// Sum of two results: values and errors add, the status is the worst one.
QuadratureResult combine(const QuadratureResult& a, const QuadratureResult& b);
QuadratureResult scaled(QuadratureResult r, double factor);

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_subdivisions = 2000;
  int pv_ladder_depth = 12;
  // Maximum number of dyadic blocks per direction in half-line sums.
  int dyadic_block_limit = 48;
  // A dyadic block smaller than this counts as negligible tail.
  double tail_threshold = 1e-14;
  // Maximum number of half-period blocks in oscillatory sums.
  int oscillatory_block_limit = 4000;
  // Period of the integrand's oscillation, when known.  Dyadic blocks far
  // out are then snapped to period * 2^j so each covers whole periods.
  double oscillation_period = 0.0;

  double tolerance_for(double value) const;
};

/// Raised when an integrand returns a non-finite value at an interior node.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(double location, double value);
  double location() const { return location_; }

 private:
  double location_;
};

/// Adaptive 21-point Gauss-Kronrod quadrature on [a, b], with forced
/// subdivision at every breakpoint strictly inside (a, b).
QuadratureResult integrate_finite(const Integrand& h, double a, double b,
                                  const QuadratureOptions& opts,
                                  std::span<const double> breakpoints = {});

/// integrate_finite with extra breakpoints at the powers +-2^j when
/// [a, b] spans many binary scales.
QuadratureResult integrate_multiscale(const Integrand& h, double a, double b,
                                      const QuadratureOptions& opts,
                                      std::span<const double> breakpoints = {});

/// Integral over [0, inf) assembled from dyadic blocks [2^k, 2^(k+1)]
/// (towards infinity) and [2^-(k+1), 2^-k] (towards zero).  Block partial
/// sums are extrapolated with the epsilon algorithm once they decay
/// geometrically; blocks that stop decaying flag divergence.
QuadratureResult integrate_halfline(const Integrand& h,
                                    const QuadratureOptions& opts,
                                    std::span<const double> breakpoints = {});

/// Integral over [a, inf).
QuadratureResult integrate_tail(const Integrand& h, double a,
                                const QuadratureOptions& opts,
                                std::span<const double> breakpoints = {});

/// Integral of |h| over [0, inf).  Each dyadic block is sampled with
/// spacing at most `sample_spacing` (0 selects 16 samples per block),
/// sign changes are bracketed and refined, and the block is split there.
QuadratureResult integrate_abs_halfline(const Integrand& h,
                                        const QuadratureOptions& opts,
                                        std::span<const double> breakpoints = {},
                                        double sample_spacing = 0.0);

/// Integral of |h| over [a, b] with the same sign-change splitting.
QuadratureResult integrate_abs(const Integrand& h, double a, double b,
                               const QuadratureOptions& opts,
                               std::span<const double> breakpoints = {},
                               double sample_spacing = 0.0);

enum class Oscillator { sine, cosine };

struct OscillatoryHints {
  double lower = 0.0;
  // g vanishes identically beyond this point, when finite.
  double support = std::numeric_limits<double>::infinity();
  std::vector<double> breakpoints;
};

/// Integral over [lower, inf) of g(t) sin(xt) or g(t) cos(xt), summed over
/// the half-periods between consecutive zeros of the oscillator.  The block
/// sums form an (approximately) alternating series that is accelerated
/// with the epsilon algorithm.
QuadratureResult integrate_oscillatory(const Integrand& g, double x,
                                       Oscillator kind,
                                       const QuadratureOptions& opts,
                                       const OscillatoryHints& hints = {});

/// Sum of integrals of h over the blocks [start, first_break],
/// [first_break, first_break + step], ... with epsilon acceleration of the
/// partial sums.  This is the engine behind integrate_oscillatory, exposed
/// for integrands whose oscillation is not a bare sine or cosine.
QuadratureResult integrate_partitioned(const Integrand& h, double start,
                                       double first_break, double step,
                                       const QuadratureOptions& opts,
                                       double support =
                                           std::numeric_limits<double>::infinity(),
                                       std::span<const double> breakpoints = {});

/// Excision radii for a principal value integral, strictly decreasing.
struct PvSpec {
  double singularity = 0.0;
  std::vector<double> excision_ladder;

  /// delta_k = 2^-k * width / 8 for k = 0..depth, with width = b - a for a
  /// finite interval.  The first radius is clipped so that the excised
  /// window stays inside (a, b).
  static PvSpec geometric(double singularity, double a, double b, int depth);
  static PvSpec with_radius(double singularity, double radius, int depth);

  void validate() const;
};

/// Principal value of the integral of h over (a, b) (either end may be
/// infinite) across a simple pole at spec.singularity.  I(delta_k) is the
/// integral with (s - delta_k, s + delta_k) removed; the limit delta -> 0 is
/// taken by Richardson extrapolation on the ladder.
QuadratureResult integrate_pv(const Integrand& h, double a, double b,
                              const PvSpec& spec, const QuadratureOptions& opts,
                              std::span<const double> breakpoints = {});

/// lim_{delta -> 0+} of the integral of q over [delta, upper], where q is
/// bounded or has a cancelling singularity at 0 and the excised piece
/// expands in odd powers of delta.  The ladder supplies the radii.
QuadratureResult excision_limit(const Integrand& q, double upper,
                                std::span<const double> ladder,
                                const QuadratureOptions& opts,
                                std::span<const double> breakpoints = {});

/// Wynn's epsilon algorithm applied to a sequence of partial sums; returns
/// the extrapolated limit from the highest even column available.
double wynn_epsilon(std::span<const double> partial_sums);

}  // namespace bvft
