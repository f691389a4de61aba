#pragma once

// Sine and cosine integrals
//
//   Si(u) =  int_0^u sin(t)/t dt = pi/2 - int_u^inf sin(t)/t dt
//   Ci(u) = -int_u^inf cos(t)/t dt
//
// Below the crossover both are summed from their power series; above it
// they are assembled from the auxiliary functions f and g,
//   Si = pi/2 - f cos u - g sin u,   Ci = f sin u - g cos u,
// with f + i g obtained from the continued fraction of E1(iu).

namespace bvft::specfun {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kCrossover = 6.0;

enum class Method { power_series, asymptotic };

struct SpecFunValue {
  double value;
  Method method;
};

struct SiCi {
  double si;
  double ci;
  Method method;
};

SpecFunValue si_eval(double u, double crossover = kCrossover);
SpecFunValue ci_eval(double u, double crossover = kCrossover);

/// Si(u) for u >= 0; throws std::domain_error for negative u.
double si(double u);
/// Ci(u) for u > 0; throws std::domain_error otherwise.
double ci(double u);

/// Both integrals at once (u > 0), sharing the continued fraction.
SiCi sici(double u, double crossover = kCrossover);

struct Auxiliary {
  double f;
  double g;
};

/// The auxiliary functions
///   f(u) = Ci(u) sin u + (pi/2 - Si(u)) cos u,
///   g(u) = -Ci(u) cos u + (pi/2 - Si(u)) sin u,   u > 0.
/// Both decay like 1/u and 1/u^2; above the crossover they come straight
/// from the continued fraction without the cancellation in pi/2 - Si.
Auxiliary auxiliary(double u, double crossover = kCrossover);

// Branches exposed for the crossover-continuity check.
double si_series(double u);
double ci_series(double u);
SiCi sici_auxiliary(double u);

}  // namespace bvft::specfun
