#include "bvft/specfun.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bvft::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_nonnegative(double u) {
  if (!(u >= 0.0)) throw std::domain_error("Si: argument must be >= 0, got " + std::to_string(u));
}

void require_positive(double u) {
  if (!(u > 0.0)) throw std::domain_error("Ci: argument must be > 0, got " + std::to_string(u));
}

}  // namespace

double si_series(double u) {
  // sum (-1)^k u^(2k+1) / ((2k+1) (2k+1)!)
  const double u2 = u * u;
  double term = u;  // u^(2k+1) / (2k+1)!
  double sum = u;
  for (int k = 1; k < 200; ++k) {
    term *= -u2 / ((2.0 * k) * (2.0 * k + 1.0));
    const double contrib = term / (2.0 * k + 1.0);
    sum += contrib;
    if (std::abs(contrib) < kEps * 1e-2 * std::abs(sum)) break;
  }
  return sum;
}

double ci_series(double u) {
  // gamma + ln u + sum_{k>=1} (-1)^k u^(2k) / (2k (2k)!)
  const double u2 = u * u;
  double term = 1.0;  // u^(2k) / (2k)!
  double sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= -u2 / ((2.0 * k - 1.0) * (2.0 * k));
    const double contrib = term / (2.0 * k);
    sum += contrib;
    if (std::abs(contrib) < kEps * 1e-2 * std::abs(sum)) break;
  }
  return kEulerGamma + std::log(u) + sum;
}

namespace {

// Modified Lentz evaluation of the continued fraction for E1(iu) e^{iu},
// which equals g(u) - i f(u).
std::complex<double> continued_fraction(double u) {
  using cd = std::complex<double>;
  constexpr double kTiny = 1e-300;
  cd b(1.0, u);
  cd c(1.0 / kTiny, 0.0);
  cd d = 1.0 / b;
  cd h = d;
  for (int i = 2; i < 100000; ++i) {
    const double a = -static_cast<double>(i - 1) * static_cast<double>(i - 1);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const cd del = c * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < kEps) break;
  }
  return h;
}

}  // namespace

SiCi sici_auxiliary(double u) {
  using cd = std::complex<double>;
  cd h = continued_fraction(u);
  h *= cd(std::cos(u), -std::sin(u));
  return {std::numbers::pi / 2.0 + h.imag(), -h.real(), Method::asymptotic};
}

Auxiliary auxiliary(double u, double crossover) {
  require_positive(u);
  if (u <= crossover) {
    const double s = si_series(u);
    const double c = ci_series(u);
    const double rest = std::numbers::pi / 2.0 - s;
    return {c * std::sin(u) + rest * std::cos(u), -c * std::cos(u) + rest * std::sin(u)};
  }
  const std::complex<double> h = continued_fraction(u);
  return {-h.imag(), h.real()};
}

SpecFunValue si_eval(double u, double crossover) {
  require_nonnegative(u);
  if (u <= crossover) return {si_series(u), Method::power_series};
  return {sici_auxiliary(u).si, Method::asymptotic};
}

SpecFunValue ci_eval(double u, double crossover) {
  require_positive(u);
  if (u <= crossover) return {ci_series(u), Method::power_series};
  return {sici_auxiliary(u).ci, Method::asymptotic};
}

double si(double u) { return si_eval(u).value; }
double ci(double u) { return ci_eval(u).value; }

SiCi sici(double u, double crossover) {
  require_positive(u);
  if (u <= crossover) return {si_series(u), ci_series(u), Method::power_series};
  return sici_auxiliary(u);
}

}  // namespace bvft::specfun
