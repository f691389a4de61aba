#pragma once

// Admissible functions on the half-line: locally absolutely continuous, of
// bounded variation and vanishing at infinity.  Each one is carried as a
// pair of hand-coded evaluators (f, f') plus the metadata the quadrature
// needs (support, points where f' is not smooth) and, when known, closed
// forms of its transforms.

#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "bvft/quadrature.hpp"

namespace bvft {

using RealFn = std::function<double(double)>;
using Params = std::map<std::string, double>;

/// A real function on (0, inf) together with integration metadata.  Used
/// both for f itself and for odd functions g given by their restriction to
/// the positive half-line.
struct HalfLineFunction {
  std::string id;
  RealFn value;
  RealFn derivative;  // empty when unavailable
  std::vector<double> kinks;
  // The function vanishes identically beyond this point.
  double support = std::numeric_limits<double>::infinity();

  double operator()(double t) const { return value(t); }
  bool has_derivative() const { return static_cast<bool>(derivative); }
  bool compact() const { return support < std::numeric_limits<double>::infinity(); }
};

/// A real function on the whole line, vanishing for |t| > support.
struct LineFunction {
  std::string id;
  RealFn value;
  std::vector<double> kinks;
  double support = std::numeric_limits<double>::infinity();

  double operator()(double t) const { return value(t); }
};

/// g(-t) = -g(t) assembled from the half-line data.
LineFunction odd_extension(const HalfLineFunction& g);

enum class DecayClass { compact, exponential, gaussian, polynomial, logarithmic };
std::string_view to_string(DecayClass decay);

/// Closed forms in x; an empty function means "not known".
struct ClosedForms {
  RealFn cosine_ft;
  RealFn sine_ft;
  RealFn hilbert_odd_of_fprime;
  RealFn script_t_of_fprime;
};

struct TestFunction {
  std::string id;
  Params params;
  RealFn eval_f;
  RealFn eval_fprime;
  RealFn eval_fsecond;  // optional
  std::optional<double> support_hint;
  std::vector<double> kinks;  // points where f' jumps or is not smooth
  DecayClass decay_class = DecayClass::exponential;
  ClosedForms closed_forms;

  double lambda() const;
  /// Tag such as "exp[lambda=0.25]" used in report names.
  std::string label() const;

  /// f with f' as its derivative.
  HalfLineFunction f() const;
  /// f' with f'' as its derivative, seen as the restriction of an odd function.
  HalfLineFunction fprime() const;
};

class RegistryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Shipped families: exp, triangle, gaussian, rational, log_decay, and the
/// degenerate probe zero (f = 0).
std::vector<std::string> family_ids();
std::string family_description(std::string_view id);

/// Accepted parameter: "lambda" (dilation, default 1).
TestFunction registry_get(std::string_view id, const Params& params = {});

/// {"family": "<id>", "params": {"lambda": <value>}}
TestFunction registry_from_json(const nlohmann::json& spec);

/// f_lambda(t) = f(lambda t) with derivatives and closed forms rescaled.
TestFunction dilate(const TestFunction& f, double lambda);

/// Shipped odd functions (restricted to t > 0): "bump" = t/(1+t^2)^2,
/// "zero", and "fprime:<family>" for every family.
std::vector<std::string> odd_function_ids();
HalfLineFunction odd_function(std::string_view id, const Params& params = {});

/// lambda g(lambda t): the derivative of a dilated function.
HalfLineFunction dilate_odd(const HalfLineFunction& g, double lambda);

}  // namespace bvft
