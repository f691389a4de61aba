#include "bvft/testfns.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace bvft {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

double lambda_from(const Params& params) {
  double lambda = 1.0;
  for (const auto& [key, value] : params) {
    if (key != "lambda") throw ParameterError("unknown parameter '" + key + "'");
    lambda = value;
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ParameterError("lambda must be a positive finite number");
  }
  return lambda;
}

TestFunction make_exp() {
  TestFunction f;
  f.id = "exp";
  f.eval_f = [](double t) { return std::exp(-t); };
  f.eval_fprime = [](double t) { return -std::exp(-t); };
  f.eval_fsecond = [](double t) { return std::exp(-t); };
  f.decay_class = DecayClass::exponential;
  f.closed_forms.cosine_ft = [](double x) { return 1.0 / (1.0 + x * x); };
  f.closed_forms.sine_ft = [](double x) { return x / (1.0 + x * x); };
  f.closed_forms.script_t_of_fprime = [](double x) { return -1.0 / (1.0 + x * x); };
  return f;
}

TestFunction make_triangle() {
  TestFunction f;
  f.id = "triangle";
  f.eval_f = [](double t) { return t < 1.0 ? 1.0 - t : 0.0; };
  f.eval_fprime = [](double t) { return t < 1.0 ? -1.0 : 0.0; };
  f.eval_fsecond = [](double) { return 0.0; };
  f.support_hint = 1.0;
  f.kinks = {1.0};
  f.decay_class = DecayClass::compact;
  f.closed_forms.cosine_ft = [](double x) {
    if (std::abs(x) < 1e-4) return 0.5 - x * x / 24.0;
    // (1 - cos x) / x^2 = 2 sin^2(x/2) / x^2
    const double s = std::sin(0.5 * x);
    return 2.0 * s * s / (x * x);
  };
  f.closed_forms.sine_ft = [](double x) {
    if (std::abs(x) < 1e-3) return x / 6.0 - x * x * x / 120.0;
    return (x - std::sin(x)) / (x * x);
  };
  f.closed_forms.script_t_of_fprime = [c = f.closed_forms.cosine_ft](double x) { return -c(x); };
  f.closed_forms.hilbert_odd_of_fprime = [](double x) {
    return -std::log(std::abs(1.0 - x * x) / (x * x)) / kPi;
  };
  return f;
}

TestFunction make_gaussian() {
  TestFunction f;
  f.id = "gaussian";
  f.eval_f = [](double t) { return std::exp(-t * t); };
  f.eval_fprime = [](double t) { return -2.0 * t * std::exp(-t * t); };
  f.eval_fsecond = [](double t) { return (4.0 * t * t - 2.0) * std::exp(-t * t); };
  f.decay_class = DecayClass::gaussian;
  f.closed_forms.cosine_ft = [](double x) {
    return 0.5 * std::sqrt(kPi) * std::exp(-0.25 * x * x);
  };
  f.closed_forms.script_t_of_fprime = [](double x) {
    return -0.5 * std::sqrt(kPi) * std::exp(-0.25 * x * x);
  };
  return f;
}

TestFunction make_rational() {
  TestFunction f;
  f.id = "rational";
  f.eval_f = [](double t) { return 1.0 / (1.0 + t * t); };
  f.eval_fprime = [](double t) {
    const double d = 1.0 + t * t;
    return -2.0 * t / (d * d);
  };
  f.eval_fsecond = [](double t) {
    const double d = 1.0 + t * t;
    return (6.0 * t * t - 2.0) / (d * d * d);
  };
  f.decay_class = DecayClass::polynomial;
  f.closed_forms.cosine_ft = [](double x) { return 0.5 * kPi * std::exp(-x); };
  f.closed_forms.script_t_of_fprime = [](double x) { return -0.5 * kPi * std::exp(-x); };
  f.closed_forms.hilbert_odd_of_fprime = [](double x) {
    const double d = 1.0 + x * x;
    return -(1.0 - x * x) / (d * d);
  };
  return f;
}

TestFunction make_log_decay() {
  TestFunction f;
  f.id = "log_decay";
  f.eval_f = [](double t) { return 1.0 / std::log(kE + t); };
  f.eval_fprime = [](double t) {
    const double l = std::log(kE + t);
    return -1.0 / ((kE + t) * l * l);
  };
  f.eval_fsecond = [](double t) {
    const double l = std::log(kE + t);
    return (l + 2.0) / ((kE + t) * (kE + t) * l * l * l);
  };
  f.decay_class = DecayClass::logarithmic;
  return f;
}

TestFunction make_zero() {
  TestFunction f;
  f.id = "zero";
  f.eval_f = [](double) { return 0.0; };
  f.eval_fprime = [](double) { return 0.0; };
  f.eval_fsecond = [](double) { return 0.0; };
  f.decay_class = DecayClass::compact;
  f.closed_forms.cosine_ft = [](double) { return 0.0; };
  f.closed_forms.sine_ft = [](double) { return 0.0; };
  f.closed_forms.script_t_of_fprime = [](double) { return 0.0; };
  f.closed_forms.hilbert_odd_of_fprime = [](double) { return 0.0; };
  return f;
}

RealFn rescale_transform(const RealFn& base, double lambda) {
  if (!base) return {};
  return [base, lambda](double x) { return base(x / lambda) / lambda; };
}

}  // namespace

LineFunction odd_extension(const HalfLineFunction& g) {
  LineFunction out;
  out.id = g.id + ":odd";
  out.value = [v = g.value](double t) {
    if (t > 0.0) return v(t);
    if (t < 0.0) return -v(-t);
    return 0.0;
  };
  for (double k : g.kinks) {
    out.kinks.push_back(k);
    out.kinks.push_back(-k);
  }
  out.kinks.push_back(0.0);
  out.support = g.support;
  return out;
}

std::string_view to_string(DecayClass decay) {
  switch (decay) {
    case DecayClass::compact:
      return "compact";
    case DecayClass::exponential:
      return "exponential";
    case DecayClass::gaussian:
      return "gaussian";
    case DecayClass::polynomial:
      return "polynomial";
    case DecayClass::logarithmic:
      return "logarithmic";
  }
  return "unknown";
}

double TestFunction::lambda() const {
  const auto it = params.find("lambda");
  return it == params.end() ? 1.0 : it->second;
}

std::string TestFunction::label() const {
  std::ostringstream os;
  os << id;
  if (lambda() != 1.0) os << "[lambda=" << lambda() << "]";
  return os.str();
}

HalfLineFunction TestFunction::f() const {
  HalfLineFunction h;
  h.id = label();
  h.value = eval_f;
  h.derivative = eval_fprime;
  h.kinks = kinks;
  if (support_hint) h.support = *support_hint;
  return h;
}

HalfLineFunction TestFunction::fprime() const {
  HalfLineFunction h;
  h.id = "fprime:" + label();
  h.value = eval_fprime;
  h.derivative = eval_fsecond;
  h.kinks = kinks;
  if (support_hint) h.support = *support_hint;
  return h;
}

std::vector<std::string> family_ids() {
  return {"exp", "triangle", "gaussian", "rational", "log_decay", "zero"};
}

std::string family_description(std::string_view id) {
  if (id == "exp") return "exp(-t)";
  if (id == "triangle") return "(1-t)_+";
  if (id == "gaussian") return "exp(-t^2)";
  if (id == "rational") return "1/(1+t^2)";
  if (id == "log_decay") return "1/ln(e+t)";
  if (id == "zero") return "0";
  throw RegistryError("unknown family '" + std::string(id) + "'");
}

TestFunction registry_get(std::string_view id, const Params& params) {
  const double lambda = lambda_from(params);
  TestFunction base;
  if (id == "exp") {
    base = make_exp();
  } else if (id == "triangle") {
    base = make_triangle();
  } else if (id == "gaussian") {
    base = make_gaussian();
  } else if (id == "rational") {
    base = make_rational();
  } else if (id == "log_decay") {
    base = make_log_decay();
  } else if (id == "zero") {
    base = make_zero();
  } else {
    throw RegistryError("unknown family '" + std::string(id) + "'");
  }
  base.params["lambda"] = 1.0;
  return lambda == 1.0 ? base : dilate(base, lambda);
}

TestFunction registry_from_json(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("family") || !spec["family"].is_string()) {
    throw RegistryError("family spec must be an object with a string \"family\"");
  }
  Params params;
  if (spec.contains("params")) {
    const auto& p = spec["params"];
    if (!p.is_object()) throw ParameterError("\"params\" must be an object");
    for (const auto& [key, value] : p.items()) {
      if (!value.is_number()) throw ParameterError("parameter '" + key + "' must be a number");
      params[key] = value.get<double>();
    }
  }
  return registry_get(spec["family"].get<std::string>(), params);
}

TestFunction dilate(const TestFunction& f, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ParameterError("dilation factor must be a positive finite number");
  }
  if (lambda == 1.0) return f;

  TestFunction out = f;
  out.params["lambda"] = f.lambda() * lambda;
  out.eval_f = [g = f.eval_f, lambda](double t) { return g(lambda * t); };
  out.eval_fprime = [g = f.eval_fprime, lambda](double t) { return lambda * g(lambda * t); };
  if (f.eval_fsecond) {
    out.eval_fsecond = [g = f.eval_fsecond, lambda](double t) {
      return lambda * lambda * g(lambda * t);
    };
  }
  if (f.support_hint) out.support_hint = *f.support_hint / lambda;
  for (double& k : out.kinks) k /= lambda;

  const ClosedForms& c = f.closed_forms;
  out.closed_forms.cosine_ft = rescale_transform(c.cosine_ft, lambda);
  out.closed_forms.sine_ft = rescale_transform(c.sine_ft, lambda);
  out.closed_forms.script_t_of_fprime = rescale_transform(c.script_t_of_fprime, lambda);
  if (c.hilbert_odd_of_fprime) {
    out.closed_forms.hilbert_odd_of_fprime = [h = c.hilbert_odd_of_fprime, lambda](double x) {
      return lambda * h(lambda * x);
    };
  }
  return out;
}

std::vector<std::string> odd_function_ids() {
  std::vector<std::string> ids{"bump", "zero"};
  for (const auto& fam : family_ids()) {
    if (fam != "zero") ids.push_back("fprime:" + fam);
  }
  return ids;
}

HalfLineFunction odd_function(std::string_view id, const Params& params) {
  if (id.starts_with("fprime:")) {
    return registry_get(id.substr(7), params).fprime();
  }
  const double lambda = lambda_from(params);
  HalfLineFunction g;
  if (id == "bump") {
    g.id = "bump";
    g.value = [](double t) {
      const double d = 1.0 + t * t;
      return t / (d * d);
    };
    g.derivative = [](double t) {
      const double d = 1.0 + t * t;
      return (1.0 - 3.0 * t * t) / (d * d * d);
    };
  } else if (id == "zero") {
    g.id = "zero";
    g.value = [](double) { return 0.0; };
    g.derivative = [](double) { return 0.0; };
  } else {
    throw RegistryError("unknown odd function '" + std::string(id) + "'");
  }
  return lambda == 1.0 ? g : dilate_odd(g, lambda);
}

HalfLineFunction dilate_odd(const HalfLineFunction& g, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ParameterError("dilation factor must be a positive finite number");
  }
  HalfLineFunction out = g;
  std::ostringstream os;
  os << g.id << "[lambda=" << lambda << "]";
  out.id = os.str();
  out.value = [v = g.value, lambda](double t) { return lambda * v(lambda * t); };
  if (g.derivative) {
    out.derivative = [d = g.derivative, lambda](double t) { return lambda * lambda * d(lambda * t); };
  }
  for (double& k : out.kinks) k /= lambda;
  out.support = g.support / lambda;
  return out;
}

}  // namespace bvft
