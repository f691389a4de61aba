// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "bvft/experiment.hpp"
#include "bvft/quadrature.hpp"
#include "bvft/specfun.hpp"
#include "bvft/testfns.hpp"
#include "bvft/transforms.hpp"
#include "bvft/verify.hpp"

using namespace bvft;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// n points, geometric from lo to hi.
std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return v;
}

QuadratureOptions tight() {
  QuadratureOptions o;
  o.abs_tol = 1e-12;
  return o;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

Outcome closed_form_pairs() {
  const auto grid = logspace(1e-2, 1e2, 75);
  struct Pair {
    const char* family;
    bool sine;
    std::function<double(double)> exact;
  };
  const std::vector<Pair> pairs = {
      {"exp", false, [](double x) { return 1.0 / (1.0 + x * x); }},
      {"exp", true, [](double x) { return x / (1.0 + x * x); }},
      {"triangle", false, [](double x) { return (1.0 - std::cos(x)) / (x * x); }},
      {"triangle", true, [](double x) { return (x - std::sin(x)) / (x * x); }},
      {"gaussian", false,
       [](double x) { return std::sqrt(pi) / 2.0 * std::exp(-x * x / 4.0); }},
  };
  double worst = 0.0;
  for (const Pair& p : pairs) {
    const TestFunction f = registry_get(p.family);
    for (double x : grid) {
      const auto r = p.sine ? fourier_sine(f, x, tight()) : fourier_cosine(f, x, tight());
      worst = std::max(worst, std::abs(r.value - p.exact(x)));
    }
  }
  return {worst <= 1e-8, "max abs error " + fmt("%.2e", worst)};
}

Outcome parts_identity() {
  const auto grid = logspace(1e-2, 1e2, 75);
  double worst = 0.0;
  for (const char* id : {"exp", "triangle", "gaussian", "rational"}) {
    const TestFunction f = registry_get(id);
    const HalfLineFunction g = f.fprime();
    for (double x : grid) {
      const double c = fourier_cosine(f, x, tight()).value;
      const double s = sine_transform(g, x, tight()).value;
      worst = std::max(worst, std::abs(c + s / x) / (1.0 + std::abs(c)));
    }
  }
  return {worst <= 1e-6, "max scaled residual " + fmt("%.2e", worst)};
}

Outcome lemma_dual_path() {
  double worst = 0.0;
  for (const char* id : {"exp", "gaussian"}) {
    const HalfLineFunction g = registry_get(id).fprime();
    for (double x : logspace(0.1, 10.0, 20)) {
      worst = std::max(worst,
                       std::abs(h0_script_t_cisi(g, x).value - h0_script_t_direct(g, x).value));
    }
  }
  double bateman = 0.0;
  const double pairs[10][2] = {{0.5, 0.4}, {0.5, 2.0}, {1.0, 0.3}, {1.0, 1.0}, {1.0, 3.0},
                               {2.0, 0.7}, {2.0, 2.5}, {3.0, 0.2}, {3.0, 1.5}, {5.0, 0.9}};
  for (const auto& [a, y] : pairs) {
    const Integrand h = [a, y](double u) { return std::sin(y * u) / ((a - u) * (a + u)); };
    const auto near = integrate_pv(h, 0.0, 2.0 * a, PvSpec::geometric(a, 0.0, 2.0 * a, 12), tight());
    OscillatoryHints hints;
    hints.lower = 2.0 * a;
    const auto far = integrate_oscillatory([a](double u) { return 1.0 / ((a - u) * (a + u)); }, y,
                                           Oscillator::sine, tight(), hints);
    bateman = std::max(bateman, std::abs(bateman_sine_pv(a, y) - near.value - far.value));
  }
  return {worst <= 1e-5 && bateman <= 1e-6,
          "dual path " + fmt("%.2e", worst) + ", Bateman " + fmt("%.2e", bateman)};
}

Outcome hilbert_closed_form() {
  const HalfLineFunction g = odd_function("bump");
  double worst = 0.0;
  for (double x : logspace(1e-2, 1e2, 20)) {
    const double exact = (1.0 - x * x) / (2.0 * (1.0 + x * x) * (1.0 + x * x));
    worst = std::max(worst, std::abs(hilbert_odd(g, x, tight()).value - exact));
  }
  const double at0 = std::abs(hilbert_odd(g, 1e-8, tight()).value - 0.5);
  const double at1 = std::abs(hilbert_odd(g, 1.0, tight()).value);
  worst = std::max({worst, at0, at1});
  return {worst <= 1e-6, "max abs error " + fmt("%.2e", worst)};
}

Outcome script_t_closed_form() {
  const HalfLineFunction g = odd_function("bump");
  std::vector<double> pts = logspace(1e-2, 10.0, 19);
  pts.insert(pts.begin(), 0.0);
  double worst = 0.0;
  for (double x : pts) {
    worst = std::max(worst, std::abs(script_t(g, x, tight()).value - pi / 4.0 * std::exp(-x)));
  }
  return {worst <= 1e-7, "max abs error " + fmt("%.2e", worst) + " over 20 points incl. x=0"};
}

Outcome fubini() {
  double worst = 0.0;
  for (const char* id : {"exp", "triangle", "gaussian"}) {
    worst = std::max(worst, check_fubini(registry_get(id)).relative_residual);
  }
  return {worst <= 1e-6, "max relative residual " + fmt("%.2e", worst)};
}

Outcome decomposition() {
  const std::vector<double> grid = geometric_grid(1e-2, 1e2, 6);
  bool exact = true;
  double worst_ratio = 0.0;
  for (const char* id : {"exp", "triangle", "gaussian"}) {
    const DecompositionReport d = check_thm3(registry_get(id), grid);
    exact = exact && d.reconstruction_exact();
    if (!std::isfinite(d.ratio_G)) worst_ratio = INFINITY;
    worst_ratio = std::max(worst_ratio, d.ratio_G);
  }

  const std::vector<double> one{1.0};
  double drift = 0.0;
  const auto track = [&drift](const std::function<double(double)>& ratio) {
    const double base = ratio(1.0);
    for (double lambda : {0.25, 4.0}) drift = std::max(drift, std::abs(ratio(lambda) / base - 1.0));
  };
  track([&](double l) { return check_thm3(registry_get("exp", {{"lambda", l}}), one).ratio_G; });
  track([](double l) { return check_thm1(registry_get("exp", {{"lambda", l}})).r_c; });
  track([](double l) { return check_prop1(odd_function("bump", {{"lambda", l}})).ratio; });
  track([](double l) { return check_hardy(odd_function("bump", {{"lambda", l}})).ratio; });

  return {exact && worst_ratio < 10.0 && drift <= 1e-3,
          std::string("reconstruction ") + (exact ? "exact" : "inexact") + ", max ratio_G " +
              fmt("%.4f", worst_ratio) + ", max dilation drift " + fmt("%.2e", drift)};
}

Outcome sici() {
  const double e1 = std::abs(specfun::si(pi) - 1.851937052);
  const double e2 = std::abs(specfun::ci(1.0) - 0.337403923);
  const double e3 = std::abs(specfun::si(1e6) - pi / 2.0);
  return {e1 <= 1e-9 && e2 <= 1e-9 && e3 <= 2e-6,
          "|si(pi) - ref| " + fmt("%.1e", e1) + ", |ci(1) - ref| " + fmt("%.1e", e2) +
              ", |si(1e6) - pi/2| " + fmt("%.1e", e3)};
}

Outcome membership() {
  int monotone = 0;
  int total = 0;
  for (const std::string& id : odd_function_ids()) {
    ++total;
    if (classify_membership(odd_function(id)).monotone()) ++monotone;
  }
  const Verdict log_q0 = classify_spectrum("log_spectrum", log_spectrum).in_Q0;
  const Verdict bump_q0 = classify_membership(odd_function("bump")).in_Q0;
  return {monotone == total && log_q0 == Verdict::no && bump_q0 == Verdict::yes,
          std::to_string(monotone) + "/" + std::to_string(total) + " monotone, log spectrum in_Q0=" +
              std::string(to_string(log_q0)) + ", bump in_Q0=" + std::string(to_string(bump_q0))};
}

Outcome determinism() {
  const nlohmann::json cfg = {
      {"families", {"exp", "triangle", "gaussian", "zero"}},
      {"checks", {"thm1", "thm2", "thm3", "fubini", "membership"}},
      {"x_grid", {{"min", 0.1}, {"max", 10.0}, {"points_per_decade", 4}}},
      {"output_dir", "unused"}};
  const fs::path root = fs::temp_directory_path() / "bvft_acceptance";
  fs::remove_all(root);
  std::vector<std::string> outputs;
  int k = 0;
  for (int threads : {1, 1, 1, 4}) {
    ExperimentConfig c = parse_config(cfg);
    c.output_dir = root / std::to_string(k++);
    outputs.push_back(slurp(run_experiment(c, threads).summary));
  }
  const bool same = std::all_of(outputs.begin(), outputs.end(),
                                [&](const std::string& s) { return s == outputs.front(); });
  return {same && !outputs.front().empty(),
          same ? "3 runs at 1 worker and 1 at 4 workers byte-identical" : "summaries differ"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"closed-form transform pairs", closed_form_pairs},
      {"integration by parts identity", parts_identity},
      {"Si/Ci route vs direct route; Bateman helper", lemma_dual_path},
      {"odd Hilbert transform closed form", hilbert_closed_form},
      {"quotient transform closed form", script_t_closed_form},
      {"Fubini identity", fubini},
      {"three-term decomposition and dilation invariance", decomposition},
      {"Si/Ci reference values", sici},
      {"membership chain", membership},
      {"determinism of summary CSV", determinism},
  };
  int failed = 0;
  int n = 0;
  for (const auto& [name, fn] : criteria) {
    ++n;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("criterion %2d %s: %s (%s)\n", n, o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", n - failed, n);
  return failed == 0 ? 0 : 1;
}
