#include "bvft/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "bvft/parallel.hpp"
#include "bvft/transforms.hpp"

namespace bvft {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Formula anchors for the summary "paper_ref" column.
std::string paper_ref(const std::string& check) {
  static const std::map<std::string, std::string> refs = {
      {"thm1", "||f_c||_1 + ||F||_1 <~ ||f'||_1 + ||Tf'||_1"},
      {"thm2", "f_c in L1 iff f' in Q0; f_c(x) = -(1/x) (f')_s(x)"},
      {"thm3", "f_s(x) = (1/x) f(pi/(2x)) + H0 Tq_f'(x) + G(x); ||G||_1 <~ ||f'||_1"},
      {"lemma1", "H0 Tq_g(x) = (2/(pi x)) int g(t) [cos(xt) Si(xt) - sin(xt) Ci(xt)] dt"},
      {"prop1", "||H0 Tq_g||_1 <~ ||g||_H0^1"},
      {"hardy", "int |g^(x)|/|x| dx <~ ||g||_H1"},
      {"fubini", "int_0^inf int_0^{pi/(2x)} t |f'(t)| dt dx = (pi/2) ||f'||_1"},
      {"membership", "H0^1 within H_Q^1 within Q0 within L0^1"},
  };
  return refs.at(check);
}

double get_number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string("\"") + key + "\" must be a number");
  return v.get<double>();
}

int get_int(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(std::string("\"") + key + "\" must be an integer");
  return v.get<int>();
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [k, v] : j.items()) {
    if (!known.count(k)) throw ConfigError("unknown key \"" + k + "\" in " + where);
  }
}

FamilySpec parse_family(const json& j) {
  FamilySpec spec;
  if (j.is_string()) {
    spec.family_id = j.get<std::string>();
  } else if (j.is_object()) {
    reject_unknown(j, {"family_id", "parameter_grid"}, "families entry");
    if (!j.contains("family_id") || !j.at("family_id").is_string()) {
      throw ConfigError("families entry needs a string \"family_id\"");
    }
    spec.family_id = j.at("family_id").get<std::string>();
    if (j.contains("parameter_grid")) {
      const json& grid = j.at("parameter_grid");
      if (!grid.is_array()) throw ConfigError("\"parameter_grid\" must be an array");
      for (const json& p : grid) {
        if (!p.is_object()) throw ConfigError("\"parameter_grid\" entries must be objects");
        Params params;
        for (const auto& [k, v] : p.items()) {
          if (!v.is_number()) throw ConfigError("parameter \"" + k + "\" must be a number");
          params[k] = v.get<double>();
        }
        spec.parameter_grid.push_back(params);
      }
    }
  } else {
    throw ConfigError("families entries must be strings or objects");
  }
  if (spec.parameter_grid.empty()) spec.parameter_grid.push_back({});
  // Instantiate every member once so bad ids and parameters fail here.
  for (const Params& p : spec.parameter_grid) {
    try {
      registry_get(spec.family_id, p);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  return spec;
}

json result_json(const QuadratureResult& r) {
  return {{"value", r.value},
          {"abs_error_estimate", r.abs_error_estimate},
          {"status", std::string(to_string(r.status))},
          {"evaluations", r.evaluations}};
}

// Turns a label such as "exp[lambda=0.25]" into "exp_lambda-0.25".
std::string file_stem(const TestFunction& f) {
  std::string s = f.id;
  for (const auto& [k, v] : f.params) s += "_" + k + "-" + format_number(v);
  for (char& c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' || c == '_')) c = '_';
  }
  return s;
}

class CellBuilder {
 public:
  CellBuilder(const TestFunction& f, const std::string& check) : f_(f), check_(check) {
    cell_.stem = file_stem(f) + "__" + check;
    cell_.report = {{"function", f.label()},
                    {"family", f.id},
                    {"lambda", f.lambda()},
                    {"check", check},
                    {"paper_ref", paper_ref(check)},
                    {"norms", json::object()},
                    {"ratios", json::object()},
                    {"verdict", json::object()},
                    {"grids", json::object()}};
  }

  void norm(const std::string& name, const QuadratureResult& r) {
    cell_.report["norms"][name] = result_json(r);
    row(name, format_number(r.value), std::string(to_string(r.status)));
  }

  void ratio(const std::string& name, double value, const std::string& status) {
    cell_.report["ratios"][name] = {{"value", value}, {"status", status}};
    row(name, format_number(value), status);
  }

  void verdict(const std::string& name, const std::string& value) {
    cell_.report["verdict"][name] = value;
    row(name, value, "decided");
  }

  void grid(const std::string& name, TransformGrid g) {
    const std::string file = cell_.stem + "__" + name + ".csv";
    cell_.report["grids"][name] = file;
    cell_.grids.emplace_back(file, std::move(g));
  }

  void degenerate(const std::string& what) {
    cell_.report["verdict"]["degenerate_input"] = what;
    row("degenerate_input", "yes", "degenerate");
  }

  CellReport finish() {
    cell_.report["summary"] = json::array();
    for (const SummaryRow& r : cell_.rows) {
      cell_.report["summary"].push_back(
          {{"quantity", r.quantity}, {"value", r.value}, {"status", r.status}});
    }
    return std::move(cell_);
  }

 private:
  void row(const std::string& quantity, const std::string& value, const std::string& status) {
    cell_.rows.push_back({f_.label(), check_, quantity, value, status, paper_ref(check_)});
  }

  const TestFunction& f_;
  std::string check_;
  CellReport cell_;
};

std::string ratio_status(double ratio, bool undecided, double ceiling) {
  if (undecided) return "undecided";
  if (!std::isfinite(ratio)) return "infinite";
  return ratio < ceiling ? "below_ceiling" : "above_ceiling";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void run_thm1(CellBuilder& cb, const TestFunction& f, const NormOptions& opts) {
  const Thm1Result r = check_thm1(f, opts);
  cb.norm("l1_fprime", r.l1_fprime);
  cb.norm("l1_T_fprime", r.l1_T_fprime);
  cb.norm("l1_ft_cosine", r.l1_ft_cosine);
  cb.norm("l1_F", r.l1_F);
  const bool undecided = !r.l1_fprime.converged() || !r.l1_T_fprime.converged() ||
                         !r.l1_ft_cosine.converged() || !r.l1_F.converged();
  cb.ratio("r_c", r.r_c, ratio_status(r.r_c, undecided, opts.ratio_ceiling));
  cb.ratio("r_s", r.r_s, ratio_status(r.r_s, undecided, opts.ratio_ceiling));
}

void run_thm2(CellBuilder& cb, const TestFunction& f, std::span<const double> grid,
              const NormOptions& opts) {
  Thm2Result r = check_thm2(f, grid, opts);
  cb.norm("l1_ft_cosine", r.l1_ft_cosine);
  cb.norm("q0_fprime", r.q0_fprime);
  cb.ratio("max_residual", r.max_residual, "pointwise");
  cb.verdict("cosine_integrable", std::string(to_string(r.cosine_integrable)));
  cb.verdict("fprime_in_q0", std::string(to_string(r.fprime_in_q0)));
  cb.verdict("agree", yes_no(r.agree()));
  cb.grid("residual", std::move(r.residual));
}

void run_thm3(CellBuilder& cb, const TestFunction& f, std::span<const double> grid,
              const NormOptions& opts) {
  DecompositionReport r = check_thm3(f, grid, opts);
  cb.norm("l1_fprime", r.l1_fprime);
  cb.norm("l1_G", r.l1_G);
  cb.norm("l1_F", r.l1_F);
  const bool undecided = !r.l1_fprime.converged() || !r.l1_G.converged();
  cb.ratio("ratio_G", r.ratio_G, ratio_status(r.ratio_G, undecided, opts.ratio_ceiling));
  cb.verdict("reconstruction_exact", yes_no(r.reconstruction_exact()));
  cb.grid("sine_transform", std::move(r.grid));
  cb.grid("leading_term", std::move(r.leading_term));
  cb.grid("h0t_term", std::move(r.h0t_term));
  cb.grid("g_residual", std::move(r.g_residual));
  cb.grid("f_residual", std::move(r.f_residual));
}

void run_lemma1(CellBuilder& cb, const TestFunction& f, std::span<const double> grid,
                const NormOptions& opts) {
  const HalfLineFunction g = f.fprime();
  TransformGrid cisi =
      sweep(grid, [&](double x) { return h0_script_t_cisi(g, x, opts.inner); }, opts.threads);
  TransformGrid direct =
      sweep(grid, [&](double x) { return h0_script_t_direct(g, x, opts.inner); }, opts.threads);
  TransformGrid diff;
  diff.points = cisi.points;
  double max_diff = 0.0;
  QuadStatus status = QuadStatus::converged;
  for (std::size_t i = 0; i < cisi.points.size(); ++i) {
    QuadratureResult d = combine(cisi.values[i], scaled(direct.values[i], -1.0));
    d.value = std::abs(d.value);
    max_diff = std::max(max_diff, d.value);
    status = worst(status, d.status);
    diff.values.push_back(d);
  }
  cb.ratio("max_abs_difference", max_diff, std::string(to_string(status)));
  cb.grid("cisi_route", std::move(cisi));
  cb.grid("direct_route", std::move(direct));
  cb.grid("difference", std::move(diff));
}

void run_ratio(CellBuilder& cb, const RatioResult& r, double ceiling) {
  cb.norm("numerator", r.numerator);
  cb.norm("denominator", r.denominator);
  cb.ratio("ratio", r.ratio,
           ratio_status(r.ratio, r.undecided || !r.numerator.converged(), ceiling));
}

void run_fubini(CellBuilder& cb, const TestFunction& f, const NormOptions& opts) {
  const FubiniResult r = check_fubini(f, opts);
  cb.norm("lhs", r.lhs);
  cb.norm("rhs", r.rhs);
  cb.ratio("relative_residual", r.relative_residual,
           std::string(to_string(worst(r.lhs.status, r.rhs.status))));
}

void run_membership(CellBuilder& cb, const TestFunction& f, const NormOptions& opts) {
  const MembershipVerdict v = classify_membership(f.fprime(), opts);
  cb.norm("l1", v.l1);
  if (v.q0) cb.norm("q0", *v.q0);
  if (v.hq) cb.norm("hq", *v.hq);
  if (v.hilbert) cb.norm("l1_hilbert", *v.hilbert);
  cb.verdict("in_L10", std::string(to_string(v.in_L10)));
  cb.verdict("in_Q0", std::string(to_string(v.in_Q0)));
  cb.verdict("in_H1Q", std::string(to_string(v.in_H1Q)));
  cb.verdict("in_H10", std::string(to_string(v.in_H10)));
  cb.verdict("monotone", yes_no(v.monotone()));
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
  if (!os) throw std::runtime_error("write failed for " + path.string());
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {"thm1",  "thm2",  "thm3",   "lemma1",
                                                 "prop1", "hardy", "fubini", "membership"};
  return names;
}

NormOptions ExperimentConfig::norm_options() const {
  NormOptions o;
  for (QuadratureOptions* q : {&o.inner, &o.outer}) {
    q->pv_ladder_depth = tolerances.pv_ladder_depth;
    q->dyadic_block_limit = tolerances.dyadic_block_limit;
    q->tail_threshold = tolerances.tail_threshold;
  }
  o.inner.abs_tol = tolerances.tol;
  o.outer.rel_tol = tolerances.norm_rel_tol;
  o.ratio_ceiling = tolerances.ratio_ceiling;
  return o;
}

std::vector<double> ExperimentConfig::grid() const {
  return geometric_grid(x_grid.min, x_grid.max, x_grid.points_per_decade);
}

ExperimentConfig parse_config(const json& j, const fs::path& base) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j, {"families", "x_grid", "tolerances", "checks", "output_dir"}, "config");
  ExperimentConfig c;

  if (!j.contains("families") || !j.at("families").is_array() || j.at("families").empty()) {
    throw ConfigError("\"families\" must be a nonempty array");
  }
  for (const json& fam : j.at("families")) c.families.push_back(parse_family(fam));

  if (j.contains("x_grid")) {
    const json& g = j.at("x_grid");
    if (!g.is_object()) throw ConfigError("\"x_grid\" must be an object");
    reject_unknown(g, {"min", "max", "points_per_decade"}, "x_grid");
    c.x_grid.min = get_number(g, "min", c.x_grid.min);
    c.x_grid.max = get_number(g, "max", c.x_grid.max);
    c.x_grid.points_per_decade = get_int(g, "points_per_decade", c.x_grid.points_per_decade);
  }
  if (!(c.x_grid.min > 0.0)) throw ConfigError("x_grid.min must be > 0");
  if (!(c.x_grid.max >= c.x_grid.min) || !std::isfinite(c.x_grid.max)) {
    throw ConfigError("x_grid.max must be finite and >= x_grid.min");
  }
  if (c.x_grid.points_per_decade < 4) throw ConfigError("x_grid.points_per_decade must be >= 4");

  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    if (!t.is_object()) throw ConfigError("\"tolerances\" must be an object");
    reject_unknown(t,
                   {"tol", "pv_ladder_depth", "dyadic_block_limit", "tail_threshold",
                    "ratio_ceiling", "norm_rel_tol"},
                   "tolerances");
    ToleranceSpec& s = c.tolerances;
    s.tol = get_number(t, "tol", s.tol);
    s.pv_ladder_depth = get_int(t, "pv_ladder_depth", s.pv_ladder_depth);
    s.dyadic_block_limit = get_int(t, "dyadic_block_limit", s.dyadic_block_limit);
    s.tail_threshold = get_number(t, "tail_threshold", s.tail_threshold);
    s.ratio_ceiling = get_number(t, "ratio_ceiling", s.ratio_ceiling);
    s.norm_rel_tol = get_number(t, "norm_rel_tol", s.norm_rel_tol);
    if (!(s.tol > 0.0)) throw ConfigError("tolerances.tol must be > 0");
    if (s.pv_ladder_depth < 1) throw ConfigError("tolerances.pv_ladder_depth must be >= 1");
    if (s.dyadic_block_limit < 4) throw ConfigError("tolerances.dyadic_block_limit must be >= 4");
    if (!(s.tail_threshold >= 0.0)) throw ConfigError("tolerances.tail_threshold must be >= 0");
    if (!(s.ratio_ceiling > 0.0)) throw ConfigError("tolerances.ratio_ceiling must be > 0");
    if (!(s.norm_rel_tol > 0.0 && s.norm_rel_tol < 1.0)) {
      throw ConfigError("tolerances.norm_rel_tol must lie in (0, 1)");
    }
  }

  if (!j.contains("checks") || !j.at("checks").is_array() || j.at("checks").empty()) {
    throw ConfigError("\"checks\" must be a nonempty array");
  }
  for (const json& ch : j.at("checks")) {
    if (!ch.is_string()) throw ConfigError("\"checks\" entries must be strings");
    const std::string name = ch.get<std::string>();
    const auto& known = check_names();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw ConfigError("unknown check \"" + name + "\"");
    }
    if (std::find(c.checks.begin(), c.checks.end(), name) != c.checks.end()) {
      throw ConfigError("check \"" + name + "\" listed twice");
    }
    c.checks.push_back(name);
  }

  if (!j.contains("output_dir") || !j.at("output_dir").is_string() ||
      j.at("output_dir").get<std::string>().empty()) {
    throw ConfigError("\"output_dir\" must be a nonempty string");
  }
  c.output_dir = j.at("output_dir").get<std::string>();
  if (c.output_dir.is_relative() && !base.empty()) c.output_dir = base / c.output_dir;
  return c;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(j, path.parent_path());
}

CellReport run_cell(const TestFunction& f, const std::string& check,
                    const ExperimentConfig& config) {
  const NormOptions opts = config.norm_options();
  const std::vector<double> grid = config.grid();
  CellBuilder cb(f, check);
  try {
    if (check == "thm1") {
      run_thm1(cb, f, opts);
    } else if (check == "thm2") {
      run_thm2(cb, f, grid, opts);
    } else if (check == "thm3") {
      run_thm3(cb, f, grid, opts);
    } else if (check == "lemma1") {
      run_lemma1(cb, f, grid, opts);
    } else if (check == "prop1") {
      run_ratio(cb, check_prop1(f.fprime(), opts), opts.ratio_ceiling);
    } else if (check == "hardy") {
      run_ratio(cb, check_hardy(f.fprime(), opts), opts.ratio_ceiling);
    } else if (check == "fubini") {
      run_fubini(cb, f, opts);
    } else if (check == "membership") {
      run_membership(cb, f, opts);
    } else {
      throw ConfigError("unknown check \"" + check + "\"");
    }
  } catch (const DegenerateInput& e) {
    cb.degenerate(e.what());
  }
  return cb.finish();
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
  os << "function,check,quantity,value,status,paper_ref\n";
  for (const SummaryRow& r : rows) {
    os << csv_field(r.function) << ',' << csv_field(r.check) << ',' << csv_field(r.quantity)
       << ',' << csv_field(r.value) << ',' << csv_field(r.status) << ','
       << csv_field(r.paper_ref) << '\n';
  }
}

RunOutcome run_experiment(const ExperimentConfig& config, int threads) {
  struct Task {
    TestFunction f;
    std::string check;
  };
  std::vector<Task> tasks;
  for (const FamilySpec& fam : config.families) {
    for (const Params& p : fam.parameter_grid) {
      TestFunction f = registry_get(fam.family_id, p);
      for (const std::string& check : config.checks) tasks.push_back({f, check});
    }
  }

  std::vector<CellReport> cells(tasks.size());
  parallel_for(tasks.size(), threads,
               [&](std::size_t i) { cells[i] = run_cell(tasks[i].f, tasks[i].check, config); });

  fs::create_directories(config.output_dir);
  RunOutcome out;
  std::set<std::string> seen;
  for (const CellReport& cell : cells) {
    if (!seen.insert(cell.stem).second) {
      throw ConfigError("duplicate function/check pair " + cell.stem);
    }
    for (const auto& [file, grid] : cell.grids) {
      std::ostringstream os;
      write_csv(os, grid);
      write_text(config.output_dir / file, os.str());
    }
    const fs::path report = config.output_dir / (cell.stem + ".json");
    write_text(report, cell.report.dump(2) + "\n");
    out.reports.push_back(report);
    out.rows.insert(out.rows.end(), cell.rows.begin(), cell.rows.end());
  }
  std::ostringstream os;
  write_summary_csv(os, out.rows);
  out.summary = config.output_dir / "summary.csv";
  write_text(out.summary, os.str());
  return out;
}

std::vector<SummaryRow> summarize_reports(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw ConfigError(dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<SummaryRow> rows;
  for (const fs::path& p : files) {
    std::ifstream is(p);
    json j;
    try {
      j = json::parse(is);
    } catch (const json::parse_error& e) {
      throw std::runtime_error("malformed report " + p.string() + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("summary")) continue;
    const std::string function = j.value("function", "");
    const std::string check = j.value("check", "");
    const std::string ref = j.value("paper_ref", "");
    for (const json& r : j.at("summary")) {
      rows.push_back({function, check, r.at("quantity").get<std::string>(),
                      r.at("value").get<std::string>(), r.at("status").get<std::string>(), ref});
    }
  }
  return rows;
}

int threads_from_env() {
  const char* env = std::getenv("BVFT_THREADS");
  if (env == nullptr || *env == '\0') return resolve_threads(0);
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 0) {
    throw ConfigError(std::string("BVFT_THREADS must be a nonnegative integer, got \"") + env +
                      "\"");
  }
  return resolve_threads(static_cast<int>(n));
}

}  // namespace bvft
