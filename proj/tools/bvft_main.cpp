// bvft: command line front end for the transform library and the
// experiment runner.
//
//   bvft run --config cfg.json
//   bvft families list
//   bvft transform --family exp --kind cosine --x 1.5 [--lambda 2]
//   bvft report summarize out/
//
// Exit status: 0 on success (including undecided or divergent results),
// 2 on usage or configuration errors, 1 on internal failures.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "bvft/experiment.hpp"
#include "bvft/testfns.hpp"
#include "bvft/transforms.hpp"

namespace {

constexpr int kUsageError = 2;
constexpr int kInternalError = 1;

int cmd_run(const std::string& config_path) {
  const bvft::ExperimentConfig config = bvft::load_config(config_path);
  const bvft::RunOutcome out = bvft::run_experiment(config, bvft::threads_from_env());
  std::cout << "wrote " << out.reports.size() << " reports and " << out.summary.string() << "\n";
  return 0;
}

int cmd_families() {
  for (const std::string& id : bvft::family_ids()) {
    std::cout << id << "\t" << bvft::family_description(id) << "\n";
  }
  return 0;
}

int cmd_transform(const std::string& family, const std::string& kind, double x, double lambda) {
  bvft::TestFunction f;
  try {
    f = bvft::registry_get(family, {{"lambda", lambda}});
  } catch (const std::invalid_argument& e) {
    throw bvft::ConfigError(e.what());
  }
  if (!(x >= 0.0)) throw bvft::ConfigError("--x must be >= 0");
  const bvft::QuadratureResult r =
      kind == "cosine" ? bvft::fourier_cosine(f, x) : bvft::fourier_sine(f, x);
  nlohmann::ordered_json j = {{"function", f.label()},
                              {"kind", kind},
                              {"x", x},
                              {"value", r.value},
                              {"abs_error_estimate", r.abs_error_estimate},
                              {"status", std::string(bvft::to_string(r.status))},
                              {"evaluations", r.evaluations}};
  const bvft::RealFn& closed =
      kind == "cosine" ? f.closed_forms.cosine_ft : f.closed_forms.sine_ft;
  if (closed) j["closed_form"] = closed(x);
  std::cout << j.dump() << "\n";
  return 0;
}

int cmd_summarize(const std::string& dir) {
  bvft::write_summary_csv(std::cout, bvft::summarize_reports(dir));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier transforms of bounded variation functions: experiment runner"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
  run->add_option("--config", config_path, "Config file")->required();

  auto* families = app.add_subcommand("families", "Inspect the function registry");
  families->require_subcommand(1);
  auto* list = families->add_subcommand("list", "List shipped families");

  std::string family;
  std::string kind;
  double x = 0.0;
  double lambda = 1.0;
  auto* transform = app.add_subcommand("transform", "Evaluate f_c(x) or f_s(x)");
  transform->add_option("--family", family, "Family id")->required();
  transform->add_option("--kind", kind, "cosine or sine")
      ->required()
      ->check(CLI::IsMember({"cosine", "sine"}));
  transform->add_option("--x", x, "Evaluation point")->required();
  transform->add_option("--lambda", lambda, "Dilation parameter");

  std::string report_dir;
  auto* report = app.add_subcommand("report", "Work with report directories");
  report->require_subcommand(1);
  auto* summarize = report->add_subcommand("summarize", "Print summary rows of a report directory");
  summarize->add_option("dir", report_dir, "Directory with JSON reports")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*run) return cmd_run(config_path);
    if (*list) return cmd_families();
    if (*transform) return cmd_transform(family, kind, x, lambda);
    if (*summarize) return cmd_summarize(report_dir);
  } catch (const bvft::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kUsageError;
}
