#pragma once

// Batch runner behind the command line tool: reads a JSON configuration,
// evaluates every (function, check) cell and writes one JSON report per
// cell, CSV grids next to them, and a summary table.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "bvft/testfns.hpp"
#include "bvft/verify.hpp"

namespace bvft {

/// Invalid configuration; the tool maps it to exit status 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FamilySpec {
  std::string family_id;
  std::vector<Params> parameter_grid;  // never empty; {} means lambda = 1
};

struct GridSpec {
  double min = 1e-2;
  double max = 1e2;
  int points_per_decade = 25;
};

struct ToleranceSpec {
  double tol = 1e-10;
  int pv_ladder_depth = 12;
  int dyadic_block_limit = 48;
  double tail_threshold = 1e-14;
  double ratio_ceiling = 10.0;
  // Relative tolerance of the outer norm integrals.
  double norm_rel_tol = 1e-4;
};

struct ExperimentConfig {
  std::vector<FamilySpec> families;
  GridSpec x_grid;
  ToleranceSpec tolerances;
  std::vector<std::string> checks;
  std::filesystem::path output_dir;

  NormOptions norm_options() const;
  std::vector<double> grid() const;
};

/// Names accepted in "checks", in canonical order.
const std::vector<std::string>& check_names();

/// Parses and validates; relative output_dir values are resolved against
/// `base` (the directory of the config file).
ExperimentConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// One line of summary.csv.
struct SummaryRow {
  std::string function;
  std::string check;
  std::string quantity;
  std::string value;
  std::string status;
  std::string paper_ref;
};

struct CellReport {
  std::string stem;  // file name without extension
  nlohmann::json report;
  std::vector<std::pair<std::string, TransformGrid>> grids;
  std::vector<SummaryRow> rows;
};

/// Evaluates one check on one function.
CellReport run_cell(const TestFunction& f, const std::string& check,
                    const ExperimentConfig& config);

struct RunOutcome {
  std::vector<std::filesystem::path> reports;
  std::filesystem::path summary;
  std::vector<SummaryRow> rows;
};

/// Runs every cell on up to `threads` workers and writes all outputs.
/// Output bytes do not depend on the worker count.
RunOutcome run_experiment(const ExperimentConfig& config, int threads);

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows);

/// Rebuilds the summary rows from the JSON reports found in `dir`, ordered
/// by report file name.
std::vector<SummaryRow> summarize_reports(const std::filesystem::path& dir);

/// Worker count from BVFT_THREADS (unset or 0 = hardware count).
int threads_from_env();

}  // namespace bvft
