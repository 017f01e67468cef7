/**
 * @file harness.hpp
 * The pipeline behind the CLI subcommands: prove a file, generate synthetic
 * problems, mine a dataset, train a scorer, and evaluate cost functions side
 * by side. Everything is callable as a library so the end-to-end path is
 * testable without spawning processes. Exit codes: 0 success, 1 incomplete
 * result (no refutation, partial generation), 2 usage or input errors.
 */
#ifndef PROVER_HARNESS_HPP
#define PROVER_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "prover/dataset.hpp"
#include "prover/mlp.hpp"
#include "prover/proposer.hpp"
#include "prover/saturation.hpp"

namespace prover {

/// Either the clause-weight heuristic or a trained model file.
struct CostSpec {
  std::string name;        // column label in reports
  std::string model_path;  // empty = clause weight
  double scale = 16.0;
};

struct ProveOptions {
  std::string problem_path;
  CostSpec cost{"weight", "", 16.0};
  Budget budget{50000, 0, 0.0};
  AgeCostRatio ratio;
  bool print_proof = false;
};
int run_prove(const ProveOptions& opt, std::ostream& out, std::ostream& err);

struct GenerateOptions {
  std::string axioms_path;
  std::string out_dir;
  int count = 100;
  int steps = 10;
  std::uint64_t seed = 0;
  ProposerConfig proposer;
};
/// Writes `<axiomset>_<seed>_<index>.p` per theorem plus manifest.jsonl.
/// Theorems whose walks dead-end are reported and skipped; exit 1 when any
/// were skipped, 0 when all count theorems were produced.
int run_generate(const GenerateOptions& opt, std::ostream& out, std::ostream& err);

struct MineOptions {
  std::string problems_dir;
  std::string out_path;  // JSONL; metadata lands at out_path + ".meta.json"
  MiningConfig mining;
  std::string axiom_set_name;  // defaults to the problems directory name
};
int run_mine(const MineOptions& opt, std::ostream& out, std::ostream& err);

struct TrainOptions {
  std::string dataset_path;
  std::string model_out;
  std::string history_out;  // per-epoch CSV; empty = skip
  TrainConfig config;
  double val_fraction = 0.1;
  enum class Grid { single, desk, full } grid = Grid::single;
};
/// desk grid: rates {3e-3, 1e-3, 3e-4} x seeds {s, s+1}; full grid: the five
/// rates {1e-2 .. 1e-4} x seeds {s .. s+4}. History CSV is for the chosen run.
int run_train(const TrainOptions& opt, std::ostream& out, std::ostream& err);

struct RunRow {
  std::string problem;
  SaturationStatus status = SaturationStatus::budget_exhausted;
  double seconds = 0.0;
  std::int64_t generated = 0;
  int processed = 0;
};

struct RunReport {
  std::vector<RunRow> rows;  // one per problem, directory order
  int solved = 0;
  double median_seconds_solved = 0.0;    // NaN when nothing was solved
  double median_generated_solved = 0.0;  // NaN when nothing was solved
};

struct EvalOptions {
  std::string problems_dir;
  std::vector<CostSpec> costs;
  Budget budget{20000, 0, 0.0};
  AgeCostRatio ratio;
  int jobs = 1;
  std::string csv_out;  // per-problem rows; empty = skip
};

struct EvalResult {
  std::vector<CostSpec> costs;
  std::vector<RunReport> reports;  // parallel to costs
  /// Problems solved under every cost spec, and each spec's median generated
  /// count restricted to those problems (empty/NaN when none are common).
  std::vector<std::string> common_solved;
  std::vector<double> common_median_generated;
};

int run_eval(const EvalOptions& opt, std::ostream& out, std::ostream& err,
             EvalResult* result_out = nullptr);

/// *.p files under dir, sorted by name; problem names are the file stems.
std::vector<std::string> list_problem_files(const std::string& dir);

const char* status_name(SaturationStatus s);

}  // namespace prover

#endif  // PROVER_HARNESS_HPP
