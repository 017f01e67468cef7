// Command-line surface for the prover pipeline. Every subcommand is a thin
// wrapper over the run_* functions in harness.hpp; exit codes are 0 for a
// complete result, 1 for an incomplete one (no refutation, partial
// generation), 2 for usage or input errors.
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "prover/harness.hpp"

namespace {

bool parse_ratio(const std::string& text, prover::AgeCostRatio& ratio) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos) return false;
  try {
    const int age = std::stoi(text.substr(0, colon));
    const int cost = std::stoi(text.substr(colon + 1));
    if (age < 1 || cost < 1) return false;
    ratio.age = age;
    ratio.cost = cost;
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

// Shared budget/ratio flags; the ratio string is parsed after CLI11 runs.
struct SearchFlags {
  std::int64_t max_clauses = 0;
  int max_steps = 0;
  double timeout_secs = 0.0;
  std::string ratio = "1:5";

  void attach(CLI::App* cmd, std::int64_t default_clauses) {
    max_clauses = default_clauses;
    cmd->add_option("--max-clauses", max_clauses,
                    "Cap on generated clauses (literal; 0 allows none)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--max-steps", max_steps, "Stop after this many selections (0 = unlimited)");
    cmd->add_option("--timeout-secs", timeout_secs,
                    "Wall-clock limit per attempt (0 = none; makes runs timing-dependent)");
    cmd->add_option("--age-cost-ratio", ratio, "Age:cost selection alternation, e.g. 1:5");
  }

  bool fill(prover::Budget& budget, prover::AgeCostRatio& out, std::ostream& err) const {
    budget.max_generated = max_clauses;
    budget.max_steps = max_steps;
    budget.max_seconds = timeout_secs;
    if (!parse_ratio(ratio, out)) {
      err << "error: --age-cost-ratio must be a:c with positive integers\n";
      return false;
    }
    return true;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saturation theorem prover with a learnable clause scorer"};
  app.require_subcommand(1);
  app.set_config("--config");

  // prove
  auto* prove = app.add_subcommand("prove", "Attempt to refute one TPTP CNF problem");
  std::string prove_problem;
  std::string prove_cost = "weight";
  std::string prove_model;
  double prove_scale = 16.0;
  bool prove_proof = false;
  SearchFlags prove_flags;
  prove->add_option("problem", prove_problem, "Problem file")->required();
  prove->add_option("--cost", prove_cost, "weight | model")
      ->check(CLI::IsMember({"weight", "model"}));
  prove->add_option("--model", prove_model, "Trained model file (implies --cost model)");
  prove->add_option("--scale", prove_scale, "Weight divisor M in (1-p) + w/M");
  prove->add_flag("--proof", prove_proof, "Print the proof trace on success");
  prove_flags.attach(prove, 50000);

  // generate
  auto* generate = app.add_subcommand("generate", "Propose synthetic theorems from an axiom file");
  prover::GenerateOptions gen;
  std::string linear_parents = "all";
  generate->add_option("axioms", gen.axioms_path, "Axiom file (TPTP CNF)")->required();
  generate->add_option("--out", gen.out_dir, "Output directory")->required();
  generate->add_option("--count", gen.count, "Number of theorems")->check(CLI::PositiveNumber);
  generate->add_option("--steps", gen.steps, "Walk length")->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen.seed, "Base RNG seed");
  generate->add_option("--linear-parents", linear_parents,
                       "Allowed non-linear parents: axioms | all")
      ->check(CLI::IsMember({"axioms", "all"}));
  generate->add_option("--max-weight", gen.proposer.max_conjecture_weight,
                       "Reject walk clauses heavier than this");
  generate->add_option("--restarts", gen.proposer.max_restarts, "Dead-end restarts per theorem");

  // mine
  auto* mine = app.add_subcommand("mine", "Prove a problem directory and dump training examples");
  prover::MineOptions mine_opt;
  SearchFlags mine_flags;
  mine->add_option("problems", mine_opt.problems_dir, "Directory of .p files")->required();
  mine->add_option("--out", mine_opt.out_path, "Dataset JSONL path")->required();
  mine->add_option("--seed", mine_opt.mining.seed, "Negative-sampling seed");
  mine->add_option("--jobs", mine_opt.mining.jobs, "Parallel prover runs")
      ->check(CLI::PositiveNumber);
  mine->add_option("--name", mine_opt.axiom_set_name, "Axiom-set name for the metadata file");
  mine_flags.attach(mine, 20000);

  // train
  auto* train = app.add_subcommand("train", "Fit the clause scorer on a mined dataset");
  prover::TrainOptions train_opt;
  std::string grid = "single";
  train->add_option("dataset", train_opt.dataset_path, "Dataset JSONL")->required();
  train->add_option("--model-out", train_opt.model_out, "Model file to write")->required();
  train->add_option("--history-out", train_opt.history_out, "Per-epoch CSV to write");
  train->add_option("--lr", train_opt.config.learning_rate, "Adam learning rate")
      ->check(CLI::PositiveNumber);
  train->add_option("--batch-size", train_opt.config.batch_size, "Mini-batch size")
      ->check(CLI::PositiveNumber);
  train->add_option("--max-epochs", train_opt.config.max_epochs, "Epoch cap")
      ->check(CLI::PositiveNumber);
  train->add_option("--patience", train_opt.config.patience,
                    "Early-stop patience on validation accuracy")
      ->check(CLI::PositiveNumber);
  train->add_option("--seed", train_opt.config.seed, "Init/shuffle/split seed");
  train->add_option("--val-fraction", train_opt.val_fraction, "Validation split fraction");
  train->add_option("--grid", grid, "Hyper-parameter search: single | desk | full")
      ->check(CLI::IsMember({"single", "desk", "full"}));
  train->add_option("--layers", train_opt.config.layer_sizes,
                    "Layer sizes, e.g. 38 256 64 16 4 1 (default architecture)");

  // eval
  auto* eval = app.add_subcommand("eval", "Compare cost functions over a problem directory");
  prover::EvalOptions eval_opt;
  std::vector<std::string> eval_costs;
  double eval_scale = 16.0;
  SearchFlags eval_flags;
  eval->add_option("problems", eval_opt.problems_dir, "Directory of .p files")->required();
  eval->add_option("--cost", eval_costs,
                   "Repeatable: 'weight' or a model file path")
      ->required();
  eval->add_option("--scale", eval_scale, "Weight divisor M for model costs");
  eval->add_option("--jobs", eval_opt.jobs, "Parallel prover runs")->check(CLI::PositiveNumber);
  eval->add_option("--csv", eval_opt.csv_out, "Per-problem CSV to write");
  eval_flags.attach(eval, 20000);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (prove->parsed()) {
    prover::ProveOptions opt;
    opt.problem_path = prove_problem;
    if (!prove_model.empty()) prove_cost = "model";
    if (prove_cost == "model") {
      if (prove_model.empty()) {
        std::cerr << "error: --cost model requires --model\n";
        return 2;
      }
      opt.cost = prover::CostSpec{"model", prove_model, prove_scale};
    }
    opt.print_proof = prove_proof;
    if (!prove_flags.fill(opt.budget, opt.ratio, std::cerr)) return 2;
    return prover::run_prove(opt, std::cout, std::cerr);
  }
  if (generate->parsed()) {
    gen.proposer.linear_parents_all = linear_parents == "all";
    return prover::run_generate(gen, std::cout, std::cerr);
  }
  if (mine->parsed()) {
    if (!mine_flags.fill(mine_opt.mining.budget, mine_opt.mining.ratio, std::cerr)) return 2;
    return prover::run_mine(mine_opt, std::cout, std::cerr);
  }
  if (train->parsed()) {
    if (grid == "desk") train_opt.grid = prover::TrainOptions::Grid::desk;
    if (grid == "full") train_opt.grid = prover::TrainOptions::Grid::full;
    return prover::run_train(train_opt, std::cout, std::cerr);
  }
  if (eval->parsed()) {
    for (const std::string& spec : eval_costs) {
      if (spec == "weight") {
        eval_opt.costs.push_back(prover::CostSpec{"weight", "", 16.0});
      } else {
        const std::string name = std::filesystem::path(spec).stem().string();
        eval_opt.costs.push_back(prover::CostSpec{name, spec, eval_scale});
      }
    }
    if (!eval_flags.fill(eval_opt.budget, eval_opt.ratio, std::cerr)) return 2;
    return prover::run_eval(eval_opt, std::cout, std::cerr);
  }
  return 2;
}
