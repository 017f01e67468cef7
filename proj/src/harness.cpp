#include "prover/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <ostream>
#include <utility>

#include <nlohmann/json.hpp>

#include "prover/util.hpp"

namespace prover {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Shortest decimal that round-trips a double is overkill for CSV consumers;
// 17 significant digits is exact and schema-stable.
std::string full_precision(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::shared_ptr<const MlpModel> load_shared_model(const CostSpec& spec) {
  return std::make_shared<const MlpModel>(load_model(spec.model_path));
}

std::unique_ptr<CostFunction> make_cost(const CostSpec& spec,
                                        const std::shared_ptr<const MlpModel>& model) {
  if (spec.model_path.empty()) return std::make_unique<ClauseWeightCost>();
  return std::make_unique<LearnedCost>(model, spec.scale);
}

void ensure_parent_dir(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

}  // namespace

const char* status_name(SaturationStatus s) {
  switch (s) {
    case SaturationStatus::refutation_found: return "refutation_found";
    case SaturationStatus::saturated: return "saturated";
    case SaturationStatus::budget_exhausted: return "budget_exhausted";
  }
  return "unknown";
}

std::vector<std::string> list_problem_files(const std::string& dir) {
  std::vector<std::string> files;
  for (const fs::directory_entry& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".p") {
      files.push_back(entry.path().string());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

int run_prove(const ProveOptions& opt, std::ostream& out, std::ostream& err) {
  Problem problem;
  try {
    problem = load_problem(opt.problem_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  std::shared_ptr<const MlpModel> model;
  std::unique_ptr<CostFunction> cost;
  try {
    if (!opt.cost.model_path.empty()) model = load_shared_model(opt.cost);
    cost = make_cost(opt.cost, model);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const SaturationResult result = saturate(problem.initial_clauses(), *cost, opt.ratio, opt.budget);
  out << opt.problem_path << ": " << status_name(result.status) << "\n";
  out << "  generated " << result.stats.generated_count << ", processed "
      << result.stats.processed_count << ", steps " << result.stats.steps << ", "
      << std::fixed << std::setprecision(3) << result.stats.elapsed_seconds << " s\n"
      << std::defaultfloat;
  if (result.status == SaturationStatus::refutation_found && opt.print_proof) {
    out << proof_trace(result, problem.signature, &problem.var_names);
  }
  return result.status == SaturationStatus::refutation_found ? 0 : 1;
}

int run_generate(const GenerateOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.count < 1 || opt.steps < 1) {
    err << "error: count and steps must be at least 1\n";
    return 2;
  }
  Problem base;
  try {
    base = load_problem(opt.axioms_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (base.axioms.empty()) {
    err << "error: axiom file has no axiom clauses\n";
    return 2;
  }

  std::error_code ec;
  fs::create_directories(opt.out_dir, ec);
  if (ec) {
    err << "error: cannot create " << opt.out_dir << ": " << ec.message() << "\n";
    return 2;
  }

  const std::string set_name = fs::path(opt.axioms_path).stem().string();
  const fs::path manifest_path = fs::path(opt.out_dir) / "manifest.jsonl";
  std::ofstream manifest(manifest_path, std::ios::binary);
  if (!manifest) {
    err << "error: cannot write " << manifest_path.string() << "\n";
    return 2;
  }

  int produced = 0;
  for (int i = 0; i < opt.count; ++i) {
    const std::uint64_t theorem_seed =
        splitmix64(opt.seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(i) + 1)));
    SyntheticTheorem t;
    try {
      t = propose_theorem(base.axioms, opt.steps, theorem_seed, opt.proposer);
    } catch (const ProposerError& e) {
      err << "theorem " << i << ": " << e.what() << "\n";
      if (e.kind == ProposerError::Kind::degenerate_axioms) return 2;
      continue;
    }

    const std::string stem =
        set_name + "_" + std::to_string(opt.seed) + "_" + std::to_string(i);
    const fs::path file = fs::path(opt.out_dir) / (stem + ".p");
    const Problem p = make_problem(t, base.signature, base.var_names, stem);
    std::ofstream pf(file, std::ios::binary);
    pf << serialize_problem(p);
    if (!pf) {
      err << "error: cannot write " << file.string() << "\n";
      return 2;
    }

    json row;
    row["conjecture"] = serialize_clause(t.conjecture, base.signature, &base.var_names);
    row["file"] = stem + ".p";
    row["index"] = i;
    row["seed"] = theorem_seed;
    row["steps"] = opt.steps;
    row["walk_length"] = t.walk.size();
    manifest << row.dump() << '\n';
    ++produced;
  }
  manifest.close();

  out << "generated " << produced << "/" << opt.count << " problems in " << opt.out_dir << "\n";
  return produced == opt.count ? 0 : 1;
}

int run_mine(const MineOptions& opt, std::ostream& out, std::ostream& err) {
  std::vector<std::string> files;
  try {
    files = list_problem_files(opt.problems_dir);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (files.empty()) {
    err << "error: no problems found in " << opt.problems_dir << "\n";
    return 2;
  }

  std::vector<Problem> problems;
  std::vector<std::string> parse_failures;
  for (const std::string& file : files) {
    try {
      problems.push_back(load_problem(file));
    } catch (const std::exception& e) {
      err << file << ": " << e.what() << "\n";
      parse_failures.push_back(fs::path(file).stem().string());
    }
  }
  if (problems.empty()) {
    err << "error: no problem file could be parsed\n";
    return 2;
  }

  MiningOutput mined = mine_examples(problems, opt.mining);
  for (const std::string& name : mined.stats.failed_problems) {
    err << name << ": saturation failed\n";
  }

  try {
    ensure_parent_dir(opt.out_path);
    write_examples_jsonl(opt.out_path, mined.examples);
    DatasetMeta meta;
    meta.seed = opt.mining.seed;
    meta.axiom_set = opt.axiom_set_name.empty()
                         ? fs::path(opt.problems_dir).filename().string()
                         : opt.axiom_set_name;
    meta.max_generated = opt.mining.budget.max_generated;
    meta.problems_total = static_cast<int>(files.size());
    meta.problems_proved = mined.stats.problems_proved;
    meta.positives = mined.stats.positives;
    meta.negatives = mined.stats.negatives;
    write_dataset_meta(opt.out_path + ".meta.json", meta);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  out << "mined " << mined.examples.size() << " examples (" << mined.stats.positives
      << " positive, " << mined.stats.negatives << " negative) from "
      << mined.stats.problems_proved << "/" << problems.size() << " proved problems\n";
  if (!parse_failures.empty() || !mined.stats.failed_problems.empty()) {
    out << "skipped " << parse_failures.size() << " unparseable and "
        << mined.stats.failed_problems.size() << " failed problems\n";
  }
  return 0;
}

int run_train(const TrainOptions& opt, std::ostream& out, std::ostream& err) {
  std::vector<TrainingExample> all;
  try {
    all = read_examples_jsonl(opt.dataset_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  TrainResult result;
  GridPoint chosen{opt.config.learning_rate, opt.config.seed};
  try {
    auto [train, val] = split_examples(all, opt.val_fraction, opt.config.seed);
    out << "training on " << train.size() << " examples, validating on " << val.size() << "\n";
    if (opt.grid == TrainOptions::Grid::single) {
      result = mlp_train(train, val, opt.config);
    } else {
      std::vector<double> rates;
      std::vector<std::uint64_t> seeds;
      if (opt.grid == TrainOptions::Grid::desk) {
        rates = {3e-3, 1e-3, 3e-4};
        for (std::uint64_t s = 0; s < 2; ++s) seeds.push_back(opt.config.seed + s);
      } else {
        rates = {1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
        for (std::uint64_t s = 0; s < 5; ++s) seeds.push_back(opt.config.seed + s);
      }
      GridResult grid = grid_train(train, val, opt.config, rates, seeds);
      for (const auto& [point, accuracy] : grid.scores) {
        out << "  lr " << point.learning_rate << " seed " << point.seed << " -> val accuracy "
            << accuracy << "\n";
      }
      result = std::move(grid.best);
      chosen = grid.chosen;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    ensure_parent_dir(opt.model_out);
    save_model(result.model, opt.model_out);
    if (!opt.history_out.empty()) {
      ensure_parent_dir(opt.history_out);
      std::ofstream csv(opt.history_out, std::ios::binary);
      if (!csv) throw std::runtime_error("cannot open for writing: " + opt.history_out);
      csv << "epoch,train_loss,train_accuracy,val_loss,val_accuracy\n";
      for (const EpochStats& e : result.history) {
        csv << e.epoch << ',' << full_precision(e.train_loss) << ','
            << full_precision(e.train_accuracy) << ',' << full_precision(e.val_loss) << ','
            << full_precision(e.val_accuracy) << '\n';
      }
      if (!csv) throw std::runtime_error("write failed: " + opt.history_out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  out << "best epoch " << result.best_epoch << " (lr " << chosen.learning_rate << ", seed "
      << chosen.seed << "): validation accuracy " << result.best_val_accuracy << "\n"
      << "model written to " << opt.model_out << "\n";
  return 0;
}

int run_eval(const EvalOptions& opt, std::ostream& out, std::ostream& err,
             EvalResult* result_out) {
  if (opt.costs.empty()) {
    err << "error: at least one cost spec is required\n";
    return 2;
  }
  std::vector<std::string> files;
  try {
    files = list_problem_files(opt.problems_dir);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (files.empty()) {
    err << "error: no problems found in " << opt.problems_dir << "\n";
    return 2;
  }

  std::vector<Problem> problems;
  std::vector<std::shared_ptr<const MlpModel>> models(opt.costs.size());
  try {
    problems.reserve(files.size());
    for (const std::string& file : files) problems.push_back(load_problem(file));
    for (std::size_t ci = 0; ci < opt.costs.size(); ++ci) {
      if (!opt.costs[ci].model_path.empty()) models[ci] = load_shared_model(opt.costs[ci]);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const std::size_t nc = opt.costs.size();
  const std::size_t np = problems.size();
  std::vector<std::vector<RunRow>> rows(nc, std::vector<RunRow>(np));
  parallel_for(nc * np, opt.jobs, [&](std::size_t idx) {
    const std::size_t ci = idx / np;
    const std::size_t pi = idx % np;
    // Each run owns a fresh cost instance; LearnedCost caches per-problem
    // state in prepare().
    std::unique_ptr<CostFunction> cost = make_cost(opt.costs[ci], models[ci]);
    const SaturationResult r =
        saturate(problems[pi].initial_clauses(), *cost, opt.ratio, opt.budget);
    RunRow& row = rows[ci][pi];
    row.problem = problems[pi].name;
    row.status = r.status;
    row.seconds = r.stats.elapsed_seconds;
    row.generated = r.stats.generated_count;
    row.processed = r.stats.processed_count;
  });

  EvalResult result;
  result.costs = opt.costs;
  for (std::size_t ci = 0; ci < nc; ++ci) {
    RunReport report;
    report.rows = rows[ci];
    std::vector<double> seconds;
    std::vector<double> generated;
    for (const RunRow& row : report.rows) {
      if (row.status != SaturationStatus::refutation_found) continue;
      ++report.solved;
      seconds.push_back(row.seconds);
      generated.push_back(static_cast<double>(row.generated));
    }
    report.median_seconds_solved = median(std::move(seconds));
    report.median_generated_solved = median(std::move(generated));
    result.reports.push_back(std::move(report));
  }

  for (std::size_t pi = 0; pi < np; ++pi) {
    bool everywhere = true;
    for (std::size_t ci = 0; ci < nc; ++ci) {
      if (rows[ci][pi].status != SaturationStatus::refutation_found) everywhere = false;
    }
    if (everywhere) result.common_solved.push_back(problems[pi].name);
  }
  for (std::size_t ci = 0; ci < nc; ++ci) {
    std::vector<double> generated;
    for (std::size_t pi = 0; pi < np; ++pi) {
      bool common = std::find(result.common_solved.begin(), result.common_solved.end(),
                              problems[pi].name) != result.common_solved.end();
      if (common) generated.push_back(static_cast<double>(rows[ci][pi].generated));
    }
    result.common_median_generated.push_back(median(std::move(generated)));
  }

  out << np << " problems, budget " << opt.budget.max_generated << " generated clauses\n";
  out << std::left << std::setw(24) << "cost" << std::right << std::setw(8) << "solved"
      << std::setw(14) << "med_seconds" << std::setw(14) << "med_generated" << std::setw(16)
      << "common_med_gen" << "\n";
  for (std::size_t ci = 0; ci < nc; ++ci) {
    const RunReport& rep = result.reports[ci];
    out << std::left << std::setw(24) << opt.costs[ci].name << std::right << std::setw(8)
        << rep.solved << std::setw(14) << std::fixed << std::setprecision(3)
        << rep.median_seconds_solved << std::setw(14) << std::setprecision(1)
        << rep.median_generated_solved << std::setw(16) << std::setprecision(1)
        << result.common_median_generated[ci] << "\n"
        << std::defaultfloat;
  }
  out << result.common_solved.size() << " problems solved under every cost\n";

  if (!opt.csv_out.empty()) {
    try {
      ensure_parent_dir(opt.csv_out);
      std::ofstream csv(opt.csv_out, std::ios::binary);
      if (!csv) throw std::runtime_error("cannot open for writing: " + opt.csv_out);
      csv << "problem,cost,status,seconds,generated,processed\n";
      for (std::size_t pi = 0; pi < np; ++pi) {
        for (std::size_t ci = 0; ci < nc; ++ci) {
          const RunRow& row = rows[ci][pi];
          csv << row.problem << ',' << opt.costs[ci].name << ',' << status_name(row.status)
              << ',' << std::fixed << std::setprecision(6) << row.seconds << std::defaultfloat
              << ',' << row.generated << ',' << row.processed << '\n';
        }
      }
      if (!csv) throw std::runtime_error("write failed: " + opt.csv_out);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
  }

  if (result_out != nullptr) *result_out = std::move(result);
  return 0;
}

}  // namespace prover
