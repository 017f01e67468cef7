/**
 * @file acceptance_main.cpp
 * Release gate for the whole pipeline. Each criterion prints exactly one
 * [PASS]/[FAIL] line with its key numbers; the exit code is the number of
 * failed criteria. Scratch output lands in a temp directory and is removed
 * on the next run.
 */
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "prover/dataset.hpp"
#include "prover/features.hpp"
#include "prover/fol.hpp"
#include "prover/harness.hpp"
#include "prover/mlp.hpp"
#include "prover/proposer.hpp"
#include "prover/saturation.hpp"
#include "prover/subsumption.hpp"
#include "prover/tptp.hpp"
#include "prover/util.hpp"

namespace fs = std::filesystem;
using namespace prover;
using namespace prover::testing;

namespace {

const char* kDataDir = PROVER_DATA_DIR;

// Criterion 8 knobs, pinned so the gate is reproducible end to end.
namespace c8 {
constexpr int kTrainCount = 2000;
constexpr int kHoldoutCount = 200;
constexpr int kSteps = 10;
constexpr std::uint64_t kTrainSeed = 101;
constexpr std::uint64_t kHoldoutSeed = 202;
constexpr std::uint64_t kMineSeed = 7;
constexpr std::int64_t kBudget = 20000;
constexpr double kValFraction = 0.1;
constexpr double kScale = 16.0;
constexpr double kMinValAccuracy = 0.70;
constexpr double kMaxRuntimeSeconds = 1800.0;
}  // namespace c8

fs::path scratch_root() {
  return fs::temp_directory_path() /
         ("prover_acceptance_" + std::to_string(static_cast<unsigned>(::getpid())));
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt(double v, int precision = 3) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(precision);
  ss << v;
  return ss.str();
}

// criterion 1: the worked clause-weight example.

bool criterion_weight(std::string& detail) {
  Signature sig;
  const SymbolId p = sig.add_predicate("p", 1);
  const SymbolId q = sig.add_predicate("q", 1);
  const SymbolId f = sig.add_functor("f", 2);
  const SymbolId c = sig.add_functor("c", 0);
  const Term x = Term::variable(0);
  const Clause clause = make_clause({
      Literal{true, p, {x}},
      Literal{false, q, {Term::application(f, {x, Term::application(c, {})})}},
  });
  const int w = clause_weight(clause);
  detail = "weight(~p(X) | q(f(X,c))) = " + std::to_string(w);
  return w == 9;
}

// criterion 2: feature vectors are always 38 wide and finite.

bool criterion_features(std::string& detail) {
  TestSig ts;
  Rng rng(123);
  std::vector<Clause> initial = random_problem(rng, ts, 5);
  int violations = 0;
  const int kIterations = 10000;
  for (int i = 0; i < kIterations; ++i) {
    if (i % 250 == 0) initial = random_problem(rng, ts, 5);
    Clause c = random_clause(rng, ts, 4, 2, 3);
    c.birth_step = static_cast<std::int32_t>(i % 97);
    switch (i % 3) {
      case 0:
        c.provenance = Provenance{};
        break;
      case 1:
        c.provenance = Provenance{InferenceKind::resolution, 0, 1, 0, 0};
        break;
      default:
        c.provenance = Provenance{InferenceKind::factoring, 0, -1, 0, 1};
        break;
    }
    const FeatureVector v = problem_features(c, initial);
    bool ok = v.size() == kFeatureCount;
    for (double x : v) ok = ok && std::isfinite(x);
    if (!ok) ++violations;
  }
  detail = std::to_string(kIterations) + " clauses, " + std::to_string(violations) +
           " violations";
  return violations == 0;
}

// criterion 3: every clause generated by saturation is entailed by the inputs.

bool criterion_soundness(std::string& detail) {
  TestSig ts;
  GroundOracle oracle(ts.sig, {ts.a, ts.b});
  int checked = 0;
  int violations = 0;
  const int kProblems = 200;
  for (int i = 0; i < kProblems; ++i) {
    Rng rng(3000 + static_cast<std::uint64_t>(i));
    const std::vector<Clause> initial = random_problem(rng, ts, 6);
    ClauseWeightCost cost;
    const SaturationResult result =
        saturate(initial, cost, AgeCostRatio{1, 5}, Budget{300, 0, 0.0});
    for (const Clause& c : result.all_generated) {
      if (c.provenance.kind == InferenceKind::input) continue;
      ++checked;
      if (variables_of(c).distinct.size() > 8 || !oracle.entails(initial, c)) ++violations;
    }
  }
  detail = std::to_string(kProblems) + " problems, " + std::to_string(checked) +
           " derived clauses, " + std::to_string(violations) + " unsound";
  return violations == 0 && checked > 0;
}

// criterion 4: theta_subsumes agrees with the substitution-enumeration oracle.

bool criterion_subsumption(std::string& detail) {
  TestSig ts;
  Rng rng(4000);
  int positives = 0;
  int disagreements = 0;
  const int kPairs = 1000;
  for (int i = 0; i < kPairs; ++i) {
    const Clause c1 = random_function_free_clause(rng, ts, 3, 2);
    const Clause c2 = random_function_free_clause(rng, ts, 3, 2);
    const bool fast = theta_subsumes(c1, c2);
    const bool slow = oracle_subsumes(c1, c2, true);
    if (fast != slow) ++disagreements;
    if (slow) ++positives;
  }
  detail = std::to_string(kPairs) + " pairs, " + std::to_string(positives) +
           " subsumptions, " + std::to_string(disagreements) + " disagreements";
  return disagreements == 0 && positives > 0;
}

// criterion 5: the curated smoke problems all refute within 10,000 clauses.

bool criterion_smoke(std::string& detail) {
  const std::vector<std::string> files =
      list_problem_files(std::string(kDataDir) + "/problems/smoke");
  int refuted = 0;
  std::string first_failure;
  for (const std::string& file : files) {
    const Problem problem = load_problem(file);
    ClauseWeightCost cost;
    const SaturationResult result = saturate(problem.initial_clauses(), cost,
                                             AgeCostRatio{1, 5}, Budget{10000, 0, 0.0});
    if (result.status == SaturationStatus::refutation_found) {
      ++refuted;
    } else if (first_failure.empty()) {
      first_failure = problem.name;
    }
  }
  detail = std::to_string(refuted) + "/" + std::to_string(files.size()) + " refuted";
  if (!first_failure.empty()) detail += ", first failure " + first_failure;
  return files.size() == 15 && refuted == 15;
}

// criterion 6: proposed theorems certify by replay and the prover closes them.

bool criterion_proposer(std::string& detail) {
  std::ostringstream parts;
  bool pass = true;
  for (const char* set_name : {"group", "chain"}) {
    const Problem base =
        load_problem(std::string(kDataDir) + "/axioms/" + set_name + ".ax");
    const std::uint64_t base_seed = fnv1a(set_name);
    std::vector<SyntheticTheorem> theorems;
    int attempts = 0;
    for (int i = 0; static_cast<int>(theorems.size()) < 100 && i < 400; ++i) {
      ++attempts;
      const std::uint64_t seed =
          splitmix64(base_seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(i) + 1)));
      try {
        theorems.push_back(propose_theorem(base.axioms, 10, seed));
      } catch (const ProposerError&) {
        continue;
      }
    }
    int certified = 0;
    int refuted = 0;
    for (std::size_t t = 0; t < theorems.size(); ++t) {
      if (certify_by_replay(theorems[t], base.signature)) ++certified;
      const Problem p = make_problem(theorems[t], base.signature, base.var_names,
                                     set_name + std::to_string(t));
      ClauseWeightCost cost;
      const SaturationResult result = saturate(p.initial_clauses(), cost, AgeCostRatio{1, 5},
                                               Budget{50000, 0, 0.0});
      if (result.status == SaturationStatus::refutation_found) ++refuted;
    }
    pass = pass && theorems.size() == 100 && certified == 100 && refuted >= 95;
    parts << set_name << ": " << certified << "/" << theorems.size() << " certified, "
          << refuted << " refuted, " << attempts << " walks; ";
  }
  detail = parts.str();
  return pass;
}

// criterion 7: analytic gradients match central finite differences.

bool criterion_gradients(std::string& detail) {
  MlpModel model = MlpModel::make({38, 4, 1}, 77);
  Rng rng(78);
  std::vector<FeatureVector> xs;
  std::vector<int> ys;
  for (int i = 0; i < 8; ++i) {
    FeatureVector x{};
    for (double& v : x) v = rng.next_symmetric(1.5);
    xs.push_back(x);
    ys.push_back(i % 2);
  }
  const MlpGradients analytic = mlp_gradients(model, xs, ys);

  const double h = 1e-4;
  double max_rel = 0.0;
  auto probe = [&](double& param, double grad) {
    const double saved = param;
    param = saved + h;
    const double up = mlp_batch_loss(model, xs, ys);
    param = saved - h;
    const double down = mlp_batch_loss(model, xs, ys);
    param = saved;
    const double numeric = (up - down) / (2.0 * h);
    const double rel = std::fabs(grad - numeric) /
                       std::max({std::fabs(grad), std::fabs(numeric), 1e-6});
    max_rel = std::max(max_rel, rel);
  };
  for (std::size_t layer = 0; layer < model.weights.size(); ++layer) {
    for (std::size_t i = 0; i < model.weights[layer].size(); ++i) {
      probe(model.weights[layer][i], analytic.weights[layer][i]);
    }
    for (std::size_t i = 0; i < model.biases[layer].size(); ++i) {
      probe(model.biases[layer][i], analytic.biases[layer][i]);
    }
  }
  std::ostringstream ss;
  ss.precision(3);
  ss << std::scientific << "max relative error " << max_rel;
  detail = ss.str();
  return max_rel <= 1e-4;
}

// criterion 8: desk-scale transfer, generate -> mine -> train -> evaluate.

bool criterion_end_to_end(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  const fs::path root = scratch_root() / "c8";
  fs::create_directories(root);
  std::ostringstream sink;
  std::ostringstream errs;

  GenerateOptions gen;
  gen.axioms_path = std::string(kDataDir) + "/axioms/group.ax";
  gen.out_dir = (root / "train_problems").string();
  gen.count = c8::kTrainCount;
  gen.steps = c8::kSteps;
  gen.seed = c8::kTrainSeed;
  if (run_generate(gen, sink, errs) != 0) {
    detail = "training generation incomplete: " + errs.str();
    return false;
  }
  gen.out_dir = (root / "holdout_problems").string();
  gen.count = c8::kHoldoutCount;
  gen.seed = c8::kHoldoutSeed;
  if (run_generate(gen, sink, errs) != 0) {
    detail = "holdout generation incomplete: " + errs.str();
    return false;
  }

  MineOptions mine;
  mine.problems_dir = (root / "train_problems").string();
  mine.out_path = (root / "train.jsonl").string();
  mine.mining.budget = Budget{c8::kBudget, 0, 0.0};
  mine.mining.seed = c8::kMineSeed;
  mine.axiom_set_name = "group";
  if (run_mine(mine, sink, errs) != 0) {
    detail = "mining failed: " + errs.str();
    return false;
  }
  const DatasetMeta meta = read_dataset_meta(mine.out_path + ".meta.json");

  const std::vector<TrainingExample> all = read_examples_jsonl(mine.out_path);
  TrainConfig cfg;
  cfg.seed = c8::kMineSeed;
  auto [train, val] = split_examples(all, c8::kValFraction, cfg.seed);
  const TrainResult trained = mlp_train(train, val, cfg);
  save_model(trained.model, (root / "model.json").string());

  EvalOptions eval;
  eval.problems_dir = (root / "holdout_problems").string();
  eval.costs = {CostSpec{"weight", "", c8::kScale},
                CostSpec{"learned", (root / "model.json").string(), c8::kScale}};
  eval.budget = Budget{c8::kBudget, 0, 0.0};
  EvalResult result;
  if (run_eval(eval, sink, errs, &result) != 0) {
    detail = "evaluation failed: " + errs.str();
    return false;
  }

  const int weight_solved = result.reports[0].solved;
  const int learned_solved = result.reports[1].solved;
  const double weight_median = result.common_median_generated[0];
  const double learned_median = result.common_median_generated[1];
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::ostringstream ss;
  ss << meta.problems_proved << "/" << c8::kTrainCount << " mined, " << all.size()
     << " examples, val acc " << fmt(trained.best_val_accuracy) << ", solved "
     << learned_solved << " vs " << weight_solved << ", common median generated "
     << fmt(learned_median, 1) << " vs " << fmt(weight_median, 1) << ", " << fmt(elapsed, 1)
     << " s";
  detail = ss.str();

  return trained.best_val_accuracy >= c8::kMinValAccuracy &&
         learned_solved >= weight_solved && !result.common_solved.empty() &&
         learned_median <= (2.0 / 3.0) * weight_median &&
         elapsed < c8::kMaxRuntimeSeconds;
}

// criterion 9: generation, mining, and training are byte-deterministic.

bool criterion_determinism(std::string& detail) {
  const fs::path root = scratch_root() / "c9";
  fs::create_directories(root);
  std::ostringstream sink;
  std::ostringstream errs;

  GenerateOptions gen;
  gen.axioms_path = std::string(kDataDir) + "/axioms/group.ax";
  gen.count = 6;
  gen.steps = 4;
  gen.seed = 31;
  for (const char* dir : {"g1", "g2"}) {
    gen.out_dir = (root / dir).string();
    if (run_generate(gen, sink, errs) != 0) {
      detail = "generation failed: " + errs.str();
      return false;
    }
  }
  bool generate_ok = slurp(root / "g1/manifest.jsonl") == slurp(root / "g2/manifest.jsonl");
  for (const std::string& file : list_problem_files((root / "g1").string())) {
    const fs::path leaf = fs::path(file).filename();
    generate_ok = generate_ok && slurp(root / "g1" / leaf) == slurp(root / "g2" / leaf);
  }

  MineOptions mine;
  mine.problems_dir = (root / "g1").string();
  mine.mining.budget = Budget{5000, 0, 0.0};
  mine.mining.seed = 3;
  mine.axiom_set_name = "group";
  for (const char* out : {"m1.jsonl", "m2.jsonl"}) {
    mine.out_path = (root / out).string();
    if (run_mine(mine, sink, errs) != 0) {
      detail = "mining failed: " + errs.str();
      return false;
    }
  }
  const bool mine_ok =
      slurp(root / "m1.jsonl") == slurp(root / "m2.jsonl") &&
      slurp(root / "m1.jsonl.meta.json") == slurp(root / "m2.jsonl.meta.json");

  TrainOptions tr;
  tr.dataset_path = (root / "m1.jsonl").string();
  tr.config.layer_sizes = {38, 16, 1};
  tr.config.learning_rate = 3e-3;
  tr.config.batch_size = 32;
  tr.config.max_epochs = 8;
  tr.config.patience = 8;
  tr.config.seed = 5;
  tr.val_fraction = 0.2;
  for (const char* tag : {"t1", "t2"}) {
    tr.model_out = (root / (std::string(tag) + "_model.json")).string();
    tr.history_out = (root / (std::string(tag) + "_history.csv")).string();
    if (run_train(tr, sink, errs) != 0) {
      detail = "training failed: " + errs.str();
      return false;
    }
  }
  const bool train_ok =
      slurp(root / "t1_model.json") == slurp(root / "t2_model.json") &&
      slurp(root / "t1_history.csv") == slurp(root / "t2_history.csv");

  detail = std::string("generate ") + (generate_ok ? "ok" : "DIFFERS") + ", mine " +
           (mine_ok ? "ok" : "DIFFERS") + ", train " + (train_ok ? "ok" : "DIFFERS");
  return generate_ok && mine_ok && train_ok;
}

struct Criterion {
  int number;
  const char* label;
  bool (*fn)(std::string&);
};

}  // namespace

int main(int argc, char** argv) {
  const Criterion criteria[] = {
      {1, "clause-weight worked example", criterion_weight},
      {2, "feature vector shape", criterion_features},
      {3, "saturation soundness vs ground oracle", criterion_soundness},
      {4, "subsumption oracle equivalence", criterion_subsumption},
      {5, "smoke refutation suite", criterion_smoke},
      {6, "proposer validity and provability", criterion_proposer},
      {7, "gradient check", criterion_gradients},
      {8, "desk-scale end-to-end transfer", criterion_end_to_end},
      {9, "pipeline determinism", criterion_determinism},
  };

  // Optional arguments select a subset of criteria by number.
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  std::error_code ec;
  fs::remove_all(scratch_root(), ec);
  fs::create_directories(scratch_root());

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && selected.count(c.number) == 0) continue;
    const auto start = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
      pass = c.fn(detail);
    } catch (const std::exception& e) {
      pass = false;
      detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << c.number << ": " << c.label
              << " (" << fmt(elapsed, 1) << " s) - " << detail << "\n";
    std::cout.flush();
    if (!pass) ++failures;
  }

  fs::remove_all(scratch_root(), ec);
  return failures;
}
