#include "prover/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include <nlohmann/json.hpp>

#include "prover/util.hpp"

namespace prover {

namespace {

using nlohmann::json;

struct ProblemYield {
  std::vector<TrainingExample> examples;
  bool proved = false;
  bool failed = false;
  std::int64_t positives = 0;
  std::int64_t negatives = 0;
};

ProblemYield mine_one(const Problem& problem, const MiningConfig& cfg) {
  ProblemYield yield;
  const std::vector<Clause> initial = problem.initial_clauses();
  ClauseWeightCost cost;
  SaturationResult result = saturate(initial, cost, cfg.ratio, cfg.budget);
  if (result.status != SaturationStatus::refutation_found) return yield;
  yield.proved = true;

  const std::vector<ClauseId> positives = result.proof_clauses;
  std::unordered_set<ClauseId> in_proof(positives.begin(), positives.end());
  std::vector<ClauseId> pool;
  pool.reserve(result.all_generated.size());
  for (const Clause& c : result.all_generated) {
    if (in_proof.count(c.id) == 0) pool.push_back(c.id);
  }

  const std::size_t want = std::min(positives.size(), pool.size());
  Rng rng(splitmix64(cfg.seed ^ fnv1a(problem.name)));
  for (std::size_t i = 0; i < want; ++i) {
    const std::size_t j = i + rng.next_index(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  std::vector<ClauseId> negatives(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(want));
  std::sort(negatives.begin(), negatives.end());

  const std::array<double, kAggregateFeatureCount> aggregates = aggregate_features(initial);
  auto emit = [&](ClauseId id, int label) {
    const Clause& c = result.all_generated[static_cast<std::size_t>(id)];
    TrainingExample ex;
    ex.features = assemble_features(clause_features(c), aggregates, c.birth_step,
                                    c.provenance.premise_count(), initial.size());
    ex.label = label;
    ex.theorem_id = problem.name;
    ex.clause_id = id;
    yield.examples.push_back(std::move(ex));
  };
  for (ClauseId id : positives) emit(id, 1);
  for (ClauseId id : negatives) emit(id, 0);
  yield.positives = static_cast<std::int64_t>(positives.size());
  yield.negatives = static_cast<std::int64_t>(negatives.size());
  return yield;
}

}  // namespace

MiningOutput mine_examples(const std::vector<Problem>& problems, const MiningConfig& cfg) {
  std::vector<ProblemYield> yields(problems.size());
  parallel_for(problems.size(), cfg.jobs, [&](std::size_t i) {
    try {
      yields[i] = mine_one(problems[i], cfg);
    } catch (const std::exception&) {
      yields[i].failed = true;
    }
  });

  MiningOutput out;
  out.stats.problems_total = static_cast<int>(problems.size());
  for (std::size_t i = 0; i < yields.size(); ++i) {
    ProblemYield& y = yields[i];
    if (y.failed) {
      out.stats.failed_problems.push_back(problems[i].name);
      continue;
    }
    if (!y.proved) continue;
    out.stats.problems_proved += 1;
    out.stats.positives += y.positives;
    out.stats.negatives += y.negatives;
    out.examples.insert(out.examples.end(), std::make_move_iterator(y.examples.begin()),
                        std::make_move_iterator(y.examples.end()));
  }
  return out;
}

void write_examples_jsonl(const std::string& path, const std::vector<TrainingExample>& examples) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open for writing: " + path);
  for (const TrainingExample& ex : examples) {
    json row;
    row["clause_id"] = ex.clause_id;
    row["features"] = ex.features;
    row["label"] = ex.label;
    row["theorem_id"] = ex.theorem_id;
    file << row.dump() << '\n';
  }
  if (!file) throw std::runtime_error("write failed: " + path);
}

std::vector<TrainingExample> read_examples_jsonl(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open for reading: " + path);
  std::vector<TrainingExample> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fail = [&](const std::string& what) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
    };
    json row = json::parse(line, nullptr, false);
    if (row.is_discarded() || !row.is_object()) fail("malformed JSON object");
    if (!row.contains("clause_id") || !row.contains("features") || !row.contains("label") ||
        !row.contains("theorem_id")) {
      fail("missing required field");
    }
    TrainingExample ex;
    const json& feats = row["features"];
    if (!feats.is_array() || feats.size() != kFeatureCount) fail("features must have 38 entries");
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      if (!feats[i].is_number()) fail("non-numeric feature");
      ex.features[i] = feats[i].get<double>();
    }
    ex.label = row["label"].is_number_integer() ? row["label"].get<int>() : -1;
    if (ex.label != 0 && ex.label != 1) fail("label must be 0 or 1");
    ex.theorem_id = row["theorem_id"].get<std::string>();
    ex.clause_id = row["clause_id"].get<ClauseId>();
    out.push_back(std::move(ex));
  }
  return out;
}

void write_dataset_meta(const std::string& path, const DatasetMeta& meta) {
  json j;
  j["axiom_set"] = meta.axiom_set;
  j["max_generated"] = meta.max_generated;
  j["negatives"] = meta.negatives;
  j["positives"] = meta.positives;
  j["problems_proved"] = meta.problems_proved;
  j["problems_total"] = meta.problems_total;
  j["seed"] = meta.seed;
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open for writing: " + path);
  file << j.dump(2) << '\n';
  if (!file) throw std::runtime_error("write failed: " + path);
}

DatasetMeta read_dataset_meta(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open for reading: " + path);
  json j = json::parse(file, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw std::runtime_error("malformed metadata: " + path);
  DatasetMeta meta;
  meta.axiom_set = j.value("axiom_set", std::string{});
  meta.max_generated = j.value("max_generated", std::int64_t{0});
  meta.negatives = j.value("negatives", std::int64_t{0});
  meta.positives = j.value("positives", std::int64_t{0});
  meta.problems_proved = j.value("problems_proved", 0);
  meta.problems_total = j.value("problems_total", 0);
  meta.seed = j.value("seed", std::uint64_t{0});
  return meta;
}

}  // namespace prover
