/**
 * @file dataset.hpp
 * Training-example mining: run the basic prover over a batch of problems,
 * label proof ancestors positive, sample an equal number of unused generated
 * clauses negative, and serialize the result as JSON lines.
 */
#ifndef PROVER_DATASET_HPP
#define PROVER_DATASET_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "prover/features.hpp"
#include "prover/saturation.hpp"
#include "prover/tptp.hpp"

namespace prover {

struct MiningConfig {
  Budget budget{20000, 0, 0.0};
  AgeCostRatio ratio;
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct MiningStats {
  int problems_total = 0;
  int problems_proved = 0;
  std::int64_t positives = 0;
  std::int64_t negatives = 0;
  std::vector<std::string> failed_problems;  // parse/saturation errors, not timeouts
};

struct MiningOutput {
  std::vector<TrainingExample> examples;  // grouped by problem, input order
  MiningStats stats;
};

/// Saturates every problem with the clause-weight cost. Problems without a
/// refutation inside the budget contribute no examples. Negative sampling is
/// without replacement and balanced per problem: |negatives| =
/// min(|positives|, unused clause count). Deterministic for a fixed seed
/// regardless of cfg.jobs; each problem draws from a seed derived from
/// (cfg.seed, problem name).
MiningOutput mine_examples(const std::vector<Problem>& problems, const MiningConfig& cfg = {});

/// One JSON object per line, keys {clause_id, features, label, theorem_id}.
void write_examples_jsonl(const std::string& path, const std::vector<TrainingExample>& examples);

/// Throws std::runtime_error naming the offending line on malformed input,
/// wrong feature arity, or labels outside {0,1}.
std::vector<TrainingExample> read_examples_jsonl(const std::string& path);

struct DatasetMeta {
  std::uint64_t seed = 0;
  std::string axiom_set;
  std::int64_t max_generated = 0;
  int problems_total = 0;
  int problems_proved = 0;
  std::int64_t positives = 0;
  std::int64_t negatives = 0;
};

void write_dataset_meta(const std::string& path, const DatasetMeta& meta);
DatasetMeta read_dataset_meta(const std::string& path);

}  // namespace prover

#endif  // PROVER_DATASET_HPP
