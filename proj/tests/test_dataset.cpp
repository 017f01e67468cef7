#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "prover/dataset.hpp"
#include "prover/fol.hpp"
#include "prover/saturation.hpp"
#include "prover/tptp.hpp"

using namespace prover;
using namespace prover::testing;

namespace {

std::vector<Problem> load_smoke_problems() {
  const std::filesystem::path dir = PROVER_DATA_DIR "/problems/smoke";
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".p") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<Problem> out;
  for (const auto& p : paths) out.push_back(load_problem(p, PROVER_DATA_DIR "/axioms"));
  return out;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name)
      : path((std::filesystem::temp_directory_path() / name).string()) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("mining the smoke problems yields balanced labeled examples") {
  const std::vector<Problem> problems = load_smoke_problems();
  REQUIRE(!problems.empty());

  MiningConfig cfg;
  cfg.budget.max_generated = 10000;
  cfg.seed = 5;
  const MiningOutput out = mine_examples(problems, cfg);

  CHECK(out.stats.problems_total == static_cast<int>(problems.size()));
  CHECK(out.stats.problems_proved == static_cast<int>(problems.size()));
  CHECK(out.stats.failed_problems.empty());
  CHECK(out.stats.positives > 0);
  CHECK(out.stats.negatives > 0);
  CHECK(out.stats.negatives <= out.stats.positives);

  // Per problem: positives are exactly the proof ancestors of a fresh run,
  // negatives are distinct non-proof clauses, and counts balance up to pool
  // exhaustion.
  std::map<std::string, std::vector<const TrainingExample*>> by_problem;
  for (const TrainingExample& ex : out.examples) by_problem[ex.theorem_id].push_back(&ex);

  std::int64_t positives_total = 0;
  std::int64_t negatives_total = 0;
  for (const Problem& problem : problems) {
    REQUIRE(by_problem.count(problem.name) == 1);
    const auto& examples = by_problem[problem.name];

    ClauseWeightCost cost;
    const SaturationResult r = saturate(problem.initial_clauses(), cost, cfg.ratio, cfg.budget);
    REQUIRE(r.status == SaturationStatus::refutation_found);
    const std::unordered_set<ClauseId> proof(r.proof_clauses.begin(), r.proof_clauses.end());

    std::unordered_set<ClauseId> seen;
    std::size_t pos = 0, neg = 0;
    for (const TrainingExample* ex : examples) {
      CHECK(seen.insert(ex->clause_id).second);  // no clause sampled twice
      if (ex->label == 1) {
        ++pos;
        CHECK(proof.count(ex->clause_id) == 1);
      } else {
        ++neg;
        CHECK(proof.count(ex->clause_id) == 0);
      }
      CHECK(ex->features[37] == static_cast<double>(problem.initial_clauses().size()));
    }
    CHECK(pos == proof.size());
    const std::size_t pool = r.all_generated.size() - proof.size();
    CHECK(neg == std::min(pos, pool));
    positives_total += static_cast<std::int64_t>(pos);
    negatives_total += static_cast<std::int64_t>(neg);
  }
  CHECK(positives_total == out.stats.positives);
  CHECK(negatives_total == out.stats.negatives);
}

TEST_CASE("unproved problems contribute nothing") {
  // p(a) and q(b) are consistent: saturation ends without a refutation.
  Problem consistent = parse_tptp_cnf("cnf(a, axiom, p(a)).\ncnf(b, axiom, q(b)).\n", {}, "sat");
  const MiningOutput out = mine_examples({consistent});
  CHECK(out.stats.problems_total == 1);
  CHECK(out.stats.problems_proved == 0);
  CHECK(out.examples.empty());
  CHECK(out.stats.failed_problems.empty());

  // A tiny budget turns a provable problem into an unproved one.
  Problem provable =
      parse_tptp_cnf("cnf(a, axiom, p(a)).\ncnf(b, negated_conjecture, ~p(X)).\n", {}, "easy");
  MiningConfig tight;
  tight.budget.max_generated = 0;
  const MiningOutput none = mine_examples({provable}, tight);
  CHECK(none.stats.problems_proved == 0);
  CHECK(none.examples.empty());
}

TEST_CASE("a problem that cannot saturate is reported failed") {
  // An empty initial clause list makes saturate throw; the miner records the
  // problem instead of crashing the batch.
  Problem broken;
  broken.name = "broken";
  const MiningOutput out = mine_examples({broken});
  CHECK(out.stats.problems_total == 1);
  REQUIRE(out.stats.failed_problems.size() == 1);
  CHECK(out.stats.failed_problems[0] == "broken");
}

TEST_CASE("mining is deterministic and independent of the job count") {
  const std::vector<Problem> problems = load_smoke_problems();
  MiningConfig one;
  one.budget.max_generated = 5000;
  one.seed = 11;
  one.jobs = 1;
  MiningConfig four = one;
  four.jobs = 4;

  const MiningOutput a = mine_examples(problems, one);
  const MiningOutput b = mine_examples(problems, four);
  const MiningOutput c = mine_examples(problems, one);

  REQUIRE(a.examples.size() == b.examples.size());
  REQUIRE(a.examples.size() == c.examples.size());
  for (std::size_t i = 0; i < a.examples.size(); ++i) {
    CHECK(a.examples[i].theorem_id == b.examples[i].theorem_id);
    CHECK(a.examples[i].clause_id == b.examples[i].clause_id);
    CHECK(a.examples[i].label == b.examples[i].label);
    CHECK(a.examples[i].features == b.examples[i].features);
    CHECK(a.examples[i].clause_id == c.examples[i].clause_id);
  }

  // A different seed draws different negatives somewhere in the corpus.
  MiningConfig other = one;
  other.seed = 12;
  const MiningOutput d = mine_examples(problems, other);
  bool any_difference = false;
  for (std::size_t i = 0; i < a.examples.size() && i < d.examples.size(); ++i) {
    if (a.examples[i].clause_id != d.examples[i].clause_id) {
      any_difference = true;
      break;
    }
  }
  CHECK(any_difference);
}

TEST_CASE("examples survive a jsonl round trip") {
  const std::vector<Problem> problems = load_smoke_problems();
  MiningConfig cfg;
  cfg.budget.max_generated = 3000;
  const MiningOutput out = mine_examples(problems, cfg);
  REQUIRE(!out.examples.empty());

  TempFile tmp("prover_examples_rt.jsonl");
  write_examples_jsonl(tmp.path, out.examples);
  const std::vector<TrainingExample> back = read_examples_jsonl(tmp.path);
  REQUIRE(back.size() == out.examples.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].features == out.examples[i].features);  // bit-exact doubles
    CHECK(back[i].label == out.examples[i].label);
    CHECK(back[i].theorem_id == out.examples[i].theorem_id);
    CHECK(back[i].clause_id == out.examples[i].clause_id);
  }
}

TEST_CASE("jsonl reader rejects malformed input with line numbers") {
  auto write_and_read = [](const std::string& name, const std::string& content) {
    TempFile tmp(name);
    std::ofstream file(tmp.path);
    file << content;
    file.close();
    return read_examples_jsonl(tmp.path);
  };
  auto expect_error = [&](const std::string& name, const std::string& content,
                          const std::string& needle, int line) {
    try {
      write_and_read(name, content);
      FAIL("expected std::runtime_error");
    } catch (const std::runtime_error& e) {
      const std::string what = e.what();
      CHECK(what.find(needle) != std::string::npos);
      CHECK(what.find(":" + std::to_string(line) + ":") != std::string::npos);
    }
  };

  std::string good = R"({"clause_id": 3, "features": [)";
  for (int i = 0; i < 38; ++i) good += (i ? ",1" : "1");
  good += R"(], "label": 1, "theorem_id": "t"})";

  expect_error("bad_json.jsonl", good + "\nnot json\n", "malformed", 2);
  expect_error("bad_field.jsonl", R"({"clause_id": 1})" "\n", "missing required field", 1);
  expect_error("bad_arity.jsonl",
               R"({"clause_id": 1, "features": [1, 2], "label": 0, "theorem_id": "t"})" "\n",
               "38", 1);
  expect_error("bad_label.jsonl", [&] {
    std::string s = good;
    const auto at = s.find("\"label\": 1");
    s.replace(at, 10, "\"label\": 7");
    return s + "\n";
  }(), "label", 1);

  // Blank lines are tolerated.
  const std::vector<TrainingExample> ok = write_and_read("ok.jsonl", good + "\n\n" + good + "\n");
  CHECK(ok.size() == 2);

  CHECK_THROWS_AS(read_examples_jsonl("/nonexistent/examples.jsonl"), std::runtime_error);
}

TEST_CASE("dataset metadata round trip") {
  DatasetMeta meta;
  meta.seed = 123456789;
  meta.axiom_set = "group";
  meta.max_generated = 20000;
  meta.problems_total = 2000;
  meta.problems_proved = 1234;
  meta.positives = 9999;
  meta.negatives = 9876;

  TempFile tmp("prover_meta_rt.json");
  write_dataset_meta(tmp.path, meta);
  const DatasetMeta back = read_dataset_meta(tmp.path);
  CHECK(back.seed == meta.seed);
  CHECK(back.axiom_set == meta.axiom_set);
  CHECK(back.max_generated == meta.max_generated);
  CHECK(back.problems_total == meta.problems_total);
  CHECK(back.problems_proved == meta.problems_proved);
  CHECK(back.positives == meta.positives);
  CHECK(back.negatives == meta.negatives);

  CHECK_THROWS_AS(read_dataset_meta("/nonexistent/meta.json"), std::runtime_error);
}
