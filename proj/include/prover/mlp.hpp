/**
 * @file mlp.hpp
 * The clause-scoring MLP: dense layers with ReLU hidden activations and a
 * logistic output, binary cross-entropy loss, Adam training with validation
 * early stopping, versioned JSON persistence, and the learned cost function
 * (1 - p) + w/M. Gradients are exposed so tests can check them against
 * finite differences.
 */
#ifndef PROVER_MLP_HPP
#define PROVER_MLP_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "prover/features.hpp"
#include "prover/saturation.hpp"

namespace prover {

struct MlpModel {
  std::vector<int> layer_sizes;               // e.g. {38, 256, 64, 16, 4, 1}
  std::vector<std::vector<double>> weights;   // per layer, row-major [out][in]
  std::vector<std::vector<double>> biases;    // per layer, length [out]

  /// He-style uniform init on weights (limit sqrt(6/fan_in)), zero biases.
  /// Throws std::invalid_argument for fewer than two layers, a non-positive
  /// size, or an output size other than 1.
  static MlpModel make(const std::vector<int>& sizes, std::uint64_t seed);

  int input_size() const { return layer_sizes.front(); }
};

/// The architecture used throughout: 38 inputs, hidden 256/64/16/4, 1 output.
std::vector<int> default_layer_sizes();

/// Probability that the clause described by x appears in a proof. Throws
/// std::invalid_argument when x's length differs from the input layer.
double mlp_forward(const MlpModel& m, const std::vector<double>& x);
double mlp_forward(const MlpModel& m, const FeatureVector& x);

/// Mean binary cross-entropy over a batch, computed from logits in the
/// numerically stable form max(z,0) - z y + log(1 + exp(-|z|)).
double mlp_batch_loss(const MlpModel& m, const std::vector<FeatureVector>& xs,
                      const std::vector<int>& ys);

/// Mean-loss gradients with the same shapes as the model parameters.
struct MlpGradients {
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;
};
MlpGradients mlp_gradients(const MlpModel& m, const std::vector<FeatureVector>& xs,
                           const std::vector<int>& ys);

struct TrainConfig {
  double learning_rate = 1e-3;
  int batch_size = 4096;
  int max_epochs = 200;
  int patience = 20;  // epochs without a validation-accuracy improvement
  std::uint64_t seed = 0;
  std::vector<int> layer_sizes;  // empty = default_layer_sizes()
};

class TrainError : public std::runtime_error {
 public:
  enum class Kind { degenerate_data, non_finite_loss };
  TrainError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind(kind) {}
  Kind kind;
};

struct EpochStats {
  int epoch = 0;  // 1-based
  double train_loss = 0.0;      // running mean over the epoch's batches,
  double train_accuracy = 0.0;  // measured before each batch's update
  double val_loss = 0.0;        // full validation pass after the epoch
  double val_accuracy = 0.0;    // threshold 0.5
};

struct TrainResult {
  MlpModel model;  // parameters from the best-validation epoch
  std::vector<EpochStats> history;
  int best_epoch = 0;
  double best_val_accuracy = 0.0;
};

/// Adam (beta1 0.9, beta2 0.999, eps 1e-8) on shuffled mini-batches. Stops
/// early after cfg.patience epochs without a new best validation accuracy.
/// Throws TrainError for single-class training data or a non-finite loss,
/// std::invalid_argument for empty splits or non-positive config values.
TrainResult mlp_train(const std::vector<TrainingExample>& train,
                      const std::vector<TrainingExample>& val, const TrainConfig& cfg);

/// Seeded shuffle of `all`, then a tail split; both sides stay nonempty.
/// Shared by mlp_train_split and the grid search so every grid point sees
/// the same validation set.
std::pair<std::vector<TrainingExample>, std::vector<TrainingExample>> split_examples(
    const std::vector<TrainingExample>& all, double val_fraction, std::uint64_t seed);

/// split_examples with cfg.seed, then mlp_train on the two halves.
TrainResult mlp_train_split(const std::vector<TrainingExample>& all, double val_fraction,
                            const TrainConfig& cfg);

/// Trains one model per (learning rate, seed) pair and keeps the best
/// validation accuracy; ties go to the earlier grid point.
struct GridPoint {
  double learning_rate = 0.0;
  std::uint64_t seed = 0;
};
struct GridResult {
  TrainResult best;
  GridPoint chosen;
  std::vector<std::pair<GridPoint, double>> scores;  // val accuracy per point
};
GridResult grid_train(const std::vector<TrainingExample>& train,
                      const std::vector<TrainingExample>& val, const TrainConfig& base,
                      const std::vector<double>& learning_rates,
                      const std::vector<std::uint64_t>& seeds);

class ModelIoError : public std::runtime_error {
 public:
  enum class Kind { io, schema, version };
  ModelIoError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind(kind) {}
  Kind kind;
};

/// Versioned JSON with full-precision doubles; load(save(m)) is bit-exact.
/// The file records a hash of the feature schema so a model is never scored
/// against features with a different layout.
void save_model(const MlpModel& m, const std::string& path);
MlpModel load_model(const std::string& path);

/// cost(c) = (1 - p) + clause_weight(c) / scale, with p from the model on
/// the 38-feature vector of c against the run's initial clauses. prepare()
/// caches the aggregate feature block per run.
class LearnedCost final : public CostFunction {
 public:
  /// Throws std::invalid_argument for a null model, non-positive scale, or a
  /// model whose input layer is not the feature width.
  explicit LearnedCost(std::shared_ptr<const MlpModel> model, double scale = 16.0);

  void prepare(const std::vector<Clause>& initial) override;
  double cost(const Clause& c, const ProblemContext& ctx) const override;

 private:
  std::shared_ptr<const MlpModel> model_;
  double scale_;
  std::array<double, kAggregateFeatureCount> aggregates_{};
  std::size_t initial_count_ = 0;
  bool prepared_ = false;
};

}  // namespace prover

#endif  // PROVER_MLP_HPP
