#include "prover/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <numeric>
#include <utility>

#include <nlohmann/json.hpp>

#include "prover/util.hpp"

namespace prover {

namespace {

using nlohmann::json;

constexpr double kAdamBeta1 = 0.9;
constexpr double kAdamBeta2 = 0.999;
constexpr double kAdamEps = 1e-8;
constexpr int kModelVersion = 1;

double stable_logistic(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// max(z,0) - z*y + log(1+exp(-|z|)); equals -log p(y) without overflow.
double bce_from_logit(double z, int y) {
  return std::max(z, 0.0) - z * static_cast<double>(y) + std::log1p(std::exp(-std::abs(z)));
}

void check_shape(const MlpModel& m) {
  const std::size_t layers = m.layer_sizes.size();
  if (layers < 2 || m.weights.size() != layers - 1 || m.biases.size() != layers - 1) {
    throw std::invalid_argument("mlp: inconsistent layer shapes");
  }
  for (std::size_t l = 0; l + 1 < layers; ++l) {
    const auto in = static_cast<std::size_t>(m.layer_sizes[l]);
    const auto out = static_cast<std::size_t>(m.layer_sizes[l + 1]);
    if (m.weights[l].size() != in * out || m.biases[l].size() != out) {
      throw std::invalid_argument("mlp: parameter block does not match layer sizes");
    }
  }
}

// Forward pass keeping every layer's activation; a.front() aliases the input,
// z_out is the final pre-activation.
struct Trace {
  std::vector<std::vector<double>> acts;
  double z_out = 0.0;
};

Trace forward_trace(const MlpModel& m, const double* x, std::size_t len) {
  if (len != static_cast<std::size_t>(m.layer_sizes.front())) {
    throw std::invalid_argument("mlp_forward: input length does not match input layer");
  }
  Trace t;
  t.acts.resize(m.layer_sizes.size());
  t.acts[0].assign(x, x + len);
  const std::size_t last = m.layer_sizes.size() - 1;
  for (std::size_t l = 0; l < last; ++l) {
    const auto in = static_cast<std::size_t>(m.layer_sizes[l]);
    const auto out = static_cast<std::size_t>(m.layer_sizes[l + 1]);
    const std::vector<double>& a = t.acts[l];
    std::vector<double>& next = t.acts[l + 1];
    next.assign(out, 0.0);
    const double* w = m.weights[l].data();
    for (std::size_t r = 0; r < out; ++r) {
      double z = m.biases[l][r];
      const double* row = w + r * in;
      for (std::size_t c = 0; c < in; ++c) z += row[c] * a[c];
      next[r] = (l + 1 == last) ? z : std::max(z, 0.0);
    }
  }
  t.z_out = t.acts[last][0];
  return t;
}

// Accumulates dL/dparams for one example into grads (not averaged).
void backward_into(const MlpModel& m, const Trace& t, double dz_out, MlpGradients& g) {
  const std::size_t last = m.layer_sizes.size() - 1;
  std::vector<double> delta{dz_out};
  for (std::size_t l = last; l-- > 0;) {
    const auto in = static_cast<std::size_t>(m.layer_sizes[l]);
    const auto out = static_cast<std::size_t>(m.layer_sizes[l + 1]);
    const std::vector<double>& a = t.acts[l];
    for (std::size_t r = 0; r < out; ++r) {
      const double d = delta[r];
      if (d == 0.0) continue;
      g.biases[l][r] += d;
      double* grow = g.weights[l].data() + r * in;
      for (std::size_t c = 0; c < in; ++c) grow[c] += d * a[c];
    }
    if (l == 0) break;
    std::vector<double> prev(in, 0.0);
    const double* w = m.weights[l].data();
    for (std::size_t r = 0; r < out; ++r) {
      const double d = delta[r];
      if (d == 0.0) continue;
      const double* row = w + r * in;
      for (std::size_t c = 0; c < in; ++c) prev[c] += row[c] * d;
    }
    // ReLU gate: the stored activation is max(z,0), so zero means no flow.
    for (std::size_t c = 0; c < in; ++c) {
      if (t.acts[l][c] <= 0.0) prev[c] = 0.0;
    }
    delta = std::move(prev);
  }
}

MlpGradients zero_gradients(const MlpModel& m) {
  MlpGradients g;
  g.weights.reserve(m.weights.size());
  g.biases.reserve(m.biases.size());
  for (std::size_t l = 0; l < m.weights.size(); ++l) {
    g.weights.emplace_back(m.weights[l].size(), 0.0);
    g.biases.emplace_back(m.biases[l].size(), 0.0);
  }
  return g;
}

void scale_gradients(MlpGradients& g, double s) {
  for (auto& v : g.weights) {
    for (double& x : v) x *= s;
  }
  for (auto& v : g.biases) {
    for (double& x : v) x *= s;
  }
}

struct AdamState {
  MlpGradients m1;
  MlpGradients m2;
  std::int64_t t = 0;
};

void adam_step(MlpModel& model, const MlpGradients& g, AdamState& s, double lr) {
  s.t += 1;
  const double c1 = 1.0 - std::pow(kAdamBeta1, static_cast<double>(s.t));
  const double c2 = 1.0 - std::pow(kAdamBeta2, static_cast<double>(s.t));
  auto update = [&](std::vector<double>& p, const std::vector<double>& grad,
                    std::vector<double>& m1, std::vector<double>& m2) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      m1[i] = kAdamBeta1 * m1[i] + (1.0 - kAdamBeta1) * grad[i];
      m2[i] = kAdamBeta2 * m2[i] + (1.0 - kAdamBeta2) * grad[i] * grad[i];
      p[i] -= lr * (m1[i] / c1) / (std::sqrt(m2[i] / c2) + kAdamEps);
    }
  };
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    update(model.weights[l], g.weights[l], s.m1.weights[l], s.m2.weights[l]);
    update(model.biases[l], g.biases[l], s.m1.biases[l], s.m2.biases[l]);
  }
}

struct EvalMetrics {
  double loss = 0.0;
  double accuracy = 0.0;
};

EvalMetrics evaluate(const MlpModel& m, const std::vector<TrainingExample>& data) {
  double loss = 0.0;
  std::size_t correct = 0;
  for (const TrainingExample& ex : data) {
    const Trace t = forward_trace(m, ex.features.data(), ex.features.size());
    loss += bce_from_logit(t.z_out, ex.label);
    const int predicted = t.z_out >= 0.0 ? 1 : 0;  // p >= 0.5 iff z >= 0
    if (predicted == ex.label) ++correct;
  }
  EvalMetrics out;
  out.loss = loss / static_cast<double>(data.size());
  out.accuracy = static_cast<double>(correct) / static_cast<double>(data.size());
  return out;
}

}  // namespace

std::vector<int> default_layer_sizes() { return {static_cast<int>(kFeatureCount), 256, 64, 16, 4, 1}; }

MlpModel MlpModel::make(const std::vector<int>& sizes, std::uint64_t seed) {
  if (sizes.size() < 2) throw std::invalid_argument("mlp: need at least input and output layers");
  for (int s : sizes) {
    if (s <= 0) throw std::invalid_argument("mlp: layer sizes must be positive");
  }
  if (sizes.back() != 1) throw std::invalid_argument("mlp: output layer must have size 1");

  MlpModel m;
  m.layer_sizes = sizes;
  Rng rng(splitmix64(seed ^ 0x6d6c705f696e6974ULL));
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const auto in = static_cast<std::size_t>(sizes[l]);
    const auto out = static_cast<std::size_t>(sizes[l + 1]);
    const double limit = std::sqrt(6.0 / static_cast<double>(in));
    std::vector<double> w(in * out);
    for (double& x : w) x = rng.next_symmetric(limit);
    m.weights.push_back(std::move(w));
    m.biases.emplace_back(out, 0.0);
  }
  return m;
}

double mlp_forward(const MlpModel& m, const std::vector<double>& x) {
  check_shape(m);
  return stable_logistic(forward_trace(m, x.data(), x.size()).z_out);
}

double mlp_forward(const MlpModel& m, const FeatureVector& x) {
  check_shape(m);
  return stable_logistic(forward_trace(m, x.data(), x.size()).z_out);
}

double mlp_batch_loss(const MlpModel& m, const std::vector<FeatureVector>& xs,
                      const std::vector<int>& ys) {
  check_shape(m);
  if (xs.empty() || xs.size() != ys.size()) {
    throw std::invalid_argument("mlp_batch_loss: batch is empty or mismatched");
  }
  double loss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    loss += bce_from_logit(forward_trace(m, xs[i].data(), xs[i].size()).z_out, ys[i]);
  }
  return loss / static_cast<double>(xs.size());
}

MlpGradients mlp_gradients(const MlpModel& m, const std::vector<FeatureVector>& xs,
                           const std::vector<int>& ys) {
  check_shape(m);
  if (xs.empty() || xs.size() != ys.size()) {
    throw std::invalid_argument("mlp_gradients: batch is empty or mismatched");
  }
  MlpGradients g = zero_gradients(m);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Trace t = forward_trace(m, xs[i].data(), xs[i].size());
    const double p = stable_logistic(t.z_out);
    backward_into(m, t, p - static_cast<double>(ys[i]), g);
  }
  scale_gradients(g, 1.0 / static_cast<double>(xs.size()));
  return g;
}

TrainResult mlp_train(const std::vector<TrainingExample>& train,
                      const std::vector<TrainingExample>& val, const TrainConfig& cfg) {
  if (train.empty() || val.empty()) {
    throw std::invalid_argument("mlp_train: empty training or validation split");
  }
  if (cfg.learning_rate <= 0.0 || cfg.batch_size <= 0 || cfg.max_epochs <= 0 ||
      cfg.patience <= 0) {
    throw std::invalid_argument("mlp_train: config values must be positive");
  }
  bool has_pos = false;
  bool has_neg = false;
  for (const TrainingExample& ex : train) {
    (ex.label == 1 ? has_pos : has_neg) = true;
  }
  if (!has_pos || !has_neg) {
    throw TrainError(TrainError::Kind::degenerate_data,
                     "training data contains a single class");
  }

  std::vector<int> sizes = cfg.layer_sizes.empty() ? default_layer_sizes() : cfg.layer_sizes;
  if (static_cast<std::size_t>(sizes.front()) != kFeatureCount) {
    throw std::invalid_argument("mlp_train: input layer must match the feature width");
  }

  MlpModel model = MlpModel::make(sizes, cfg.seed);
  AdamState adam{zero_gradients(model), zero_gradients(model), 0};
  Rng shuffle_rng(splitmix64(cfg.seed ^ 0x7368756666ULL));

  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  TrainResult result;
  result.best_val_accuracy = -1.0;
  MlpModel best = model;
  int since_best = 0;

  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    double epoch_loss = 0.0;
    std::size_t epoch_correct = 0;

    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(cfg.batch_size)) {
      const std::size_t stop =
          std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
      MlpGradients g = zero_gradients(model);
      for (std::size_t k = start; k < stop; ++k) {
        const TrainingExample& ex = train[order[k]];
        const Trace t = forward_trace(model, ex.features.data(), ex.features.size());
        const double p = stable_logistic(t.z_out);
        epoch_loss += bce_from_logit(t.z_out, ex.label);
        if ((t.z_out >= 0.0 ? 1 : 0) == ex.label) ++epoch_correct;
        backward_into(model, t, p - static_cast<double>(ex.label), g);
      }
      scale_gradients(g, 1.0 / static_cast<double>(stop - start));
      adam_step(model, g, adam, cfg.learning_rate);
    }

    EpochStats stats;
    stats.epoch = epoch;
    stats.train_loss = epoch_loss / static_cast<double>(train.size());
    stats.train_accuracy =
        static_cast<double>(epoch_correct) / static_cast<double>(train.size());
    const EvalMetrics vm = evaluate(model, val);
    stats.val_loss = vm.loss;
    stats.val_accuracy = vm.accuracy;
    if (!std::isfinite(stats.train_loss) || !std::isfinite(stats.val_loss)) {
      throw TrainError(TrainError::Kind::non_finite_loss,
                       "loss became non-finite at epoch " + std::to_string(epoch));
    }
    result.history.push_back(stats);

    if (vm.accuracy > result.best_val_accuracy) {
      result.best_val_accuracy = vm.accuracy;
      result.best_epoch = epoch;
      best = model;
      since_best = 0;
    } else {
      ++since_best;
      if (since_best >= cfg.patience) break;
    }
  }

  result.model = std::move(best);
  return result;
}

std::pair<std::vector<TrainingExample>, std::vector<TrainingExample>> split_examples(
    const std::vector<TrainingExample>& all, double val_fraction, std::uint64_t seed) {
  if (val_fraction <= 0.0 || val_fraction >= 1.0) {
    throw std::invalid_argument("split_examples: fraction must be in (0, 1)");
  }
  if (all.size() < 2) throw std::invalid_argument("split_examples: need at least 2 examples");
  std::vector<TrainingExample> shuffled = all;
  Rng rng(splitmix64(seed ^ fnv1a("val_split")));
  rng.shuffle(shuffled);
  std::size_t n_val = static_cast<std::size_t>(
      std::llround(val_fraction * static_cast<double>(shuffled.size())));
  n_val = std::max<std::size_t>(1, std::min(n_val, shuffled.size() - 1));
  std::vector<TrainingExample> val(shuffled.end() - static_cast<std::ptrdiff_t>(n_val),
                                   shuffled.end());
  shuffled.resize(shuffled.size() - n_val);
  return {std::move(shuffled), std::move(val)};
}

TrainResult mlp_train_split(const std::vector<TrainingExample>& all, double val_fraction,
                            const TrainConfig& cfg) {
  auto [train, val] = split_examples(all, val_fraction, cfg.seed);
  return mlp_train(train, val, cfg);
}

GridResult grid_train(const std::vector<TrainingExample>& train,
                      const std::vector<TrainingExample>& val, const TrainConfig& base,
                      const std::vector<double>& learning_rates,
                      const std::vector<std::uint64_t>& seeds) {
  if (learning_rates.empty() || seeds.empty()) {
    throw std::invalid_argument("grid_train: empty grid");
  }
  GridResult out;
  bool first = true;
  for (double lr : learning_rates) {
    for (std::uint64_t seed : seeds) {
      TrainConfig cfg = base;
      cfg.learning_rate = lr;
      cfg.seed = seed;
      TrainResult r = mlp_train(train, val, cfg);
      out.scores.push_back({GridPoint{lr, seed}, r.best_val_accuracy});
      if (first || r.best_val_accuracy > out.best.best_val_accuracy) {
        out.best = std::move(r);
        out.chosen = GridPoint{lr, seed};
        first = false;
      }
    }
  }
  return out;
}

void save_model(const MlpModel& m, const std::string& path) {
  check_shape(m);
  json j;
  j["version"] = kModelVersion;
  j["layer_sizes"] = m.layer_sizes;
  j["weights"] = m.weights;
  j["biases"] = m.biases;
  j["feature_schema_hash"] = fnv1a(kFeatureSchema);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ModelIoError(ModelIoError::Kind::io, "cannot open for writing: " + path);
  file << j.dump() << '\n';
  if (!file) throw ModelIoError(ModelIoError::Kind::io, "write failed: " + path);
}

MlpModel load_model(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ModelIoError(ModelIoError::Kind::io, "cannot open for reading: " + path);
  json j = json::parse(file, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw ModelIoError(ModelIoError::Kind::schema, "malformed model file: " + path);
  }
  if (!j.contains("version") || !j["version"].is_number_integer()) {
    throw ModelIoError(ModelIoError::Kind::schema, "missing version field: " + path);
  }
  if (j["version"].get<int>() != kModelVersion) {
    throw ModelIoError(ModelIoError::Kind::version,
                       "unsupported model version " + j["version"].dump() + ": " + path);
  }
  MlpModel m;
  try {
    m.layer_sizes = j.at("layer_sizes").get<std::vector<int>>();
    m.weights = j.at("weights").get<std::vector<std::vector<double>>>();
    m.biases = j.at("biases").get<std::vector<std::vector<double>>>();
    if (j.at("feature_schema_hash").get<std::uint64_t>() != fnv1a(kFeatureSchema)) {
      throw ModelIoError(ModelIoError::Kind::schema, "feature schema mismatch: " + path);
    }
  } catch (const json::exception& e) {
    throw ModelIoError(ModelIoError::Kind::schema,
                       std::string("bad model structure: ") + e.what() + ": " + path);
  }
  try {
    check_shape(m);
  } catch (const std::invalid_argument& e) {
    throw ModelIoError(ModelIoError::Kind::schema, std::string(e.what()) + ": " + path);
  }
  for (const auto& block : {m.weights, m.biases}) {
    for (const auto& v : block) {
      for (double x : v) {
        if (!std::isfinite(x)) {
          throw ModelIoError(ModelIoError::Kind::schema, "non-finite parameter: " + path);
        }
      }
    }
  }
  return m;
}

LearnedCost::LearnedCost(std::shared_ptr<const MlpModel> model, double scale)
    : model_(std::move(model)), scale_(scale) {
  if (!model_) throw std::invalid_argument("LearnedCost: null model");
  if (!(scale_ > 0.0)) throw std::invalid_argument("LearnedCost: scale must be positive");
  check_shape(*model_);
  if (static_cast<std::size_t>(model_->input_size()) != kFeatureCount) {
    throw std::invalid_argument("LearnedCost: model input layer must match the feature width");
  }
}

void LearnedCost::prepare(const std::vector<Clause>& initial) {
  aggregates_ = aggregate_features(initial);
  initial_count_ = initial.size();
  prepared_ = true;
}

double LearnedCost::cost(const Clause& c, const ProblemContext&) const {
  if (!prepared_) throw std::logic_error("LearnedCost: cost() before prepare()");
  const FeatureVector x = assemble_features(clause_features(c), aggregates_, c.birth_step,
                                            c.provenance.premise_count(), initial_count_);
  const double p = stable_logistic(forward_trace(*model_, x.data(), x.size()).z_out);
  return (1.0 - p) + static_cast<double>(clause_weight(c)) / scale_;
}

}  // namespace prover
