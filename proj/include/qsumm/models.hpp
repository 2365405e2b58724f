#pragma once

// Linear epsilon-insensitive SVR and hinge-loss SVM trained in the primal by
// stochastic subgradient descent, plus the sentence feature vectors they score.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qsumm/corpus.hpp"
#include "qsumm/error.hpp"
#include "qsumm/vectorspace.hpp"

namespace qsumm {

/// tf-idf block over the vocabulary (ids 0..V-1) plus the query cosine at
/// index V.
struct FeatureVector {
  SparseVector tfidf;
  double query_cosine = 0.0;
  std::size_t vocab_size = 0;

  std::size_t dim() const { return vocab_size + 1; }

  template <typename F>
  void for_each(F&& f) const {
    for (const auto& [id, w] : tfidf.entries) f(static_cast<std::size_t>(id), w);
    if (query_cosine != 0.0) f(vocab_size, query_cosine);
  }

  std::vector<double> dense() const {
    std::vector<double> out(dim(), 0.0);
    for_each([&](std::size_t i, double w) { out[i] = w; });
    return out;
  }
};

inline FeatureVector make_features(std::span<const std::string> sentence_stems,
                                   const SparseVector& query_vec,
                                   const Vocabulary& vocab) {
  FeatureVector f;
  f.vocab_size = vocab.size();
  f.tfidf = tfidf(sentence_stems, vocab);
  f.query_cosine = cosine(f.tfidf, query_vec);
  return f;
}

/// One feature vector per candidate sentence of the question.
inline std::vector<FeatureVector> assemble_features(const PreparedQuestion& q,
                                                    const Vocabulary& vocab) {
  const auto query_vec = tfidf(q.query_stems, vocab);
  std::vector<FeatureVector> out;
  out.reserve(q.sentences.size());
  for (const auto& s : q.sentences) out.push_back(make_features(s.stems, query_vec, vocab));
  return out;
}

enum class ModelKind { SVR, SVM };

inline std::string to_string(ModelKind k) { return k == ModelKind::SVR ? "svr" : "svm"; }

struct Hyperparameters {
  double lambda = 1e-4;
  double epsilon = 0.1;  // SVR tube half-width
  int epochs = 20;
  // Step size is 1 / (lambda * (t + t0)) with t0 chosen so the first step
  // equals eta0; eta0 = 1/lambda gives the plain 1/(lambda t) schedule.
  double eta0 = 0.1;
  bool average = true;  // return the iterate average from epoch 2 onwards
  std::uint64_t seed = 42;
  // SVM class weights; unset means n / (2 n_class).
  std::optional<double> positive_weight;
  std::optional<double> negative_weight;

  void validate() const {
    if (!(lambda > 0.0)) throw InvalidHyperparameter("lambda must be > 0");
    if (!(epsilon >= 0.0)) throw InvalidHyperparameter("epsilon must be >= 0");
    if (epochs < 1) throw InvalidHyperparameter("epochs must be >= 1");
    if (!(eta0 > 0.0)) throw InvalidHyperparameter("eta0 must be > 0");
    if (positive_weight && !(*positive_weight > 0.0))
      throw InvalidHyperparameter("positive class weight must be > 0");
    if (negative_weight && !(*negative_weight > 0.0))
      throw InvalidHyperparameter("negative class weight must be > 0");
  }

  double step_offset() const { return std::max(0.0, 1.0 / (lambda * eta0) - 1.0); }

  bool operator==(const Hyperparameters&) const = default;
};

struct TrainingMetadata {
  std::size_t n_examples = 0;
  double initial_objective = 0.0;
  double final_objective = 0.0;
  std::vector<double> epoch_objectives;
  std::uint64_t seed = 0;
  double positive_weight = 1.0;
  double negative_weight = 1.0;
};

namespace loss {

inline double epsilon_insensitive(double pred, double y, double eps) {
  return std::max(0.0, std::abs(pred - y) - eps);
}

/// d/dpred; 0 inside the tube.
inline double epsilon_insensitive_derivative(double pred, double y, double eps) {
  const double r = pred - y;
  if (r > eps) return 1.0;
  if (r < -eps) return -1.0;
  return 0.0;
}

/// label in {0, 1}; margin is s * pred with s = 2 label - 1.
inline double hinge(double pred, int label) {
  const double s = label == 1 ? 1.0 : -1.0;
  return std::max(0.0, 1.0 - s * pred);
}

inline double hinge_derivative(double pred, int label) {
  const double s = label == 1 ? 1.0 : -1.0;
  return s * pred < 1.0 ? -s : 0.0;
}

}  // namespace loss

struct LinearModel {
  static constexpr int kFormatVersion = 1;

  ModelKind kind = ModelKind::SVR;
  std::vector<double> weights;  // length V + 1
  double bias = 0.0;
  Hyperparameters hyper;
  TrainingMetadata meta;
  std::uint64_t vocab_hash = 0;

  nlohmann::json to_json() const;
  static LinearModel from_json(const nlohmann::json& j);
};

inline double decision_score(const LinearModel& m, const FeatureVector& x) {
  if (x.dim() != m.weights.size()) {
    std::ostringstream os;
    os << "feature dimension " << x.dim() << " does not match model dimension "
       << m.weights.size();
    throw DimensionMismatch(os.str());
  }
  double s = m.bias;
  x.for_each([&](std::size_t i, double w) { s += m.weights[i] * w; });
  return s;
}

inline std::vector<double> decision_scores(const LinearModel& m,
                                           std::span<const FeatureVector> xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(decision_score(m, x));
  return out;
}

namespace models_detail {

inline double example_loss(ModelKind kind, double pred, double y, double eps) {
  return kind == ModelKind::SVR ? loss::epsilon_insensitive(pred, y, eps)
                                : loss::hinge(pred, static_cast<int>(y));
}

inline double example_derivative(ModelKind kind, double pred, double y, double eps) {
  return kind == ModelKind::SVR ? loss::epsilon_insensitive_derivative(pred, y, eps)
                                : loss::hinge_derivative(pred, static_cast<int>(y));
}

inline double sparse_dot(std::span<const double> w, const FeatureVector& x) {
  double s = 0.0;
  x.for_each([&](std::size_t i, double v) { s += w[i] * v; });
  return s;
}

inline double objective(ModelKind kind, std::span<const double> w, double b,
                        std::span<const FeatureVector> xs, std::span<const double> ys,
                        std::span<const double> costs, const Hyperparameters& hp) {
  double reg = 0.0;
  for (double v : w) reg += v * v;
  double total = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    total += costs[i] * example_loss(kind, sparse_dot(w, xs[i]) + b, ys[i], hp.epsilon);
  return 0.5 * hp.lambda * reg + total / static_cast<double>(xs.size());
}

// Weights are kept as w = v / v_div so the per-step shrink is O(1). The
// running average is (avg + avg_frac * v) / avg_div, updated lazily the same
// way, so each step only touches the example's non-zeros.
class SgdState {
 public:
  explicit SgdState(std::size_t dim) : v_(dim, 0.0), avg_(dim, 0.0) {}

  double predict(const FeatureVector& x) const { return sparse_dot(v_, x) / v_div_ + b_; }

  void shrink(double factor) {
    if (factor <= 0.0) {
      renormalize();
      std::fill(v_.begin(), v_.end(), 0.0);
      return;
    }
    v_div_ /= factor;
    if (v_div_ > 1e5) renormalize();
  }

  void add(const FeatureVector& x, double coef, double bias_step) {
    const double scaled = coef * v_div_;
    x.for_each([&](std::size_t i, double val) {
      v_[i] += scaled * val;
      avg_[i] -= avg_frac_ * scaled * val;
    });
    b_ += bias_step;
  }

  // Fold the current iterate into the average with weight mu.
  void average(double mu) {
    if (mu >= 1.0) {
      std::fill(avg_.begin(), avg_.end(), 0.0);
      avg_div_ = v_div_;
      avg_frac_ = 1.0;
      b_avg_ = b_;
      return;
    }
    avg_div_ /= (1.0 - mu);
    avg_frac_ += mu * avg_div_ / v_div_;
    b_avg_ = (1.0 - mu) * b_avg_ + mu * b_;
    if (avg_div_ > 1e5) renormalize();
  }

  std::vector<double> weights() const {
    std::vector<double> w(v_.size());
    for (std::size_t i = 0; i < v_.size(); ++i) w[i] = v_[i] / v_div_;
    return w;
  }
  double bias() const { return b_; }

  std::vector<double> averaged_weights() const {
    std::vector<double> w(v_.size());
    for (std::size_t i = 0; i < v_.size(); ++i) w[i] = (avg_[i] + avg_frac_ * v_[i]) / avg_div_;
    return w;
  }
  double averaged_bias() const { return b_avg_; }

 private:
  void renormalize() {
    for (std::size_t i = 0; i < v_.size(); ++i) {
      avg_[i] = (avg_[i] + avg_frac_ * v_[i]) / avg_div_;
      v_[i] /= v_div_;
    }
    v_div_ = 1.0;
    avg_div_ = 1.0;
    avg_frac_ = 0.0;
  }

  std::vector<double> v_;
  double v_div_ = 1.0;
  double b_ = 0.0;
  std::vector<double> avg_;
  double avg_div_ = 1.0;
  double avg_frac_ = 0.0;
  double b_avg_ = 0.0;
};

inline LinearModel train_linear(ModelKind kind, std::span<const FeatureVector> xs,
                                std::span<const double> ys, std::span<const double> costs,
                                const Hyperparameters& hp) {
  const std::size_t n = xs.size();
  const std::size_t dim = xs.front().dim();
  for (const auto& x : xs)
    if (x.dim() != dim) throw DimensionMismatch("training features differ in dimension");

  LinearModel model;
  model.kind = kind;
  model.hyper = hp;
  model.meta.n_examples = n;
  model.meta.seed = hp.seed;
  const std::vector<double> zeros(dim, 0.0);
  model.meta.initial_objective = objective(kind, zeros, 0.0, xs, ys, costs, hp);

  SgdState state(dim);
  std::mt19937_64 rng(hp.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  const double t0 = hp.step_offset();
  const bool averaging = hp.average;
  const std::size_t avg_start = hp.epochs > 1 ? n + 1 : 1;
  std::size_t t = 0;
  auto current = [&](std::vector<double>& w, double& b) {
    if (averaging && t >= avg_start) {
      w = state.averaged_weights();
      b = state.averaged_bias();
    } else {
      w = state.weights();
      b = state.bias();
    }
  };

  for (int epoch = 0; epoch < hp.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i : order) {
      ++t;
      const double eta = 1.0 / (hp.lambda * (static_cast<double>(t) + t0));
      const double pred = state.predict(xs[i]);
      state.shrink(1.0 - eta * hp.lambda);
      const double d = costs[i] * example_derivative(kind, pred, ys[i], hp.epsilon);
      if (d != 0.0) state.add(xs[i], -eta * d, -eta * d);
      if (averaging && t >= avg_start)
        state.average(1.0 / static_cast<double>(t - avg_start + 1));
    }
    std::vector<double> w;
    double b = 0.0;
    current(w, b);
    model.meta.epoch_objectives.push_back(objective(kind, w, b, xs, ys, costs, hp));
  }
  current(model.weights, model.bias);
  model.meta.final_objective = model.meta.epoch_objectives.back();
  return model;
}

}  // namespace models_detail

/// Epsilon-insensitive linear regression on SU4 targets.
inline LinearModel train_svr(std::span<const FeatureVector> xs, std::span<const double> targets,
                             const Hyperparameters& hp = {}) {
  hp.validate();
  if (xs.empty()) throw InvalidParameters("SVR needs at least one instance");
  if (xs.size() != targets.size()) throw InvalidParameters("features and targets differ in length");
  const std::vector<double> costs(xs.size(), 1.0);
  return models_detail::train_linear(ModelKind::SVR, xs, targets, costs, hp);
}

/// Hinge-loss linear classifier on 0/1 labels with per-class costs.
inline LinearModel train_svm(std::span<const FeatureVector> xs, std::span<const int> labels,
                             const Hyperparameters& hp = {}) {
  hp.validate();
  if (xs.size() != labels.size()) throw InvalidParameters("features and labels differ in length");
  std::size_t n_pos = 0;
  for (int l : labels) {
    if (l != 0 && l != 1) throw InvalidParameters("labels must be 0 or 1");
    n_pos += static_cast<std::size_t>(l == 1);
  }
  const std::size_t n = labels.size();
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0)
    throw SingleClassTraining("SVM training data contains only one class");
  const double w_pos = hp.positive_weight.value_or(static_cast<double>(n) / (2.0 * n_pos));
  const double w_neg = hp.negative_weight.value_or(static_cast<double>(n) / (2.0 * n_neg));
  std::vector<double> ys(n);
  std::vector<double> costs(n);
  for (std::size_t i = 0; i < n; ++i) {
    ys[i] = labels[i];
    costs[i] = labels[i] == 1 ? w_pos : w_neg;
  }
  auto model = models_detail::train_linear(ModelKind::SVM, xs, ys, costs, hp);
  model.meta.positive_weight = w_pos;
  model.meta.negative_weight = w_neg;
  return model;
}

/// Regularized single-example objective (lambda/2)|w|^2 + cost * loss(w.x + b, y)
/// over a dense x, and its subgradient in (w..., b).
inline double example_objective(ModelKind kind, std::span<const double> w, double b,
                                std::span<const double> x, double y,
                                const Hyperparameters& hp, double cost = 1.0) {
  double pred = b;
  double reg = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    pred += w[i] * x[i];
    reg += w[i] * w[i];
  }
  return 0.5 * hp.lambda * reg + cost * models_detail::example_loss(kind, pred, y, hp.epsilon);
}

inline std::vector<double> example_subgradient(ModelKind kind, std::span<const double> w,
                                               double b, std::span<const double> x, double y,
                                               const Hyperparameters& hp, double cost = 1.0) {
  double pred = b;
  for (std::size_t i = 0; i < w.size(); ++i) pred += w[i] * x[i];
  const double d = cost * models_detail::example_derivative(kind, pred, y, hp.epsilon);
  std::vector<double> g(w.size() + 1);
  for (std::size_t i = 0; i < w.size(); ++i) g[i] = hp.lambda * w[i] + d * x[i];
  g[w.size()] = d;
  return g;
}

inline std::string format_hash(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

inline std::uint64_t parse_hash(const std::string& s) {
  return std::stoull(s, nullptr, 16);
}

inline nlohmann::json LinearModel::to_json() const {
  nlohmann::json hp = {{"lambda", hyper.lambda},     {"epsilon", hyper.epsilon},
                       {"epochs", hyper.epochs},     {"eta0", hyper.eta0},
                       {"average", hyper.average},   {"seed", hyper.seed}};
  if (hyper.positive_weight) hp["positive_weight"] = *hyper.positive_weight;
  if (hyper.negative_weight) hp["negative_weight"] = *hyper.negative_weight;
  return {{"format_version", kFormatVersion},
          {"kind", to_string(kind)},
          {"hyperparameters", hp},
          {"weights", weights},
          {"bias", bias},
          {"vocab_hash", format_hash(vocab_hash)},
          {"training",
           {{"n_examples", meta.n_examples},
            {"initial_objective", meta.initial_objective},
            {"final_objective", meta.final_objective},
            {"epoch_objectives", meta.epoch_objectives},
            {"seed", meta.seed},
            {"positive_weight", meta.positive_weight},
            {"negative_weight", meta.negative_weight}}}};
}

inline LinearModel LinearModel::from_json(const nlohmann::json& j) {
  if (j.value("format_version", 0) != kFormatVersion)
    throw FormatError("unsupported model format_version");
  LinearModel m;
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "svr")
    m.kind = ModelKind::SVR;
  else if (kind == "svm")
    m.kind = ModelKind::SVM;
  else
    throw FormatError("unknown model kind " + kind);
  const auto& hp = j.at("hyperparameters");
  m.hyper.lambda = hp.at("lambda").get<double>();
  m.hyper.epsilon = hp.at("epsilon").get<double>();
  m.hyper.epochs = hp.at("epochs").get<int>();
  m.hyper.eta0 = hp.at("eta0").get<double>();
  m.hyper.average = hp.at("average").get<bool>();
  m.hyper.seed = hp.at("seed").get<std::uint64_t>();
  if (hp.contains("positive_weight")) m.hyper.positive_weight = hp["positive_weight"].get<double>();
  if (hp.contains("negative_weight")) m.hyper.negative_weight = hp["negative_weight"].get<double>();
  m.weights = j.at("weights").get<std::vector<double>>();
  m.bias = j.at("bias").get<double>();
  m.vocab_hash = parse_hash(j.at("vocab_hash").get<std::string>());
  const auto& t = j.at("training");
  m.meta.n_examples = t.at("n_examples").get<std::size_t>();
  m.meta.initial_objective = t.at("initial_objective").get<double>();
  m.meta.final_objective = t.at("final_objective").get<double>();
  m.meta.epoch_objectives = t.at("epoch_objectives").get<std::vector<double>>();
  m.meta.seed = t.at("seed").get<std::uint64_t>();
  m.meta.positive_weight = t.at("positive_weight").get<double>();
  m.meta.negative_weight = t.at("negative_weight").get<double>();
  return m;
}

}  // namespace qsumm
