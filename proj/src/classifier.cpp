#include "kdetect/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "kdetect/error.hpp"
#include "kdetect/format.hpp"

namespace kdetect {

namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_shapes(const FeatureMatrix& x, std::span<const int> labels,
                  std::span<const double> weights) {
  if (x.rows() != labels.size()) {
    throw PreconditionError("feature rows (" + std::to_string(x.rows()) +
                            ") differ from label count (" + std::to_string(labels.size()) + ")");
  }
  if (x.cols() != weights.size()) {
    throw PreconditionError("feature columns (" + std::to_string(x.cols()) +
                            ") differ from weight count (" + std::to_string(weights.size()) + ")");
  }
}

}  // namespace

std::vector<double> StandardizationParams::apply(std::span<const double> x) const {
  if (x.size() != means.size()) {
    throw PreconditionError("standardize: expected " + std::to_string(means.size()) +
                            " features, got " + std::to_string(x.size()));
  }
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = (x[j] - means[j]) / stds[j];
  return out;
}

StandardizationParams fit_standardization(const FeatureMatrix& features) {
  if (features.rows() == 0) throw PreconditionError("fit_standardization: empty matrix");
  const std::size_t n = features.rows();
  const std::size_t d = features.cols();
  StandardizationParams p;
  p.means.assign(d, 0.0);
  p.stds.assign(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) p.means[j] += features(i, j);
  }
  for (auto& m : p.means) m /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double c = features(i, j) - p.means[j];
      p.stds[j] += c * c;
    }
  }
  for (auto& s : p.stds) s = std::max(std::sqrt(s / static_cast<double>(n)), kStdFloor);
  return p;
}

FeatureMatrix standardize(const FeatureMatrix& features, const StandardizationParams& params) {
  FeatureMatrix out(features.rows(), features.cols());
  for (std::size_t i = 0; i < features.rows(); ++i) {
    const auto row = params.apply(features.row(i));
    std::copy(row.begin(), row.end(), out.row(i).begin());
  }
  return out;
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw PreconditionError("learning_rate must be positive");
  if (!(l2_lambda >= 0.0)) throw PreconditionError("l2_lambda must be non-negative");
  if (max_iterations < 0) throw PreconditionError("max_iterations must be non-negative");
  if (!(tolerance >= 0.0)) throw PreconditionError("tolerance must be non-negative");
}

double logistic_loss(const FeatureMatrix& x, std::span<const int> labels,
                     std::span<const double> weights, double bias, double l2_lambda) {
  check_shapes(x, labels, weights);
  const auto n = static_cast<double>(x.rows());
  double loss = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double z = dot(x.row(i), weights) + bias;
    loss += softplus(z) - (labels[i] == 1 ? z : 0.0);
  }
  return loss / n + l2_lambda / (2.0 * n) * dot(weights, weights);
}

LossGradient logistic_loss_gradient(const FeatureMatrix& x, std::span<const int> labels,
                                    std::span<const double> weights, double bias,
                                    double l2_lambda) {
  check_shapes(x, labels, weights);
  const auto n = static_cast<double>(x.rows());
  LossGradient g;
  g.weight_gradient.assign(weights.size(), 0.0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto row = x.row(i);
    const double z = dot(row, weights) + bias;
    const double y = labels[i] == 1 ? 1.0 : 0.0;
    g.loss += softplus(z) - y * z;
    const double residual = sigmoid(z) - y;
    for (std::size_t j = 0; j < row.size(); ++j) g.weight_gradient[j] += residual * row[j];
    g.bias_gradient += residual;
  }
  g.loss = g.loss / n + l2_lambda / (2.0 * n) * dot(weights, weights);
  for (std::size_t j = 0; j < weights.size(); ++j) {
    g.weight_gradient[j] = g.weight_gradient[j] / n + l2_lambda / n * weights[j];
  }
  g.bias_gradient /= n;
  return g;
}

TrainedModel train_logreg(const FeatureMatrix& features, std::span<const int> labels,
                          const TrainConfig& config, TrainingTrace* trace) {
  config.validate();
  if (features.rows() != labels.size()) {
    throw PreconditionError("train_logreg: " + std::to_string(features.rows()) + " rows but " +
                            std::to_string(labels.size()) + " labels");
  }
  if (labels.size() < 2) throw TrainingError("train_logreg: need at least two examples");
  bool has_pos = false;
  bool has_neg = false;
  for (int y : labels) {
    if (y != 0 && y != 1) throw PreconditionError("train_logreg: labels must be 0 or 1");
    (y == 1 ? has_pos : has_neg) = true;
  }
  if (!has_pos || !has_neg) throw TrainingError("train_logreg: labels contain a single class");

  TrainedModel model;
  model.config = config;
  model.standardization = fit_standardization(features);
  const FeatureMatrix x = standardize(features, model.standardization);
  const std::size_t d = features.cols();
  model.weights.assign(d, 0.0);

  TrainingTrace local;
  TrainingTrace& t = trace ? *trace : local;
  t = {};
  double loss = logistic_loss(x, labels, model.weights, model.bias, config.l2_lambda);
  t.losses.push_back(loss);

  double lr = config.learning_rate;
  std::vector<double> candidate(d);
  for (int it = 0; it < config.max_iterations; ++it) {
    const LossGradient g =
        logistic_loss_gradient(x, labels, model.weights, model.bias, config.l2_lambda);
    double new_loss = 0.0;
    double new_bias = 0.0;
    bool accepted = false;
    while (lr > std::numeric_limits<double>::epsilon()) {
      for (std::size_t j = 0; j < d; ++j) candidate[j] = model.weights[j] - lr * g.weight_gradient[j];
      new_bias = model.bias - lr * g.bias_gradient;
      new_loss = logistic_loss(x, labels, candidate, new_bias, config.l2_lambda);
      if (new_loss <= loss) {
        accepted = true;
        break;
      }
      lr *= 0.5;
    }
    if (!accepted) break;
    model.weights = candidate;
    model.bias = new_bias;
    const double decrease = loss - new_loss;
    loss = new_loss;
    t.losses.push_back(loss);
    ++t.iterations;
    if (decrease < config.tolerance) break;
  }
  return model;
}

TrainedModel train_logreg(const FeatureMatrix& features, std::span<const int> labels,
                          const TrainConfig& config, FeatureSetId feature_set,
                          std::int64_t training_seed, TrainingTrace* trace) {
  if (features.cols() != feature_dimension(feature_set)) {
    throw PreconditionError("train_logreg: feature set '" + std::string(to_string(feature_set)) +
                            "' has " + std::to_string(feature_dimension(feature_set)) +
                            " features, matrix has " + std::to_string(features.cols()));
  }
  TrainedModel model = train_logreg(features, labels, config, trace);
  model.feature_set_id = feature_set;
  model.training_seed = training_seed;
  return model;
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double predict_proba(const TrainedModel& model, std::span<const double> features) {
  if (features.size() != model.weights.size()) {
    throw PreconditionError("predict_proba: model expects " + std::to_string(model.weights.size()) +
                            " features, got " + std::to_string(features.size()));
  }
  const auto x = model.standardization.apply(features);
  const double p = sigmoid(dot(x, model.weights) + model.bias);
  // Keep probabilities strictly inside (0, 1) even when the sigmoid saturates.
  return std::clamp(p, std::numeric_limits<double>::min(), std::nextafter(1.0, 0.0));
}

double ensemble_proba(std::span<const double> probabilities) {
  if (probabilities.empty()) throw PreconditionError("ensemble_proba: no member probabilities");
  double sum = 0.0;
  for (double p : probabilities) sum += p;
  return sum / static_cast<double>(probabilities.size());
}

std::string model_to_json(const TrainedModel& model) {
  if (!model.feature_set_id) throw PreconditionError("model_to_json: model has no feature set");
  nlohmann::ordered_json j;
  j["feature_set_id"] = std::string(to_string(*model.feature_set_id));
  j["weights"] = model.weights;
  j["bias"] = model.bias;
  j["means"] = model.standardization.means;
  j["stds"] = model.standardization.stds;
  nlohmann::ordered_json config;
  config["learning_rate"] = model.config.learning_rate;
  config["l2_lambda"] = model.config.l2_lambda;
  config["max_iterations"] = model.config.max_iterations;
  config["tolerance"] = model.config.tolerance;
  j["config"] = std::move(config);
  j["training_seed"] = model.training_seed;
  j["format_version"] = kModelFormatVersion;
  return j.dump(2) + "\n";
}

TrainedModel model_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    const int version = j.at("format_version").get<int>();
    if (version != kModelFormatVersion) {
      throw Error("model: unsupported format_version " + std::to_string(version));
    }
    TrainedModel m;
    const auto name = j.at("feature_set_id").get<std::string>();
    m.feature_set_id = parse_feature_set(name);
    if (!m.feature_set_id) throw Error("model: unknown feature_set_id '" + name + "'");
    m.weights = j.at("weights").get<std::vector<double>>();
    m.bias = j.at("bias").get<double>();
    m.standardization.means = j.at("means").get<std::vector<double>>();
    m.standardization.stds = j.at("stds").get<std::vector<double>>();
    const auto& c = j.at("config");
    m.config.learning_rate = c.at("learning_rate").get<double>();
    m.config.l2_lambda = c.at("l2_lambda").get<double>();
    m.config.max_iterations = c.at("max_iterations").get<int>();
    m.config.tolerance = c.at("tolerance").get<double>();
    m.training_seed = j.at("training_seed").get<std::int64_t>();
    const std::size_t d = feature_dimension(*m.feature_set_id);
    if (m.weights.size() != d || m.standardization.means.size() != d ||
        m.standardization.stds.size() != d) {
      throw Error("model: vector lengths do not match feature set '" + name + "'");
    }
    for (double s : m.standardization.stds) {
      if (!(s >= kStdFloor)) throw Error("model: std below floor");
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("model: ") + e.what());
  }
}

void save_model(const TrainedModel& model, const std::filesystem::path& path) {
  write_file_atomic(path, model_to_json(model));
}

TrainedModel load_model(const std::filesystem::path& path) {
  return model_from_json(read_file(path));
}

void LogisticRegressionBackbone::fit(const FeatureMatrix& features, std::span<const int> labels) {
  model_ = train_logreg(features, labels, config_);
}

double LogisticRegressionBackbone::predict_proba(std::span<const double> features) const {
  if (!model_) throw PreconditionError("LogisticRegressionBackbone: predict before fit");
  return kdetect::predict_proba(*model_, features);
}

}  // namespace kdetect
