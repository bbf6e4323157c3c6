#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kdetect/features.hpp"

namespace kdetect {

inline constexpr double kStdFloor = 1e-8;
inline constexpr int kModelFormatVersion = 1;

struct StandardizationParams {
  std::vector<double> means;
  std::vector<double> stds;

  std::size_t dimension() const { return means.size(); }
  std::vector<double> apply(std::span<const double> x) const;

  bool operator==(const StandardizationParams&) const = default;
};

// Per-column mean and population standard deviation (divisor N), std floored
// at kStdFloor. Throws PreconditionError on an empty matrix.
StandardizationParams fit_standardization(const FeatureMatrix& features);
FeatureMatrix standardize(const FeatureMatrix& features, const StandardizationParams& params);

struct TrainConfig {
  double learning_rate = 0.1;
  double l2_lambda = 1.0;
  int max_iterations = 5000;
  double tolerance = 1e-8;  // stop once the loss decreases by less than this

  void validate() const;
  bool operator==(const TrainConfig&) const = default;
};

struct TrainedModel {
  std::optional<FeatureSetId> feature_set_id;
  std::vector<double> weights;
  double bias = 0.0;
  StandardizationParams standardization;
  TrainConfig config;
  std::int64_t training_seed = 0;

  std::size_t dimension() const { return weights.size(); }
  bool operator==(const TrainedModel&) const = default;
};

// Loss value after every accepted gradient step; losses[0] is the loss at
// the zero initialization.
struct TrainingTrace {
  std::vector<double> losses;
  int iterations = 0;
  double final_loss() const { return losses.empty() ? 0.0 : losses.back(); }
};

struct LossGradient {
  double loss = 0.0;
  std::vector<double> weight_gradient;
  double bias_gradient = 0.0;
};

// Mean cross-entropy plus (l2_lambda / 2N) * |w|^2 on already standardized
// features; the bias is not penalized.
double logistic_loss(const FeatureMatrix& x, std::span<const int> labels,
                     std::span<const double> weights, double bias, double l2_lambda);
LossGradient logistic_loss_gradient(const FeatureMatrix& x, std::span<const int> labels,
                                    std::span<const double> weights, double bias,
                                    double l2_lambda);

// Full-batch gradient descent from zero weights on standardized features.
// A step that would raise the loss is retried with half the learning rate,
// so the loss sequence never increases. Throws TrainingError when only one
// class is present and PreconditionError on shape mismatches.
TrainedModel train_logreg(const FeatureMatrix& features, std::span<const int> labels,
                          const TrainConfig& config, TrainingTrace* trace = nullptr);

// Same, tagging the model with its feature set; the column count must match it.
TrainedModel train_logreg(const FeatureMatrix& features, std::span<const int> labels,
                          const TrainConfig& config, FeatureSetId feature_set,
                          std::int64_t training_seed, TrainingTrace* trace = nullptr);

double sigmoid(double z);

// P(LLM-generated). Throws PreconditionError on a dimension mismatch.
double predict_proba(const TrainedModel& model, std::span<const double> features);

// Arithmetic mean of member probabilities. Throws PreconditionError when empty.
double ensemble_proba(std::span<const double> probabilities);

std::string model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const std::string& text);
void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

// Pluggable detector backbone. Logistic regression is the only shipped one.
class Backbone {
 public:
  virtual ~Backbone() = default;
  virtual void fit(const FeatureMatrix& features, std::span<const int> labels) = 0;
  virtual double predict_proba(std::span<const double> features) const = 0;
};

class LogisticRegressionBackbone : public Backbone {
 public:
  explicit LogisticRegressionBackbone(TrainConfig config) : config_(config) {}

  void fit(const FeatureMatrix& features, std::span<const int> labels) override;
  double predict_proba(std::span<const double> features) const override;

  const std::optional<TrainedModel>& model() const { return model_; }

 private:
  TrainConfig config_;
  std::optional<TrainedModel> model_;
};

}  // namespace kdetect
