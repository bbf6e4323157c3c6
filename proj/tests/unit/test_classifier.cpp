#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "brute_force.hpp"
#include "kdetect/classifier.hpp"
#include "kdetect/error.hpp"
#include "test_support.hpp"

using namespace kdetect;
using doctest::Approx;

namespace {

FeatureMatrix matrix(const std::vector<std::vector<double>>& rows) {
  FeatureMatrix m;
  for (const auto& r : rows) m.append_row(r);
  return m;
}

struct Problem {
  FeatureMatrix x;
  std::vector<int> y;
};

Problem random_problem(std::mt19937_64& rng, std::size_t n, std::size_t d, double noise = 1.0) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> truth(d);
  for (auto& w : truth) w = g(rng);
  Problem p{FeatureMatrix(0, d), {}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(d);
    for (auto& v : row) v = g(rng) * 3 + 1;
    double z = std::inner_product(row.begin(), row.end(), truth.begin(), 0.0) + noise * g(rng);
    p.x.append_row(row);
    p.y.push_back(z > 0 ? 1 : 0);
  }
  p.y[0] = 1;
  p.y[1] = 0;
  return p;
}

std::vector<double> scores(const TrainedModel& m, const FeatureMatrix& x) {
  std::vector<double> s;
  for (std::size_t i = 0; i < x.rows(); ++i) s.push_back(predict_proba(m, x.row(i)));
  return s;
}

}  // namespace

TEST_CASE("standardization examples") {
  auto p = fit_standardization(matrix({{1, 5}, {3, 5}}));
  CHECK(p.means[0] == 2.0);
  CHECK(p.stds[0] == 1.0);
  CHECK(p.means[1] == 5.0);
  CHECK(p.stds[1] == kStdFloor);
  CHECK_THROWS_AS(fit_standardization(FeatureMatrix(0, 3)), PreconditionError);
}

TEST_CASE("standardization matches a two pass computation") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-10, 10);
  FeatureMatrix m(20, 5);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 5; ++j) m(i, j) = u(rng);
  auto p = fit_standardization(m);
  for (std::size_t j = 0; j < 5; ++j) {
    long double mean = 0;
    for (std::size_t i = 0; i < 20; ++i) mean += m(i, j);
    mean /= 20;
    long double var = 0;
    for (std::size_t i = 0; i < 20; ++i) var += (m(i, j) - mean) * (m(i, j) - mean);
    CHECK(std::abs(p.means[j] - static_cast<double>(mean)) <= 1e-12);
    CHECK(std::abs(p.stds[j] - static_cast<double>(std::sqrt(var / 20))) <= 1e-12);
  }
  auto z = standardize(m, p);
  auto q = fit_standardization(z);
  for (std::size_t j = 0; j < 5; ++j) {
    CHECK(std::abs(q.means[j]) <= 1e-9);
    CHECK(std::abs(q.stds[j] - 1.0) <= 1e-9);
  }
}

TEST_CASE("one dimensional separable data") {
  FeatureMatrix x;
  std::vector<int> y;
  for (int i = 0; i < 10; ++i) {
    x.append_row(std::vector<double>{1.0});
    y.push_back(1);
    x.append_row(std::vector<double>{-1.0});
    y.push_back(0);
  }
  auto m = train_logreg(x, y, TrainConfig{});
  CHECK(m.weights[0] > 0);
  CHECK(predict_proba(m, std::vector<double>{1.0}) > 0.5);
  CHECK(predict_proba(m, std::vector<double>{-1.0}) < 0.5);
}

TEST_CASE("zero iterations leave the zero model") {
  std::mt19937_64 rng(43);
  auto p = random_problem(rng, 30, 3);
  TrainConfig c;
  c.max_iterations = 0;
  auto m = train_logreg(p.x, p.y, c);
  for (double w : m.weights) CHECK(w == 0.0);
  CHECK(m.bias == 0.0);
  for (double s : scores(m, p.x)) CHECK(s == 0.5);
}

TEST_CASE("training errors") {
  auto x = matrix({{1}, {2}, {3}});
  CHECK_THROWS_AS(train_logreg(x, std::vector<int>{1, 1, 1}, TrainConfig{}), TrainingError);
  CHECK_THROWS_AS(train_logreg(x, std::vector<int>{1, 0}, TrainConfig{}), PreconditionError);
  CHECK_THROWS_AS(train_logreg(x, std::vector<int>{1, 0, 1}, TrainConfig{}, FeatureSetId::kSpacing, 0),
                  PreconditionError);
  TrainConfig bad;
  bad.learning_rate = 0;
  CHECK_THROWS_AS(train_logreg(x, std::vector<int>{1, 0, 1}, bad), PreconditionError);
}

TEST_CASE("analytic gradient matches finite differences") {
  std::mt19937_64 rng(47);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    auto p = random_problem(rng, 10, 5);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < 10; ++i) rows.emplace_back(p.x.row(i).begin(), p.x.row(i).end());
    std::vector<double> w(5);
    for (auto& v : w) v = g(rng) * 0.5;
    const double b = g(rng) * 0.5;
    auto analytic = logistic_loss_gradient(p.x, p.y, w, b, 1.0);
    auto numeric = oracle::numeric_gradient(rows, p.y, w, b, 1.0, 1e-5);
    CHECK(analytic.loss == Approx(oracle::logistic_loss(rows, p.y, w, b, 1.0)).epsilon(1e-12));
    CHECK(logistic_loss(p.x, p.y, w, b, 1.0) == Approx(analytic.loss).epsilon(1e-14));
    for (std::size_t j = 0; j <= 5; ++j) {
      double a = j < 5 ? analytic.weight_gradient[j] : analytic.bias_gradient;
      double rel = std::abs(a - numeric[j]) / std::max({std::abs(a), std::abs(numeric[j]), 1e-8});
      CHECK(rel < 1e-4);
    }
  }
}

TEST_CASE("training loss never increases") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    auto p = random_problem(rng, 60, 4, 2.0);
    TrainingTrace trace;
    train_logreg(p.x, p.y, TrainConfig{}, &trace);
    REQUIRE(trace.losses.size() == static_cast<std::size_t>(trace.iterations) + 1);
    CHECK(trace.losses.front() == Approx(std::log(2.0)).epsilon(1e-15));
    for (std::size_t i = 1; i < trace.losses.size(); ++i) CHECK(trace.losses[i] <= trace.losses[i - 1]);
    CHECK(trace.final_loss() < std::log(2.0));
  }
}

TEST_CASE("training is deterministic") {
  std::mt19937_64 rng(59);
  auto p = random_problem(rng, 50, 5);
  auto a = train_logreg(p.x, p.y, TrainConfig{}, FeatureSetId::kPunctuation, 3);
  auto b = train_logreg(p.x, p.y, TrainConfig{}, FeatureSetId::kPunctuation, 3);
  CHECK(a == b);
  CHECK(model_to_json(a) == model_to_json(b));
}

TEST_CASE("positive column scaling keeps the training ranking") {
  std::mt19937_64 rng(61);
  auto p = random_problem(rng, 40, 3, 3.0);
  auto scaled = p.x;
  const double factors[] = {7.5, 0.01, 300.0};
  for (std::size_t i = 0; i < scaled.rows(); ++i)
    for (std::size_t j = 0; j < 3; ++j) scaled(i, j) *= factors[j];
  auto a = scores(train_logreg(p.x, p.y, TrainConfig{}), p.x);
  auto b = scores(train_logreg(scaled, p.y, TrainConfig{}), scaled);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(b[i] == Approx(a[i]).epsilon(1e-9));
    for (std::size_t k = 0; k < a.size(); ++k)
      if (std::abs(a[i] - a[k]) > 1e-9) CHECK((a[i] < a[k]) == (b[i] < b[k]));
  }
}

TEST_CASE("probability range and saturation") {
  TrainedModel m;
  m.weights = {0.0, 0.0};
  m.standardization = {{0, 0}, {1, 1}};
  CHECK(predict_proba(m, std::vector<double>{3, -2}) == 0.5);
  m.bias = 50;
  double p = predict_proba(m, std::vector<double>{0, 0});
  CHECK(p > 1 - 1e-9);
  CHECK(p < 1.0);
  m.bias = -1000;
  CHECK(predict_proba(m, std::vector<double>{0, 0}) > 0.0);
  m.bias = 1000;
  CHECK(predict_proba(m, std::vector<double>{0, 0}) < 1.0);
  CHECK_THROWS_AS(predict_proba(m, std::vector<double>{0}), PreconditionError);
}

TEST_CASE("ensemble averaging") {
  CHECK(ensemble_proba(std::vector<double>{0.2, 0.4, 0.9}) == Approx(0.5).epsilon(1e-15));
  CHECK(ensemble_proba(std::vector<double>{0.7}) == 0.7);
  CHECK_THROWS_AS(ensemble_proba(std::vector<double>{}), PreconditionError);
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> v(10);
    for (auto& x : v) x = u(rng);
    double manual = 0;
    for (double x : v) manual += x;
    manual /= 10;
    double e = ensemble_proba(v);
    CHECK(std::abs(e - manual) <= 1e-12);
    CHECK(e >= *std::min_element(v.begin(), v.end()));
    CHECK(e <= *std::max_element(v.begin(), v.end()));
  }
}

TEST_CASE("model json round trip") {
  std::mt19937_64 rng(71);
  auto p = random_problem(rng, 30, 5);
  auto m = train_logreg(p.x, p.y, TrainConfig{}, FeatureSetId::kPosNgram, 4);
  auto text = model_to_json(m);
  for (const char* key : {"feature_set_id", "weights", "bias", "means", "stds", "config",
                          "training_seed", "format_version"})
    CHECK(text.find(std::string("\"") + key + "\"") != std::string::npos);
  CHECK(model_from_json(text) == m);
  auto dir = testing::scratch_dir("model");
  save_model(m, dir / "m.json");
  CHECK(load_model(dir / "m.json") == m);

  auto wrong = text;
  wrong.replace(wrong.find("pos_ngram"), 9, "spacing");
  CHECK_THROWS_AS(model_from_json(wrong), Error);
  CHECK_THROWS_AS(model_from_json("{}"), Error);
}

TEST_CASE("logistic regression backbone") {
  std::mt19937_64 rng(73);
  auto p = random_problem(rng, 30, 2);
  LogisticRegressionBackbone backbone{TrainConfig{}};
  CHECK_THROWS_AS(backbone.predict_proba(p.x.row(0)), PreconditionError);
  Backbone& b = backbone;
  b.fit(p.x, p.y);
  REQUIRE(backbone.model().has_value());
  CHECK(b.predict_proba(p.x.row(3)) == predict_proba(*backbone.model(), p.x.row(3)));
}
