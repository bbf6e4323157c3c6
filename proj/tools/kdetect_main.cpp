#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kdetect/commands.hpp"
#include "kdetect/error.hpp"

namespace {

using kdetect::cli::RunConfig;

// Flags shared by the corpus-driven subcommands. Values given on the command
// line override the --config file.
struct CommonFlags {
  std::string config_path;
  std::string corpus;
  std::string tagmap;
  std::string feature_set;
  std::string genre;
  std::string seeds;
  std::string out;
  double learning_rate = 0.0;
  double l2_lambda = 0.0;
  int max_iterations = 0;
  double tolerance = 0.0;
  std::string train_generator;
  std::string test_generators;
  double train_human_fraction = 0.0;
};

void add_common(CLI::App* app, CommonFlags& f, bool training) {
  app->add_option("--config", f.config_path, "JSON run configuration");
  app->add_option("--corpus", f.corpus, "corpus JSONL");
  app->add_option("--tagmap", f.tagmap, "tag-map JSON file or preset (bareun, kkma, synthetic)");
  app->add_option("--feature-set", f.feature_set, "spacing | pos_ngram | punctuation | all");
  app->add_option("--genre", f.genre, "essay | poetry | paper_abstract");
  app->add_option("--seeds", f.seeds, "comma-separated seeds, e.g. 0,1,2,3,4");
  app->add_option("--out", f.out, "output directory");
  if (!training) return;
  app->add_option("--learning-rate", f.learning_rate, "gradient-descent step size");
  app->add_option("--l2", f.l2_lambda, "L2 strength");
  app->add_option("--max-iterations", f.max_iterations, "iteration cap");
  app->add_option("--tolerance", f.tolerance, "stop when the loss drops by less than this");
}

bool was_set(const CLI::App* app, const std::string& name) {
  const auto* opt = app->get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

RunConfig resolve(const CLI::App* app, const CommonFlags& f) {
  RunConfig c;
  if (!f.config_path.empty()) c = kdetect::cli::load_run_config(f.config_path);
  if (!f.corpus.empty()) c.corpus_path = f.corpus;
  if (!f.tagmap.empty()) c.tagmap = f.tagmap;
  if (!f.feature_set.empty()) c.feature_set = f.feature_set;
  if (!f.genre.empty()) {
    c.genre = kdetect::parse_genre(f.genre);
    if (!c.genre) throw kdetect::Error("unknown genre '" + f.genre + "'");
  }
  if (!f.seeds.empty()) c.seeds = kdetect::cli::parse_seed_list(f.seeds);
  if (!f.out.empty()) c.out_dir = f.out;
  if (was_set(app, "--learning-rate")) c.train.learning_rate = f.learning_rate;
  if (was_set(app, "--l2")) c.train.l2_lambda = f.l2_lambda;
  if (was_set(app, "--max-iterations")) c.train.max_iterations = f.max_iterations;
  if (was_set(app, "--tolerance")) c.train.tolerance = f.tolerance;
  if (!f.train_generator.empty()) c.train_generator = f.train_generator;
  if (!f.test_generators.empty()) {
    c.test_generators.clear();
    std::string item;
    for (char ch : f.test_generators + ",") {
      if (ch == ',') {
        if (!item.empty()) c.test_generators.push_back(item);
        item.clear();
      } else {
        item += ch;
      }
    }
  }
  if (was_set(app, "--train-fraction")) c.train_human_fraction = f.train_human_fraction;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stylometric detector for LLM-generated Korean text"};
  app.require_subcommand(1);

  CommonFlags featurize_flags, train_flags, evaluate_flags, analyze_flags;
  auto* featurize = app.add_subcommand("featurize", "write per-document feature table");
  add_common(featurize, featurize_flags, false);
  auto* train = app.add_subcommand("train", "train logistic-regression models");
  add_common(train, train_flags, true);
  auto* evaluate = app.add_subcommand("evaluate", "unseen-generator AUC-ROC evaluation");
  add_common(evaluate, evaluate_flags, true);
  evaluate->add_option("--train-generator", evaluate_flags.train_generator, "generator used for training");
  evaluate->add_option("--test-generators", evaluate_flags.test_generators,
                       "comma-separated unseen generators (default: all others)");
  evaluate->add_option("--train-fraction", evaluate_flags.train_human_fraction,
                       "share of human documents used for training");
  auto* analyze = app.add_subcommand("analyze", "comma, POS and lexical-diversity tables");
  add_common(analyze, analyze_flags, false);

  kdetect::cli::DetectConfig detect_config;
  std::vector<std::string> model_paths;
  std::string detect_corpus, detect_features, detect_tagmap, detect_out;
  auto* detect = app.add_subcommand("detect", "score documents with one or more models");
  detect->add_option("--model", model_paths, "model JSON (repeat to ensemble)")->required();
  detect->add_option("--corpus", detect_corpus, "corpus JSONL");
  detect->add_option("--features", detect_features, "feature CSV from `featurize`");
  detect->add_option("--tagmap", detect_tagmap, "tag-map JSON file or preset");
  detect->add_option("--out", detect_out, "output directory (default: stdout)");

  kdetect::cli::SynthConfig synth_config;
  std::string profile_a, profile_b, synth_out;
  auto* synth = app.add_subcommand("synth", "generate a synthetic tagged corpus");
  synth->add_option("--profile-a", profile_a, "human StyleProfile JSON");
  synth->add_option("--profile-b", profile_b, "LLM StyleProfile JSON");
  synth->add_option("--preset", synth_config.preset, "essay | ood");
  synth->add_option("--n", synth_config.n_per_class, "documents per class");
  synth->add_option("--seed", synth_config.seed, "seed for presets");
  synth->add_option("--out", synth_out, "output JSONL (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (featurize->parsed()) {
      kdetect::cli::cmd_featurize(resolve(featurize, featurize_flags), std::cout, std::cerr);
    } else if (train->parsed()) {
      kdetect::cli::cmd_train(resolve(train, train_flags), std::cout, std::cerr);
    } else if (evaluate->parsed()) {
      kdetect::cli::cmd_evaluate(resolve(evaluate, evaluate_flags), std::cout, std::cerr);
    } else if (analyze->parsed()) {
      kdetect::cli::cmd_analyze(resolve(analyze, analyze_flags), std::cout, std::cerr);
    } else if (detect->parsed()) {
      for (const auto& p : model_paths) detect_config.model_paths.emplace_back(p);
      detect_config.corpus_path = detect_corpus;
      detect_config.features_path = detect_features;
      if (!detect_tagmap.empty()) detect_config.tagmap = detect_tagmap;
      detect_config.out_dir = detect_out;
      kdetect::cli::cmd_detect(detect_config, std::cout, std::cerr);
    } else if (synth->parsed()) {
      synth_config.profile_a = profile_a;
      synth_config.profile_b = profile_b;
      synth_config.out_path = synth_out;
      kdetect::cli::cmd_synth(synth_config, std::cout, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
