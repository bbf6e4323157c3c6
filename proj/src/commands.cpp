#include "kdetect/commands.hpp"

#include <algorithm>
#include <charconv>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "kdetect/analysis.hpp"
#include "kdetect/error.hpp"
#include "kdetect/format.hpp"
#include "kdetect/synth.hpp"
#include "kdetect/tagmap.hpp"

namespace kdetect::cli {

namespace {

Corpus load_selected(const RunConfig& config, std::ostream& diag) {
  if (config.corpus_path.empty()) throw Error("no corpus given (--corpus)");
  WarningList warnings;
  Corpus corpus = load_corpus(config.corpus_path, &warnings);
  for (const auto& w : warnings) diag << "warning: " << w << "\n";
  if (config.genre) {
    corpus = filter_genre(corpus, *config.genre);
    if (corpus.empty()) {
      throw EmptyCorpusError("corpus has no '" + std::string(to_string(*config.genre)) + "' documents");
    }
  }
  return corpus;
}

void require_out_dir(const std::filesystem::path& dir, const char* command) {
  if (dir.empty()) throw Error(std::string(command) + ": an output directory is required (--out)");
}

void emit(const std::filesystem::path& dir, const char* file, const std::string& content,
          std::ostream& out) {
  if (dir.empty()) {
    out << content;
  } else {
    write_file_atomic(dir / file, content);
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::exchange(field, {}));
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

double parse_double(const std::string& text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw Error("features: '" + text + "' is not a number");
  }
  return v;
}

std::vector<std::string> sorted_authors(const Corpus& corpus) {
  std::set<std::string> authors;
  for (const auto& d : corpus.documents) authors.insert(d.author);
  return {authors.begin(), authors.end()};
}

Corpus author_group(const Corpus& corpus, const std::string& author) {
  Corpus out;
  for (const auto& d : corpus.documents) {
    if (d.author == author) out.documents.push_back(d);
  }
  return out;
}

}  // namespace

void apply_run_config_json(RunConfig& c, const std::string& json_text) {
  try {
    const auto j = nlohmann::json::parse(json_text);
    if (j.contains("corpus")) c.corpus_path = j.at("corpus").get<std::string>();
    if (j.contains("tagmap")) c.tagmap = j.at("tagmap").get<std::string>();
    if (j.contains("feature_set")) c.feature_set = j.at("feature_set").get<std::string>();
    if (j.contains("genre") && !j.at("genre").is_null()) {
      const auto name = j.at("genre").get<std::string>();
      c.genre = parse_genre(name);
      if (!c.genre) throw Error("config: unknown genre '" + name + "'");
    }
    if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::int64_t>>();
    if (j.contains("train")) {
      const auto& t = j.at("train");
      c.train.learning_rate = t.value("learning_rate", c.train.learning_rate);
      c.train.l2_lambda = t.value("l2_lambda", c.train.l2_lambda);
      c.train.max_iterations = t.value("max_iterations", c.train.max_iterations);
      c.train.tolerance = t.value("tolerance", c.train.tolerance);
    }
    if (j.contains("out")) c.out_dir = j.at("out").get<std::string>();
    if (j.contains("train_generator")) c.train_generator = j.at("train_generator").get<std::string>();
    if (j.contains("test_generators")) {
      c.test_generators = j.at("test_generators").get<std::vector<std::string>>();
    }
    if (j.contains("train_human_fraction")) {
      c.train_human_fraction = j.at("train_human_fraction").get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("config: ") + e.what());
  }
}

RunConfig load_run_config(const std::filesystem::path& path) {
  RunConfig c;
  apply_run_config_json(c, read_file(path));
  return c;
}

std::vector<FeatureSetId> selected_feature_sets(const std::string& name) {
  if (name == "all") return {kAllFeatureSets.begin(), kAllFeatureSets.end()};
  if (auto id = parse_feature_set(name)) return {*id};
  throw Error("unknown feature set '" + name + "' (spacing, pos_ngram, punctuation, all)");
}

std::vector<std::int64_t> parse_seed_list(const std::string& csv) {
  std::vector<std::int64_t> seeds;
  for (const auto& field : split_csv_line(csv)) {
    std::int64_t v = 0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (field.empty() || ec != std::errc() || ptr != end) throw Error("invalid seed '" + field + "'");
    seeds.push_back(v);
  }
  if (seeds.empty()) throw Error("empty seed list");
  return seeds;
}

std::string featurize_csv(const Corpus& corpus, const std::vector<FeatureSetId>& sets,
                          const CanonicalTagMap& tagmap) {
  std::string out = "id,genre,author,label";
  for (auto id : sets) {
    for (const auto& name : feature_names(id)) out += "," + name;
  }
  out += "\n";
  for (const auto& doc : corpus.documents) {
    out += csv_field(doc.id) + "," + std::string(to_string(doc.genre)) + "," + csv_field(doc.author) +
           "," + std::to_string(doc.label);
    for (auto id : sets) {
      for (double v : featurize(doc, id, tagmap)) out += "," + format_number(v);
    }
    out += "\n";
  }
  return out;
}

void cmd_featurize(const RunConfig& config, std::ostream& out, std::ostream& diag) {
  const auto sets = selected_feature_sets(config.feature_set);
  const auto tagmap = resolve_tagmap(config.tagmap);
  const Corpus corpus = load_selected(config, diag);
  emit(config.out_dir, "features.csv", featurize_csv(corpus, sets, tagmap), out);
}

std::vector<TrainedModel> cmd_train(const RunConfig& config, std::ostream& out, std::ostream& diag) {
  require_out_dir(config.out_dir, "train");
  const auto sets = selected_feature_sets(config.feature_set);
  const auto tagmap = resolve_tagmap(config.tagmap);
  const Corpus corpus = load_selected(config, diag);
  const auto labels = labels_of(corpus);
  const std::int64_t seed = config.seeds.empty() ? 0 : config.seeds.front();
  std::vector<TrainedModel> models;
  for (auto id : sets) {
    TrainingTrace trace;
    auto model = train_logreg(featurize_corpus(corpus, id, tagmap), labels, config.train, id, seed, &trace);
    const auto path = config.out_dir / ("model_" + std::string(to_string(id)) + ".json");
    save_model(model, path);
    out << "feature_set=" << to_string(id) << " iterations=" << trace.iterations
        << " final_loss=" << format_number(trace.final_loss()) << " model=" << path.string() << "\n";
    models.push_back(std::move(model));
  }
  return models;
}

std::vector<EvaluationReport> cmd_evaluate(const RunConfig& config, std::ostream& out,
                                           std::ostream& diag) {
  require_out_dir(config.out_dir, "evaluate");
  const auto sets = selected_feature_sets(config.feature_set);
  const auto tagmap = resolve_tagmap(config.tagmap);
  const Corpus corpus = load_selected(config, diag);

  std::vector<Genre> genres;
  if (config.genre) {
    genres.push_back(*config.genre);
  } else {
    for (auto g : {Genre::kEssay, Genre::kPoetry, Genre::kPaperAbstract}) {
      if (std::any_of(corpus.documents.begin(), corpus.documents.end(),
                      [&](const auto& d) { return d.genre == g; })) {
        genres.push_back(g);
      }
    }
  }

  ProtocolOptions options;
  options.train_generator = config.train_generator;
  options.test_generators = config.test_generators;
  options.train_human_fraction = config.train_human_fraction;

  std::vector<EvaluationReport> reports;
  for (auto genre : genres) {
    const std::string g(to_string(genre));
    std::vector<EvaluationReport> block;
    for (auto id : sets) {
      auto report = run_protocol(corpus, genre, id, tagmap, config.train, config.seeds, options);
      const std::string stem = "report_" + g + "_" + std::string(to_string(id));
      write_file_atomic(config.out_dir / (stem + ".json"), report_to_json(report));
      write_file_atomic(config.out_dir / (stem + ".csv"), report_to_csv(report));
      out << g << " " << to_string(id) << " grand_average=" << format_number(report.grand_average)
          << "\n";
      block.push_back(std::move(report));
    }
    std::string summary = "genre,feature_set";
    for (const auto& t : block.front().targets) summary += "," + csv_field(t);
    summary += ",average\n";
    for (const auto& r : block) {
      summary += g + "," + std::string(to_string(r.feature_set_id));
      for (const auto& t : r.targets) summary += "," + format_number(r.averages.at(t));
      summary += "," + format_number(r.grand_average) + "\n";
    }
    write_file_atomic(config.out_dir / ("summary_" + g + ".csv"), summary);
    for (auto& r : block) reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<Detection> detect_corpus(const std::vector<TrainedModel>& models, const Corpus& corpus,
                                     const CanonicalTagMap& tagmap) {
  if (models.empty()) throw Error("detect: no model given");
  std::vector<Detection> out;
  out.reserve(corpus.size());
  std::vector<double> probs(models.size());
  for (const auto& doc : corpus.documents) {
    for (std::size_t m = 0; m < models.size(); ++m) {
      if (!models[m].feature_set_id) throw Error("detect: model without a feature set");
      probs[m] = predict_proba(models[m], featurize(doc, *models[m].feature_set_id, tagmap));
    }
    const double p = ensemble_proba(probs);
    out.push_back({doc.id, p, detection_label(p)});
  }
  return out;
}

FeatureTable parse_feature_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error("features: empty file");
  const auto header = split_csv_line(line);
  if (header.empty() || header[0] != "id") throw Error("features: first column must be 'id'");
  FeatureTable table;
  std::vector<std::size_t> numeric;
  for (std::size_t i = 1; i < header.size(); ++i) {
    if (header[i] == "genre" || header[i] == "author" || header[i] == "label") continue;
    table.columns.push_back(header[i]);
    numeric.push_back(i);
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw Error("features: line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                  " fields, header has " + std::to_string(header.size()));
    }
    table.ids.push_back(fields[0]);
    std::vector<double> row;
    row.reserve(numeric.size());
    for (auto i : numeric) row.push_back(parse_double(fields[i]));
    table.values.push_back(std::move(row));
  }
  return table;
}

std::vector<Detection> detect_table(const std::vector<TrainedModel>& models,
                                    const FeatureTable& table) {
  if (models.empty()) throw Error("detect: no model given");
  std::vector<std::vector<std::size_t>> columns;
  for (const auto& model : models) {
    if (!model.feature_set_id) throw Error("detect: model without a feature set");
    std::vector<std::size_t> idx;
    for (const auto& name : feature_names(*model.feature_set_id)) {
      auto it = std::find(table.columns.begin(), table.columns.end(), name);
      if (it == table.columns.end()) {
        throw Error("detect: feature-set mismatch: model '" +
                    std::string(to_string(*model.feature_set_id)) + "' needs column '" + name +
                    "' which the feature table lacks");
      }
      idx.push_back(static_cast<std::size_t>(it - table.columns.begin()));
    }
    columns.push_back(std::move(idx));
  }
  std::vector<Detection> out;
  std::vector<double> probs(models.size());
  std::vector<double> x;
  for (std::size_t r = 0; r < table.ids.size(); ++r) {
    for (std::size_t m = 0; m < models.size(); ++m) {
      x.clear();
      for (auto c : columns[m]) x.push_back(table.values[r][c]);
      probs[m] = predict_proba(models[m], x);
    }
    const double p = ensemble_proba(probs);
    out.push_back({table.ids[r], p, detection_label(p)});
  }
  return out;
}

std::string detections_to_csv(const std::vector<Detection>& detections) {
  std::string out = "id,probability,predicted_label\n";
  for (const auto& d : detections) {
    out += csv_field(d.id) + "," + format_number(d.probability) + "," + std::to_string(d.label) + "\n";
  }
  return out;
}

std::vector<Detection> cmd_detect(const DetectConfig& config, std::ostream& out, std::ostream& diag) {
  std::vector<TrainedModel> models;
  for (const auto& p : config.model_paths) models.push_back(load_model(p));
  std::vector<Detection> detections;
  if (!config.features_path.empty()) {
    detections = detect_table(models, parse_feature_csv(read_file(config.features_path)));
  } else {
    if (config.corpus_path.empty()) throw Error("detect: give --corpus or --features");
    WarningList warnings;
    const Corpus corpus = load_corpus(config.corpus_path, &warnings);
    for (const auto& w : warnings) diag << "warning: " << w << "\n";
    detections = detect_corpus(models, corpus, resolve_tagmap(config.tagmap));
  }
  emit(config.out_dir, "detections.csv", detections_to_csv(detections), out);
  return detections;
}

void cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& diag) {
  require_out_dir(config.out_dir, "analyze");
  const auto tagmap = resolve_tagmap(config.tagmap);
  const Corpus corpus = load_selected(config, diag);

  std::string before = "author,tag,occurrences,before_comma,ratio\n";
  std::string pairs = "author,tag_before,tag_after,count,proportion\n";
  std::string dist = "author,category,share\n";
  std::string zipf = "author,rank,frequency,word\n";
  std::string heaps = "author,tokens_seen,vocab_size\n";

  for (const auto& author : sorted_authors(corpus)) {
    const Corpus group = author_group(corpus, author);
    const std::string a = csv_field(author);
    for (const auto& [tag, c] : pos_before_comma_counts(group, tagmap)) {
      before += a + "," + csv_field(tag) + "," + std::to_string(c.occurrences) + "," +
                std::to_string(c.before_comma) + "," +
                format_number(static_cast<double>(c.before_comma) / static_cast<double>(c.occurrences)) +
                "\n";
    }
    const auto pair_counts = comma_pos_pair_counts(group, tagmap);
    if (pair_counts.empty()) {
      diag << "warning: author '" << author << "' has no comma pairs; skipped in comma_pairs.csv\n";
    } else {
      const auto proportions = comma_pos_pair_distribution(group, tagmap);
      for (const auto& [pair, n] : pair_counts) {
        pairs += a + "," + csv_field(pair.first) + "," + csv_field(pair.second) + "," +
                 std::to_string(n) + "," + format_number(proportions.at(pair)) + "\n";
      }
    }
    const auto shares = pos_distribution(group, tagmap);
    for (auto category : kWordTypeCategories) {
      dist += a + "," + std::string(to_string(category)) + "," + format_number(shares.at(category)) + "\n";
    }
    for (const auto& p : zipf_curve(group).points) {
      zipf += a + "," + std::to_string(p.rank) + "," + std::to_string(p.frequency) + "," +
              csv_field(p.word) + "\n";
    }
    for (const auto& p : heaps_curve(group).points) {
      heaps += a + "," + std::to_string(p.tokens_seen) + "," + std::to_string(p.vocab_size) + "\n";
    }
  }
  write_file_atomic(config.out_dir / "pos_before_comma.csv", before);
  write_file_atomic(config.out_dir / "comma_pairs.csv", pairs);
  write_file_atomic(config.out_dir / "pos_distribution.csv", dist);
  write_file_atomic(config.out_dir / "zipf.csv", zipf);
  write_file_atomic(config.out_dir / "heaps.csv", heaps);
  out << "wrote 5 tables to " << config.out_dir.string() << "\n";
}

Corpus cmd_synth(const SynthConfig& config, std::ostream& out, std::ostream& diag) {
  (void)diag;
  Corpus corpus;
  if (!config.preset.empty()) {
    if (config.preset == "essay") {
      corpus = generate_corpus(calibrated_human_profile(config.seed),
                               calibrated_llm_profile("gpt-4o", config.seed + 1), config.n_per_class);
    } else if (config.preset == "ood") {
      corpus = generate_ood_corpus(config.n_per_class, config.n_per_class, config.seed);
    } else {
      throw Error("synth: unknown preset '" + config.preset + "' (essay, ood)");
    }
  } else {
    if (config.profile_a.empty() || config.profile_b.empty()) {
      throw Error("synth: give --preset or both --profile-a and --profile-b");
    }
    corpus = generate_corpus(load_profile(config.profile_a), load_profile(config.profile_b),
                             config.n_per_class);
  }
  if (config.out_path.empty()) {
    write_corpus(corpus, out);
  } else {
    write_corpus(corpus, config.out_path);
  }
  return corpus;
}

}  // namespace kdetect::cli
