#pragma once

// Brute-force reference implementations used to cross-check the library.
// Documents are regrouped into eojeol lists and every quantity is recounted
// from scratch with plain loops; nothing here calls into the feature code.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "kdetect/corpus.hpp"
#include "kdetect/tagmap.hpp"

namespace oracle {

struct Morph {
  std::string surface;
  std::string tag;
  std::string cat;  // canonical category name
};

using Eojeol = std::vector<Morph>;
using OSentence = std::vector<Eojeol>;

struct ODoc {
  std::vector<OSentence> sentences;
};

inline std::string category_name(const kdetect::CanonicalTagMap& tm, const std::string& tag) {
  auto it = tm.mapping().find(tag);
  if (it == tm.mapping().end()) return "OTHER";
  return std::string(kdetect::to_string(it->second));
}

inline ODoc regroup(const kdetect::TaggedDocument& doc, const kdetect::CanonicalTagMap& tm) {
  ODoc out;
  for (const auto& s : doc.sentences) {
    OSentence sent;
    std::size_t last = static_cast<std::size_t>(-1);
    for (const auto& t : s.tokens) {
      if (sent.empty() || t.eojeol_index != last) sent.emplace_back();
      last = t.eojeol_index;
      sent.back().push_back({t.surface, t.tag, category_name(tm, t.tag)});
    }
    out.sentences.push_back(std::move(sent));
  }
  return out;
}

struct Adjacent {
  const Morph* prev;
  const Morph* curr;
  bool spaced;
};

inline std::vector<Adjacent> adjacent_pairs(const OSentence& s) {
  std::vector<Adjacent> out;
  const Morph* prev = nullptr;
  for (const auto& e : s) {
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (prev != nullptr) out.push_back({prev, &e[k], k == 0});
      prev = &e[k];
    }
  }
  return out;
}

inline std::vector<const Morph*> flat(const OSentence& s) {
  std::vector<const Morph*> out;
  for (const auto& e : s)
    for (const auto& m : e) out.push_back(&m);
  return out;
}

inline bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline bool excluded(const kdetect::CanonicalTagMap& tm, const Morph& prev, const Morph& curr) {
  for (const auto& r : tm.exclusion_rules()) {
    if (r.prev_surface_suffixes.empty() || r.curr_surfaces.empty()) continue;
    if (prev.cat != kdetect::to_string(r.prev_category)) continue;
    if (curr.cat != kdetect::to_string(r.curr_category)) continue;
    if (!r.curr_surfaces.count(curr.surface)) continue;
    for (const auto& suf : r.prev_surface_suffixes)
      if (ends_with(prev.surface, suf)) return true;
  }
  return false;
}

inline double frac(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

struct Spacing {
  double mmn_bn = 0, bn = 0, vx = 0, eojeol_diversity = 0, unspaced_vx_diversity = 0;
};

inline Spacing spacing(const ODoc& d, const kdetect::CanonicalTagMap& tm) {
  std::size_t mmn_n = 0, mmn_s = 0, bn_n = 0, bn_s = 0, vx_n = 0, vx_s = 0;
  std::vector<std::string> unspaced;
  std::vector<std::string> signatures;
  for (const auto& s : d.sentences) {
    for (const auto& a : adjacent_pairs(s)) {
      if (a.prev->cat == "MMN" && a.curr->cat == "BN") {
        ++mmn_n;
        mmn_s += a.spaced;
      }
      if (a.curr->cat == "BN" && !tm.bn_trivial_surfaces().count(a.curr->surface)) {
        ++bn_n;
        bn_s += a.spaced;
      }
      if (a.curr->cat == "VX" && !excluded(tm, *a.prev, *a.curr)) {
        ++vx_n;
        vx_s += a.spaced;
        if (!a.spaced) unspaced.push_back(a.curr->surface);
      }
    }
    for (const auto& e : s) {
      std::string sig;
      for (std::size_t k = 0; k < e.size(); ++k) sig += (k ? "+" : "") + e[k].tag;
      signatures.push_back(sig);
    }
  }
  Spacing out;
  out.mmn_bn = frac(mmn_s, mmn_n);
  out.bn = frac(bn_s, bn_n);
  out.vx = frac(vx_s, vx_n);
  out.eojeol_diversity =
      frac(std::set<std::string>(signatures.begin(), signatures.end()).size(), signatures.size());
  out.unspaced_vx_diversity =
      frac(std::set<std::string>(unspaced.begin(), unspaced.end()).size(), unspaced.size());
  return out;
}

inline double ngram_diversity(const ODoc& d, int n) {
  std::vector<std::vector<std::string>> all;
  for (const auto& s : d.sentences) {
    auto toks = flat(s);
    for (std::size_t i = 0; i + n <= toks.size(); ++i) {
      std::vector<std::string> g;
      for (int k = 0; k < n; ++k) g.push_back(toks[i + k]->tag);
      all.push_back(g);
    }
  }
  std::set<std::vector<std::string>> uniq(all.begin(), all.end());
  return frac(uniq.size(), all.size());
}

struct Comma {
  double inclusion = 0, usage = 0, relative_position = 0, segment_length = 0, pair_diversity = 0;
};

inline bool is_sym(const Morph& m) { return m.cat == "COMMA" || m.cat == "SYMBOL"; }

inline Comma comma(const ODoc& d) {
  Comma out;
  if (d.sentences.empty()) return out;
  std::size_t with = 0, rel_n = 0;
  double usage = 0, seg = 0, rel = 0;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& s : d.sentences) {
    auto toks = flat(s);
    std::size_t morphs = 0, commas = 0;
    for (auto* m : toks) {
      if (m->cat == "COMMA") ++commas;
      if (!is_sym(*m)) ++morphs;
    }
    if (commas) ++with;
    usage += frac(commas, morphs);

    std::vector<std::size_t> segments(1, 0);
    double pos_sum = 0;
    std::size_t seen = 0;
    for (std::size_t i = 0; i < toks.size(); ++i) {
      if (toks[i]->cat == "COMMA") {
        pos_sum += frac(seen, morphs);
        segments.push_back(0);
        if (i > 0 && i + 1 < toks.size()) pairs.emplace_back(toks[i - 1]->tag, toks[i + 1]->tag);
      } else if (!is_sym(*toks[i])) {
        ++seen;
        ++segments.back();
      }
    }
    std::size_t nonempty = 0, total = 0;
    for (auto x : segments)
      if (x) {
        ++nonempty;
        total += x;
      }
    seg += frac(total, nonempty);
    if (commas) {
      rel += pos_sum / static_cast<double>(commas);
      ++rel_n;
    }
  }
  const double n = static_cast<double>(d.sentences.size());
  out.inclusion = frac(with, d.sentences.size());
  out.usage = usage / n;
  out.segment_length = seg / n;
  out.relative_position = rel_n ? rel / static_cast<double>(rel_n) : 0.0;
  std::set<std::pair<std::string, std::string>> uniq(pairs.begin(), pairs.end());
  out.pair_diversity = frac(uniq.size(), pairs.size());
  return out;
}

// Corpus tables, recounted over regrouped documents.
struct Tables {
  std::map<std::string, std::pair<std::size_t, std::size_t>> before_comma;  // tag -> (occurrences, before comma)
  std::map<std::pair<std::string, std::string>, std::size_t> comma_pairs;
  std::map<std::string, std::size_t> word_types;
  std::vector<std::string> words;
};

inline Tables tables(const std::vector<ODoc>& docs) {
  Tables t;
  for (const auto& d : docs) {
    for (const auto& s : d.sentences) {
      auto toks = flat(s);
      for (std::size_t i = 0; i < toks.size(); ++i) {
        auto& entry = t.before_comma[toks[i]->tag];
        ++entry.first;
        if (i + 1 < toks.size() && toks[i + 1]->cat == "COMMA") ++entry.second;
        if (toks[i]->cat == "COMMA" && i > 0 && i + 1 < toks.size())
          ++t.comma_pairs[{toks[i - 1]->tag, toks[i + 1]->tag}];
        std::string c = toks[i]->cat;
        if (c == "BN") c = "NOMINAL";
        else if (c == "MMN") c = "MODIFIER";
        else if (c == "VX") c = "PREDICATE";
        else if (c == "COMMA") c = "SYMBOL";
        ++t.word_types[c];
      }
      for (const auto& e : s) {
        std::string w;
        for (const auto& m : e) w += m.surface;
        t.words.push_back(w);
      }
    }
  }
  return t;
}

// (rank, frequency, word) sorted by frequency descending, then word.
inline std::vector<std::tuple<std::size_t, std::size_t, std::string>> zipf(const std::vector<std::string>& words) {
  std::map<std::string, std::size_t> freq;
  for (const auto& w : words) ++freq[w];
  std::vector<std::pair<std::size_t, std::string>> v;
  for (const auto& [w, n] : freq) v.emplace_back(n, w);
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::vector<std::tuple<std::size_t, std::size_t, std::string>> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.emplace_back(i + 1, v[i].first, v[i].second);
  return out;
}

inline std::vector<std::size_t> heaps(const std::vector<std::string>& words) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    bool fresh = true;
    for (std::size_t k = 0; k < i; ++k)
      if (words[k] == words[i]) fresh = false;
    out.push_back((out.empty() ? 0 : out.back()) + fresh);
  }
  return out;
}

// Pairwise AUC: fraction of (positive, negative) pairs ranked correctly, ties count half.
inline double auc_pairwise(std::span<const double> scores, std::span<const int> labels) {
  double wins = 0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != 0) continue;
      ++pairs;
      if (scores[i] > scores[j]) wins += 1;
      else if (scores[i] == scores[j]) wins += 0.5;
    }
  }
  return wins / static_cast<double>(pairs);
}

// Regularized mean cross-entropy on already standardized rows.
inline double logistic_loss(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                            const std::vector<double>& w, double b, double lambda) {
  const double n = static_cast<double>(x.size());
  double total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double z = b;
    for (std::size_t j = 0; j < w.size(); ++j) z += w[j] * x[i][j];
    // log(1 + e^z) - y z, evaluated stably
    double softplus = z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
    total += softplus - y[i] * z;
  }
  double norm = 0;
  for (double v : w) norm += v * v;
  return total / n + lambda / (2 * n) * norm;
}

// Central finite differences of logistic_loss; last entry is the bias derivative.
inline std::vector<double> numeric_gradient(const std::vector<std::vector<double>>& x,
                                            const std::vector<int>& y, std::vector<double> w,
                                            double b, double lambda, double h = 1e-6) {
  std::vector<double> g;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double keep = w[j];
    w[j] = keep + h;
    const double up = logistic_loss(x, y, w, b, lambda);
    w[j] = keep - h;
    const double down = logistic_loss(x, y, w, b, lambda);
    w[j] = keep;
    g.push_back((up - down) / (2 * h));
  }
  g.push_back((logistic_loss(x, y, w, b + h, lambda) - logistic_loss(x, y, w, b - h, lambda)) /
              (2 * h));
  return g;
}

}  // namespace oracle
