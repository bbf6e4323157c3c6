#include <doctest.h>

#include <random>

#include "brute_force.hpp"
#include "kdetect/spacing.hpp"
#include "test_support.hpp"

using namespace kdetect;
using doctest::Approx;

TEST_CASE("mmn-bn spacing examples") {
  const auto& tm = testing::bareun();
  auto spaced = testing::document({"사과/NNG 두/MMN 개/NNB+를/JKO 먹/VV+다/EF"});
  auto joined = testing::document({"사과/NNG 두/MMN+개/NNB+를/JKO 먹/VV+다/EF"});
  CHECK(mmn_bn_space_ratio(spaced, tm) == 1.0);
  CHECK(mmn_bn_space_ratio(joined, tm) == 0.0);
  auto none = testing::document({"나/NP+는/JX 가/VV+ㄴ다/EF"});
  CHECK(mmn_bn_space_ratio(none, tm) == 0.0);
  CHECK(bn_space_ratio(none, tm) == 0.0);
  CHECK(vx_space_ratio(none, tm) == 0.0);
}

TEST_CASE("vx spacing ignores the a-eo plus ji pair") {
  const auto& tm = testing::bareun();
  auto d = testing::document({"좋/VA+아/EC+지/VX+다/EF 읽/VV+어/EC 보/VX+다/EF"});
  CHECK(vx_space_ratio(d, tm) == 1.0);
  auto only_excluded = testing::document({"좋/VA+아/EC+지/VX+다/EF"});
  CHECK(vx_space_ratio(only_excluded, tm) == 0.0);
  CHECK(unspaced_vx_diversity(only_excluded, tm) == 0.0);
}

TEST_CASE("spacing ratios pool pairs across sentences") {
  const auto& tm = testing::bareun();
  auto d = testing::document({"두/MMN 개/NNB", "세/MMN+명/NNB", "네/MMN 권/NNB"});
  CHECK(mmn_bn_space_ratio(d, tm) == Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("sentence-initial tokens form no pair") {
  const auto& tm = testing::bareun();
  auto d = testing::document({"개/NNB+가/JKS 있/VV+다/EF", "보/VX+다/EF"});
  CHECK(bn_space_ratio(d, tm) == 0.0);
  CHECK(vx_space_ratio(d, tm) == 0.0);
}

TEST_CASE("eojeol diversity and unspaced vx diversity") {
  auto d = testing::document({"나/NP+는/JX 너/NP+는/JX 가/VV"});
  CHECK(eojeol_pos_diversity(d) == Approx(2.0 / 3.0).epsilon(1e-15));
  const auto& tm = testing::bareun();
  auto v = testing::document({"가/VV+고/EC+싶/VX 하/VV+고/EC+싶/VX 먹/VV+어/EC+보/VX"});
  CHECK(unspaced_vx_diversity(v, tm) == Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("spacing features match the frozen fixture values") {
  for (const char* name : {"spacing_small", "mini_corpus"}) {
    auto corpus = load_corpus(testing::fixture(std::string(name) + ".jsonl"));
    auto expected = testing::load_json(std::string(name) + ".expected.json");
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto& e = expected["documents"][i]["spacing"];
      const auto& d = corpus.documents[i];
      CAPTURE(d.id);
      auto f = spacing_feature_vector(d, testing::bareun());
      CHECK(f.mmn_bn_space_ratio == Approx(e["mmn_bn_space_ratio"].get<double>()).epsilon(1e-12));
      CHECK(f.bn_space_ratio == Approx(e["bn_space_ratio"].get<double>()).epsilon(1e-12));
      CHECK(f.vx_space_ratio == Approx(e["vx_space_ratio"].get<double>()).epsilon(1e-12));
      CHECK(eojeol_pos_diversity(d) == Approx(e["eojeol_pos_diversity"].get<double>()).epsilon(1e-12));
      CHECK(unspaced_vx_diversity(d, testing::bareun()) ==
            Approx(e["unspaced_vx_diversity"].get<double>()).epsilon(1e-12));
    }
  }
}

TEST_CASE("spacing features agree with the brute force oracle on random documents") {
  std::mt19937_64 rng(3);
  const auto& tm = testing::bareun();
  for (int i = 0; i < 300; ++i) {
    auto d = testing::random_document(rng, 40, "r");
    auto o = oracle::spacing(oracle::regroup(d, tm), tm);
    auto f = spacing_feature_vector(d, tm);
    CHECK(std::abs(f.mmn_bn_space_ratio - o.mmn_bn) <= 1e-12);
    CHECK(std::abs(f.bn_space_ratio - o.bn) <= 1e-12);
    CHECK(std::abs(f.vx_space_ratio - o.vx) <= 1e-12);
    CHECK(std::abs(eojeol_pos_diversity(d) - o.eojeol_diversity) <= 1e-12);
    CHECK(std::abs(unspaced_vx_diversity(d, tm) - o.unspaced_vx_diversity) <= 1e-12);
    for (double v : {f.mmn_bn_space_ratio, f.bn_space_ratio, f.vx_space_ratio}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("merging every eojeol drives spacing ratios to zero") {
  std::mt19937_64 rng(5);
  const auto& tm = testing::bareun();
  for (int i = 0; i < 100; ++i) {
    auto d = testing::random_document(rng, 40, "r");
    for (auto& s : d.sentences)
      for (auto& t : s.tokens) t.eojeol_index = 0;
    auto f = spacing_feature_vector(d, tm);
    CHECK(f.mmn_bn_space_ratio == 0.0);
    CHECK(f.bn_space_ratio == 0.0);
    CHECK(f.vx_space_ratio == 0.0);
  }
}
