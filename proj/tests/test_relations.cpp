#include <catch2/catch.hpp>

#include <cmath>
#include <string>
#include <vector>

#include <conrel/relations.hpp>

#include "helpers.hpp"
#include "oracle.hpp"

using namespace conrel;

namespace {

// the two GDPR direct-marketing sentences
const std::string kMarketingA =
    "Where personal data are processed for the purposes of direct marketing, the data subject "
    "should have the right to object to such processing, including profiling to the extent that "
    "it is related to such direct marketing, whether with regard to initial or further "
    "processing, at any time and free of charge.";
const std::string kMarketingB =
    "Where personal data are processed for direct marketing purposes, the data subject shall "
    "have the right to object at any time to processing of personal data concerning him or her "
    "for such marketing, which includes profiling to the extent that it is related to such "
    "direct marketing.";

Thresholds random_thresholds(testutil::SentenceGen& gen) {
  Thresholds th;
  const double subsumed[] = {0.30, 0.45, 0.55};
  const double spread[] = {0.0, 0.15, 0.30};
  th.subsumed = subsumed[gen.next(3)];
  th.conflict = th.subsumed + spread[gen.next(3)];
  th.redundant = th.subsumed + spread[gen.next(3)];
  th.containment_min = gen.chance(50) ? 0.90 : 0.60;
  return th;
}

}  // namespace

TEST_CASE("vectorize weights content stems with smoothed idf") {
  const auto constraints = testutil::constraints_from({"controller shall comply"});
  const auto vectors = vectorize(constraints);
  REQUIRE(vectors.size() == 1);
  // N = 1, df = 1 -> idf = ln(2/2) + 1 = 1; the signal token carries no weight
  REQUIRE(vectors[0].weights.size() == 2);
  CHECK(vectors[0].weights.at(stem("controller")) == Approx(1.0));
  CHECK(vectors[0].weights.at(stem("comply")) == Approx(1.0));
  CHECK(vectors[0].norm == Approx(std::sqrt(2.0)));
}

TEST_CASE("vectorize gives identical sentences identical vectors") {
  const auto constraints = testutil::constraints_from(
      {"The controller shall keep records.", "The controller shall keep records."});
  const auto vectors = vectorize(constraints);
  REQUIRE(vectors.size() == 2);
  CHECK(vectors[0].weights == vectors[1].weights);
  CHECK(similarity(vectors[0], vectors[1]) == Approx(1.0));
}

TEST_CASE("zero-content sentences have empty vectors and zero similarity") {
  std::vector<TokenizedSentence> sentences = {
      make_tokenized("d:0:0", "d", "you shall", default_stopwords()),
      make_tokenized("d:0:1", "d", "the controller shall comply", default_stopwords()),
  };
  const auto constraints = filter_constraints(sentences, SignalLexicon{});
  REQUIRE(constraints.size() == 2);
  const auto vectors = vectorize(constraints);
  CHECK(vectors[0].weights.empty());
  CHECK(vectors[0].norm == 0.0);
  CHECK(similarity(vectors[0], vectors[1]) == 0.0);
  CHECK(similarity(vectors[0], vectors[0]) == 0.0);
}

TEST_CASE("similarity is symmetric, bounded and 1 on self") {
  testutil::SentenceGen gen(31337);
  const auto constraints = testutil::constraints_from(gen.corpus(12));
  const auto vectors = vectorize(constraints);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].norm > 0.0) CHECK(similarity(vectors[i], vectors[i]) == Approx(1.0));
    for (std::size_t j = 0; j < vectors.size(); ++j) {
      const double s = similarity(vectors[i], vectors[j]);
      CHECK(s == similarity(vectors[j], vectors[i]));
      CHECK(s >= 0.0);
      CHECK(s <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("disjoint stem supports give zero similarity") {
  const auto constraints = testutil::constraints_from(
      {"Controllers shall keep records.", "Processors must erase copies."});
  const auto vectors = vectorize(constraints);
  CHECK(similarity(vectors[0], vectors[1]) == 0.0);
}

TEST_CASE("the direct-marketing pair is redundant under defaults") {
  const auto constraints = testutil::constraints_from({kMarketingA, kMarketingB});
  REQUIRE(constraints.size() == 2);

  const auto vectors = vectorize(constraints);
  const double sim = similarity(vectors[0], vectors[1]);
  // regression fixture, first computed with the naive cosine oracle
  CHECK(sim == Approx(0.826552570698).margin(1e-9));
  CHECK(sim == Approx(oracle::cosine(oracle::vectors(constraints)[0],
                                     oracle::vectors(constraints)[1]))
                   .margin(1e-9));

  const auto relations = mine_relations(constraints, Thresholds{}, PairScope::all_pairs);
  REQUIRE(relations.size() == 1);
  CHECK(relations[0].kind == RelationKind::redundant);
  CHECK_FALSE(relations[0].direction.has_value());
  CHECK(relations[0].a < relations[0].b);
}

TEST_CASE("opposite polarity at high similarity is conflicting") {
  const auto constraints = testutil::constraints_from(
      {"The controller shall keep records.", "The controller shall not keep records."});
  REQUIRE(constraints.size() == 2);
  REQUIRE(constraints[0].polarity != constraints[1].polarity);

  const auto vectors = vectorize(constraints);
  CHECK(similarity(vectors[0], vectors[1]) == Approx(1.0));

  const auto relations = mine_relations(constraints, Thresholds{}, PairScope::all_pairs);
  REQUIRE(relations.size() == 1);
  CHECK(relations[0].kind == RelationKind::conflicting);  // precedence over redundant
}

TEST_CASE("containment plus mid-band similarity is subsumed, short side subsumed") {
  const auto constraints = testutil::constraints_from(
      {"The controller shall keep records.",
       "The controller shall keep records of processing activities carried out."});
  REQUIRE(constraints.size() == 2);

  const auto vectors = vectorize(constraints);
  const double sim = similarity(vectors[0], vectors[1]);
  CHECK(sim == Approx(0.579738671538).margin(1e-9));  // oracle-computed fixture
  REQUIRE(sim >= Thresholds{}.subsumed);
  REQUIRE(sim < Thresholds{}.redundant);

  const auto relations = mine_relations(constraints, Thresholds{}, PairScope::all_pairs);
  REQUIRE(relations.size() == 1);
  CHECK(relations[0].kind == RelationKind::subsumed);
  REQUIRE(relations[0].direction.has_value());
  CHECK(relations[0].a == "doc:0:0");
  CHECK(*relations[0].direction == SubsumptionDirection::a_subsumed_by_b);
}

TEST_CASE("classify_pair returns at most one kind with fixed precedence") {
  const auto constraints = testutil::constraints_from(
      {"The controller shall keep records.", "The controller shall not keep records."});
  const auto vectors = vectorize(constraints);
  const double sim = similarity(vectors[0], vectors[1]);

  Thresholds th;
  th.conflict = 2.0;  // unreachable -> falls through to redundant
  th.redundant = 0.8;
  // (2.0 is outside the validated range; classify_pair itself must not reject)
  const auto relation = classify_pair(constraints[0], constraints[1], sim, th);
  REQUIRE(relation.has_value());
  CHECK(relation->kind == RelationKind::redundant);
}

TEST_CASE("raising thresholds never creates a relation") {
  testutil::SentenceGen gen(555);
  for (int round = 0; round < 20; ++round) {
    const auto constraints = testutil::constraints_from(gen.corpus(14));
    if (constraints.size() < 2) continue;
    Thresholds low;
    Thresholds high;
    high.redundant = 0.95;
    high.subsumed = 0.70;
    high.conflict = 0.90;
    const auto relaxed = mine_relations(constraints, low, PairScope::all_pairs);
    const auto strict = mine_relations(constraints, high, PairScope::all_pairs);
    std::set<std::pair<std::string, std::string>> relaxed_pairs;
    for (const auto& r : relaxed) relaxed_pairs.emplace(r.a, r.b);
    for (const auto& r : strict) CHECK(relaxed_pairs.count({r.a, r.b}) == 1);
  }
}

TEST_CASE("n identical sentences give C(n,2) redundant relations") {
  std::vector<std::string> texts(5, "The controller shall keep records of consent.");
  const auto constraints = testutil::constraints_from(texts);
  REQUIRE(constraints.size() == 5);
  const auto relations = mine_relations(constraints, Thresholds{}, PairScope::all_pairs);
  CHECK(relations.size() == 10);
  for (const auto& r : relations) CHECK(r.kind == RelationKind::redundant);
}

TEST_CASE("cross-document scope drops same-document pairs") {
  auto doc_a = testutil::constraints_from({"The controller shall keep records.",
                                           "The controller shall keep records."},
                                          "a");
  const auto doc_b = testutil::constraints_from({"Processors must erase copies."}, "b");
  auto all = doc_a;
  all.insert(all.end(), doc_b.begin(), doc_b.end());

  const auto cross = mine_relations(all, Thresholds{}, PairScope::cross_document_only);
  CHECK(cross.empty());  // the identical pair shares a document; b is disjoint

  const auto full = mine_relations(all, Thresholds{}, PairScope::all_pairs);
  REQUIRE(full.size() == 1);
  CHECK(full[0].kind == RelationKind::redundant);

  // scope soundness on random two-document corpora
  testutil::SentenceGen gen(808);
  for (int round = 0; round < 10; ++round) {
    auto constraints = testutil::constraints_from(gen.corpus(10), "x");
    const auto more = testutil::constraints_from(gen.corpus(10), "y");
    constraints.insert(constraints.end(), more.begin(), more.end());
    const auto everything = mine_relations(constraints, Thresholds{}, PairScope::all_pairs);
    std::set<std::pair<std::string, std::string>> all_pairs;
    for (const auto& r : everything) all_pairs.emplace(r.a, r.b);
    for (const auto& r :
         mine_relations(constraints, Thresholds{}, PairScope::cross_document_only))
      CHECK(all_pairs.count({r.a, r.b}) == 1);
  }
}

TEST_CASE("mine_relations matches the brute-force oracle pair for pair") {
  testutil::SentenceGen gen(20260808);
  for (int round = 0; round < 60; ++round) {
    auto constraints = testutil::constraints_from(gen.corpus(20), "x");
    if (gen.chance(40)) {
      const auto more = testutil::constraints_from(gen.corpus(8), "y");
      constraints.insert(constraints.end(), more.begin(), more.end());
    }
    const auto th = random_thresholds(gen);
    const auto scope = gen.chance(25) ? PairScope::cross_document_only : PairScope::all_pairs;

    const auto got = mine_relations(constraints, th, scope);
    const auto want = oracle::mine(constraints, th, scope);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].kind == want[i].kind);
      CHECK(got[i].a == want[i].a);
      CHECK(got[i].b == want[i].b);
      CHECK(got[i].similarity == Approx(want[i].similarity).margin(1e-9));
      CHECK(got[i].direction == want[i].direction);
    }

    // similarity agrees with the naive cosine everywhere
    const auto vecs = vectorize(constraints);
    const auto naive = oracle::vectors(constraints);
    for (std::size_t i = 0; i < vecs.size(); ++i)
      for (std::size_t j = i + 1; j < vecs.size(); ++j)
        CHECK(similarity(vecs[i], vecs[j]) ==
              Approx(oracle::cosine(naive[i], naive[j])).margin(1e-9));
  }
}

TEST_CASE("threshold validation rejects bad orderings") {
  Thresholds bad;
  bad.subsumed = 0.9;  // above redundant
  bad.redundant = 0.8;
  bad.conflict = 0.95;
  CHECK_THROWS_AS(bad.validate(), config_error);

  Thresholds zero;
  zero.containment_min = 0.0;
  CHECK_THROWS_AS(zero.validate(), config_error);

  CHECK_NOTHROW(Thresholds{}.validate());
}
