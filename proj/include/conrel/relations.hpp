#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "conrel/errors.hpp"
#include "conrel/filter.hpp"

namespace conrel {

// TF-IDF vector over a constraint sentence's content stems (signal-hit tokens
// excluded); idf is smoothed so no weight collapses to zero.
struct SentenceVector {
  std::string sentence_id;
  std::map<std::string, double> weights;
  double norm = 0.0;
};

struct Thresholds {
  double redundant = 0.80;
  double subsumed = 0.55;
  double conflict = 0.70;
  double containment_min = 0.90;

  void validate() const {
    if (!(subsumed > 0.0 && subsumed <= conflict && conflict <= 1.0))
      throw config_error("thresholds must satisfy 0 < subsumed <= conflict <= 1");
    if (!(subsumed <= redundant && redundant <= 1.0))
      throw config_error("thresholds must satisfy subsumed <= redundant <= 1");
    if (!(containment_min > 0.0 && containment_min <= 1.0))
      throw config_error("containment_min must be in (0, 1]");
  }
};

enum class RelationKind { redundant, subsumed, conflicting };

inline std::string_view to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::redundant: return "redundant";
    case RelationKind::subsumed: return "subsumed";
    case RelationKind::conflicting: return "conflicting";
  }
  return "";
}

enum class SubsumptionDirection { a_subsumed_by_b, b_subsumed_by_a };

inline std::string_view to_string(SubsumptionDirection d) {
  return d == SubsumptionDirection::a_subsumed_by_b ? "a_subsumed_by_b" : "b_subsumed_by_a";
}

// Pair of constraint sentences, stored with a < b; `direction` says which
// side is the subsumed one (subsumed pairs only).
struct Relation {
  RelationKind kind = RelationKind::redundant;
  std::string a;
  std::string b;
  double similarity = 0.0;
  std::optional<SubsumptionDirection> direction;
};

enum class PairScope { all_pairs, cross_document_only };

// tf = stem count within the sentence, idf = ln((1+N)/(1+df)) + 1 with df
// taken over the whole constraint list.
inline std::vector<SentenceVector> vectorize(const std::vector<ConstraintSentence>& constraints) {
  std::vector<std::map<std::string, int>> counts(constraints.size());
  std::map<std::string, std::size_t> df;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    for (const auto& s : content_stems_excluding_signals(constraints[i])) ++counts[i][s];
    for (const auto& [s, n] : counts[i]) ++df[s];
  }
  const double n = static_cast<double>(constraints.size());
  std::vector<SentenceVector> vectors;
  vectors.reserve(constraints.size());
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    SentenceVector v;
    v.sentence_id = constraints[i].id();
    double sq = 0.0;
    for (const auto& [s, count] : counts[i]) {
      const double idf = std::log((1.0 + n) / (1.0 + static_cast<double>(df.at(s)))) + 1.0;
      const double w = static_cast<double>(count) * idf;
      v.weights.emplace(s, w);
      sq += w * w;
    }
    v.norm = std::sqrt(sq);
    vectors.push_back(std::move(v));
  }
  return vectors;
}

// Cosine similarity; 0 when either vector is empty. Clamped so rounding can
// never push it past 1.
inline double similarity(const SentenceVector& u, const SentenceVector& v) {
  if (u.norm == 0.0 || v.norm == 0.0) return 0.0;
  const auto& small = u.weights.size() <= v.weights.size() ? u : v;
  const auto& large = u.weights.size() <= v.weights.size() ? v : u;
  double dot = 0.0;
  for (const auto& [s, w] : small.weights) {
    const auto it = large.weights.find(s);
    if (it != large.weights.end()) dot += w * it->second;
  }
  return std::min(1.0, dot / (u.norm * v.norm));
}

namespace detail {

inline std::set<std::string> content_stem_set(const ConstraintSentence& cs) {
  return {cs.tokenized.content_stems.begin(), cs.tokenized.content_stems.end()};
}

}  // namespace detail

// Precedence: conflicting (similar, opposite polarity), then redundant, then
// subsumed (similar plus near-containment of the smaller content-stem set in
// the larger one). At most one kind per pair.
inline std::optional<Relation> classify_pair(const ConstraintSentence& a,
                                             const ConstraintSentence& b, double sim,
                                             const Thresholds& thresholds) {
  const bool a_first = a.id() < b.id();
  const ConstraintSentence& first = a_first ? a : b;
  const ConstraintSentence& second = a_first ? b : a;

  if (sim >= thresholds.conflict && a.polarity != b.polarity)
    return Relation{RelationKind::conflicting, first.id(), second.id(), sim, std::nullopt};
  if (sim >= thresholds.redundant)
    return Relation{RelationKind::redundant, first.id(), second.id(), sim, std::nullopt};
  if (sim >= thresholds.subsumed) {
    const auto first_set = detail::content_stem_set(first);
    const auto second_set = detail::content_stem_set(second);
    // the smaller set is the candidate subsumed side; ties go to `first`
    const auto& small = second_set.size() < first_set.size() ? second_set : first_set;
    const auto& large = second_set.size() < first_set.size() ? first_set : second_set;
    if (small.empty()) return std::nullopt;
    std::size_t shared = 0;
    for (const auto& s : small)
      if (large.contains(s)) ++shared;
    const double containment = static_cast<double>(shared) / static_cast<double>(small.size());
    if (containment >= thresholds.containment_min) {
      const auto direction = second_set.size() < first_set.size()
                                 ? SubsumptionDirection::b_subsumed_by_a
                                 : SubsumptionDirection::a_subsumed_by_b;
      return Relation{RelationKind::subsumed, first.id(), second.id(), sim, direction};
    }
  }
  return std::nullopt;
}

// Classifies every unordered pair in scope; cross_document_only restricts to
// pairs from different documents. Output is sorted by (kind, a, b).
inline std::vector<Relation> mine_relations(const std::vector<ConstraintSentence>& constraints,
                                            const Thresholds& thresholds, PairScope scope) {
  thresholds.validate();
  const auto vectors = vectorize(constraints);
  std::vector<Relation> relations;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    for (std::size_t j = i + 1; j < constraints.size(); ++j) {
      if (scope == PairScope::cross_document_only &&
          constraints[i].doc() == constraints[j].doc())
        continue;
      const double sim = similarity(vectors[i], vectors[j]);
      if (auto relation = classify_pair(constraints[i], constraints[j], sim, thresholds))
        relations.push_back(std::move(*relation));
    }
  }
  std::sort(relations.begin(), relations.end(), [](const Relation& x, const Relation& y) {
    if (x.kind != y.kind) return static_cast<int>(x.kind) < static_cast<int>(y.kind);
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  return relations;
}

}  // namespace conrel
