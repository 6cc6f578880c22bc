#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "conrel/errors.hpp"
#include "conrel/filter.hpp"
#include "conrel/normalize.hpp"

namespace conrel {

inline constexpr std::string_view kUndefinedGroup = "undefined";

enum class GroupingMethod { keyword, term_frequency, structure };

struct KeywordGroup {
  std::string name;
  std::vector<std::string> phrases;
};

struct GroupSpec {
  GroupingMethod method = GroupingMethod::term_frequency;
  std::vector<KeywordGroup> keyword_groups;  // keyword method, in priority order
  std::size_t k = 5;                         // term_frequency method
};

// Assignment of every constraint sentence to exactly one named group. The
// reserved "undefined" group is always present and always ordered last.
class Partition {
 public:
  explicit Partition(std::vector<std::string> group_names) {
    for (auto& name : group_names) {
      if (name == kUndefinedGroup) continue;
      if (members_.find(name) != members_.end())
        throw config_error("duplicate group name \"" + name + "\"");
      order_.push_back(name);
      members_[std::move(name)];
    }
    order_.emplace_back(kUndefinedGroup);
    members_[std::string(kUndefinedGroup)];
  }

  void assign(const std::string& group, const std::string& sentence_id) {
    members_.at(group).push_back(sentence_id);
    ++total_;
  }

  const std::vector<std::string>& group_order() const { return order_; }

  bool has_group(std::string_view name) const {
    return members_.find(std::string(name)) != members_.end();
  }

  const std::vector<std::string>& members(std::string_view name) const {
    const auto it = members_.find(std::string(name));
    if (it == members_.end())
      throw config_error("unknown group \"" + std::string(name) + "\"");
    return it->second;
  }

  std::size_t size_of(std::string_view name) const { return members(name).size(); }
  std::size_t total() const { return total_; }

 private:
  std::vector<std::string> order_;
  std::map<std::string, std::vector<std::string>> members_;
  std::size_t total_ = 0;
};

// Domain knowledge method: first configured group (in order) whose any phrase
// occurs as a contiguous stem subsequence of the sentence's token stems wins;
// no match lands in "undefined".
inline Partition group_by_keywords(const std::vector<ConstraintSentence>& constraints,
                                   const std::vector<KeywordGroup>& keyword_groups) {
  if (keyword_groups.empty())
    throw config_error("keyword grouping requires at least one keyword group");
  std::vector<std::string> names;
  std::vector<std::vector<std::vector<std::string>>> normalized(keyword_groups.size());
  for (std::size_t g = 0; g < keyword_groups.size(); ++g) {
    names.push_back(keyword_groups[g].name);
    if (keyword_groups[g].phrases.empty())
      throw config_error("keyword group \"" + keyword_groups[g].name + "\" has no phrases");
    for (const auto& phrase : keyword_groups[g].phrases)
      normalized[g].push_back(normalize_phrase(phrase));
  }
  Partition partition(std::move(names));
  for (const auto& cs : constraints) {
    const std::string* target = nullptr;
    for (std::size_t g = 0; g < keyword_groups.size() && target == nullptr; ++g) {
      for (const auto& phrase : normalized[g]) {
        if (contains_stem_phrase(cs.tokenized.token_stems, phrase)) {
          target = &keyword_groups[g].name;
          break;
        }
      }
    }
    partition.assign(target ? *target : std::string(kUndefinedGroup), cs.id());
  }
  return partition;
}

// Term-frequency method: the k highest-document-frequency content stems
// (signal stems excluded, ties lexicographic) become seeds; each sentence goes
// to its maximal tf-idf seed, ties to the higher-ranked seed. idf = ln(N/df).
inline Partition group_by_term_frequency(const std::vector<ConstraintSentence>& constraints,
                                         std::size_t k) {
  if (k < 1) throw config_error("term_frequency grouping requires k >= 1");

  std::map<std::string, std::size_t> df;
  std::vector<std::map<std::string, int>> counts(constraints.size());
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    for (const auto& s : content_stems_excluding_signals(constraints[i])) ++counts[i][s];
    for (const auto& [s, n] : counts[i]) ++df[s];
  }

  std::vector<std::pair<std::string, std::size_t>> ranked(df.begin(), df.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > k) ranked.resize(k);

  std::vector<std::string> seeds;
  for (const auto& [s, n] : ranked) seeds.push_back(s);

  Partition partition({seeds.begin(), seeds.end()});
  const double n_total = static_cast<double>(constraints.size());
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const std::string* best = nullptr;
    double best_weight = 0.0;
    for (std::size_t r = 0; r < seeds.size(); ++r) {
      const auto it = counts[i].find(seeds[r]);
      if (it == counts[i].end()) continue;
      const double idf = std::log(n_total / static_cast<double>(df.at(seeds[r])));
      const double weight = static_cast<double>(it->second) * idf;
      if (best == nullptr || weight > best_weight) {
        best = &seeds[r];
        best_weight = weight;
      }
    }
    partition.assign(best ? *best : std::string(kUndefinedGroup), constraints[i].id());
  }
  return partition;
}

// Sentence-structure method: the approximate addressee — the last up-to-three
// non-stopword stems strictly before the first signal hit — names the group.
inline Partition group_by_structure(const std::vector<ConstraintSentence>& constraints) {
  std::vector<std::string> keys(constraints.size());
  std::vector<std::string> order;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& cs = constraints[i];
    std::size_t first_signal = cs.tokenized.raw_tokens.size();
    for (const auto& hit : cs.signal_hits) first_signal = std::min(first_signal, hit.position);

    std::vector<std::string> stems;
    for (std::size_t t = 0; t < first_signal; ++t)
      if (!cs.tokenized.is_stopword[t]) stems.push_back(cs.tokenized.token_stems[t]);
    if (stems.size() > 3) stems.erase(stems.begin(), stems.end() - 3);

    if (stems.empty()) {
      keys[i] = std::string(kUndefinedGroup);
      continue;
    }
    std::string key = stems[0];
    for (std::size_t s = 1; s < stems.size(); ++s) key += "_" + stems[s];
    keys[i] = key;
    if (seen.insert(key).second) order.push_back(key);
  }
  Partition partition(std::move(order));
  for (std::size_t i = 0; i < constraints.size(); ++i) partition.assign(keys[i], constraints[i].id());
  return partition;
}

inline Partition group_constraints(const std::vector<ConstraintSentence>& constraints,
                                   const GroupSpec& spec) {
  switch (spec.method) {
    case GroupingMethod::keyword:
      return group_by_keywords(constraints, spec.keyword_groups);
    case GroupingMethod::term_frequency:
      return group_by_term_frequency(constraints, spec.k);
    case GroupingMethod::structure:
      return group_by_structure(constraints);
  }
  throw config_error("unknown grouping method");
}

struct Selection {
  std::string name;
  std::vector<std::string> groups;
};

struct ReductionRow {
  std::string selection;
  std::vector<std::string> groups;
  std::size_t relevant = 0;             // sentences in the selected groups
  std::size_t read_with_undefined = 0;  // plus the undefined group
  int reduction_excl_pct = 0;
  int reduction_incl_pct = 0;
};

struct ReductionReport {
  std::vector<ReductionRow> rows;
  std::size_t total = 0;
};

namespace detail {

inline int reduction_pct(std::size_t read, std::size_t total) {
  if (total == 0) return 0;
  const double pct =
      100.0 * (1.0 - static_cast<double>(read) / static_cast<double>(total));
  const int rounded = static_cast<int>(std::floor(pct + 0.5));  // half-up
  return std::clamp(rounded, 0, 100);
}

}  // namespace detail

// Reading-reduction per selection of target groups. Counting "undefined"
// toward a selection is the maximum assumption: every uncategorized sentence
// might belong to it. An empty selection list expands to one row per group
// (plus an "undefined" row when include_undefined_rows is set).
inline ReductionReport reduction_report(const Partition& partition,
                                        std::vector<Selection> selections,
                                        bool include_undefined_rows = false) {
  if (selections.empty()) {
    for (const auto& name : partition.group_order()) {
      if (name == kUndefinedGroup && !include_undefined_rows) continue;
      selections.push_back(Selection{name, {name}});
    }
  }
  ReductionReport report;
  report.total = partition.total();
  const std::size_t undefined_size = partition.size_of(kUndefinedGroup);
  for (auto& selection : selections) {
    std::set<std::string> groups(selection.groups.begin(), selection.groups.end());
    ReductionRow row;
    row.selection = selection.name;
    row.groups.assign(groups.begin(), groups.end());
    for (const auto& g : groups) row.relevant += partition.size_of(g);  // throws on unknown
    row.read_with_undefined =
        row.relevant + (groups.contains(std::string(kUndefinedGroup)) ? 0 : undefined_size);
    row.reduction_excl_pct = detail::reduction_pct(row.relevant, report.total);
    row.reduction_incl_pct = detail::reduction_pct(row.read_with_undefined, report.total);
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace conrel
