#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "conrel/corpus.hpp"
#include "conrel/errors.hpp"
#include "conrel/filter.hpp"
#include "conrel/grouping.hpp"
#include "conrel/relations.hpp"
#include "conrel/wordlists.hpp"

namespace conrel {

struct InputSpec {
  std::filesystem::path path;
  std::string doc_id;
};

// Everything a run needs; defaults reproduce the documented no-knowledge
// behavior (blank-line fragmentation, built-in word lists, term-frequency
// grouping with k = 5, all-pairs mining).
struct RunConfig {
  std::vector<InputSpec> inputs;
  FragmentationRules fragmentation;
  word_set abbreviations = default_abbreviations();
  word_set stopwords = default_stopwords();
  SignalLexicon lexicon;
  GroupSpec grouping;
  Thresholds thresholds;
  PairScope scope = PairScope::all_pairs;
  std::vector<Selection> selections;
  bool report_include_undefined = true;
  std::filesystem::path output_dir;
  bool lossy_decode = false;
};

namespace detail {

inline std::string lowercased(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

inline void expect_keys(const nlohmann::json& j, std::string_view where,
                        std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw config_error("unknown key \"" + key + "\" in " + std::string(where));
  }
}

inline word_set wordlist_field(const nlohmann::json& j, std::string_view name,
                               const std::filesystem::path& base_dir) {
  if (j.is_string()) {
    const std::filesystem::path path = base_dir / j.get<std::string>();
    std::ifstream in(path);
    if (!in) throw config_error(std::string(name) + " file not found: " + path.string());
    return load_wordlist(in);
  }
  if (j.is_array()) {
    word_set out;
    for (const auto& entry : j) out.insert(lowercased(entry.get<std::string>()));
    return out;
  }
  throw config_error(std::string(name) + " must be an array of words or a file path");
}

}  // namespace detail

// Overlays `j` onto `config`. Relative file paths resolve against `base_dir`
// (the directory of the config file; empty for embedded profiles).
inline void apply_config_json(RunConfig& config, const nlohmann::json& j,
                              const std::filesystem::path& base_dir = {}) {
  detail::expect_keys(j, "config",
                      {"inputs", "fragmentation", "abbreviations", "stopwords", "signals",
                       "grouping", "thresholds", "scope", "selections",
                       "report_include_undefined", "output_dir", "lossy_decode"});
  try {
    if (j.contains("inputs")) {
      config.inputs.clear();
      for (const auto& entry : j.at("inputs")) {
        detail::expect_keys(entry, "inputs[]", {"path", "doc_id"});
        InputSpec input;
        input.path = base_dir / entry.at("path").get<std::string>();
        input.doc_id = entry.contains("doc_id") ? entry.at("doc_id").get<std::string>()
                                                : input.path.stem().string();
        config.inputs.push_back(std::move(input));
      }
    }
    if (j.contains("fragmentation")) {
      const auto& f = j.at("fragmentation");
      detail::expect_keys(f, "fragmentation", {"mode", "markers"});
      if (f.contains("mode")) {
        const std::string mode = f.at("mode");
        if (mode == "blank_line") config.fragmentation.mode = FragmentationRules::Mode::blank_line;
        else if (mode == "markers") config.fragmentation.mode = FragmentationRules::Mode::markers;
        else throw config_error("unknown fragmentation mode \"" + mode + "\"");
      }
      if (f.contains("markers"))
        config.fragmentation.marker_patterns = f.at("markers").get<std::vector<std::string>>();
    }
    if (j.contains("abbreviations"))
      config.abbreviations = detail::wordlist_field(j.at("abbreviations"), "abbreviations", base_dir);
    if (j.contains("stopwords"))
      config.stopwords = detail::wordlist_field(j.at("stopwords"), "stopwords", base_dir);
    if (j.contains("signals")) {
      const auto& s = j.at("signals");
      detail::expect_keys(s, "signals", {"phrases", "negators", "window"});
      if (s.contains("phrases")) {
        config.lexicon.phrases.clear();
        for (const auto& p : s.at("phrases"))
          config.lexicon.phrases.push_back(detail::lowercased(p.get<std::string>()));
      }
      if (s.contains("negators")) {
        config.lexicon.negators.clear();
        for (const auto& n : s.at("negators"))
          config.lexicon.negators.push_back(detail::lowercased(n.get<std::string>()));
      }
      if (s.contains("window")) config.lexicon.negation_window = s.at("window").get<std::size_t>();
    }
    if (j.contains("grouping")) {
      const auto& g = j.at("grouping");
      detail::expect_keys(g, "grouping", {"method", "keyword_groups", "k"});
      if (g.contains("method")) {
        const std::string method = g.at("method");
        if (method == "keyword") config.grouping.method = GroupingMethod::keyword;
        else if (method == "term_frequency") config.grouping.method = GroupingMethod::term_frequency;
        else if (method == "structure") config.grouping.method = GroupingMethod::structure;
        else throw config_error("unknown grouping method \"" + method + "\"");
      }
      if (g.contains("keyword_groups")) {
        config.grouping.keyword_groups.clear();
        for (const auto& entry : g.at("keyword_groups")) {
          detail::expect_keys(entry, "keyword_groups[]", {"name", "phrases"});
          KeywordGroup group;
          group.name = entry.at("name").get<std::string>();
          for (const auto& p : entry.at("phrases"))
            group.phrases.push_back(detail::lowercased(p.get<std::string>()));
          config.grouping.keyword_groups.push_back(std::move(group));
        }
      }
      if (g.contains("k")) config.grouping.k = g.at("k").get<std::size_t>();
    }
    if (j.contains("thresholds")) {
      const auto& t = j.at("thresholds");
      detail::expect_keys(t, "thresholds", {"redundant", "subsumed", "conflict", "containment_min"});
      if (t.contains("redundant")) config.thresholds.redundant = t.at("redundant").get<double>();
      if (t.contains("subsumed")) config.thresholds.subsumed = t.at("subsumed").get<double>();
      if (t.contains("conflict")) config.thresholds.conflict = t.at("conflict").get<double>();
      if (t.contains("containment_min"))
        config.thresholds.containment_min = t.at("containment_min").get<double>();
    }
    if (j.contains("scope")) {
      const std::string scope = j.at("scope");
      if (scope == "all_pairs") config.scope = PairScope::all_pairs;
      else if (scope == "cross_document_only") config.scope = PairScope::cross_document_only;
      else throw config_error("unknown relation scope \"" + scope + "\"");
    }
    if (j.contains("selections")) {
      config.selections.clear();
      for (const auto& entry : j.at("selections")) {
        detail::expect_keys(entry, "selections[]", {"name", "groups"});
        Selection selection;
        selection.name = entry.at("name").get<std::string>();
        selection.groups = entry.at("groups").get<std::vector<std::string>>();
        config.selections.push_back(std::move(selection));
      }
    }
    if (j.contains("report_include_undefined"))
      config.report_include_undefined = j.at("report_include_undefined").get<bool>();
    if (j.contains("output_dir"))
      config.output_dir = base_dir / j.at("output_dir").get<std::string>();
    if (j.contains("lossy_decode")) config.lossy_decode = j.at("lossy_decode").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("malformed config: ") + e.what());
  }
}

inline void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw config_error("config file not found: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw config_error("config file " + path.string() + " does not parse: " + e.what());
  }
  apply_config_json(config, j, path.parent_path());
}

// Load-time checks: signal/stopword disjointness, threshold
// ordering, unique ids and group names, existing input files.
inline void validate_config(const RunConfig& config, bool require_inputs) {
  if (require_inputs && config.inputs.empty())
    throw config_error("no input documents given");
  std::set<std::string> doc_ids;
  for (const auto& input : config.inputs) {
    if (input.doc_id.empty()) throw config_error("empty doc_id for " + input.path.string());
    if (input.doc_id.find(':') != std::string::npos)
      throw config_error("doc_id \"" + input.doc_id + "\" must not contain ':'");
    if (!doc_ids.insert(input.doc_id).second)
      throw config_error("duplicate doc_id \"" + input.doc_id + "\"");
    if (!std::filesystem::exists(input.path))
      throw config_error("input file not found: " + input.path.string());
  }

  if (config.fragmentation.mode == FragmentationRules::Mode::markers) {
    if (config.fragmentation.marker_patterns.empty())
      throw config_error("fragmentation mode \"markers\" requires at least one pattern");
    for (const auto& pattern : config.fragmentation.marker_patterns) {
      try {
        std::regex re(pattern, std::regex::ECMAScript);
      } catch (const std::regex_error&) {
        throw config_error("invalid fragmentation marker pattern: " + pattern);
      }
    }
  }

  for (const auto& abbr : config.abbreviations)
    if (abbr.empty() || abbr.back() != '.')
      throw config_error("abbreviation \"" + abbr + "\" must end with '.'");

  if (config.lexicon.phrases.empty()) throw config_error("signal lexicon is empty");
  for (const auto& phrase : config.lexicon.phrases) {
    if (tokenize(phrase).empty())
      throw config_error("signal phrase \"" + phrase + "\" is empty after tokenization");
    if (config.stopwords.contains(phrase))
      throw config_error("signal word \"" + phrase + "\" is also a stopword");
  }
  if (config.lexicon.negation_window < 1)
    throw config_error("negation window must be >= 1");

  config.thresholds.validate();

  if (config.grouping.method == GroupingMethod::keyword) {
    if (config.grouping.keyword_groups.empty())
      throw config_error("keyword grouping requires at least one keyword group");
    std::set<std::string> names;
    for (const auto& group : config.grouping.keyword_groups) {
      if (group.name.empty()) throw config_error("keyword group with empty name");
      if (group.name == kUndefinedGroup)
        throw config_error("group name \"undefined\" is reserved");
      if (!names.insert(group.name).second)
        throw config_error("duplicate group name \"" + group.name + "\"");
      if (group.phrases.empty())
        throw config_error("keyword group \"" + group.name + "\" has no phrases");
      for (const auto& phrase : group.phrases) normalize_phrase(phrase);  // throws when empty
    }
  }
  if (config.grouping.method == GroupingMethod::term_frequency && config.grouping.k < 1)
    throw config_error("term_frequency grouping requires k >= 1");
}

}  // namespace conrel
