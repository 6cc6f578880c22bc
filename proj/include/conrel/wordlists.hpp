#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "conrel/errors.hpp"

namespace conrel {

using word_set = std::set<std::string, std::less<>>;

namespace detail {

// Fixed English stopword list. The deontic modals shall/should/must/may/will
// are deliberately absent: they are signal words, not noise.
inline constexpr std::array<std::string_view, 183> kDefaultStopwords = {
    "a", "about", "above", "across", "after", "again", "against", "all",
    "along", "already", "also", "although", "am", "among", "amongst", "an",
    "and", "another", "any", "are", "around", "as", "at",
    "be", "because", "become", "becomes", "been", "before", "being", "below",
    "between", "beyond", "both", "but", "by",
    "can", "cannot", "could",
    "did", "do", "does", "doing", "done", "down", "during",
    "each", "either", "ever", "every",
    "few", "following", "for", "from", "further",
    "had", "has", "have", "having", "he", "hence", "her", "here", "hereby",
    "herein", "hers", "herself", "him", "himself", "his", "how", "however",
    "i", "if", "in", "into", "is", "it", "its", "itself",
    "just",
    "least", "less",
    "made", "many", "me", "more", "most", "much", "my", "myself",
    "neither", "never", "next", "no", "none", "nor", "not", "nothing", "now",
    "of", "off", "on", "once", "one", "only", "onto", "or", "other", "others",
    "otherwise", "our", "ours", "ourselves", "out", "over", "own",
    "per",
    "rather",
    "same", "she", "since", "so", "some", "still", "such",
    "than", "that", "the", "their", "theirs", "them", "themselves", "then",
    "there", "thereby", "therefore", "therein", "thereof", "these", "they",
    "this", "those", "though", "through", "throughout", "thus", "to", "too",
    "towards",
    "under", "until", "up", "upon", "us",
    "very", "via",
    "was", "we", "were", "what", "when", "where", "whereas", "whereby",
    "wherein", "whether", "which", "while", "who", "whom", "whose", "why",
    "with", "within", "without", "would",
    "yet", "you", "your", "yours", "yourself", "yourselves",
};

inline constexpr std::array<std::string_view, 30> kDefaultAbbreviations = {
    "art.", "arts.", "ch.", "cf.", "co.", "dr.", "e.g.", "etc.", "fig.",
    "figs.", "i.e.", "inc.", "ltd.", "mr.", "mrs.", "ms.", "no.", "nos.",
    "p.", "pp.", "para.", "paras.", "prof.", "resp.", "sec.", "secs.",
    "st.", "subpara.", "v.", "vs.",
};

inline constexpr std::array<std::string_view, 13> kDefaultSignalPhrases = {
    "shall", "should", "must", "may", "will", "have to", "has to", "need to",
    "needs to", "required to", "obliged to", "prohibited", "ought to",
};

inline constexpr std::array<std::string_view, 3> kDefaultNegators = {
    "not", "never", "no",
};

}  // namespace detail

inline const word_set& default_stopwords() {
  static const word_set set{detail::kDefaultStopwords.begin(), detail::kDefaultStopwords.end()};
  return set;
}

inline const word_set& default_abbreviations() {
  static const word_set set{detail::kDefaultAbbreviations.begin(),
                            detail::kDefaultAbbreviations.end()};
  return set;
}

inline std::vector<std::string> default_signal_phrases() {
  return {detail::kDefaultSignalPhrases.begin(), detail::kDefaultSignalPhrases.end()};
}

inline std::vector<std::string> default_negators() {
  return {detail::kDefaultNegators.begin(), detail::kDefaultNegators.end()};
}

// Word-list file format: one entry per line, '#' starts a comment, blank
// lines ignored. Entries are lowercased.
inline word_set load_wordlist(std::istream& in) {
  word_set out;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r\n");
    std::string word = line.substr(first, last - first + 1);
    std::transform(word.begin(), word.end(), word.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    out.insert(std::move(word));
  }
  return out;
}

}  // namespace conrel
