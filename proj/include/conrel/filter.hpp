#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "conrel/errors.hpp"
#include "conrel/normalize.hpp"
#include "conrel/wordlists.hpp"

namespace conrel {

// Signal phrases flag constraint sentences; negators within `negation_window`
// tokens after a signal flip its polarity. Matching is on raw lowercase
// tokens, never on stems, so "will" cannot collide with "willing".
struct SignalLexicon {
  std::vector<std::string> phrases = default_signal_phrases();
  std::vector<std::string> negators = default_negators();
  std::size_t negation_window = 3;
};

enum class Polarity { positive, negative };

inline std::string_view to_string(Polarity p) {
  return p == Polarity::positive ? "positive" : "negative";
}

struct SignalHit {
  std::string phrase;      // the matched lexicon phrase
  std::size_t position;    // index of its first token
  std::size_t token_count; // phrase length in tokens
};

struct ConstraintSentence {
  TokenizedSentence tokenized;
  std::vector<SignalHit> signal_hits;  // non-empty by construction
  Polarity polarity = Polarity::positive;

  const std::string& id() const { return tokenized.sentence_id; }
  const std::string& doc() const { return tokenized.doc_id; }
};

namespace detail {

inline std::vector<std::vector<std::string>> compile_phrases(const SignalLexicon& lexicon) {
  std::vector<std::vector<std::string>> compiled;
  compiled.reserve(lexicon.phrases.size());
  for (const auto& phrase : lexicon.phrases) compiled.push_back(tokenize(phrase));
  return compiled;
}

inline std::vector<SignalHit> find_hits(const TokenizedSentence& sentence,
                                        const SignalLexicon& lexicon,
                                        const std::vector<std::vector<std::string>>& compiled) {
  std::vector<SignalHit> hits;
  const auto& tokens = sentence.raw_tokens;
  for (std::size_t start = 0; start < tokens.size(); ++start) {
    for (std::size_t p = 0; p < compiled.size(); ++p) {
      const auto& phrase = compiled[p];
      if (phrase.empty() || start + phrase.size() > tokens.size()) continue;
      bool match = true;
      for (std::size_t k = 0; k < phrase.size(); ++k) {
        if (tokens[start + k] != phrase[k]) {
          match = false;
          break;
        }
      }
      if (match) hits.push_back(SignalHit{lexicon.phrases[p], start, phrase.size()});
    }
  }
  return hits;
}

inline Polarity derive_polarity(const TokenizedSentence& sentence,
                                const std::vector<SignalHit>& hits,
                                const SignalLexicon& lexicon) {
  for (const auto& hit : hits) {
    const std::size_t tail = hit.position + hit.token_count - 1;
    for (std::size_t d = 1; d <= lexicon.negation_window; ++d) {
      const std::size_t p = tail + d;
      if (p >= sentence.raw_tokens.size()) break;
      for (const auto& negator : lexicon.negators)
        if (sentence.raw_tokens[p] == negator) return Polarity::negative;
    }
  }
  return Polarity::positive;
}

}  // namespace detail

// All occurrences of lexicon phrases as contiguous raw-token subsequences,
// with start positions; overlapping hits are all reported.
inline std::vector<SignalHit> find_signal_hits(const TokenizedSentence& sentence,
                                               const SignalLexicon& lexicon) {
  return detail::find_hits(sentence, lexicon, detail::compile_phrases(lexicon));
}

// Keeps exactly the sentences with at least one signal hit, in input order.
inline std::vector<ConstraintSentence> filter_constraints(
    const std::vector<TokenizedSentence>& sentences, const SignalLexicon& lexicon) {
  const auto compiled = detail::compile_phrases(lexicon);
  std::vector<ConstraintSentence> constraints;
  for (const auto& sentence : sentences) {
    auto hits = detail::find_hits(sentence, lexicon, compiled);
    if (hits.empty()) continue;
    ConstraintSentence cs;
    cs.polarity = detail::derive_polarity(sentence, hits, lexicon);
    cs.tokenized = sentence;
    cs.signal_hits = std::move(hits);
    constraints.push_back(std::move(cs));
  }
  return constraints;
}

// Content stems with signal-hit token positions removed. TF-IDF weighting and
// seed selection run over these: signal words appear in nearly every
// constraint sentence and would otherwise dominate similarity.
inline std::vector<std::string> content_stems_excluding_signals(const ConstraintSentence& cs) {
  const auto& t = cs.tokenized;
  std::vector<bool> covered(t.raw_tokens.size(), false);
  for (const auto& hit : cs.signal_hits)
    for (std::size_t k = 0; k < hit.token_count; ++k) covered[hit.position + k] = true;
  std::vector<std::string> stems;
  for (std::size_t i = 0; i < t.raw_tokens.size(); ++i)
    if (!t.is_stopword[i] && !covered[i]) stems.push_back(t.token_stems[i]);
  return stems;
}

}  // namespace conrel
