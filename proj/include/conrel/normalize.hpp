#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "conrel/errors.hpp"
#include "conrel/porter.hpp"
#include "conrel/utf8.hpp"
#include "conrel/wordlists.hpp"

namespace conrel {

namespace detail {

inline bool is_ascii_alnum(std::int32_t cp) {
  return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
}

// Token characters are ASCII letters/digits plus anything non-ASCII; hyphens
// and apostrophes join a token only between two token characters.
inline bool is_word_cp(std::int32_t cp) {
  return cp >= 0x80 || is_ascii_alnum(cp);
}

inline bool is_joiner_cp(std::int32_t cp) {
  return cp == '-' || cp == '\'' || cp == 0x2019;  // U+2019 right single quote
}

}  // namespace detail

// Splits into lowercased word tokens: maximal runs of letters/digits with
// internal hyphens/apostrophes kept ("state-of-the-art" is one token,
// "2016/679" is two). A token's position is its index in the result.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t start = i;
    const std::int32_t cp = utf8::decode(text, i);
    if (cp >= 0 && detail::is_word_cp(cp)) {
      if (cp >= 'A' && cp <= 'Z') {
        current.push_back(static_cast<char>(cp - 'A' + 'a'));
      } else {
        current.append(text.substr(start, i - start));
      }
      continue;
    }
    if (cp >= 0 && detail::is_joiner_cp(cp) && !current.empty()) {
      std::size_t peek = i;
      if (peek < text.size() && detail::is_word_cp(utf8::decode(text, peek))) {
        current.append(text.substr(start, i - start));
        continue;
      }
    }
    if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

// Order-preserving stopword filter; comparison happens before stemming.
inline std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                                 const word_set& stopwords) {
  std::vector<std::string> kept;
  kept.reserve(tokens.size());
  for (const auto& token : tokens)
    if (!stopwords.contains(token)) kept.push_back(token);
  return kept;
}

// Possessive endings come off before stemming so that "subject's" and
// "subject" share a stem; the Porter core itself only sees plain words.
inline std::string stem(std::string_view token) {
  for (const std::string_view possessive : {"'s", "\xE2\x80\x99s", "'", "\xE2\x80\x99"}) {
    if (token.size() > possessive.size() && token.ends_with(possessive)) {
      token.remove_suffix(possessive.size());
      break;
    }
  }
  return porter_stem(token);
}

// One segmented sentence in normalized token form. token_stems parallels
// raw_tokens; content_stems are the non-stopword stems in order.
struct TokenizedSentence {
  std::string sentence_id;
  std::string doc_id;
  std::vector<std::string> raw_tokens;
  std::vector<std::string> token_stems;
  std::vector<bool> is_stopword;
  std::vector<std::string> content_stems;
  std::map<std::string, int> stem_counts;  // over content_stems
};

inline TokenizedSentence make_tokenized(std::string sentence_id, std::string doc_id,
                                        std::string_view text, const word_set& stopwords) {
  TokenizedSentence out;
  out.sentence_id = std::move(sentence_id);
  out.doc_id = std::move(doc_id);
  out.raw_tokens = tokenize(text);
  out.token_stems.reserve(out.raw_tokens.size());
  out.is_stopword.reserve(out.raw_tokens.size());
  for (const auto& token : out.raw_tokens) {
    out.token_stems.push_back(stem(token));
    out.is_stopword.push_back(stopwords.contains(token));
  }
  for (std::size_t i = 0; i < out.raw_tokens.size(); ++i) {
    if (out.is_stopword[i]) continue;
    out.content_stems.push_back(out.token_stems[i]);
    ++out.stem_counts[out.token_stems[i]];
  }
  return out;
}

// Stem sequence of a keyword phrase. Stopwords are kept so that phrases like
// "right to object" survive intact.
inline std::vector<std::string> normalize_phrase(std::string_view phrase) {
  std::vector<std::string> stems;
  for (const auto& token : tokenize(phrase)) stems.push_back(stem(token));
  if (stems.empty())
    throw config_error("keyword phrase \"" + std::string(phrase) +
                       "\" is empty after tokenization");
  return stems;
}

// Contiguous subsequence search over a sentence's full token stems, so that
// stopword removal can never break a multi-word keyword.
inline bool contains_stem_phrase(const std::vector<std::string>& token_stems,
                                 const std::vector<std::string>& phrase_stems) {
  if (phrase_stems.empty() || token_stems.size() < phrase_stems.size()) return false;
  for (std::size_t i = 0; i + phrase_stems.size() <= token_stems.size(); ++i) {
    bool match = true;
    for (std::size_t k = 0; k < phrase_stems.size(); ++k) {
      if (token_stems[i + k] != phrase_stems[k]) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

}  // namespace conrel
