#pragma once

#include <cctype>
#include <istream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "conrel/errors.hpp"
#include "conrel/normalize.hpp"
#include "conrel/utf8.hpp"
#include "conrel/wordlists.hpp"

namespace conrel {

struct Document {
  std::string doc_id;
  std::string source_name;
  std::string raw_text;  // UTF-8, line endings normalized to LF
};

struct FragmentationRules {
  enum class Mode { blank_line, markers };
  Mode mode = Mode::blank_line;
  // ECMAScript patterns, each matched at the start of a line.
  std::vector<std::string> marker_patterns;
};

struct Fragment {
  std::string doc_id;
  std::size_t fragment_index = 0;
  std::optional<std::string> heading;  // the consumed marker line, if any
  std::string text;
};

struct CharSpan {
  std::size_t begin = 0;  // byte offsets into the fragment text, end exclusive
  std::size_t end = 0;
};

struct Sentence {
  std::string sentence_id;  // "doc_id:fragment_index:sentence_index"
  std::string doc_id;
  std::size_t fragment_index = 0;
  std::size_t sentence_index = 0;
  std::string text;  // whitespace-normalized
  CharSpan span;
};

inline std::string make_sentence_id(std::string_view doc_id, std::size_t fragment_index,
                                    std::size_t sentence_index) {
  std::string id(doc_id);
  id += ':';
  id += std::to_string(fragment_index);
  id += ':';
  id += std::to_string(sentence_index);
  return id;
}

namespace detail {

// Unicode spaces that HTML-derived plain text is full of; folded to ' '.
inline bool is_unicode_space(std::int32_t cp) {
  return cp == 0x00A0 || (cp >= 0x2000 && cp <= 0x200A) || cp == 0x202F || cp == 0x205F ||
         cp == 0x3000;
}

// Invisible characters dropped outright: zero-width space, zero-width
// (non-)joiner, soft hyphen, and stray BOMs.
inline bool is_invisible(std::int32_t cp) {
  return cp == 0x200B || cp == 0x200C || cp == 0x200D || cp == 0x00AD || cp == 0xFEFF;
}

}  // namespace detail

// Decodes `bytes` as UTF-8 (replacing bad sequences with U+FFFD when `lossy`),
// strips BOMs, soft hyphens and zero-width characters, folds non-breaking
// spaces to plain spaces, and normalizes CRLF/CR line endings to LF.
inline Document load_document(std::string bytes, std::string doc_id, std::string source_name,
                              bool lossy = false) {
  if (bytes.empty()) throw error("corpus", "empty document: " + source_name);
  if (!lossy) {
    if (const auto offset = utf8::find_invalid(bytes); offset != utf8::npos)
      throw encoding_error("undecodable UTF-8 in " + source_name + " at byte offset " +
                               std::to_string(offset),
                           offset);
  }
  std::string text;
  text.reserve(bytes.size());
  std::size_t i = 0;
  while (i < bytes.size()) {
    const std::size_t start = i;
    const std::int32_t cp = utf8::decode(bytes, i);
    if (cp < 0) {
      text += "\xEF\xBF\xBD";  // lossy mode only; validated above otherwise
    } else if (cp == '\r') {
      text.push_back('\n');
      if (i < bytes.size() && bytes[i] == '\n') ++i;
    } else if (detail::is_unicode_space(cp)) {
      text.push_back(' ');
    } else if (detail::is_invisible(cp)) {
      // dropped
    } else {
      text.append(bytes, start, i - start);
    }
  }
  return Document{std::move(doc_id), std::move(source_name), std::move(text)};
}

inline Document load_document(std::istream& in, std::string doc_id, std::string source_name,
                              bool lossy = false) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_document(std::move(buffer).str(), std::move(doc_id), std::move(source_name), lossy);
}

namespace detail {

struct Line {
  std::size_t begin = 0;  // offset of first char
  std::size_t end = 0;    // offset past last char, excluding the newline
};

inline std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t begin = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\n') {
      if (i == text.size() && begin == i && !lines.empty()) break;  // no empty line after final LF
      lines.push_back({begin, i});
      begin = i + 1;
    }
  }
  return lines;
}

inline bool is_blank(std::string_view s) {
  for (const char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace detail

// Splits a document along structural markers (lines matching one of the
// configured patterns, consumed as headings) or, by default, along blank-line
// paragraph breaks. Text before the first marker becomes fragment 0 with no
// heading; fragment indices are contiguous from 0.
inline std::vector<Fragment> fragment(const Document& doc, const FragmentationRules& rules) {
  std::vector<Fragment> fragments;
  const std::string_view text = doc.raw_text;
  if (text.empty()) return fragments;
  const auto lines = detail::split_lines(text);
  const auto add = [&](std::optional<std::string> heading, std::string_view body) {
    fragments.push_back(Fragment{doc.doc_id, fragments.size(), std::move(heading),
                                 std::string(body)});
  };

  if (rules.mode == FragmentationRules::Mode::markers) {
    if (rules.marker_patterns.empty())
      throw config_error("fragmentation mode \"markers\" requires at least one pattern");
    std::vector<std::regex> regexes;
    regexes.reserve(rules.marker_patterns.size());
    for (const auto& pattern : rules.marker_patterns) {
      try {
        regexes.emplace_back(pattern, std::regex::ECMAScript);
      } catch (const std::regex_error&) {
        throw config_error("invalid fragmentation marker pattern: " + pattern);
      }
    }
    // first pattern (in config order) matching at line start wins; the match
    // itself becomes the heading, the rest of the line stays in the body
    const auto marker_length = [&](std::string_view line) -> std::size_t {
      std::match_results<std::string_view::const_iterator> m;
      for (const auto& re : regexes) {
        if (std::regex_search(line.begin(), line.end(), m, re,
                              std::regex_constants::match_continuous))
          return static_cast<std::size_t>(m[0].length());
      }
      return 0;
    };

    struct Marker {
      std::size_t line_begin;
      std::size_t match_len;
    };
    std::vector<Marker> markers;
    for (const auto& line : lines) {
      const auto content = text.substr(line.begin, line.end - line.begin);
      if (const auto len = marker_length(content); len > 0)
        markers.push_back({line.begin, len});
    }
    if (markers.empty()) {
      add(std::nullopt, text);
      return fragments;
    }
    if (markers.front().line_begin > 0) {
      const auto preamble = text.substr(0, markers.front().line_begin);
      if (!detail::is_blank(preamble)) add(std::nullopt, preamble);
    }
    for (std::size_t mi = 0; mi < markers.size(); ++mi) {
      const std::size_t body_begin = markers[mi].line_begin + markers[mi].match_len;
      const std::size_t body_end =
          mi + 1 < markers.size() ? markers[mi + 1].line_begin : text.size();
      add(std::string(text.substr(markers[mi].line_begin, markers[mi].match_len)),
          body_end > body_begin ? text.substr(body_begin, body_end - body_begin)
                                : std::string_view{});
    }
    return fragments;
  }

  // Blank-line paragraphs: fragments are maximal runs of non-blank lines.
  std::size_t para_begin = 0;
  std::size_t para_end = 0;
  bool in_para = false;
  for (const auto& line : lines) {
    const auto content = text.substr(line.begin, line.end - line.begin);
    if (detail::is_blank(content)) {
      if (in_para) add(std::nullopt, text.substr(para_begin, para_end - para_begin));
      in_para = false;
    } else {
      if (!in_para) para_begin = line.begin;
      para_end = line.end;
      in_para = true;
    }
  }
  if (in_para) add(std::nullopt, text.substr(para_begin, para_end - para_begin));
  return fragments;
}

namespace detail {

inline bool is_ws(char c) { return std::isspace(static_cast<unsigned char>(c)); }
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }

// The whitespace-delimited token ending at (and including) the period at
// `dot`, with leading punctuation such as '(' or quotes stripped.
inline std::string token_ending_at(std::string_view text, std::size_t dot) {
  std::size_t begin = dot;
  while (begin > 0 && !is_ws(text[begin - 1])) --begin;
  while (begin < dot && !is_ascii_alnum(static_cast<unsigned char>(text[begin])) &&
         static_cast<unsigned char>(text[begin]) < 0x80)
    ++begin;
  std::string token(text.substr(begin, dot - begin + 1));
  for (auto& c : token)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return token;
}

inline std::string collapse_whitespace(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (const char c : raw) {
    if (is_ws(c)) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace detail

// Rule-based splitter: a boundary is '.', '?' or '!' followed by whitespace
// and then an uppercase letter or a digit (enumeration start), unless the
// token ending at a period is a known abbreviation or the period sits inside
// a number (digit.digit). ';' is never a boundary. Sentences shorter than
// two tokens are dropped as heading debris.
inline std::vector<Sentence> segment_sentences(const Fragment& fragment,
                                               const word_set& abbreviations) {
  std::vector<Sentence> sentences;
  const std::string_view text = fragment.text;
  std::size_t index = 0;

  const auto emit = [&](std::size_t begin, std::size_t end) {
    while (begin < end && detail::is_ws(text[begin])) ++begin;
    while (end > begin && detail::is_ws(text[end - 1])) --end;
    if (begin >= end) return;
    std::string normalized = detail::collapse_whitespace(text.substr(begin, end - begin));
    if (tokenize(normalized).size() < 2) return;
    Sentence s;
    s.sentence_id = make_sentence_id(fragment.doc_id, fragment.fragment_index, index);
    s.doc_id = fragment.doc_id;
    s.fragment_index = fragment.fragment_index;
    s.sentence_index = index;
    s.text = std::move(normalized);
    s.span = CharSpan{begin, end};
    sentences.push_back(std::move(s));
    ++index;
  };

  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c != '.' && c != '?' && c != '!') continue;
    if (c == '.') {
      if (i > 0 && i + 1 < text.size() && detail::is_digit(text[i - 1]) &&
          detail::is_digit(text[i + 1]))
        continue;  // decimal or section number
      if (abbreviations.contains(detail::token_ending_at(text, i))) continue;
    }
    std::size_t next = i + 1;
    while (next < text.size() && detail::is_ws(text[next])) ++next;
    if (next == i + 1) continue;  // no whitespace after the punctuation
    if (next >= text.size()) continue;  // trailing whitespace; final flush handles it
    if (!detail::is_upper(text[next]) && !detail::is_digit(text[next])) continue;
    emit(start, i + 1);
    start = next;
  }
  emit(start, text.size());
  return sentences;
}

}  // namespace conrel
