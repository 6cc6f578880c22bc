#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace conrel::utf8 {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

// Decodes the sequence starting at `i` and advances `i` past it. Returns the
// code point, or -1 for a malformed sequence (overlong forms, surrogates,
// truncation, out-of-range); on error `i` advances by exactly one byte so the
// caller can resynchronize.
inline std::int32_t decode(std::string_view s, std::size_t& i) {
  const std::size_t start = i;
  const auto byte = [&](std::size_t k) {
    return static_cast<std::uint32_t>(static_cast<unsigned char>(s[k]));
  };
  const std::uint32_t b0 = byte(i);
  if (b0 < 0x80) {
    ++i;
    return static_cast<std::int32_t>(b0);
  }
  const auto fail = [&] {
    i = start + 1;
    return -1;
  };
  const auto cont = [&](std::size_t k) {
    return start + k < s.size() && (byte(start + k) & 0xC0u) == 0x80u;
  };
  if ((b0 & 0xE0u) == 0xC0u) {
    if (!cont(1)) return fail();
    const std::uint32_t cp = ((b0 & 0x1Fu) << 6) | (byte(start + 1) & 0x3Fu);
    if (cp < 0x80) return fail();
    i = start + 2;
    return static_cast<std::int32_t>(cp);
  }
  if ((b0 & 0xF0u) == 0xE0u) {
    if (!cont(1) || !cont(2)) return fail();
    const std::uint32_t cp = ((b0 & 0x0Fu) << 12) | ((byte(start + 1) & 0x3Fu) << 6) |
                             (byte(start + 2) & 0x3Fu);
    if (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF)) return fail();
    i = start + 3;
    return static_cast<std::int32_t>(cp);
  }
  if ((b0 & 0xF8u) == 0xF0u) {
    if (!cont(1) || !cont(2) || !cont(3)) return fail();
    const std::uint32_t cp = ((b0 & 0x07u) << 18) | ((byte(start + 1) & 0x3Fu) << 12) |
                             ((byte(start + 2) & 0x3Fu) << 6) | (byte(start + 3) & 0x3Fu);
    if (cp < 0x10000 || cp > 0x10FFFF) return fail();
    i = start + 4;
    return static_cast<std::int32_t>(cp);
  }
  return fail();
}

// Offset of the first malformed byte, or npos when `s` is valid UTF-8.
inline std::size_t find_invalid(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const std::size_t start = i;
    if (decode(s, i) < 0) return start;
  }
  return npos;
}

inline void append(std::string& out, std::int32_t cp) {
  const auto u = static_cast<std::uint32_t>(cp);
  if (u < 0x80) {
    out.push_back(static_cast<char>(u));
  } else if (u < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (u >> 6)));
    out.push_back(static_cast<char>(0x80 | (u & 0x3F)));
  } else if (u < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (u >> 12)));
    out.push_back(static_cast<char>(0x80 | ((u >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (u & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (u >> 18)));
    out.push_back(static_cast<char>(0x80 | ((u >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((u >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (u & 0x3F)));
  }
}

// Truncates to at most `max_points` code points; appends an ellipsis when
// anything was cut. Never splits a multi-byte sequence.
inline std::string truncate(std::string_view s, std::size_t max_points) {
  std::size_t i = 0;
  std::size_t points = 0;
  while (i < s.size() && points < max_points) {
    decode(s, i);
    ++points;
  }
  if (i >= s.size()) return std::string(s);
  return std::string(s.substr(0, i)) + "\xE2\x80\xA6";
}

}  // namespace conrel::utf8
