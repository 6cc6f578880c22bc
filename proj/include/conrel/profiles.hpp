#pragma once

#include <string_view>
#include <vector>

#include "conrel/errors.hpp"

namespace conrel {

namespace detail {

// Keyword groups for the GDPR case study: the five roles in priority order,
// recital/article/chapter markers for fragmentation, and the combined
// "citizens" selection. profiles/gdpr.json ships the same bytes.
inline constexpr std::string_view kGdprProfile = R"json({
  "fragmentation": {
    "mode": "markers",
    "markers": ["^Article \\d+", "^CHAPTER [IVXLC]+", "^\\(\\d+\\)"]
  },
  "grouping": {
    "method": "keyword",
    "keyword_groups": [
      {"name": "member state", "phrases": ["member state"]},
      {"name": "natural person", "phrases": ["natural person"]},
      {"name": "data subject", "phrases": ["data subject"]},
      {"name": "personal data", "phrases": ["personal data"]},
      {"name": "controller", "phrases": ["controller"]}
    ]
  },
  "selections": [
    {"name": "citizens", "groups": ["natural person", "data subject", "personal data"]}
  ],
  "report_include_undefined": true
}
)json";

inline constexpr std::string_view kDefaultProfile = "{}\n";

}  // namespace detail

inline std::vector<std::string_view> builtin_profile_names() { return {"default", "gdpr"}; }

inline std::string_view builtin_profile(std::string_view name) {
  if (name == "gdpr") return detail::kGdprProfile;
  if (name == "default") return detail::kDefaultProfile;
  throw config_error("unknown profile \"" + std::string(name) +
                     "\" (available: default, gdpr)");
}

}  // namespace conrel
