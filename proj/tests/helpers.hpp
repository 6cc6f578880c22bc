#pragma once

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <conrel/conrel.hpp>

namespace testutil {

// Deterministic synthetic regulatory sentences for property tests.
class SentenceGen {
 public:
  explicit SentenceGen(std::uint32_t seed) : rng_(seed) {}

  std::string sentence() {
    static const std::vector<std::string> subjects = {
        "the controller", "the processor",      "member states",   "the data subject",
        "the authority",  "the representative", "natural persons", "the board",
    };
    static const std::vector<std::string> signals = {
        "shall", "should", "must", "may", "will", "have to",
    };
    static const std::vector<std::string> verbs = {
        "keep",  "provide", "notify", "erase",  "document", "assess",
        "adopt", "publish", "review", "record", "transfer", "restrict",
    };
    static const std::vector<std::string> objects = {
        "records",           "personal data",    "the supervisory authority",
        "appropriate measures", "processing activities", "a data protection impact assessment",
        "binding corporate rules", "the consent",  "security incidents",
    };
    std::string out = pick(subjects);
    out += " " + pick(signals);
    if (chance(20)) out += " not";
    out += " " + pick(verbs);
    out += " " + pick(objects);
    if (chance(30)) out += " without undue delay";
    if (chance(25)) out += " in accordance with this regulation";
    out += ".";
    out[0] = static_cast<char>(out[0] - 'a' + 'A');
    return out;
  }

  std::string non_constraint() {
    static const std::vector<std::string> fillers = {
        "This regulation lays down rules.",
        "Those safeguards are described below.",
        "The definitions apply throughout this chapter.",
        "Such processing takes many forms.",
    };
    return pick(fillers);
  }

  std::vector<std::string> corpus(std::size_t max_sentences) {
    std::vector<std::string> out;
    const std::size_t n = 1 + next(max_sentences);
    for (std::size_t i = 0; i < n; ++i)
      out.push_back(chance(80) ? sentence() : non_constraint());
    return out;
  }

  bool chance(int percent) { return static_cast<int>(next(100)) < percent; }
  std::size_t next(std::size_t bound) {
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng_);
  }

  std::mt19937& rng() { return rng_; }

 private:
  template <typename T>
  const T& pick(const std::vector<T>& from) {
    return from[next(from.size())];
  }

  std::mt19937 rng_;
};

inline std::vector<conrel::TokenizedSentence> tokenize_corpus(const std::vector<std::string>& texts,
                                                              std::string doc_id = "doc") {
  std::vector<conrel::TokenizedSentence> out;
  for (std::size_t i = 0; i < texts.size(); ++i)
    out.push_back(conrel::make_tokenized(doc_id + ":0:" + std::to_string(i), doc_id, texts[i],
                                         conrel::default_stopwords()));
  return out;
}

inline std::vector<conrel::ConstraintSentence> constraints_from(const std::vector<std::string>& texts,
                                                                std::string doc_id = "doc") {
  return conrel::filter_constraints(tokenize_corpus(texts, std::move(doc_id)),
                                    conrel::SignalLexicon{});
}

// Unique scratch directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<unsigned> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("conrel_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::filesystem::path write_file(const std::filesystem::path& dir, const std::string& name,
                                        const std::string& content) {
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

}  // namespace testutil
