#include <catch2/catch.hpp>

#include <cstdlib>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "helpers.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

CliResult run_cli(const std::string& args, const testutil::TempDir& dir,
                  const std::string& env = "") {
  const auto log = dir.path() / "cli.log";
  const std::string command =
      env + " \"" + std::string(CONREL_CLI_PATH) + "\" " + args + " > \"" + log.string() +
      "\" 2>&1";
  const int raw = std::system(command.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  result.output = testutil::read_file(log);
  return result;
}

const char* kDoc =
    "Article 1\n"
    "The controller shall keep records of processing. "
    "The controller shall not keep records of processing.\n"
    "Article 2\n"
    "Member States shall adopt measures. "
    "Where personal data are processed, the data subject shall have the right to object.\n";

}  // namespace

TEST_CASE("conrel analyze writes artifacts and a summary") {
  testutil::TempDir dir("cli_analyze");
  testutil::write_file(dir.path(), "doc.txt", kDoc);
  const auto out = dir.path() / "out";

  const auto result = run_cli("analyze --input " + (dir.path() / "doc.txt").string() + " --out " +
                                  out.string(),
                              dir, "CONREL_PROFILE=gdpr");
  INFO(result.output);
  REQUIRE(result.exit_code == 0);
  CHECK(result.output.find("4 constraint(s)") != std::string::npos);
  for (const char* name : {"sentences.csv", "partition.csv", "relations.csv", "reduction.csv",
                           "graph.dot", "graph.json"})
    CHECK(fs::exists(out / name));

  SECTION("report recomputes the reductions from the partition CSV") {
    // "personal data" is empty in this corpus but still selectable
    const auto report = run_cli(
        "report --partition " + (out / "partition.csv").string() +
            " --selection \"citizens=natural person,data subject,personal data\"" +
            " --include-undefined",
        dir);
    INFO(report.output);
    CHECK(report.exit_code == 0);
    CHECK(report.output.find("citizens") != std::string::npos);
    CHECK(report.output.find("total sentences: 4") != std::string::npos);
  }

  SECTION("report rejects groups that are not in the partition") {
    const auto report = run_cli("report --partition " + (out / "partition.csv").string() +
                                    " --selection \"bad=no such group\"",
                                dir);
    CHECK(report.exit_code == 1);
    CHECK(report.output.find("unknown group") != std::string::npos);
  }

  SECTION("export rebuilds the graph from the CSVs") {
    const auto exported = run_cli("export --sentences " + (out / "sentences.csv").string() +
                                      " --partition " + (out / "partition.csv").string() +
                                      " --relations " + (out / "relations.csv").string() +
                                      " --out " + (dir.path() / "rebuilt").string(),
                                  dir);
    INFO(exported.output);
    CHECK(exported.exit_code == 0);
    REQUIRE(fs::exists(dir.path() / "rebuilt.dot"));
    REQUIRE(fs::exists(dir.path() / "rebuilt.json"));

    const auto original = nlohmann::json::parse(testutil::read_file(out / "graph.json"));
    const auto rebuilt =
        nlohmann::json::parse(testutil::read_file(dir.path() / "rebuilt.json"));
    CHECK(original.at("nodes") == rebuilt.at("nodes"));
    CHECK(original.at("groups") == rebuilt.at("groups"));
    CHECK(original.at("edges").size() == rebuilt.at("edges").size());
  }
}

TEST_CASE("conrel group stops after the partition") {
  testutil::TempDir dir("cli_group");
  testutil::write_file(dir.path(), "doc.txt", kDoc);
  const auto out = dir.path() / "grouped";
  const auto result = run_cli("group --profile gdpr --input " +
                                  (dir.path() / "doc.txt").string() + " --out " + out.string(),
                              dir);
  INFO(result.output);
  REQUIRE(result.exit_code == 0);
  CHECK(fs::exists(out / "partition.csv"));
  CHECK(fs::exists(out / "reduction.csv"));
  CHECK_FALSE(fs::exists(out / "relations.csv"));
}

TEST_CASE("conrel fails cleanly on bad input") {
  testutil::TempDir dir("cli_errors");

  SECTION("empty document") {
    testutil::write_file(dir.path(), "empty.txt", "");
    const auto result = run_cli("analyze --input " + (dir.path() / "empty.txt").string() +
                                    " --out " + (dir.path() / "out").string(),
                                dir);
    CHECK(result.exit_code == 1);
    CHECK(result.output.find("empty document") != std::string::npos);
    CHECK(result.output.find("corpus") != std::string::npos);
  }

  SECTION("missing output directory option") {
    testutil::write_file(dir.path(), "doc.txt", kDoc);
    const auto result =
        run_cli("analyze --input " + (dir.path() / "doc.txt").string(), dir);
    CHECK(result.exit_code == 1);
    CHECK(result.output.find("--out") != std::string::npos);
  }

  SECTION("unknown profile") {
    testutil::write_file(dir.path(), "doc.txt", kDoc);
    const auto result = run_cli("analyze --profile fancy --input " +
                                    (dir.path() / "doc.txt").string() + " --out " +
                                    (dir.path() / "out").string(),
                                dir);
    CHECK(result.exit_code == 1);
    CHECK(result.output.find("unknown profile") != std::string::npos);
  }

  SECTION("config validation error mentions the module") {
    testutil::write_file(dir.path(), "doc.txt", kDoc);
    testutil::write_file(dir.path(), "bad.json",
                         R"({"thresholds": {"subsumed": 0.96, "redundant": 0.9}})");
    const auto result = run_cli("analyze --config " + (dir.path() / "bad.json").string() +
                                    " --input " + (dir.path() / "doc.txt").string() + " --out " +
                                    (dir.path() / "out").string(),
                                dir);
    CHECK(result.exit_code == 1);
    CHECK(result.output.find("config") != std::string::npos);
    CHECK_FALSE(fs::exists(dir.path() / "out"));
  }
}
