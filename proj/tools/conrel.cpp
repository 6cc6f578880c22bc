// conrel — constraint extraction, grouping and relation mining for
// regulatory documents.
//
//   conrel analyze   --input gdpr.txt --out out/        full pipeline
//   conrel group     --input gdpr.txt --out out/        stop after grouping
//   conrel relations --input a.txt --input b.txt ...    relations only
//   conrel report    --partition out/partition.csv ...  recompute reductions
//   conrel export    --sentences ... --partition ... --relations ...
//
// CONREL_PROFILE (or --profile) selects a bundled profile; --config points at
// a JSON run configuration; flags override file values.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <conrel/conrel.hpp>

namespace fs = std::filesystem;

namespace {

struct CommonOpts {
  std::string profile;
  std::string config_path;
  std::vector<std::string> inputs;
  std::string out_dir;
  std::string method;
  std::size_t k = 0;
  std::string scope;
  bool lossy = false;
};

void add_common_options(CLI::App* cmd, CommonOpts& opts, bool with_out) {
  cmd->add_option("--profile", opts.profile, "bundled profile (default, gdpr)");
  cmd->add_option("--config,-c", opts.config_path, "JSON run configuration");
  cmd->add_option("--input,-i", opts.inputs, "input document (UTF-8 plain text; repeatable)");
  if (with_out) cmd->add_option("--out,-o", opts.out_dir, "output directory");
  cmd->add_option("--method", opts.method, "grouping method: keyword, term_frequency, structure");
  cmd->add_option("--k", opts.k, "seed count for term_frequency grouping")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000000}));
  cmd->add_option("--scope", opts.scope, "pair scope: all_pairs, cross_document_only");
  cmd->add_flag("--lossy", opts.lossy, "replace undecodable bytes instead of failing");
}

conrel::RunConfig resolve_config(const CommonOpts& opts) {
  conrel::RunConfig config;
  std::string profile = opts.profile;
  if (profile.empty()) {
    if (const char* env = std::getenv("CONREL_PROFILE")) profile = env;
  }
  if (!profile.empty())
    conrel::apply_config_json(config, nlohmann::json::parse(conrel::builtin_profile(profile)));
  if (!opts.config_path.empty()) conrel::apply_config_file(config, opts.config_path);

  if (!opts.inputs.empty()) {
    config.inputs.clear();
    for (const auto& path : opts.inputs)
      config.inputs.push_back(conrel::InputSpec{path, fs::path(path).stem().string()});
  }
  if (!opts.out_dir.empty()) config.output_dir = opts.out_dir;
  if (!opts.method.empty()) {
    if (opts.method == "keyword") config.grouping.method = conrel::GroupingMethod::keyword;
    else if (opts.method == "term_frequency")
      config.grouping.method = conrel::GroupingMethod::term_frequency;
    else if (opts.method == "structure") config.grouping.method = conrel::GroupingMethod::structure;
    else throw conrel::config_error("unknown grouping method \"" + opts.method + "\"");
  }
  if (opts.k > 0) config.grouping.k = opts.k;
  if (!opts.scope.empty()) {
    if (opts.scope == "all_pairs") config.scope = conrel::PairScope::all_pairs;
    else if (opts.scope == "cross_document_only")
      config.scope = conrel::PairScope::cross_document_only;
    else throw conrel::config_error("unknown scope \"" + opts.scope + "\"");
  }
  if (opts.lossy) config.lossy_decode = true;
  return config;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw conrel::io_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

int run_analyze(const CommonOpts& opts) {
  auto config = resolve_config(opts);
  if (config.output_dir.empty())
    throw conrel::config_error("analyze requires --out or output_dir in the config");
  const auto result = conrel::run_pipeline(config);
  conrel::print_summary(result, std::cout);
  return 0;
}

int run_group(const CommonOpts& opts) {
  auto config = resolve_config(opts);
  const auto out_dir = config.output_dir;
  config.output_dir.clear();
  const auto result = conrel::run_pipeline(config);
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    conrel::write_file_atomic(out_dir / "sentences.csv", conrel::sentences_csv(result));
    conrel::write_file_atomic(out_dir / "partition.csv", conrel::partition_csv(result.partition));
    conrel::write_file_atomic(out_dir / "reduction.csv", conrel::reduction_csv(result.report));
  }
  std::cout << result.constraints.size() << " constraint(s) in "
            << result.partition.group_order().size() << " group(s)\n";
  for (const auto& group : result.partition.group_order())
    std::cout << "  " << group << ": " << result.partition.size_of(group) << "\n";
  return 0;
}

int run_relations(const CommonOpts& opts) {
  auto config = resolve_config(opts);
  const auto out_dir = config.output_dir;
  config.output_dir.clear();
  const auto result = conrel::run_pipeline(config);
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    conrel::write_file_atomic(out_dir / "relations.csv", conrel::relations_csv(result.relations));
  } else {
    std::cout << conrel::relations_csv(result.relations);
  }
  return 0;
}

int run_report(const std::string& partition_path, const std::vector<std::string>& selection_args,
               bool include_undefined, const std::string& out_csv) {
  const auto partition = conrel::partition_from_csv(read_file(partition_path));
  std::vector<conrel::Selection> selections;
  for (const auto& arg : selection_args) {
    const auto eq = arg.find('=');
    if (eq == std::string::npos)
      throw conrel::config_error("selection must look like name=group1,group2: " + arg);
    conrel::Selection selection;
    selection.name = arg.substr(0, eq);
    std::string rest = arg.substr(eq + 1);
    std::size_t start = 0;
    while (start <= rest.size()) {
      const auto comma = rest.find(',', start);
      const auto end = comma == std::string::npos ? rest.size() : comma;
      if (end > start) selection.groups.push_back(rest.substr(start, end - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (selection.groups.empty())
      throw conrel::config_error("selection \"" + selection.name + "\" names no groups");
    selections.push_back(std::move(selection));
  }
  const auto report = conrel::reduction_report(partition, selections, include_undefined);
  conrel::print_reduction_table(report, std::cout);
  if (!out_csv.empty()) conrel::write_file_atomic(out_csv, conrel::reduction_csv(report));
  return 0;
}

int run_export(const std::string& sentences_path, const std::string& partition_path,
               const std::string& relations_path, const std::string& out_base) {
  const auto sentences = conrel::sentences_from_csv(read_file(sentences_path));
  const auto partition = conrel::partition_from_csv(read_file(partition_path));
  const auto relations = conrel::relations_from_csv(read_file(relations_path));
  const auto graph = conrel::build_graph(partition, relations, sentences);
  conrel::write_file_atomic(out_base + ".dot", conrel::to_dot(graph));
  conrel::write_file_atomic(out_base + ".json", conrel::to_json(graph));
  std::cout << "wrote " << out_base << ".dot and " << out_base << ".json\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constraint extraction, grouping and relation mining for regulatory documents"};
  app.require_subcommand(1);

  CommonOpts analyze_opts;
  auto* analyze = app.add_subcommand("analyze", "run the full pipeline and write all artifacts");
  add_common_options(analyze, analyze_opts, true);

  CommonOpts group_opts;
  auto* group = app.add_subcommand("group", "run up to topic grouping");
  add_common_options(group, group_opts, true);

  CommonOpts relations_opts;
  auto* relations = app.add_subcommand("relations", "mine sentence relations");
  add_common_options(relations, relations_opts, true);

  std::string report_partition;
  std::vector<std::string> report_selections;
  bool report_include_undefined = false;
  std::string report_out;
  auto* report = app.add_subcommand("report", "recompute reductions from a partition CSV");
  report->add_option("--partition", report_partition, "partition.csv from a previous run")
      ->required();
  report->add_option("--selection", report_selections,
                     "selection as name=group1,group2 (repeatable; default: every group)");
  report->add_flag("--include-undefined", report_include_undefined,
                   "also report the undefined group as its own row");
  report->add_option("--out", report_out, "write the table as CSV to this path");

  std::string export_sentences, export_partition, export_relations, export_out;
  auto* exporter = app.add_subcommand("export", "rebuild graph.dot/.json from run CSVs");
  exporter->add_option("--sentences", export_sentences, "sentences.csv")->required();
  exporter->add_option("--partition", export_partition, "partition.csv")->required();
  exporter->add_option("--relations", export_relations, "relations.csv")->required();
  exporter->add_option("--out", export_out, "output base path (writes <out>.dot, <out>.json)")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return run_analyze(analyze_opts);
    if (group->parsed()) return run_group(group_opts);
    if (relations->parsed()) return run_relations(relations_opts);
    if (report->parsed())
      return run_report(report_partition, report_selections, report_include_undefined,
                        report_out);
    if (exporter->parsed())
      return run_export(export_sentences, export_partition, export_relations, export_out);
  } catch (const conrel::error& e) {
    std::cerr << "conrel: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "conrel: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
