#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "conrel/config.hpp"
#include "conrel/corpus.hpp"
#include "conrel/csv.hpp"
#include "conrel/errors.hpp"
#include "conrel/filter.hpp"
#include "conrel/graph.hpp"
#include "conrel/grouping.hpp"
#include "conrel/normalize.hpp"
#include "conrel/relations.hpp"

namespace conrel {

struct RunResult {
  std::vector<Document> documents;
  std::vector<Sentence> sentences;  // all segmented sentences, corpus order
  std::size_t fragment_count = 0;
  std::vector<ConstraintSentence> constraints;
  Partition partition{std::vector<std::string>{}};
  ReductionReport report;
  std::vector<Relation> relations;
  ConstraintGraph graph;
  std::map<std::string, std::filesystem::path> artifacts;  // name -> written path
};

// Write via a dot-prefixed sibling temp file and rename into place, so a
// failed run never leaves a partially written artifact.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  const auto temp = path.parent_path() / ("." + path.filename().string() + ".tmp");
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot write " + temp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
      out.close();
      std::error_code ec;
      std::filesystem::remove(temp, ec);
      throw io_error("failed writing " + temp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::filesystem::remove(temp, ec);
    throw io_error("cannot rename " + temp.string() + " to " + path.string());
  }
}

namespace detail {

inline std::string format_similarity(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.4f", value);
  return buffer;
}

inline void expect_header(const std::vector<csv::Row>& rows, std::string_view expected,
                          std::string_view what) {
  if (rows.empty()) throw csv_error(std::string(what) + ": file is empty");
  std::string joined;
  for (const auto& f : rows.front().fields) {
    if (!joined.empty()) joined.push_back(',');
    joined += f;
  }
  if (joined != expected)
    throw csv_error(std::string(what) + ": line 1: expected header \"" + std::string(expected) +
                    "\"");
}

}  // namespace detail

inline std::string sentences_csv(const RunResult& result) {
  std::map<std::string, const std::string*> group_of;
  for (const auto& group : result.partition.group_order())
    for (const auto& id : result.partition.members(group)) group_of.emplace(id, &group);
  std::string out = "sentence_id,doc,fragment,group,polarity,text\n";
  std::map<std::string, const Sentence*> by_id;
  for (const auto& s : result.sentences) by_id.emplace(s.sentence_id, &s);
  for (const auto& cs : result.constraints) {
    const auto* sentence = by_id.at(cs.id());
    out += csv::row({cs.id(), cs.doc(), std::to_string(sentence->fragment_index),
                     *group_of.at(cs.id()), std::string(to_string(cs.polarity)),
                     sentence->text});
  }
  return out;
}

// One row per assignment; a group without members is declared by a single
// row with an empty sentence_id, so group order and empty groups survive the
// round trip.
inline std::string partition_csv(const Partition& partition) {
  std::string out = "group,sentence_id\n";
  for (const auto& group : partition.group_order()) {
    const auto& members = partition.members(group);
    if (members.empty()) {
      out += csv::row({group, ""});
      continue;
    }
    for (const auto& id : members) out += csv::row({group, id});
  }
  return out;
}

inline std::string relations_csv(const std::vector<Relation>& relations) {
  std::string out = "kind,a,b,similarity,direction\n";
  for (const auto& r : relations) {
    out += csv::row({std::string(to_string(r.kind)), r.a, r.b,
                     detail::format_similarity(r.similarity),
                     r.direction ? std::string(to_string(*r.direction)) : std::string()});
  }
  return out;
}

inline std::string reduction_csv(const ReductionReport& report) {
  std::string out = "selection,relevant,read_with_undefined,reduction_excl_pct,"
                    "reduction_incl_pct,total\n";
  for (const auto& row : report.rows) {
    out += csv::row({row.selection, std::to_string(row.relevant),
                     std::to_string(row.read_with_undefined),
                     std::to_string(row.reduction_excl_pct),
                     std::to_string(row.reduction_incl_pct), std::to_string(report.total)});
  }
  return out;
}

// Rebuilds a Partition from partition.csv; group order follows first
// appearance.
inline Partition partition_from_csv(std::string_view text) {
  const auto rows = csv::parse(text);
  detail::expect_header(rows, "group,sentence_id", "partition CSV");
  std::vector<std::string> order;
  std::vector<std::pair<std::string, std::string>> assignments;
  std::set<std::string> seen;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].fields.size() != 2)
      throw csv_error("partition CSV: line " + std::to_string(rows[i].line) +
                      ": expected 2 fields, got " + std::to_string(rows[i].fields.size()));
    const auto& group = rows[i].fields[0];
    if (group.empty())
      throw csv_error("partition CSV: line " + std::to_string(rows[i].line) + ": empty group");
    if (seen.insert(group).second) order.push_back(group);
    if (!rows[i].fields[1].empty()) assignments.emplace_back(group, rows[i].fields[1]);
  }
  Partition partition(std::move(order));
  for (const auto& [group, id] : assignments) partition.assign(group, id);
  return partition;
}

inline std::vector<Relation> relations_from_csv(std::string_view text) {
  const auto rows = csv::parse(text);
  detail::expect_header(rows, "kind,a,b,similarity,direction", "relations CSV");
  std::vector<Relation> relations;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto fail = [&](std::string_view why) {
      throw csv_error("relations CSV: line " + std::to_string(rows[i].line) + ": " +
                      std::string(why));
    };
    if (rows[i].fields.size() != 5) fail("expected 5 fields");
    Relation r;
    const auto& kind = rows[i].fields[0];
    if (kind == "redundant") r.kind = RelationKind::redundant;
    else if (kind == "subsumed") r.kind = RelationKind::subsumed;
    else if (kind == "conflicting") r.kind = RelationKind::conflicting;
    else fail("unknown relation kind \"" + kind + "\"");
    r.a = rows[i].fields[1];
    r.b = rows[i].fields[2];
    try {
      r.similarity = std::stod(rows[i].fields[3]);
    } catch (const std::exception&) {
      fail("similarity is not a number");
    }
    const auto& direction = rows[i].fields[4];
    if (direction == "a_subsumed_by_b") r.direction = SubsumptionDirection::a_subsumed_by_b;
    else if (direction == "b_subsumed_by_a") r.direction = SubsumptionDirection::b_subsumed_by_a;
    else if (!direction.empty()) fail("unknown direction \"" + direction + "\"");
    relations.push_back(std::move(r));
  }
  return relations;
}

// Sentence rows from sentences.csv, enough to rebuild a graph (spans are not
// round-tripped).
inline std::vector<Sentence> sentences_from_csv(std::string_view text) {
  const auto rows = csv::parse(text);
  detail::expect_header(rows, "sentence_id,doc,fragment,group,polarity,text", "sentences CSV");
  std::vector<Sentence> sentences;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].fields.size() != 6)
      throw csv_error("sentences CSV: line " + std::to_string(rows[i].line) +
                      ": expected 6 fields, got " + std::to_string(rows[i].fields.size()));
    Sentence s;
    s.sentence_id = rows[i].fields[0];
    s.doc_id = rows[i].fields[1];
    try {
      s.fragment_index = static_cast<std::size_t>(std::stoull(rows[i].fields[2]));
    } catch (const std::exception&) {
      throw csv_error("sentences CSV: line " + std::to_string(rows[i].line) +
                      ": fragment is not a number");
    }
    s.text = rows[i].fields[5];
    sentences.push_back(std::move(s));
  }
  return sentences;
}

// pre-processing -> processing -> post-processing. Computes everything in
// memory first; artifacts are written (atomically) only when output_dir is
// set.
inline RunResult run_pipeline(const RunConfig& config) {
  validate_config(config, /*require_inputs=*/true);

  RunResult result;
  std::vector<TokenizedSentence> tokenized;
  for (const auto& input : config.inputs) {
    std::ifstream in(input.path, std::ios::binary);
    if (!in) throw io_error("cannot read " + input.path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    auto doc = load_document(std::move(buffer).str(), input.doc_id, input.path.string(),
                             config.lossy_decode);
    const auto fragments = fragment(doc, config.fragmentation);
    result.fragment_count += fragments.size();
    for (const auto& frag : fragments) {
      for (auto& sentence : segment_sentences(frag, config.abbreviations)) {
        tokenized.push_back(make_tokenized(sentence.sentence_id, sentence.doc_id, sentence.text,
                                           config.stopwords));
        result.sentences.push_back(std::move(sentence));
      }
    }
    result.documents.push_back(std::move(doc));
  }

  result.constraints = filter_constraints(tokenized, config.lexicon);
  result.partition = group_constraints(result.constraints, config.grouping);
  result.report =
      reduction_report(result.partition, config.selections, config.report_include_undefined);
  if (!config.selections.empty()) {
    // default per-group rows first, then the configured named selections
    auto combined = reduction_report(result.partition, {}, config.report_include_undefined);
    for (auto& row : result.report.rows) combined.rows.push_back(std::move(row));
    result.report = std::move(combined);
  }
  result.relations = mine_relations(result.constraints, config.thresholds, config.scope);
  result.graph = build_graph(result.partition, result.relations, result.sentences);

  if (!config.output_dir.empty()) {
    std::filesystem::create_directories(config.output_dir);
    const auto write = [&](std::string_view name, std::string_view content) {
      const auto path = config.output_dir / name;
      write_file_atomic(path, content);
      result.artifacts.emplace(std::string(name), path);
    };
    write("sentences.csv", sentences_csv(result));
    write("partition.csv", partition_csv(result.partition));
    write("relations.csv", relations_csv(result.relations));
    write("reduction.csv", reduction_csv(result.report));
    write("graph.dot", to_dot(result.graph));
    write("graph.json", to_json(result.graph));
  }
  return result;
}

inline void print_reduction_table(const ReductionReport& report, std::ostream& out) {
  std::size_t name_width = 9;
  for (const auto& row : report.rows) name_width = std::max(name_width, row.selection.size());
  out << "selection";
  out << std::string(name_width - 9 + 2, ' ');
  out << "relevant  read_incl_undef  reduction_excl  reduction_incl\n";
  for (const auto& row : report.rows) {
    std::string line = row.selection;
    line += std::string(name_width - row.selection.size() + 2, ' ');
    char buffer[96];
    std::snprintf(buffer, sizeof(buffer), "%8zu  %15zu  %13d%%  %13d%%",
                  row.relevant, row.read_with_undefined, row.reduction_excl_pct,
                  row.reduction_incl_pct);
    out << line << buffer << "\n";
  }
  out << "total sentences: " << report.total << "\n";
}

inline void print_summary(const RunResult& result, std::ostream& out) {
  out << result.documents.size() << " document(s), " << result.fragment_count << " fragment(s), "
      << result.sentences.size() << " sentence(s), " << result.constraints.size()
      << " constraint(s)\n";
  out << "groups:\n";
  for (const auto& group : result.partition.group_order())
    out << "  " << group << ": " << result.partition.size_of(group) << "\n";
  std::size_t redundant = 0, subsumed = 0, conflicting = 0;
  for (const auto& r : result.relations) {
    if (r.kind == RelationKind::redundant) ++redundant;
    else if (r.kind == RelationKind::subsumed) ++subsumed;
    else ++conflicting;
  }
  out << "relations: redundant=" << redundant << " subsumed=" << subsumed
      << " conflicting=" << conflicting << "\n";
  for (const auto& [name, path] : result.artifacts) out << "wrote " << path.string() << "\n";
}

}  // namespace conrel
