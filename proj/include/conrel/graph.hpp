#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "conrel/corpus.hpp"
#include "conrel/errors.hpp"
#include "conrel/grouping.hpp"
#include "conrel/relations.hpp"
#include "conrel/utf8.hpp"

namespace conrel {

struct GraphNode {
  std::string id;
  std::string text;  // full sentence text; DOT labels truncate it
  std::string group;
  std::string doc;
};

// Constraint sentences as nodes, grouped by topic, with mined relations as
// edges. Groups keep partition order, "undefined" last.
struct ConstraintGraph {
  std::vector<GraphNode> nodes;
  std::vector<Relation> edges;
  std::vector<std::string> groups;
};

inline ConstraintGraph build_graph(const Partition& partition,
                                   const std::vector<Relation>& relations,
                                   const std::vector<Sentence>& sentences) {
  std::map<std::string, const Sentence*> by_id;
  for (const auto& s : sentences) by_id.emplace(s.sentence_id, &s);

  ConstraintGraph graph;
  graph.groups = partition.group_order();
  std::map<std::string, bool> known;
  for (const auto& group : graph.groups) {
    for (const auto& id : partition.members(group)) {
      const auto it = by_id.find(id);
      if (it == by_id.end())
        throw integrity_error("partitioned sentence \"" + id + "\" has no source sentence");
      graph.nodes.push_back(GraphNode{id, it->second->text, group, it->second->doc_id});
      known[id] = true;
    }
  }
  for (const auto& relation : relations) {
    for (const auto* endpoint : {&relation.a, &relation.b}) {
      if (!known.count(*endpoint))
        throw integrity_error("relation endpoint \"" + *endpoint +
                              "\" is not a partitioned sentence");
    }
  }
  graph.edges = relations;
  return graph;
}

namespace detail {

inline std::string dot_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

struct EdgeStyle {
  std::string_view color;
  std::string_view label;
  bool directed;
};

inline EdgeStyle edge_style(RelationKind kind) {
  switch (kind) {
    case RelationKind::redundant: return {"green", "r", false};
    case RelationKind::subsumed: return {"orange", "s", true};
    case RelationKind::conflicting: return {"red", "c", false};
  }
  return {"black", "?", false};
}

}  // namespace detail

// Deterministic DOT rendering: one cluster per non-empty group, node labels
// are "id\nexcerpt" with the excerpt cut at 120 characters, edges styled
// r=green / s=orange / c=red, subsumed drawn from subsumed to subsuming.
inline std::string to_dot(const ConstraintGraph& graph) {
  std::string out;
  out += "digraph constraints {\n";
  out += "  rankdir=LR;\n";
  out += "  node [shape=box, fontsize=10];\n";
  for (std::size_t g = 0; g < graph.groups.size(); ++g) {
    const auto& group = graph.groups[g];
    bool open = false;
    for (const auto& node : graph.nodes) {
      if (node.group != group) continue;
      if (!open) {
        out += "  subgraph cluster_" + std::to_string(g) + " {\n";
        out += "    label=\"" + detail::dot_escape(group) + "\";\n";
        open = true;
      }
      const std::string label = detail::dot_escape(node.id) + "\\n" +
                                detail::dot_escape(utf8::truncate(node.text, 120));
      out += "    \"" + detail::dot_escape(node.id) + "\" [label=\"" + label + "\"];\n";
    }
    if (open) out += "  }\n";
  }
  for (const auto& edge : graph.edges) {
    const auto style = detail::edge_style(edge.kind);
    std::string_view from = edge.a;
    std::string_view to = edge.b;
    if (edge.kind == RelationKind::subsumed &&
        edge.direction == SubsumptionDirection::b_subsumed_by_a)
      std::swap(from, to);
    out += "  \"" + detail::dot_escape(from) + "\" -> \"" + detail::dot_escape(to) + "\" [color=" +
           std::string(style.color) + ", label=\"" + std::string(style.label) + "\"";
    if (!style.directed) out += ", dir=none";
    out += "];\n";
  }
  out += "}\n";
  return out;
}

// JSON with fixed key order; parses back losslessly via graph_from_json.
inline std::string to_json(const ConstraintGraph& graph) {
  nlohmann::ordered_json j;
  j["nodes"] = nlohmann::ordered_json::array();
  for (const auto& node : graph.nodes) {
    nlohmann::ordered_json n;
    n["id"] = node.id;
    n["text"] = node.text;
    n["group"] = node.group;
    n["doc"] = node.doc;
    j["nodes"].push_back(std::move(n));
  }
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& edge : graph.edges) {
    nlohmann::ordered_json e;
    e["kind"] = std::string(to_string(edge.kind));
    e["a"] = edge.a;
    e["b"] = edge.b;
    e["similarity"] = edge.similarity;
    if (edge.direction) e["direction"] = std::string(to_string(*edge.direction));
    j["edges"].push_back(std::move(e));
  }
  j["groups"] = graph.groups;
  return j.dump(2) + "\n";
}

inline ConstraintGraph graph_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    ConstraintGraph graph;
    for (const auto& n : j.at("nodes"))
      graph.nodes.push_back(GraphNode{n.at("id"), n.at("text"), n.at("group"), n.at("doc")});
    for (const auto& e : j.at("edges")) {
      Relation r;
      const std::string kind = e.at("kind");
      if (kind == "redundant") r.kind = RelationKind::redundant;
      else if (kind == "subsumed") r.kind = RelationKind::subsumed;
      else if (kind == "conflicting") r.kind = RelationKind::conflicting;
      else throw integrity_error("unknown relation kind \"" + kind + "\"");
      r.a = e.at("a");
      r.b = e.at("b");
      r.similarity = e.at("similarity");
      if (e.contains("direction")) {
        const std::string d = e.at("direction");
        r.direction = d == "a_subsumed_by_b" ? SubsumptionDirection::a_subsumed_by_b
                                             : SubsumptionDirection::b_subsumed_by_a;
      }
      graph.edges.push_back(std::move(r));
    }
    for (const auto& g : j.at("groups")) graph.groups.push_back(g);
    return graph;
  } catch (const nlohmann::json::exception& e) {
    throw integrity_error(std::string("malformed graph JSON: ") + e.what());
  }
}

}  // namespace conrel
