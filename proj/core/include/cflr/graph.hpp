#pragma once

// Edge-labeled directed graphs in the `<u> <label> <v>` triple format.

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cflr {

struct WcnfGrammar;

using VertexId = std::uint32_t;

/// Label of one edge. `slot` indexes LabeledGraph::index_universe and is
/// set only for labels whose base the grammar declares as indexed.
struct EdgeLabel {
  std::string base;
  std::optional<std::uint32_t> slot;

  friend auto operator<=>(const EdgeLabel&, const EdgeLabel&) = default;
  friend bool operator==(const EdgeLabel&, const EdgeLabel&) = default;
};

struct Edge {
  VertexId source = 0;
  EdgeLabel label;
  VertexId target = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct GraphOptions {
  /// Character separating an indexed base from its index (`load_f12`).
  char index_separator = '_';
};

class LabeledGraph {
 public:
  LabeledGraph() = default;

  std::size_t vertex_count() const noexcept { return vertex_names_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// Index tags in first-appearance order.
  const std::vector<std::string>& index_universe() const noexcept { return universe_; }
  const std::vector<std::string>& vertex_names() const noexcept { return vertex_names_; }

  /// Edges carrying a label base, in insertion order.
  std::vector<Edge> edges_with_base(std::string_view base) const;

  /// Spelling of a label as it appeared in the input (`load_f12`).
  std::string label_text(const EdgeLabel& label) const;

  /// Triple text with interned integer vertex ids.
  std::string serialize() const;

  friend bool operator==(const LabeledGraph&, const LabeledGraph&) = default;

 private:
  friend class GraphBuilder;

  std::vector<std::string> vertex_names_;
  std::vector<Edge> edges_;
  std::vector<std::string> universe_;
  char separator_ = '_';
};

/// Incremental construction; also used by the synthetic generators.
class GraphBuilder {
 public:
  GraphBuilder(std::set<std::string> indexed_bases, GraphOptions options = {});

  /// Interns both endpoints; returns false when the triple is a duplicate.
  /// Throws GraphError for an indexed base without an index part.
  bool add_edge(std::string_view source, std::string_view label, std::string_view target,
                std::size_t line = 0);
  /// Registers an isolated vertex.
  VertexId add_vertex(std::string_view name);

  LabeledGraph build() &&;

 private:
  EdgeLabel resolve_label(std::string_view label, std::size_t line);

  std::set<std::string> indexed_bases_;
  GraphOptions options_;
  LabeledGraph graph_;
  std::unordered_map<std::string, VertexId> vertex_ids_;
  std::unordered_map<std::string, std::uint32_t> slots_;
  std::set<Edge> seen_;
};

/// Reads a triple stream. Labels whose base is an indexed terminal of `g`
/// are split into base and index. Throws GraphError with a line number.
LabeledGraph load_graph(std::istream& in, const WcnfGrammar& g, GraphOptions options = {});
LabeledGraph load_graph_text(std::string_view text, const WcnfGrammar& g,
                             GraphOptions options = {});

}  // namespace cflr
