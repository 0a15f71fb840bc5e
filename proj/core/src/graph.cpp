#include "cflr/graph.hpp"

#include <sstream>
#include <utility>

#include "cflr/error.hpp"
#include "cflr/grammar.hpp"

namespace cflr {

std::vector<Edge> LabeledGraph::edges_with_base(std::string_view base) const {
  std::vector<Edge> out;
  for (const auto& e : edges_)
    if (e.label.base == base) out.push_back(e);
  return out;
}

std::string LabeledGraph::label_text(const EdgeLabel& label) const {
  if (!label.slot) return label.base;
  return label.base + separator_ + universe_.at(*label.slot);
}

std::string LabeledGraph::serialize() const {
  std::ostringstream out;
  for (const auto& e : edges_)
    out << e.source << ' ' << label_text(e.label) << ' ' << e.target << '\n';
  return out.str();
}

GraphBuilder::GraphBuilder(std::set<std::string> indexed_bases, GraphOptions options)
    : indexed_bases_(std::move(indexed_bases)), options_(options) {
  graph_.separator_ = options_.index_separator;
}

VertexId GraphBuilder::add_vertex(std::string_view name) {
  auto [it, inserted] =
      vertex_ids_.emplace(std::string(name), static_cast<VertexId>(graph_.vertex_names_.size()));
  if (inserted) graph_.vertex_names_.emplace_back(name);
  return it->second;
}

// An exact match of a non-indexed label wins; otherwise the longest
// indexed base followed by the separator claims the label.
EdgeLabel GraphBuilder::resolve_label(std::string_view label, std::size_t line) {
  if (indexed_bases_.contains(std::string(label)))
    throw GraphError("label '" + std::string(label) + "' is indexed in the grammar but has no index",
                     line);
  const std::string* best = nullptr;
  for (const auto& base : indexed_bases_) {
    if (label.size() > base.size() + 1 && label.starts_with(base) &&
        label[base.size()] == options_.index_separator) {
      if (!best || base.size() > best->size()) best = &base;
    }
  }
  if (!best) return EdgeLabel{std::string(label), std::nullopt};

  const std::string tag(label.substr(best->size() + 1));
  auto [it, inserted] =
      slots_.emplace(tag, static_cast<std::uint32_t>(graph_.universe_.size()));
  if (inserted) graph_.universe_.push_back(tag);
  return EdgeLabel{*best, it->second};
}

bool GraphBuilder::add_edge(std::string_view source, std::string_view label,
                            std::string_view target, std::size_t line) {
  Edge e;
  e.source = add_vertex(source);
  e.target = add_vertex(target);
  e.label = resolve_label(label, line);
  if (!seen_.insert(e).second) return false;
  graph_.edges_.push_back(std::move(e));
  return true;
}

LabeledGraph GraphBuilder::build() && { return std::move(graph_); }

LabeledGraph load_graph(std::istream& in, const WcnfGrammar& g, GraphOptions options) {
  GraphBuilder builder(g.indexed_terminal_bases(), options);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string u, label, v, extra;
    if (!(fields >> u)) continue;
    if (u.starts_with('#')) continue;
    if (!(fields >> label >> v) || (fields >> extra))
      throw GraphError("expected '<source> <label> <target>'", line_no);
    builder.add_edge(u, label, v, line_no);
  }
  return std::move(builder).build();
}

LabeledGraph load_graph_text(std::string_view text, const WcnfGrammar& g, GraphOptions options) {
  std::istringstream in{std::string(text)};
  return load_graph(in, g, options);
}

}  // namespace cflr
