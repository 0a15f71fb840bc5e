#include "cflr/generators.hpp"

#include <charconv>
#include <random>
#include <vector>

#include "cflr/error.hpp"

namespace cflr {

LabeledGraph chain_graph(std::size_t n) {
  GraphBuilder b({});
  b.add_vertex("0");
  for (std::size_t i = 0; i < 2 * n; ++i)
    b.add_edge(std::to_string(i), i < n ? "a" : "b", std::to_string(i + 1));
  return std::move(b).build();
}

LabeledGraph grid_graph(std::size_t n) {
  GraphBuilder b({});
  auto id = [n](std::size_t r, std::size_t c) { return std::to_string(r * n + c); };
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      b.add_vertex(id(r, c));
      if (c + 1 < n) b.add_edge(id(r, c), "a", id(r, c + 1));
      if (r + 1 < n) b.add_edge(id(r, c), "b", id(r + 1, c));
    }
  return std::move(b).build();
}

LabeledGraph random_graph(const WcnfGrammar& g, std::uint64_t seed,
                          const RandomGraphOptions& options) {
  std::mt19937_64 rng(seed);
  auto pick = [&rng](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };

  std::vector<Symbol> terminals;
  for (const auto& t : g.cfg.terminals)
    if (t.is_terminal()) terminals.push_back(t);

  const std::size_t n = pick(1, std::max<std::size_t>(1, options.max_vertices));
  const std::size_t m = terminals.empty() ? 0 : pick(0, options.max_edges);
  const std::size_t tags = pick(1, std::max<std::size_t>(1, options.max_index_values));

  GraphBuilder b(g.indexed_terminal_bases());
  for (std::size_t v = 0; v < n; ++v) b.add_vertex(std::to_string(v));
  for (std::size_t e = 0; e < m; ++e) {
    const auto& t = terminals[pick(0, terminals.size() - 1)];
    std::string label = t.base;
    if (t.indexed()) label += "_f" + std::to_string(pick(0, tags - 1));
    b.add_edge(std::to_string(pick(0, n - 1)), label, std::to_string(pick(0, n - 1)));
  }
  return std::move(b).build();
}

bool synthetic_graph(const std::string& spec, LabeledGraph& out) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return false;
  const auto kind = spec.substr(0, colon);
  if (kind != "chain" && kind != "grid") return false;
  std::size_t n = 0;
  const char* first = spec.data() + colon + 1;
  const char* last = spec.data() + spec.size();
  auto [ptr, ec] = std::from_chars(first, last, n);
  if (ec != std::errc() || ptr != last || first == last)
    throw Error("bad instance size in '" + spec + "'");
  out = kind == "chain" ? chain_graph(n) : grid_graph(n);
  return true;
}

}  // namespace cflr
