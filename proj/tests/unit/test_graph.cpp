#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "cflr/error.hpp"
#include "cflr/generators.hpp"
#include "cflr/graph.hpp"

using namespace cflr;

namespace {

const WcnfGrammar& dyck() {
  static const auto g = to_wcnf(preset("dyck"));
  return g;
}
const WcnfGrammar& fig4b() {
  static const auto g = to_wcnf(preset("cscvf-wcnf"));
  return g;
}
const WcnfGrammar& fig1b() {
  static const auto g = to_wcnf(preset("fsjpt-opt"));
  return g;
}

std::size_t error_line(std::string_view text, const WcnfGrammar& g) {
  try {
    load_graph_text(text, g);
  } catch (const GraphError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("load a plain graph") {
  auto g = load_graph_text("0 a 1\n1 b 2\n", dyck());
  CHECK(g.vertex_count() == 3);
  CHECK(g.edges().size() == 2);
  CHECK(g.index_universe().empty());
  CHECK(g.edges()[1] == Edge{1, EdgeLabel{"b", std::nullopt}, 2});
}

TEST_CASE("indexed labels split into base and index") {
  auto g = load_graph_text("0 call_f1 1\n1 ret_f1 2\n", fig4b());
  CHECK(g.index_universe() == std::vector<std::string>{"f1"});
  CHECK(g.edges()[0].label == EdgeLabel{"call", 0});
  CHECK(g.edges()[1].label == EdgeLabel{"ret", 0});
  CHECK(g.label_text(g.edges()[0].label) == "call_f1");
}

TEST_CASE("longest indexed base wins") {
  auto g = load_graph_text("0 load_bar_x 1\n1 load_y 2\n2 load_bar_y 0\n", fig1b());
  CHECK(g.index_universe() == std::vector<std::string>{"x", "y"});
  CHECK(g.edges()[0].label == EdgeLabel{"load_bar", 0});
  CHECK(g.edges()[1].label == EdgeLabel{"load", 1});
  CHECK(g.edges()[2].label == EdgeLabel{"load_bar", 1});
}

TEST_CASE("universe size equals the number of distinct load suffixes") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::ostringstream text;
    std::set<std::string> suffixes;
    const int lines = 1 + static_cast<int>(rng() % 40);
    for (int i = 0; i < lines; ++i) {
      const auto s = "f" + std::to_string(rng() % 9);
      text << rng() % 6 << " load_" << s << ' ' << rng() % 6 << '\n';
    }
    // Independent scan of the text.
    std::istringstream in(text.str());
    std::string u, label, v;
    while (in >> u >> label >> v) suffixes.insert(label.substr(5));
    auto g = load_graph_text(text.str(), fig1b());
    CHECK(g.index_universe().size() == suffixes.size());
  }
}

TEST_CASE("non-indexed grammar keeps underscored labels opaque") {
  auto g = load_graph_text("0 load_f1 1\n", dyck());
  CHECK(g.edges()[0].label == EdgeLabel{"load_f1", std::nullopt});
  CHECK(g.index_universe().empty());
}

TEST_CASE("malformed input") {
  CHECK(error_line("0 a 1\n0 a\n", dyck()) == 2);
  CHECK(error_line("0 a 1 2\n", dyck()) == 1);
  CHECK(error_line("# c\n\n0 call 1\n", fig4b()) == 3);
}

TEST_CASE("comments, blank lines, duplicates and vertex names") {
  const std::string text = "# header\n\nx a y\n  \ny b x\nx a y\nself a self\n";
  auto g = load_graph_text(text, dyck());
  CHECK(g.vertex_count() == 3);
  CHECK(g.vertex_names() == std::vector<std::string>{"x", "y", "self"});
  CHECK(g.edges().size() == 3);
  CHECK(g.edges_with_base("a").size() == 2);
}

TEST_CASE("edge count equals data lines for duplicate-free input") {
  auto g = load_graph_text("# c\n0 a 1\n\n1 a 1\n1 b 0\n0 b 0\n", dyck());
  CHECK(g.edges().size() == 4);
}

TEST_CASE("serialize and reload is the identity") {
  auto g = load_graph_text("p call_f2 q\nq a r\nr ret_f2 p\nr call_z p\n", fig4b());
  const auto text = g.serialize();
  auto h = load_graph_text(text, fig4b());
  CHECK(h.edges() == g.edges());
  CHECK(h.index_universe() == g.index_universe());
  CHECK(h.vertex_count() == g.vertex_count());
  CHECK(h.serialize() == text);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    // Generated graphs may hold isolated vertices, which triples cannot
    // express; once loaded, the round trip is exact.
    auto r = random_graph(fig1b(), seed);
    auto loaded = load_graph_text(r.serialize(), fig1b());
    CHECK(loaded.edges().size() == r.edges().size());
    std::set<std::string> original, reloaded;
    for (const auto& e : r.edges())
      original.insert(r.vertex_names()[e.source] + " " + r.label_text(e.label) + " " +
                      r.vertex_names()[e.target]);
    for (const auto& e : loaded.edges())
      reloaded.insert(loaded.vertex_names()[e.source] + " " + loaded.label_text(e.label) + " " +
                      loaded.vertex_names()[e.target]);
    CHECK(original == reloaded);
    auto again = load_graph_text(loaded.serialize(), fig1b());
    CHECK(again.edges() == loaded.edges());
    CHECK(again.index_universe() == loaded.index_universe());
    CHECK(again.vertex_count() == loaded.vertex_count());
  }
}

TEST_CASE("configurable index separator") {
  GraphOptions opts;
  opts.index_separator = '.';
  auto g = load_graph_text("0 call.7 1\n1 ret.7 2\n", fig4b(), opts);
  CHECK(g.index_universe() == std::vector<std::string>{"7"});
  CHECK(g.label_text(g.edges()[0].label) == "call.7");
  CHECK(load_graph_text(g.serialize(), fig4b(), opts).edges() == g.edges());
}

TEST_CASE("synthetic generators") {
  auto c = chain_graph(3);
  CHECK(c.vertex_count() == 7);
  CHECK(c.edges().size() == 6);
  CHECK(c.edges_with_base("a").size() == 3);
  auto gr = grid_graph(3);
  CHECK(gr.vertex_count() == 9);
  CHECK(gr.edges().size() == 12);
  LabeledGraph out;
  CHECK(synthetic_graph("chain:4", out));
  CHECK(out.vertex_count() == 9);
  CHECK_FALSE(synthetic_graph("file.txt", out));
  CHECK_THROWS_AS(synthetic_graph("grid:x", out), Error);
  auto r1 = random_graph(fig4b(), 42), r2 = random_graph(fig4b(), 42);
  CHECK(r1 == r2);
  CHECK(r1.vertex_count() <= 30);
  CHECK(r1.edges().size() <= 120);
  CHECK(r1.index_universe().size() <= 4);
}
