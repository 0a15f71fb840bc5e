#include <doctest.h>

#include <sstream>

#include "cflr/error.hpp"
#include "cflr/generators.hpp"
#include "cflr/report.hpp"

using namespace cflr;

namespace {

LabeledGraph graph_of(std::string_view text, const WcnfGrammar& g) {
  GraphBuilder b(g.indexed_terminal_bases());
  std::istringstream in{std::string(text)};
  std::string u, l, v;
  while (in >> u >> l >> v) b.add_edge(u, l, v);
  return std::move(b).build();
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("report keys and pair counts") {
  const auto g = to_wcnf(preset("cscvf-wcnf"));
  const auto graph = graph_of("0 call_x 1\n1 a 2\n2 ret_x 3\n0 call_y 1\n2 ret_y 0", g);
  const auto result = solve(graph, g, variant_flags("ma14"));
  const auto report = make_report(result, graph, "ma14", "cscvf-wcnf", "inline", 0.5);
  const auto text = report.serialize();
  std::vector<std::string> keys;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) keys.push_back(line.substr(0, line.find('=')));
  CHECK(keys == std::vector<std::string>{"variant", "grammar", "graph", "vertices", "edges",
                                         "iterations", "wall_seconds", "peak_rss_bytes",
                                         "spgemm_calls", "scalar_ops", "union_entries",
                                         "driver_entries", "pairs.A", "pairs.AH", "pairs.AR"});
  for (const auto& [name, count] : report.pairs)
    CHECK(count == count_lines(pair_lines(result.matrix, graph, name)));
  CHECK(report.pairs.at("AR") == result.matrix.fact_count("AR"));
  CHECK(report.pairs.at("A") == result.matrix.pairs("A").nnz());
  CHECK(text.find("variant=ma14\n") == 0);
}

TEST_CASE("pair lines") {
  const auto g = to_wcnf(preset("dyck"));
  const auto graph = graph_of("v0 a v1\nv1 a v2\nv2 b v3\nv3 b v4", g);
  const auto result = solve(graph, g, variant_flags("ma"));
  CHECK(pair_lines(result.matrix, graph, "S") == "v0 v4\nv1 v3\n");
  CHECK_THROWS_AS(pair_lines(result.matrix, graph, "Q"), Error);

  const auto g4 = to_wcnf(preset("cscvf-wcnf"));
  const auto graph4 = graph_of("0 call_f1 1\n1 ret_f1 2", g4);
  const auto r4 = solve(graph4, g4, variant_flags("ma1234"));
  CHECK(pair_lines(r4.matrix, graph4, "AR") == "1 2 f1\n");
}

TEST_CASE("timing statistics") {
  const auto one = timing_stats({2.0});
  CHECK(one.mean == doctest::Approx(2.0));
  CHECK_FALSE(one.stddev);
  const auto many = timing_stats({1.0, 2.0, 3.0, 4.0});
  CHECK(many.mean == doctest::Approx(2.5));
  REQUIRE(many.stddev);
  CHECK(*many.stddev == doctest::Approx(1.2909944));
}

TEST_CASE("check passes for every variant and reports a corrupted solver") {
  const auto g = to_wcnf(preset("dyck"));
  const auto graph = graph_of("0 a 1\n1 a 2\n2 b 3\n3 b 4", g);
  CHECK_FALSE(run_check(graph, g, {"ma", "ma1", "ma14", "ma1234"}));

  SolveFn drop_last = [](const LabeledGraph& gr, const WcnfGrammar& wg, const VariantFlags& f) {
    auto facts = solve_triples(gr, wg, f);
    std::erase_if(facts, [](const ReachTriple& t) {
      return t.nonterminal.base == "S" && t.source == 0 && t.target == 4;
    });
    return facts;
  };
  const auto d = run_check(graph, g, {"ma1"}, drop_last);
  REQUIRE(d);
  CHECK(d->variant == "ma1");
  CHECK(d->in_oracle);
  CHECK(d->triple == ReachTriple{Symbol::nonterminal("S"), 0, 4});
  CHECK(d->describe(graph) == "divergence in ma1: S (0, 4) present in oracle, absent in ma1");

  SolveFn add_extra = [](const LabeledGraph& gr, const WcnfGrammar& wg, const VariantFlags& f) {
    auto facts = solve_triples(gr, wg, f);
    facts.push_back({Symbol::nonterminal("S"), 4, 0});
    std::sort(facts.begin(), facts.end());
    return facts;
  };
  const auto e = run_check(graph, g, {"ma"}, add_extra);
  REQUIRE(e);
  CHECK_FALSE(e->in_oracle);

  GraphBuilder empty_builder({});
  const auto empty = std::move(empty_builder).build();
  CHECK_FALSE(run_check(empty, g, {"ma", "ma1", "ma14", "ma1234"}));
}

TEST_CASE("peak memory is reported on Linux") {
  const auto rss = peak_rss_bytes();
  REQUIRE(rss);
  CHECK(*rss > 0);
}
