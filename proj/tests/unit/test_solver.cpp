#include <doctest.h>

#include <sstream>

#include "cflr/error.hpp"
#include "cflr/generators.hpp"
#include "cflr/oracle.hpp"
#include "cflr/solver.hpp"

using namespace cflr;

namespace {

LabeledGraph graph_of(std::string_view text, const WcnfGrammar& g, std::size_t vertices = 0) {
  GraphBuilder b(g.indexed_terminal_bases());
  for (std::size_t v = 0; v < vertices; ++v) b.add_vertex(std::to_string(v));
  std::istringstream in{std::string(text)};
  std::string u, l, v;
  while (in >> u >> l >> v) b.add_edge(u, l, v);
  return std::move(b).build();
}

std::vector<VariantFlags> all_flag_sets() {
  std::vector<VariantFlags> out;
  for (int mask = 0; mask < 16; ++mask) {
    VariantFlags f{.delta = (mask & 1) != 0,
                   .dual_format = (mask & 2) != 0,
                   .lazy_union = (mask & 4) != 0,
                   .indexed_blocks = (mask & 8) != 0};
    if (!f.delta && (f.dual_format || f.lazy_union)) continue;
    out.push_back(f);
  }
  return out;
}

}  // namespace

TEST_CASE("variant names and flag rules") {
  CHECK(variant_flags("ma") == VariantFlags{});
  CHECK(variant_flags("ma1") == VariantFlags{.delta = true});
  CHECK(variant_flags("ma14") == VariantFlags{.delta = true, .indexed_blocks = true});
  const VariantFlags all{.delta = true, .dual_format = true, .lazy_union = true,
                         .indexed_blocks = true};
  CHECK(variant_flags("ma1234") == all);
  CHECK(variant_flags("ma12345") == all);
  CHECK(variant_names().size() == 5);
  CHECK_THROWS_AS(variant_flags("ma2"), Error);
  CHECK_THROWS_AS(VariantFlags{.dual_format = true}.validate(), Error);
  CHECK_THROWS_AS(VariantFlags{.lazy_union = true}.validate(), Error);
  CHECK_THROWS_AS((VariantFlags{.delta = true, .forest_factor = 1}.validate()), Error);
  CHECK(all_flag_sets().size() == 10);
}

TEST_CASE("empty graph without epsilon rules") {
  const auto g = to_wcnf(preset("dyck"));
  const auto graph = graph_of("", g, 5);
  for (const auto& f : all_flag_sets()) CHECK(solve(graph, g, f).matrix.total_nnz() == 0);
}

TEST_CASE("balanced path") {
  const auto g = to_wcnf(preset("dyck"));
  const auto graph = graph_of("0 a 1\n1 a 2\n2 b 3\n3 b 4", g);
  for (const auto& f : all_flag_sets())
    CHECK(solve(graph, g, f).matrix.pairs("S").coords() == std::vector<Coord>{{0, 4}, {1, 3}});
}

TEST_CASE("matched call and return") {
  const auto g = to_wcnf(preset("cscvf-wcnf"));
  const auto graph = graph_of("0 call_f1 1\n1 a 2\n2 ret_f1 3", g);
  for (const auto& f : all_flag_sets()) {
    const auto m = solve(graph, g, f).matrix;
    const auto a = m.pairs("A");
    CHECK(a.contains(0, 3));
    for (Index v = 0; v < 4; ++v) CHECK(a.contains(v, v));
    CHECK(m.pairs("AH").contains(0, 3));
  }
}

TEST_CASE("all variants agree with each other and with the oracle") {
  for (const auto& name : preset_names()) {
    const auto g = to_wcnf(preset(name));
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      const auto graph = random_graph(g, 500 + seed, {14, 40, 3});
      const auto expected = oracle_solve(graph, g);
      for (const auto& f : all_flag_sets()) {
        INFO(name << " seed " << seed << " delta=" << f.delta << " dual=" << f.dual_format
                  << " lazy=" << f.lazy_union << " blocks=" << f.indexed_blocks);
        CHECK(solve(graph, g, f).matrix.triples() == expected);
      }
    }
  }
}

TEST_CASE("forest factor does not change results") {
  const auto g = to_wcnf(preset("fsjpt-opt"));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto graph = random_graph(g, seed);
    auto f = variant_flags("ma1234");
    const auto base = solve(graph, g, f).matrix;
    for (std::uint32_t b : {2u, 3u, 100u}) {
      f.forest_factor = b;
      CHECK(solve(graph, g, f).matrix == base);
    }
  }
}

TEST_CASE("iteration invariants") {
  for (const auto* name : {"fsjpt", "cscvf-wcnf", "fica-opt", "dyck"}) {
    const auto g = to_wcnf(preset(name));
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto graph = random_graph(g, 900 + seed, {10, 30, 2});
      for (const auto& f : all_flag_sets()) {
        SolveOptions options;
        options.flags = f;
        std::size_t previous_nnz = 0, calls = 0;
        bool disjoint = true, monotone = true;
        options.observer = [&](const IterationView& v) {
          ++calls;
          for (std::size_t u = 0; u < v.m.unit_count(); ++u)
            disjoint = disjoint && intersection(v.delta.unit(u), v.m_old.unit(u)).empty();
          monotone = monotone && v.m.total_nnz() >= previous_nnz;
          previous_nnz = v.m.total_nnz();
        };
        const auto r = solve(graph, g, options);
        CHECK(disjoint);
        CHECK(monotone);
        CHECK(calls == r.iterations);
        CHECK(r.iteration_counters.size() == r.iterations);
        // Every iteration but the last adds at least one entry.
        CHECK(r.iterations <= r.matrix.total_nnz() + 2);
        OpCounter sum;
        for (const auto& c : r.iteration_counters) sum += c;
        CHECK(sum == r.counters);
      }
    }
  }
}

TEST_CASE("dual format changes layouts only") {
  const auto g = to_wcnf(preset("fica-opt"));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto graph = random_graph(g, seed);
    const auto a = solve(graph, g, VariantFlags{.delta = true});
    const auto b = solve(graph, g, VariantFlags{.delta = true, .dual_format = true});
    CHECK(a.matrix == b.matrix);
    CHECK(a.iterations == b.iterations);
  }
}

TEST_CASE("results and counters do not depend on the thread count") {
  for (const auto* name : {"fsjpt-opt", "fsca-wcnf", "dyck"}) {
    const auto g = to_wcnf(preset(name));
    const auto graph = random_graph(g, 77, {30, 120, 4});
    for (const auto& variant : variant_names()) {
      SolveOptions one, four;
      one.flags = four.flags = variant_flags(variant);
      four.threads = 4;
      const auto a = solve(graph, g, one);
      const auto b = solve(graph, g, four);
      CHECK(a.matrix.triples() == b.matrix.triples());
      CHECK(a.counters == b.counters);
      CHECK(a.iteration_counters == b.iteration_counters);
    }
  }
}

TEST_CASE("deadline") {
  const auto g = to_wcnf(preset("dyck"));
  const auto graph = chain_graph(200);
  SolveOptions options;
  options.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  CHECK_THROWS_AS(solve(graph, g, options), TimeoutError);
  options.flags = variant_flags("ma1234");
  CHECK_THROWS_AS(solve(graph, g, options), TimeoutError);
}

TEST_CASE("index mismatch between graph and grammar") {
  const auto fig4b = to_wcnf(preset("cscvf-wcnf"));
  const auto plain = to_wcnf(parse_grammar("A -> call"));
  GraphBuilder b({"call"});
  b.add_edge("0", "call_x", "1");
  const auto graph = std::move(b).build();
  CHECK_THROWS_AS(solve(graph, plain, VariantFlags{}), Error);
  CHECK_NOTHROW(solve(graph, fig4b, VariantFlags{}));
}
