#include <doctest.h>

#include <random>
#include <sstream>

#include "cflr/error.hpp"
#include "cflr/generators.hpp"
#include "cflr/parallel.hpp"
#include "cflr/semiring.hpp"
#include "random_mats.hpp"

using namespace cflr;

namespace {

Symbol N(std::string b, std::optional<std::string> i = std::nullopt) {
  return Symbol::nonterminal(std::move(b), std::move(i));
}

NontermSet set_of(std::initializer_list<Symbol> s) { return NontermSet{std::set<Symbol>(s)}; }

LabeledGraph graph_of(std::string_view text, const WcnfGrammar& g, std::size_t extra = 0) {
  GraphBuilder b(g.indexed_terminal_bases());
  for (std::size_t v = 0; v < extra; ++v) b.add_vertex(std::to_string(v));
  std::istringstream in{std::string(text)};
  std::string u, l, v;
  while (in >> u >> l >> v) b.add_edge(u, l, v);
  return std::move(b).build();
}

std::shared_ptr<const MatrixPlan> plan_for(const WcnfGrammar& g, const LabeledGraph& graph,
                                           bool blocks) {
  return std::make_shared<const MatrixPlan>(g, graph.vertex_count(), graph.index_universe(),
                                            blocks);
}

NontermMatrix random_matrix(std::shared_ptr<const MatrixPlan> plan, std::mt19937_64& rng,
                            double density) {
  NontermMatrix m(plan);
  for (std::size_t u = 0; u < m.unit_count(); ++u) {
    const auto& info = plan->units()[u];
    m.unit(u) = testing::random_mat(rng, info.rows, info.cols, density);
  }
  return m;
}

}  // namespace

TEST_CASE("scalar_mul") {
  const auto fig4b = to_wcnf(preset("cscvf-wcnf"));
  CHECK(scalar_mul({}, set_of({N("A"), N("AH")}), fig4b).members.empty());
  CHECK(scalar_mul(set_of({N("A")}), {}, fig4b).members.empty());
  CHECK(scalar_mul(set_of({N("A")}), set_of({N("AH")}), fig4b) == set_of({N("A")}));

  const auto fig2b = to_wcnf(preset("fica-opt"));
  CHECK(scalar_mul(set_of({N("N1")}), set_of({N("M")}), fig2b) == set_of({N("N2")}));
  CHECK(scalar_mul(set_of({N("N2")}), set_of({N("N1")}), fig2b).members.empty());

  // Indexed operands bind the index; mismatched tags do not combine.
  CHECK(scalar_mul(set_of({N("@call", "x")}), set_of({N("AR", "x")}), fig4b) ==
        set_of({N("AH")}));
  CHECK(scalar_mul(set_of({N("@call", "x")}), set_of({N("AR", "y")}), fig4b).members.empty());
  CHECK(scalar_mul(set_of({N("A")}), set_of({N("@ret", "y")}), fig4b) == set_of({N("AR", "y")}));

  // A rule whose result alone carries the index yields every tag.
  const auto bc = to_wcnf(parse_grammar("C_[i] -> A B\nA -> a\nB -> b\nD -> x_[i]"));
  const std::vector<std::string> universe{"p", "q"};
  CHECK(scalar_mul(set_of({N("A")}), set_of({N("B")}), bc, universe) ==
        set_of({N("C", "p"), N("C", "q")}));
}

TEST_CASE("scalar_mul distributes over union") {
  const auto g = to_wcnf(parse_grammar(
      "A -> B C | C C | a\nB -> A E | b\nC -> D B | A A | c\nD -> E A | d\nE -> B D | e"));
  std::vector<Symbol> all;
  for (const auto& s : g.cfg.nonterminals)
    if (!WcnfGrammar::is_helper(s)) all.push_back(s);
  REQUIRE(all.size() == 5);
  auto subset = [&](unsigned mask) {
    NontermSet s;
    for (unsigned k = 0; k < all.size(); ++k)
      if (mask >> k & 1U) s.members.insert(all[k]);
    return s;
  };
  const unsigned n = 1U << all.size();
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b) {
      const auto ab = set_union(subset(a), subset(b));
      for (unsigned c = 0; c < n; c += 3) {
        CHECK(scalar_mul(ab, subset(c), g) ==
              set_union(scalar_mul(subset(a), subset(c), g), scalar_mul(subset(b), subset(c), g)));
        CHECK(scalar_mul(subset(c), ab, g) ==
              set_union(scalar_mul(subset(c), subset(a), g), scalar_mul(subset(c), subset(b), g)));
      }
    }
}

TEST_CASE("rule shapes") {
  const auto shape = [](std::string_view text) {
    const auto g = to_wcnf(parse_grammar(text));
    return classify(g.binary_rules.front());
  };
  CHECK(shape("C -> A B\nA -> a\nB -> b") == RuleShape::kPlain);
  CHECK(shape("C -> A_[i] B_[i]\nA_[i] -> a_[i]\nB_[i] -> b_[i]") == RuleShape::kOperandsIndexed);
  CHECK(shape("C_[i] -> A B_[i]\nA -> a\nB_[i] -> b_[i]") == RuleShape::kRightIndexed);
  CHECK(shape("C_[i] -> A_[i] B\nA_[i] -> a_[i]\nB -> b") == RuleShape::kLeftIndexed);
  CHECK(shape("C_[i] -> A_[i] B_[i]\nA_[i] -> a_[i]\nB_[i] -> b_[i]") == RuleShape::kAllIndexed);
  CHECK(shape("C -> A_[i] B\nA_[i] -> a_[i]\nB -> b") == RuleShape::kCollapseLeft);
  CHECK(shape("C -> A B_[i]\nA -> a\nB_[i] -> b_[i]") == RuleShape::kCollapseRight);
  CHECK(shape("C_[i] -> A B\nA -> a\nB -> b") == RuleShape::kBroadcast);
}

TEST_CASE("initial_matrix") {
  SUBCASE("epsilon rule gives the diagonal") {
    const auto g = to_wcnf(parse_grammar("A -> eps | a"));
    const auto graph = graph_of("", g, 4);
    const auto m = initial_matrix(graph, plan_for(g, graph, false));
    CHECK(m.pairs("A") == BoolMat::identity(4));
  }
  SUBCASE("single edge") {
    const auto g = to_wcnf(parse_grammar("S -> a"));
    const auto graph = graph_of("0 a 1", g);
    const auto m = initial_matrix(graph, plan_for(g, graph, false));
    CHECK(m.pairs("S").coords() == std::vector<Coord>{{0, 1}});
  }
  SUBCASE("memory-alias WCNF grammar") {
    const auto g = to_wcnf(preset("fica-opt"));
    const auto graph = graph_of("0 d_bar 1\n1 d 2", g);
    const auto m = initial_matrix(graph, plan_for(g, graph, true));
    CHECK(m.pairs("N1").coords() == std::vector<Coord>{{0, 1}});
    CHECK(m.pairs("N3").coords() == std::vector<Coord>{{1, 2}});
    for (const auto* name : {"M", "N2", "AM"}) CHECK(m.pairs(name).empty());
  }
  SUBCASE("indexed terminals fill their slot") {
    const auto g = to_wcnf(preset("cscvf-wcnf"));
    const auto graph = graph_of("0 call_x 1\n1 call_y 2", g);
    for (bool blocks : {false, true}) {
      const auto m = initial_matrix(graph, plan_for(g, graph, blocks));
      CHECK(m.fact_count("@call") == 2);
      CHECK(m.cell(0, 1) == set_of({N("@call", "x")}));
      CHECK(m.cell(1, 2) == set_of({N("@call", "y")}));
      CHECK(m.cell(0, 0) == set_of({N("A")}));
    }
  }
  SUBCASE("mismatched plan") {
    const auto g = to_wcnf(preset("dyck"));
    const auto graph = graph_of("0 a 1", g);
    const auto plan = std::make_shared<const MatrixPlan>(g, 5, std::vector<std::string>{}, false);
    CHECK_THROWS_AS(initial_matrix(graph, plan), Error);
  }
}

TEST_CASE("semiring_matmul of zero is zero") {
  const auto g = to_wcnf(preset("fsjpt-opt"));
  const auto graph = random_graph(g, 3, {6, 10, 2});
  for (bool blocks : {false, true}) {
    const auto plan = plan_for(g, graph, blocks);
    NontermMatrix zero(plan);
    CHECK(semiring_matmul(zero, zero).total_nnz() == 0);
  }
}

TEST_CASE("semiring_matmul on the two-vertex call/return graph") {
  const auto g = to_wcnf(preset("cscvf-wcnf"));
  const auto graph = graph_of("0 call_f1 1\n1 ret_f1 0", g);
  for (bool blocks : {false, true}) {
    const auto plan = plan_for(g, graph, blocks);
    const auto m0 = initial_matrix(graph, plan);
    const auto m1 = elementwise_union(m0, semiring_matmul(m0, m0));
    CHECK(m1.cell(1, 0).members.contains(N("AR", "f1")));
    CHECK_FALSE(m1.cell(0, 0).members.contains(N("AH")));
    const auto m2 = elementwise_union(m1, semiring_matmul(m1, m1));
    CHECK(m2.cell(0, 0).members.contains(N("AH")));
  }
}

TEST_CASE("semiring_matmul equals the cell formula") {
  std::mt19937_64 rng(17);
  for (const auto* name : {"fsjpt-opt", "fsca-wcnf", "cscvf-wcnf", "fica-opt", "dyck"}) {
    const auto g = to_wcnf(preset(name));
    for (int trial = 0; trial < 6; ++trial) {
      const auto graph = random_graph(g, 100 + trial, {8, 12, 3});
      const Index n = graph.vertex_count();
      for (bool blocks : {false, true}) {
        const auto plan = plan_for(g, graph, blocks);
        const auto left = random_matrix(plan, rng, 0.15);
        const auto right = random_matrix(plan, rng, 0.15);
        ThreadPool pool(3);
        const auto product = semiring_matmul(left, right, nullptr, trial % 2 ? &pool : nullptr);
        bool same = true;
        for (Index i = 0; i < n; ++i)
          for (Index j = 0; j < n; ++j) {
            NontermSet expected;
            for (Index k = 0; k < n; ++k)
              expected = set_union(expected, scalar_mul(left.cell(i, k), right.cell(k, j), g,
                                                        graph.index_universe()));
            same = same && product.cell(i, j) == expected;
          }
        INFO(name << " blocks=" << blocks);
        CHECK(same);
      }
    }
  }
}

TEST_CASE("block and per-index plans agree on products") {
  std::mt19937_64 rng(23);
  for (const auto* name : {"fsjpt-opt", "cscvf-wcnf", "fsca-wcnf"}) {
    const auto g = to_wcnf(preset(name));
    for (int trial = 0; trial < 10; ++trial) {
      const auto graph = random_graph(g, 200 + trial, {10, 30, 3});
      const auto per_index = plan_for(g, graph, false);
      const auto blocks = plan_for(g, graph, true);
      const auto a = initial_matrix(graph, per_index);
      const auto b = initial_matrix(graph, blocks);
      CHECK(a == b);
      const auto pa = semiring_matmul(a, a);
      const auto pb = semiring_matmul(b, b);
      CHECK(pa == pb);
      CHECK(semiring_matmul(pa, a) == semiring_matmul(pb, b));
    }
  }
}

TEST_CASE("matmul counters and thread count") {
  const auto g = to_wcnf(preset("fsjpt-opt"));
  const auto graph = random_graph(g, 9, {12, 40, 3});
  const auto plan = plan_for(g, graph, true);
  const auto m = initial_matrix(graph, plan);
  OpCounter serial, parallel;
  ThreadPool pool(4);
  const auto a = semiring_matmul(m, m, &serial);
  const auto b = semiring_matmul(m, m, &parallel, &pool);
  CHECK(a == b);
  CHECK(serial == parallel);
  CHECK(serial.spgemm_calls == plan->products().size());
}
