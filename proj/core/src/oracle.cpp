#include "cflr/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace cflr {

namespace {

struct Fact {
  std::uint32_t sym;
  VertexId u;
  VertexId v;
};

std::uint64_t key(std::uint32_t sym, VertexId x) {
  return (static_cast<std::uint64_t>(sym) << 32) | x;
}

class Closure {
 public:
  std::uint32_t intern(const Symbol& s) {
    auto [it, inserted] = ids_.emplace(s, static_cast<std::uint32_t>(symbols_.size()));
    if (inserted) symbols_.push_back(s);
    return it->second;
  }

  void add_rule(const Symbol& c, const Symbol& a, const Symbol& b) {
    const auto ci = intern(c), ai = intern(a), bi = intern(b);
    if (!rules_.insert({ci, ai, bi}).second) return;
    by_left_[ai].push_back({ci, bi});
    by_right_[bi].push_back({ci, ai});
  }

  void add_fact(std::uint32_t sym, VertexId u, VertexId v) {
    const auto fact_key = std::make_tuple(sym, u, v);
    if (!seen_.insert(fact_key).second) return;
    out_[key(sym, u)].push_back(v);
    in_[key(sym, v)].push_back(u);
    work_.push_back({sym, u, v});
  }

  void run() {
    while (!work_.empty()) {
      const Fact f = work_.front();
      work_.pop_front();
      // f as left operand: (f.sym, u, v) (b, v, w) -> (c, u, w).
      if (auto it = by_left_.find(f.sym); it != by_left_.end()) {
        for (auto [c, b] : it->second) {
          auto targets = out_.find(key(b, f.v));
          if (targets == out_.end()) continue;
          const auto snapshot = targets->second;
          for (auto w : snapshot) add_fact(c, f.u, w);
        }
      }
      // f as right operand: (a, w, u) (f.sym, u, v) -> (c, w, v).
      if (auto it = by_right_.find(f.sym); it != by_right_.end()) {
        for (auto [c, a] : it->second) {
          auto sources = in_.find(key(a, f.u));
          if (sources == in_.end()) continue;
          const auto snapshot = sources->second;
          for (auto w : snapshot) add_fact(c, w, f.v);
        }
      }
    }
  }

  std::vector<ReachTriple> facts() const {
    std::vector<ReachTriple> out;
    out.reserve(seen_.size());
    for (const auto& [sym, u, v] : seen_) out.push_back({symbols_[sym], u, v});
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::map<Symbol, std::uint32_t> ids_;
  std::vector<Symbol> symbols_;
  std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> rules_;
  std::unordered_map<std::uint32_t, std::vector<std::pair<std::uint32_t, std::uint32_t>>> by_left_,
      by_right_;
  std::set<std::tuple<std::uint32_t, VertexId, VertexId>> seen_;
  std::unordered_map<std::uint64_t, std::vector<VertexId>> out_, in_;
  std::deque<Fact> work_;
};

Symbol bind(const Symbol& s, const std::string& tag) {
  return s.indexed() ? s.with_index(tag) : s;
}

}  // namespace

std::vector<ReachTriple> oracle_solve(const LabeledGraph& graph, const WcnfGrammar& g) {
  const auto& universe = graph.index_universe();
  Closure closure;

  for (const auto& r : g.binary_rules) {
    if (!r.lhs.indexed() && !r.left.indexed() && !r.right.indexed()) {
      closure.add_rule(r.lhs, r.left, r.right);
      continue;
    }
    for (const auto& tag : universe)
      closure.add_rule(bind(r.lhs, tag), bind(r.left, tag), bind(r.right, tag));
  }

  // Concrete left-hand sides for an edge: an indexed lhs takes the edge's
  // tag when the terminal is indexed, and every tag otherwise.
  auto lhs_for = [&](const Symbol& lhs, const std::string* tag) {
    std::vector<Symbol> out;
    if (!lhs.indexed())
      out.push_back(lhs);
    else if (tag)
      out.push_back(lhs.with_index(*tag));
    else
      for (const auto& t : universe) out.push_back(lhs.with_index(t));
    return out;
  };

  for (const auto& e : graph.edges()) {
    for (const auto& [terminal, lhs_set] : g.terminal_rules) {
      if (!terminal.is_terminal() || terminal.base != e.label.base) continue;
      if (terminal.indexed() != e.label.slot.has_value()) continue;
      const std::string* tag = e.label.slot ? &universe[*e.label.slot] : nullptr;
      for (const auto& lhs : lhs_set)
        for (const auto& c : lhs_for(lhs, tag))
          closure.add_fact(closure.intern(c), e.source, e.target);
    }
  }
  if (auto eps = g.terminal_rules.find(Symbol::epsilon()); eps != g.terminal_rules.end()) {
    for (const auto& lhs : eps->second)
      for (const auto& c : lhs_for(lhs, nullptr))
        for (VertexId v = 0; v < graph.vertex_count(); ++v)
          closure.add_fact(closure.intern(c), v, v);
  }

  closure.run();
  return closure.facts();
}

}  // namespace cflr
