#include "cflr/semiring.hpp"

#include <algorithm>
#include <utility>

#include "cflr/block_ops.hpp"
#include "cflr/error.hpp"
#include "cflr/parallel.hpp"

namespace cflr {

NontermSet set_union(const NontermSet& a, const NontermSet& b) {
  NontermSet out = a;
  out.members.insert(b.members.begin(), b.members.end());
  return out;
}

namespace {

// Matches a rule operand (base plus optional index variable) against a
// concrete symbol, binding the index variable to the concrete tag.
bool bind(const Symbol& pattern, const Symbol& concrete, std::optional<std::string>& tag) {
  if (pattern.base != concrete.base || pattern.kind != concrete.kind) return false;
  if (pattern.indexed() != concrete.indexed()) return false;
  if (!pattern.indexed()) return true;
  if (tag && *tag != *concrete.index) return false;
  tag = concrete.index;
  return true;
}

}  // namespace

NontermSet scalar_mul(const NontermSet& a, const NontermSet& b, const WcnfGrammar& g,
                      std::span<const std::string> universe) {
  NontermSet out;
  for (const auto& rule : g.binary_rules) {
    for (const auto& x : a.members) {
      for (const auto& y : b.members) {
        std::optional<std::string> tag;
        if (!bind(rule.left, x, tag) || !bind(rule.right, y, tag)) continue;
        if (!rule.lhs.indexed()) {
          out.members.insert(rule.lhs);
        } else if (tag) {
          out.members.insert(rule.lhs.with_index(tag));
        } else {
          for (const auto& t : universe) out.members.insert(rule.lhs.with_index(t));
        }
      }
    }
  }
  return out;
}

RuleShape classify(const BinaryRule& rule) {
  const int code = (rule.lhs.indexed() ? 4 : 0) | (rule.left.indexed() ? 2 : 0) |
                   (rule.right.indexed() ? 1 : 0);
  switch (code) {
    case 0: return RuleShape::kPlain;
    case 1: return RuleShape::kCollapseRight;
    case 2: return RuleShape::kCollapseLeft;
    case 3: return RuleShape::kOperandsIndexed;
    case 4: return RuleShape::kBroadcast;
    case 5: return RuleShape::kRightIndexed;
    case 6: return RuleShape::kLeftIndexed;
    default: return RuleShape::kAllIndexed;
  }
}

// ---------------------------------------------------------------------------

MatrixPlan::MatrixPlan(const WcnfGrammar& g, std::size_t vertex_count,
                       std::vector<std::string> universe, bool indexed_blocks)
    : grammar_(g), n_(vertex_count), universe_(std::move(universe)), blocks_(indexed_blocks) {
  const Index k = universe_.size();
  for (const auto& s : grammar_.cfg.nonterminals) {
    family_index_.emplace(s.base, families_.size());
    families_.push_back(s);
  }
  family_units_.resize(families_.size());
  for (std::size_t f = 0; f < families_.size(); ++f) {
    if (!families_[f].indexed()) {
      family_units_[f].push_back(units_.size());
      units_.push_back({f, std::nullopt, false, n_, n_});
    } else if (blocks_) {
      family_units_[f].push_back(units_.size());
      units_.push_back({f, std::nullopt, true, k * n_, n_});
    } else {
      for (Index t = 0; t < k; ++t) {
        family_units_[f].push_back(units_.size());
        units_.push_back({f, static_cast<std::uint32_t>(t), false, n_, n_});
      }
    }
  }

  auto fam = [&](const Symbol& s) { return family_index_.at(s.base); };
  for (std::size_t r = 0; r < grammar_.binary_rules.size(); ++r) {
    const auto& rule = grammar_.binary_rules[r];
    const auto shape = classify(rule);
    const auto c = fam(rule.lhs), a = fam(rule.left), b = fam(rule.right);

    if (shape == RuleShape::kPlain) {
      products_.push_back({r, unit_for(c, {}), unit_for(a, {}), unit_for(b, {})});
      continue;
    }
    if (!blocks_) {
      for (Index t = 0; t < k; ++t) {
        const auto slot = static_cast<std::uint32_t>(t);
        auto pick = [&](std::size_t f, const Symbol& s) {
          return unit_for(f, s.indexed() ? std::optional<std::uint32_t>(slot) : std::nullopt);
        };
        products_.push_back({r, pick(c, rule.lhs), pick(a, rule.left), pick(b, rule.right)});
      }
      continue;
    }
    ProductStep step{r, unit_for(c, {}), unit_for(a, {}), unit_for(b, {})};
    switch (shape) {
      case RuleShape::kOperandsIndexed:
        step.left_view = OperandView::kHorizontal;
        break;
      case RuleShape::kRightIndexed:
        step.right_view = OperandView::kHorizontal;
        step.emission = Emission::kHorizontalToVertical;
        break;
      case RuleShape::kLeftIndexed:
        break;
      case RuleShape::kAllIndexed:
        step.left_view = OperandView::kBlockDiagonal;
        break;
      case RuleShape::kCollapseLeft:
        step.left_view = OperandView::kCollapsed;
        break;
      case RuleShape::kCollapseRight:
        step.right_view = OperandView::kCollapsed;
        break;
      case RuleShape::kBroadcast:
        step.emission = Emission::kBroadcast;
        break;
      case RuleShape::kPlain:
        break;
    }
    products_.push_back(step);
  }

  left_slot_.assign(units_.size(), false);
  right_slot_.assign(units_.size(), false);
  for (const auto& p : products_) {
    left_slot_[p.left] = true;
    right_slot_[p.right] = true;
  }
}

std::optional<std::size_t> MatrixPlan::family_of(std::string_view base) const {
  const auto it = family_index_.find(base);
  if (it == family_index_.end()) return std::nullopt;
  return it->second;
}

std::span<const std::size_t> MatrixPlan::units_of(std::size_t family) const {
  return family_units_.at(family);
}

std::size_t MatrixPlan::unit_for(std::size_t family, std::optional<std::uint32_t> slot) const {
  const auto& units = family_units_.at(family);
  if (!families_[family].indexed() || blocks_) return units.front();
  if (!slot) throw Error("indexed family '" + families_[family].base + "' needs a slot");
  return units.at(*slot);
}

BoolMat MatrixPlan::apply_view(const BoolMat& m, OperandView view) const {
  const Index k = universe_.size();
  switch (view) {
    case OperandView::kPlain: return m;
    case OperandView::kHorizontal: return vertical_to_horizontal(m, n_, k);
    case OperandView::kCollapsed: return vertical_collapse(m, n_, k);
    case OperandView::kBlockDiagonal: return block_diagonalize(m, n_, k);
  }
  return m;
}

BoolMat MatrixPlan::emit(const ProductStep& step, const BoolMat& product) const {
  const Index k = universe_.size();
  switch (step.emission) {
    case Emission::kDirect: return product;
    case Emission::kHorizontalToVertical: return horizontal_to_vertical(product, n_, k);
    case Emission::kBroadcast: return vertical_broadcast(product, k);
  }
  return product;
}

ReachTriple MatrixPlan::decode(std::size_t unit, Coord c) const {
  const auto& u = units_.at(unit);
  const auto& family = families_[u.family];
  ReachTriple out;
  if (u.block) {
    const auto slot = c.row / n_;
    out.nonterminal = family.with_index(universe_.at(slot));
    out.source = static_cast<VertexId>(c.row % n_);
  } else {
    out.nonterminal = u.slot ? family.with_index(universe_.at(*u.slot)) : family;
    out.source = static_cast<VertexId>(c.row);
  }
  out.target = static_cast<VertexId>(c.col);
  return out;
}

// ---------------------------------------------------------------------------

NontermMatrix::NontermMatrix(std::shared_ptr<const MatrixPlan> plan) : plan_(std::move(plan)) {
  units_.reserve(plan_->units().size());
  for (const auto& u : plan_->units()) units_.emplace_back(u.rows, u.cols, Layout::kRowMajor);
}

BoolMat NontermMatrix::pairs(std::string_view base) const {
  const auto f = plan_->family_of(base);
  if (!f) throw Error("unknown non-terminal '" + std::string(base) + "'");
  const auto n = plan_->vertex_count();
  BoolMat out(n, n);
  for (auto u : plan_->units_of(*f)) {
    const auto& info = plan_->units()[u];
    const BoolMat& m = units_[u];
    out = union_of(out, info.block ? vertical_collapse(m, n, plan_->universe_size())
                                   : convert(m, Layout::kRowMajor));
  }
  return out;
}

std::size_t NontermMatrix::fact_count(std::string_view base) const {
  const auto f = plan_->family_of(base);
  if (!f) throw Error("unknown non-terminal '" + std::string(base) + "'");
  std::size_t total = 0;
  for (auto u : plan_->units_of(*f)) total += units_[u].nnz();
  return total;
}

std::size_t NontermMatrix::total_nnz() const {
  std::size_t total = 0;
  for (const auto& m : units_) total += m.nnz();
  return total;
}

std::vector<ReachTriple> NontermMatrix::triples() const {
  std::vector<ReachTriple> out;
  out.reserve(total_nnz());
  for (std::size_t u = 0; u < units_.size(); ++u)
    for (const auto& c : units_[u].coords()) out.push_back(plan_->decode(u, c));
  std::sort(out.begin(), out.end());
  return out;
}

NontermSet NontermMatrix::cell(Index row, Index col) const {
  NontermSet out;
  const auto n = plan_->vertex_count();
  for (std::size_t u = 0; u < units_.size(); ++u) {
    const auto& info = plan_->units()[u];
    if (info.block) {
      for (Index t = 0; t < plan_->universe_size(); ++t)
        if (units_[u].contains(t * n + row, col))
          out.members.insert(plan_->decode(u, {t * n + row, col}).nonterminal);
    } else if (units_[u].contains(row, col)) {
      out.members.insert(plan_->decode(u, {row, col}).nonterminal);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

NontermMatrix initial_matrix(const LabeledGraph& graph, std::shared_ptr<const MatrixPlan> plan) {
  if (plan->vertex_count() != graph.vertex_count() || plan->universe() != graph.index_universe())
    throw Error("graph does not match the matrix plan (vertex count or index universe)");

  const auto& g = plan->grammar();
  const Index n = plan->vertex_count();
  const Index k = plan->universe_size();
  std::vector<std::vector<Coord>> coords(plan->units().size());

  // Adds (u, v) to family f, in one slot or (slot unset) in every slot.
  auto add = [&](std::size_t f, std::optional<std::uint32_t> slot, Index u, Index v) {
    if (!plan->families()[f].indexed()) {
      coords[plan->unit_for(f, {})].push_back({u, v});
      return;
    }
    for (Index t = 0; t < k; ++t) {
      if (slot && *slot != t) continue;
      const auto s = static_cast<std::uint32_t>(t);
      const auto unit = plan->unit_for(f, s);
      if (plan->units()[unit].block)
        coords[unit].push_back({t * n + u, v});
      else
        coords[unit].push_back({u, v});
    }
  };

  std::map<std::string, std::vector<std::pair<bool, const std::set<Symbol>*>>, std::less<>> by_base;
  for (const auto& [key, lhs] : g.terminal_rules)
    if (key.is_terminal()) by_base[key.base].emplace_back(key.indexed(), &lhs);

  for (const auto& e : graph.edges()) {
    const auto it = by_base.find(e.label.base);
    if (it == by_base.end()) continue;
    for (const auto& [indexed, lhs] : it->second) {
      if (indexed != e.label.slot.has_value())
        throw Error("graph/grammar index mismatch on label '" + graph.label_text(e.label) + "'");
      for (const auto& c : *lhs)
        add(*plan->family_of(c.base), c.indexed() && indexed ? e.label.slot : std::nullopt,
            e.source, e.target);
    }
  }
  if (const auto eps = g.terminal_rules.find(Symbol::epsilon()); eps != g.terminal_rules.end()) {
    for (const auto& c : eps->second)
      for (Index v = 0; v < n; ++v) add(*plan->family_of(c.base), std::nullopt, v, v);
  }

  NontermMatrix m(plan);
  for (std::size_t u = 0; u < coords.size(); ++u) {
    const auto& info = plan->units()[u];
    m.unit(u) = BoolMat::from_coords(info.rows, info.cols, std::move(coords[u]));
  }
  return m;
}

namespace {

void require_same_plan(const NontermMatrix& a, const NontermMatrix& b) {
  if (a.plan_ptr() == b.plan_ptr()) return;
  const auto& ua = a.plan().units();
  const auto& ub = b.plan().units();
  const bool same = ua.size() == ub.size() &&
                    std::equal(ua.begin(), ua.end(), ub.begin(), [](const auto& x, const auto& y) {
                      return x.rows == y.rows && x.cols == y.cols && x.family == y.family &&
                             x.slot == y.slot && x.block == y.block;
                    });
  if (!same) throw DimensionError("semiring matrices use different storage plans");
}

}  // namespace

NontermMatrix semiring_matmul(const NontermMatrix& left, const NontermMatrix& right,
                              OpCounter* counter, ThreadPool* pool) {
  require_same_plan(left, right);
  const auto& plan = left.plan();
  const auto& steps = plan.products();
  std::vector<BoolMat> parts(steps.size());
  std::vector<OpCounter> counters(steps.size());

  auto run = [&](std::size_t i) {
    const auto& s = steps[i];
    const BoolMat l = plan.apply_view(left.unit(s.left), s.left_view);
    const BoolMat r = plan.apply_view(right.unit(s.right), s.right_view);
    parts[i] = plan.emit(s, spgemm(l, r, Orientation::kRowByRow, &counters[i]));
  };
  if (pool)
    pool->parallel_for(steps.size(), run);
  else
    for (std::size_t i = 0; i < steps.size(); ++i) run(i);

  NontermMatrix out(left.plan_ptr());
  OpCounter total;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    total += counters[i];
    auto& target = out.unit(steps[i].target);
    target = union_of(target, parts[i], &total);
  }
  if (counter) *counter += total;
  return out;
}

NontermMatrix elementwise_union(const NontermMatrix& a, const NontermMatrix& b) {
  require_same_plan(a, b);
  NontermMatrix out(a.plan_ptr());
  for (std::size_t u = 0; u < a.unit_count(); ++u)
    out.unit(u) = union_of(convert(a.unit(u), Layout::kRowMajor), convert(b.unit(u), Layout::kRowMajor));
  return out;
}

NontermMatrix elementwise_difference(const NontermMatrix& a, const NontermMatrix& b) {
  require_same_plan(a, b);
  NontermMatrix out(a.plan_ptr());
  for (std::size_t u = 0; u < a.unit_count(); ++u)
    out.unit(u) = convert(difference(a.unit(u), b.unit(u)), Layout::kRowMajor);
  return out;
}

}  // namespace cflr
