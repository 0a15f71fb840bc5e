#include "cflr/solver.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <utility>

#include "cflr/error.hpp"
#include "cflr/forest.hpp"
#include "cflr/parallel.hpp"

namespace cflr {

void VariantFlags::validate() const {
  if (dual_format && !delta) throw Error("dual_format requires delta");
  if (lazy_union && !delta) throw Error("lazy_union requires delta");
  if (forest_factor < 2) throw Error("forest factor must be greater than 1");
}

VariantFlags variant_flags(std::string_view name) {
  VariantFlags f;
  if (name == "ma") return f;
  f.delta = true;
  if (name == "ma1") return f;
  f.indexed_blocks = true;
  if (name == "ma14") return f;
  f.dual_format = true;
  f.lazy_union = true;
  if (name == "ma1234" || name == "ma12345") return f;
  throw Error("unknown variant '" + std::string(name) + "'");
}

const std::vector<std::string>& variant_names() {
  static const std::vector<std::string> names{"ma", "ma1", "ma14", "ma1234", "ma12345"};
  return names;
}

namespace {

OpCounter operator-(const OpCounter& a, const OpCounter& b) {
  return {a.spgemm_calls - b.spgemm_calls, a.scalar_ops - b.scalar_ops,
          a.union_entries - b.union_entries, a.driver_entries - b.driver_entries};
}

void check_deadline(const SolveOptions& options) {
  if (options.deadline && std::chrono::steady_clock::now() > *options.deadline)
    throw TimeoutError("solve exceeded its deadline");
}

std::shared_ptr<const MatrixPlan> make_plan(const LabeledGraph& graph, const WcnfGrammar& g,
                                            const VariantFlags& flags) {
  return std::make_shared<const MatrixPlan>(g, graph.vertex_count(), graph.index_universe(),
                                            flags.indexed_blocks);
}

// ---------------------------------------------------------------------------
// Baseline: M <- M u M*M.

SolveResult solve_baseline(const LabeledGraph& graph, const WcnfGrammar& g,
                           const SolveOptions& options) {
  auto plan = make_plan(graph, g, options.flags);
  ThreadPool pool(options.threads);
  SolveResult result{initial_matrix(graph, plan), 0, {}, {}};
  NontermMatrix previous(plan);

  while (true) {
    check_deadline(options);
    auto& m = result.matrix;
    if (options.observer) {
      const auto delta = elementwise_difference(m, previous);
      options.observer({result.iterations, previous, delta, m});
    }
    const OpCounter before = result.counters;
    const auto product = semiring_matmul(m, m, &result.counters, &pool);
    NontermMatrix next(plan);
    for (std::size_t u = 0; u < m.unit_count(); ++u)
      next.unit(u) = union_of(m.unit(u), product.unit(u), &result.counters);
    ++result.iterations;
    result.iteration_counters.push_back(result.counters - before);
    if (next.total_nnz() == m.total_nnz()) break;
    previous = std::move(m);
    m = std::move(next);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Delta loop.

struct ViewKey {
  std::size_t unit = 0;
  OperandView view = OperandView::kPlain;
  Layout layout = Layout::kRowMajor;

  friend auto operator<=>(const ViewKey&, const ViewKey&) = default;
};

// One stored copy of M for a (unit, view, layout): a plain matrix, or a
// forest when unions are lazy.
class ViewStore {
 public:
  ViewStore(Index rows, Index cols, Layout layout, bool lazy, std::uint32_t factor)
      : lazy_(lazy), plain_(rows, cols, layout), forest_(rows, cols, layout, factor) {}

  void insert(const BoolMat& d, OpCounter& counter) {
    if (d.empty()) return;
    if (lazy_)
      forest_.insert(d, &counter);
    else
      plain_ = union_of(plain_, d, &counter);
  }

  std::span<const BoolMat> elements() const {
    return lazy_ ? forest_.elements() : std::span<const BoolMat>(&plain_, 1);
  }

  BoolMat subtract_from(const BoolMat& c) const {
    return lazy_ ? forest_difference(c, forest_) : difference(c, plain_);
  }

  BoolMat materialize() const { return lazy_ ? forest_.materialize() : plain_; }

  Index rows() const noexcept { return plain_.rows(); }
  Index cols() const noexcept { return plain_.cols(); }

 private:
  bool lazy_;
  BoolMat plain_;
  MatrixForest forest_;
};

class DeltaSolver {
 public:
  DeltaSolver(const LabeledGraph& graph, const WcnfGrammar& g, const SolveOptions& options)
      : options_(options),
        flags_(options.flags),
        plan_(make_plan(graph, g, options.flags)),
        pool_(options.threads),
        initial_(initial_matrix(graph, plan_)) {
    const bool dual = flags_.dual_format;
    const auto& steps = plan_->products();
    const Layout old_layout = dual ? Layout::kColMajor : Layout::kRowMajor;
    for (const auto& s : steps) {
      phase_a_store_.push_back(key({s.left, s.left_view, old_layout}, true));
      phase_a_delta_.push_back(key({s.right, s.right_view, old_layout}, false));
      phase_b_delta_.push_back(key({s.left, s.left_view, Layout::kRowMajor}, false));
      phase_b_store_.push_back(key({s.right, s.right_view, Layout::kRowMajor}, true));
    }
    // Every unit needs one plain copy to subtract from; reuse an operand
    // copy when there is one.
    const auto unit_count = plan_->units().size();
    for (std::size_t u = 0; u < unit_count; ++u) {
      const ViewKey row{u, OperandView::kPlain, Layout::kRowMajor};
      const ViewKey col{u, OperandView::kPlain, Layout::kColMajor};
      if (auto it = index_.find(row); it != index_.end() && stores_[it->second])
        home_.push_back(it->second);
      else if (auto jt = index_.find(col); jt != index_.end() && stores_[jt->second])
        home_.push_back(jt->second);
      else
        home_.push_back(key(row, true));
    }
    targets_.resize(unit_count);
    for (std::size_t p = 0; p < steps.size(); ++p) targets_[steps[p].target].push_back(p);
  }

  SolveResult run() {
    std::vector<BoolMat> delta;
    for (std::size_t u = 0; u < initial_.unit_count(); ++u) delta.push_back(initial_.unit(u));

    SolveResult result{NontermMatrix(plan_), 0, {}, {}};
    const auto& steps = plan_->products();
    const bool dual = flags_.dual_format;

    while (true) {
      check_deadline(options_);
      if (options_.observer) observe(result.iterations, delta);

      // The delta in every form some product or store needs.
      std::vector<BoolMat> dv(keys_.size());
      pool_.parallel_for(keys_.size(), [&](std::size_t i) {
        const auto& k = keys_[i];
        dv[i] = convert(plan_->apply_view(delta[k.unit], k.view), k.layout);
      });

      // M_old * dM, before dM joins M.
      std::vector<BoolMat> part_a(steps.size()), part_b(steps.size());
      std::vector<OpCounter> count_a(steps.size()), count_b(steps.size()),
          count_insert(keys_.size()), count_merge(targets_.size());
      pool_.parallel_for(steps.size(), [&](std::size_t p) {
        const auto& store = *stores_[phase_a_store_[p]];
        part_a[p] = multiply_with_forest(dv[phase_a_delta_[p]], store.elements(), store.rows(),
                                         store.cols(), DeltaSide::kDeltaRight, dual, &count_a[p]);
      });

      pool_.parallel_for(keys_.size(), [&](std::size_t i) {
        if (stores_[i]) stores_[i]->insert(dv[i], count_insert[i]);
      });

      // dM * M, with M now including dM.
      pool_.parallel_for(steps.size(), [&](std::size_t p) {
        const auto& store = *stores_[phase_b_store_[p]];
        part_b[p] = multiply_with_forest(dv[phase_b_delta_[p]], store.elements(), store.rows(),
                                         store.cols(), DeltaSide::kDeltaLeft, dual, &count_b[p]);
      });

      std::vector<BoolMat> next(targets_.size());
      pool_.parallel_for(targets_.size(), [&](std::size_t u) {
        const auto& info = plan_->units()[u];
        BoolMat c(info.rows, info.cols);
        for (auto p : targets_[u]) {
          for (const auto* part : {&part_a[p], &part_b[p]}) {
            if (part->empty()) continue;
            const auto emitted = plan_->emit(steps[p], *part);
            c = c.empty() ? emitted : union_of(c, emitted, &count_merge[u]);
          }
        }
        next[u] = convert(stores_[home_[u]]->subtract_from(c), Layout::kRowMajor);
      });

      OpCounter step;
      for (const auto& c : count_a) step += c;
      for (const auto& c : count_insert) step += c;
      for (const auto& c : count_b) step += c;
      for (const auto& c : count_merge) step += c;
      result.counters += step;
      result.iteration_counters.push_back(step);
      ++result.iterations;

      delta = std::move(next);
      if (std::all_of(delta.begin(), delta.end(), [](const BoolMat& m) { return m.empty(); }))
        break;
    }

    for (std::size_t u = 0; u < home_.size(); ++u)
      result.matrix.unit(u) = convert(stores_[home_[u]]->materialize(), Layout::kRowMajor);
    return result;
  }

 private:
  std::size_t key(const ViewKey& k, bool stored) {
    auto [it, inserted] = index_.emplace(k, keys_.size());
    if (inserted) {
      keys_.push_back(k);
      stores_.emplace_back();
    }
    if (stored && !stores_[it->second]) {
      const auto shape = plan_->apply_view(
          BoolMat(plan_->units()[k.unit].rows, plan_->units()[k.unit].cols), k.view);
      stores_[it->second].emplace(shape.rows(), shape.cols(), k.layout, flags_.lazy_union,
                                  flags_.forest_factor);
    }
    return it->second;
  }

  void observe(std::size_t iteration, const std::vector<BoolMat>& delta) {
    NontermMatrix m_old(plan_), d(plan_);
    for (std::size_t u = 0; u < home_.size(); ++u) {
      m_old.unit(u) = convert(stores_[home_[u]]->materialize(), Layout::kRowMajor);
      d.unit(u) = delta[u];
    }
    const auto m = elementwise_union(m_old, d);
    options_.observer({iteration, m_old, d, m});
  }

  const SolveOptions& options_;
  VariantFlags flags_;
  std::shared_ptr<const MatrixPlan> plan_;
  ThreadPool pool_;
  NontermMatrix initial_;

  std::vector<ViewKey> keys_;
  std::map<ViewKey, std::size_t> index_;
  std::vector<std::optional<ViewStore>> stores_;
  std::vector<std::size_t> phase_a_store_, phase_a_delta_, phase_b_delta_, phase_b_store_;
  std::vector<std::size_t> home_;
  std::vector<std::vector<std::size_t>> targets_;
};

}  // namespace

SolveResult solve(const LabeledGraph& graph, const WcnfGrammar& g, const SolveOptions& options) {
  options.flags.validate();
  if (options.flags.delta) return DeltaSolver(graph, g, options).run();
  return solve_baseline(graph, g, options);
}

SolveResult solve(const LabeledGraph& graph, const WcnfGrammar& g, const VariantFlags& flags) {
  SolveOptions options;
  options.flags = flags;
  return solve(graph, g, options);
}

}  // namespace cflr
