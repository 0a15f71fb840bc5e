// cflr: solve, check and benchmark CFL reachability from the command line.
//
// Exit codes: 0 ok, 1 usage, 2 input error, 3 divergence, 4 timeout.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cflr/error.hpp"
#include "cflr/generators.hpp"
#include "cflr/grammar.hpp"
#include "cflr/graph.hpp"
#include "cflr/report.hpp"
#include "cflr/solver.hpp"

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kInput = 2, kDivergence = 3, kTimeout = 4 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GrammarArgs {
  std::string file;
  std::string preset;
};

struct CommonArgs {
  GrammarArgs grammar;
  std::size_t threads = 1;
  double timeout_secs = 600;
  std::uint32_t b = 10;
  char index_sep = '_';
};

const std::map<std::string, std::string, std::less<>> kOptPreset{
    {"fsjpt", "fsjpt-opt"}, {"fsjpt-opt", "fsjpt-opt"}, {"fica", "fica-opt"},
    {"fica-opt", "fica-opt"}, {"fsca", "fsca-wcnf"},    {"fsca-wcnf", "fsca-wcnf"},
    {"cscvf", "cscvf-wcnf"},  {"cscvf-wcnf", "cscvf-wcnf"},
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cflr::Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cflr::Error("cannot write '" + path + "'");
  out << text;
}

// Grammar id and normalized grammar for a variant; ma12345 swaps in the
// hand-optimized preset.
std::pair<std::string, cflr::WcnfGrammar> load_grammar(const GrammarArgs& args,
                                                       std::string_view variant) {
  if (args.file.empty() == args.preset.empty())
    throw UsageError("exactly one of --grammar and --preset is required");
  std::string id;
  cflr::Cfg cfg;
  if (!args.preset.empty()) {
    id = args.preset;
    if (variant == "ma12345") {
      auto it = kOptPreset.find(args.preset);
      if (it == kOptPreset.end())
        throw UsageError("variant ma12345 needs a preset with an optimized form, not '" +
                         args.preset + "'");
      id = it->second;
    }
    cfg = cflr::preset(id);
  } else {
    if (variant == "ma12345") throw UsageError("variant ma12345 needs --preset");
    id = args.file;
    cfg = cflr::parse_grammar(read_file(args.file));
  }
  auto checked = cflr::validate_wcnf(cfg);
  return {id, checked.ok() ? std::move(*checked.grammar) : cflr::to_wcnf(cfg)};
}

cflr::LabeledGraph load_graph_file(const std::string& path, const cflr::WcnfGrammar& g,
                                   char sep) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cflr::Error("cannot open '" + path + "'");
  return cflr::load_graph(in, g, {sep});
}

cflr::VariantFlags flags_for(const std::string& variant, const CommonArgs& common) {
  cflr::VariantFlags flags;
  try {
    flags = cflr::variant_flags(variant);
  } catch (const cflr::Error& e) {
    throw UsageError(e.what());
  }
  flags.forest_factor = common.b;
  return flags;
}

cflr::SolveOptions solve_options(const cflr::VariantFlags& flags, const CommonArgs& common) {
  cflr::SolveOptions options;
  options.flags = flags;
  options.threads = common.threads;
  if (common.timeout_secs > 0)
    options.deadline = std::chrono::steady_clock::now() +
                       std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                           std::chrono::duration<double>(common.timeout_secs));
  return options;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

// ---------------------------------------------------------------------------

struct SolveArgs {
  std::string graph;
  std::string variant = "ma1234";
  std::string nonterminal;
  std::string output;
  std::string report;
};

int cmd_solve(const SolveArgs& args, const CommonArgs& common) {
  const auto flags = flags_for(args.variant, common);
  auto [grammar_id, g] = load_grammar(common.grammar, args.variant);
  const auto graph = load_graph_file(args.graph, g, common.index_sep);
  const auto start = std::chrono::steady_clock::now();
  const auto result = cflr::solve(graph, g, solve_options(flags, common));
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto nonterminal = args.nonterminal.empty() ? g.start().base : args.nonterminal;
  write_output(args.output, cflr::pair_lines(result.matrix, graph, nonterminal));
  if (!args.report.empty())
    write_output(args.report,
                 cflr::make_report(result, graph, args.variant, grammar_id, args.graph, wall)
                     .serialize());
  return kOk;
}

struct CheckArgs {
  std::string graph;
  std::string variants = "ma,ma1,ma14,ma1234";
  std::size_t max_vertices = 500;
};

int cmd_check(const CheckArgs& args, const CommonArgs& common) {
  const auto variants = split_list(args.variants);
  if (variants.empty()) throw UsageError("no variants given");
  for (const auto& v : variants) flags_for(v, common);
  for (const auto& v : variants) {
    auto [grammar_id, g] = load_grammar(common.grammar, v);
    const auto graph = load_graph_file(args.graph, g, common.index_sep);
    if (graph.vertex_count() > args.max_vertices)
      throw cflr::Error("graph has " + std::to_string(graph.vertex_count()) +
                        " vertices, above --max-vertices " + std::to_string(args.max_vertices));
    cflr::SolveFn solver = [&](const cflr::LabeledGraph& gr, const cflr::WcnfGrammar& wg,
                               const cflr::VariantFlags&) {
      return cflr::solve(gr, wg, solve_options(flags_for(v, common), common)).matrix.triples();
    };
    if (auto d = cflr::run_check(graph, g, {v}, solver)) {
      std::cout << d->describe(graph) << " (grammar " << grammar_id << ")\n";
      return kDivergence;
    }
    std::cout << v << ": ok (grammar " << grammar_id << ")\n";
  }
  return kOk;
}

struct BenchArgs {
  std::string instance;
  std::string variants = "ma,ma1,ma14,ma1234";
  std::size_t reps = 5;
};

int cmd_bench(const BenchArgs& args, const CommonArgs& common) {
  if (args.reps == 0) throw UsageError("--reps must be at least 1");
  auto grammar_args = common.grammar;
  if (grammar_args.file.empty() && grammar_args.preset.empty()) grammar_args.preset = "dyck";
  const auto variants = split_list(args.variants);
  if (variants.empty()) throw UsageError("no variants given");
  for (const auto& v : variants) flags_for(v, common);

  bool first = true;
  for (const auto& v : variants) {
    auto [grammar_id, g] = load_grammar(grammar_args, v);
    cflr::LabeledGraph graph;
    if (!cflr::synthetic_graph(args.instance, graph))
      graph = load_graph_file(args.instance, g, common.index_sep);

    std::vector<double> samples;
    std::optional<cflr::SolveResult> last;
    bool timed_out = false;
    for (std::size_t r = 0; r < args.reps; ++r) {
      const auto start = std::chrono::steady_clock::now();
      try {
        last = cflr::solve(graph, g, solve_options(flags_for(v, common), common));
      } catch (const cflr::TimeoutError&) {
        timed_out = true;
        break;
      }
      samples.push_back(
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }

    if (!first) std::cout << '\n';
    first = false;
    if (timed_out) {
      std::cout << "variant=" << v << "\ngrammar=" << grammar_id << "\ngraph=" << args.instance
                << "\nstatus=OOT\n";
      continue;
    }
    const auto stats = cflr::timing_stats(samples);
    auto report = cflr::make_report(*last, graph, v, grammar_id, args.instance, stats.mean);
    std::cout << "status=ok\nreps=" << args.reps << '\n'
              << "mean_seconds=" << stats.mean << '\n'
              << "stddev_seconds=";
    if (stats.stddev)
      std::cout << *stats.stddev;
    else
      std::cout << "n/a";
    std::cout << '\n'
              << report.serialize();
  }
  return kOk;
}

void add_common(CLI::App* cmd, CommonArgs& common) {
  auto* file = cmd->add_option("--grammar", common.grammar.file, "Grammar file");
  auto* preset = cmd->add_option("--preset", common.grammar.preset, "Built-in grammar")
                     ->check(CLI::IsMember(cflr::preset_names()));
  file->excludes(preset);
  cmd->add_option("--threads", common.threads, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--timeout-secs", common.timeout_secs, "Per-solve timeout, 0 for none")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--b", common.b, "Forest growth factor")->check(CLI::Range(2u, 1u << 30));
  cmd->add_option("--index-sep", common.index_sep, "Separator between label base and index");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"All-pairs CFL reachability with sparse Boolean matrices"};
  app.require_subcommand(1);

  CommonArgs solve_common, check_common, bench_common;
  SolveArgs solve_args;
  CheckArgs check_args;
  BenchArgs bench_args;

  auto* solve = app.add_subcommand("solve", "Solve one instance and print pairs");
  add_common(solve, solve_common);
  solve->add_option("--graph", solve_args.graph, "Graph triple file")->required();
  solve->add_option("--variant", solve_args.variant, "ma, ma1, ma14, ma1234 or ma12345");
  solve->add_option("--nonterminal", solve_args.nonterminal, "Non-terminal to print");
  solve->add_option("--output", solve_args.output, "Pairs file (default stdout)");
  solve->add_option("--report", solve_args.report, "Run report file");

  auto* check = app.add_subcommand("check", "Compare variants with the reference solver");
  add_common(check, check_common);
  check->add_option("--graph", check_args.graph, "Graph triple file")->required();
  check->add_option("--variants", check_args.variants, "Comma-separated variants");
  check->add_option("--max-vertices", check_args.max_vertices, "Refuse larger graphs");

  auto* bench = app.add_subcommand("bench", "Time variants on one instance");
  add_common(bench, bench_common);
  bench->add_option("--instance", bench_args.instance, "chain:N, grid:N or a graph file")
      ->required();
  bench->add_option("--variants", bench_args.variants, "Comma-separated variants");
  bench->add_option("--reps", bench_args.reps, "Repetitions per variant");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_args, solve_common);
    if (check->parsed()) return cmd_check(check_args, check_common);
    return cmd_bench(bench_args, bench_common);
  } catch (const UsageError& e) {
    std::cerr << "cflr: " << e.what() << '\n';
    return kUsage;
  } catch (const cflr::TimeoutError& e) {
    std::cerr << "cflr: timeout: " << e.what() << '\n';
    return kTimeout;
  } catch (const cflr::Error& e) {
    std::cerr << "cflr: " << e.what() << '\n';
    return kInput;
  }
}
