#pragma once

// Context-free grammars: parsing, WCNF validation and normalization,
// and the built-in analysis grammars.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cflr {

enum class SymbolKind : unsigned char { kTerminal, kNonterminal, kEpsilon };

/// A grammar symbol. Indexed symbols carry an index: in a grammar this is
/// the index variable (`i` for `load_[i]`), in graph labels and solver
/// results it is a concrete index tag (`f12` for `load_f12`).
struct Symbol {
  SymbolKind kind = SymbolKind::kEpsilon;
  std::string base;
  std::optional<std::string> index;

  static Symbol terminal(std::string base, std::optional<std::string> index = std::nullopt);
  static Symbol nonterminal(std::string base, std::optional<std::string> index = std::nullopt);
  static Symbol epsilon();

  bool is_terminal() const noexcept { return kind == SymbolKind::kTerminal; }
  bool is_nonterminal() const noexcept { return kind == SymbolKind::kNonterminal; }
  bool is_epsilon() const noexcept { return kind == SymbolKind::kEpsilon; }
  bool indexed() const noexcept { return index.has_value(); }

  /// Same symbol with the index replaced (or removed).
  Symbol with_index(std::optional<std::string> tag) const;

  /// Grammar-file spelling: `base`, `base_[i]`, or `eps`.
  std::string to_string() const;

  friend auto operator<=>(const Symbol&, const Symbol&) = default;
  friend bool operator==(const Symbol&, const Symbol&) = default;
};

struct Production {
  Symbol lhs;
  std::vector<Symbol> rhs;  // empty = epsilon production

  bool is_epsilon() const noexcept { return rhs.empty(); }
  std::string to_string() const;

  friend auto operator<=>(const Production&, const Production&) = default;
  friend bool operator==(const Production&, const Production&) = default;
};

struct Cfg {
  std::set<Symbol> nonterminals;
  std::set<Symbol> terminals;
  std::vector<Production> productions;
  Symbol start;

  /// The single index variable used by indexed symbols, if any.
  std::optional<std::string> index_variable() const;

  friend bool operator==(const Cfg&, const Cfg&) = default;
};

struct BinaryRule {
  Symbol lhs;
  Symbol left;
  Symbol right;

  friend auto operator<=>(const BinaryRule&, const BinaryRule&) = default;
  friend bool operator==(const BinaryRule&, const BinaryRule&) = default;
};

/// A grammar whose productions all have shape `a -> t`, `a -> eps` or
/// `c -> a b` with a, b, c non-terminals.
struct WcnfGrammar {
  Cfg cfg;
  /// Keyed by terminal (possibly indexed) or by the epsilon symbol.
  std::map<Symbol, std::set<Symbol>> terminal_rules;
  std::vector<BinaryRule> binary_rules;
  /// Productions of indexed non-terminals; each stands for one production
  /// per index value.
  std::vector<Production> indexed_families;

  const Symbol& start() const noexcept { return cfg.start; }
  std::optional<std::string> index_variable() const { return cfg.index_variable(); }

  /// Terminal bases declared with an index (`load` for `load_[i]`).
  std::set<std::string> indexed_terminal_bases() const;
  /// Helper non-terminals introduced by lowering (`@t`, `@eps`, `lhs#k`).
  static bool is_helper(const Symbol& s);
};

enum class ViolationKind : unsigned char {
  kRhsTooLong,
  kTerminalPair,
  kMixedIndexVariables,
};

struct WcnfViolation {
  std::size_t production = 0;  // index into Cfg::productions
  ViolationKind kind = ViolationKind::kRhsTooLong;
  std::string message;
};

struct WcnfValidation {
  std::optional<WcnfGrammar> grammar;
  std::vector<WcnfViolation> violations;

  bool ok() const noexcept { return grammar.has_value(); }
};

/// Parses the line-oriented grammar format:
///
///     # comment
///     start: S
///     S -> a S b | a b ;
///     A -> call_[i] A ret_[i] | eps
///     X -> a M? b            # `M?` expands to two alternatives
///
/// Non-terminals are the symbols that appear as a left-hand side. Throws
/// GrammarError with the offending line number.
Cfg parse_grammar(std::string_view text);

/// Inverse of parse_grammar: one line per production.
std::string serialize_grammar(const Cfg& g);

/// Checks the WCNF shape and builds the rule tables. A binary rule with one
/// terminal operand, and a unit rule `a -> b`, are accepted and lowered
/// through helper non-terminals (`@t -> t`, `a -> b @eps`, `@eps -> eps`).
/// Binary rules over two terminals and longer right-hand sides are
/// reported as violations.
WcnfValidation validate_wcnf(const Cfg& g);

/// Binarizes long right-hand sides left to right with fresh `lhs#k`
/// non-terminals and lifts terminals out of binary positions. Epsilon
/// productions are kept. Never fails for a parsed Cfg.
WcnfGrammar to_wcnf(const Cfg& g);

/// Built-in grammars: fsjpt, fsjpt-opt, fica, fica-opt, fsca, fsca-wcnf,
/// cscvf, cscvf-wcnf, and dyck.
Cfg preset(std::string_view name);
std::string_view preset_text(std::string_view name);
const std::vector<std::string>& preset_names();

}  // namespace cflr
