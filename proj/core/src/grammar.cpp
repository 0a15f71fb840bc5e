#include "cflr/grammar.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "cflr/error.hpp"

namespace cflr {

Symbol Symbol::terminal(std::string base, std::optional<std::string> index) {
  return Symbol{SymbolKind::kTerminal, std::move(base), std::move(index)};
}

Symbol Symbol::nonterminal(std::string base, std::optional<std::string> index) {
  return Symbol{SymbolKind::kNonterminal, std::move(base), std::move(index)};
}

Symbol Symbol::epsilon() { return Symbol{}; }

Symbol Symbol::with_index(std::optional<std::string> tag) const {
  Symbol s = *this;
  s.index = std::move(tag);
  return s;
}

std::string Symbol::to_string() const {
  if (is_epsilon()) return "eps";
  if (!index) return base;
  return base + "_[" + *index + "]";
}

std::string Production::to_string() const {
  std::string out = lhs.to_string() + " ->";
  if (rhs.empty()) return out + " eps";
  for (const auto& s : rhs) out += " " + s.to_string();
  return out;
}

std::optional<std::string> Cfg::index_variable() const {
  for (const auto& s : nonterminals)
    if (s.index) return s.index;
  for (const auto& s : terminals)
    if (s.index) return s.index;
  return std::nullopt;
}

std::set<std::string> WcnfGrammar::indexed_terminal_bases() const {
  std::set<std::string> out;
  for (const auto& t : cfg.terminals)
    if (t.indexed()) out.insert(t.base);
  return out;
}

bool WcnfGrammar::is_helper(const Symbol& s) {
  return s.is_nonterminal() &&
         (s.base.starts_with('@') || s.base.find('#') != std::string::npos);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Token {
  std::string base;
  std::optional<std::string> index;
  bool optional = false;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// `#` starts a comment only at the beginning of a token so that generated
// names such as `S#1` survive a serialize/parse round trip.
std::string_view strip_comment(std::string_view line) {
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '#' && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t'))
      return line.substr(0, i);
  }
  return line;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

Token parse_token(std::string text, std::size_t line) {
  Token tok;
  if (text.size() > 1 && text.back() == '?') {
    tok.optional = true;
    text.pop_back();
  }
  const auto open = text.find("_[");
  if (open != std::string::npos) {
    if (text.back() != ']')
      throw GrammarError("malformed indexed symbol '" + text + "'", line);
    tok.base = text.substr(0, open);
    tok.index = text.substr(open + 2, text.size() - open - 3);
    if (tok.index->empty() || tok.index->find_first_of("[]") != std::string::npos)
      throw GrammarError("malformed index variable in '" + text + "'", line);
  } else {
    tok.base = text;
  }
  if (tok.base.empty())
    throw GrammarError("empty symbol name in '" + text + "'", line);
  if (tok.base.find_first_of("[]|;") != std::string::npos || tok.base == "->")
    throw GrammarError("invalid symbol name '" + text + "'", line);
  return tok;
}

struct RawRule {
  std::size_t line;
  Token lhs;
  std::vector<std::vector<Token>> alternatives;
};

}  // namespace

Cfg parse_grammar(std::string_view text) {
  std::vector<RawRule> rules;
  std::optional<std::pair<std::string, std::size_t>> start_name;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    const auto line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.starts_with("start:")) {
      const auto name = trim(line.substr(6));
      if (name.empty() || split_ws(name).size() != 1)
        throw GrammarError("start directive needs exactly one symbol", line_no);
      start_name = {std::string(name), line_no};
      continue;
    }

    const auto arrow = line.find("->");
    if (arrow == std::string_view::npos)
      throw GrammarError("expected 'LHS -> ...'", line_no);

    const auto lhs_tokens = split_ws(line.substr(0, arrow));
    if (lhs_tokens.size() != 1)
      throw GrammarError("left-hand side must be a single symbol", line_no);

    RawRule rule{line_no, parse_token(lhs_tokens.front(), line_no), {}};
    if (rule.lhs.optional)
      throw GrammarError("left-hand side cannot be optional", line_no);

    auto body = std::string(line.substr(arrow + 2));
    if (!body.empty() && body.back() == ';') body.pop_back();
    if (body.find(';') != std::string::npos)
      throw GrammarError("unexpected ';' inside rule", line_no);

    std::size_t from = 0;
    while (true) {
      const auto bar = body.find('|', from);
      const auto alt_text = body.substr(from, bar == std::string::npos ? std::string::npos : bar - from);
      const auto words = split_ws(alt_text);
      std::vector<Token> alt;
      // An empty alternative, like `eps`, is the empty word.
      if (!words.empty() && !(words.size() == 1 && words.front() == "eps")) {
        for (const auto& w : words) {
          if (w == "eps")
            throw GrammarError("'eps' must stand alone in an alternative", line_no);
          alt.push_back(parse_token(w, line_no));
        }
      }
      rule.alternatives.push_back(std::move(alt));
      if (bar == std::string::npos) break;
      from = bar + 1;
    }
    rules.push_back(std::move(rule));
  }

  if (rules.empty()) throw GrammarError("grammar has no rules");

  // Non-terminal bases and whether they are indexed.
  std::map<std::string, bool> nonterminal_indexed;
  std::optional<std::string> index_var;
  auto note_index = [&](const Token& t, std::size_t line) {
    if (!t.index) return;
    if (index_var && *index_var != *t.index)
      throw GrammarError("more than one index variable ('" + *index_var + "' and '" + *t.index +
                             "'); only one is supported",
                         line);
    index_var = t.index;
  };
  for (const auto& r : rules) {
    note_index(r.lhs, r.line);
    auto [it, inserted] = nonterminal_indexed.emplace(r.lhs.base, r.lhs.index.has_value());
    if (!inserted && it->second != r.lhs.index.has_value())
      throw GrammarError("symbol '" + r.lhs.base + "' used both with and without an index", r.line);
  }

  std::map<std::string, bool> terminal_indexed;
  Cfg g;
  auto to_symbol = [&](const Token& t, std::size_t line) -> Symbol {
    note_index(t, line);
    if (auto it = nonterminal_indexed.find(t.base); it != nonterminal_indexed.end()) {
      if (it->second != t.index.has_value())
        throw GrammarError("symbol '" + t.base + "' used both with and without an index", line);
      return Symbol::nonterminal(t.base, t.index);
    }
    auto [it, inserted] = terminal_indexed.emplace(t.base, t.index.has_value());
    if (!inserted && it->second != t.index.has_value())
      throw GrammarError("symbol '" + t.base + "' used both with and without an index", line);
    return Symbol::terminal(t.base, t.index);
  };

  for (const auto& r : rules) {
    const Symbol lhs = Symbol::nonterminal(r.lhs.base, r.lhs.index);
    g.nonterminals.insert(lhs);
    for (const auto& alt : r.alternatives) {
      std::vector<std::size_t> optional_positions;
      std::vector<Symbol> symbols;
      for (std::size_t k = 0; k < alt.size(); ++k) {
        symbols.push_back(to_symbol(alt[k], r.line));
        if (alt[k].optional) optional_positions.push_back(k);
      }
      if (optional_positions.size() > 16)
        throw GrammarError("too many optional symbols in one alternative", r.line);
      // Expand every subset of optional symbols, "all present" first.
      const std::size_t variants = std::size_t{1} << optional_positions.size();
      for (std::size_t mask = 0; mask < variants; ++mask) {
        Production p{lhs, {}};
        for (std::size_t k = 0; k < symbols.size(); ++k) {
          const auto opt = std::find(optional_positions.begin(), optional_positions.end(), k);
          if (opt != optional_positions.end() &&
              (mask >> (opt - optional_positions.begin())) & 1U)
            continue;
          p.rhs.push_back(symbols[k]);
        }
        g.productions.push_back(std::move(p));
      }
    }
  }
  for (const auto& p : g.productions)
    for (const auto& s : p.rhs)
      if (s.is_terminal()) g.terminals.insert(s);

  // A plain terminal spelled `<indexed base>_...` would read as an indexed
  // graph label.
  for (const auto& [plain, plain_indexed] : terminal_indexed) {
    if (plain_indexed) continue;
    for (const auto& [base, indexed] : terminal_indexed)
      if (indexed && plain.starts_with(base + "_"))
        throw GrammarError("terminal '" + plain + "' collides with indexed terminal '" + base +
                           "_[" + *index_var + "]'");
  }

  if (start_name) {
    const auto tok = parse_token(start_name->first, start_name->second);
    const Symbol s = Symbol::nonterminal(tok.base, tok.index);
    if (!g.nonterminals.contains(s))
      throw GrammarError("undeclared start symbol '" + start_name->first + "'", start_name->second);
    g.start = s;
  } else {
    g.start = Symbol::nonterminal(rules.front().lhs.base, rules.front().lhs.index);
  }
  return g;
}

std::string serialize_grammar(const Cfg& g) {
  std::ostringstream out;
  out << "start: " << g.start.to_string() << '\n';
  for (const auto& p : g.productions) out << p.to_string() << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// WCNF

namespace {

class FreshNames {
 public:
  explicit FreshNames(const Cfg& g) {
    for (const auto& s : g.nonterminals) taken_.insert(s.base);
    for (const auto& s : g.terminals) taken_.insert(s.base);
  }

  std::string claim(std::string base) {
    while (taken_.contains(base)) base += '\'';
    taken_.insert(base);
    return base;
  }

 private:
  std::set<std::string> taken_;
};

class Lowering {
 public:
  Lowering(const Cfg& g, bool allow_terminal_pairs)
      : source_(g), fresh_(g), allow_terminal_pairs_(allow_terminal_pairs) {}

  WcnfValidation run() {
    WcnfValidation result;
    std::vector<Production> out;
    const auto index_var = source_.index_variable();
    for (std::size_t i = 0; i < source_.productions.size(); ++i) {
      const auto& p = source_.productions[i];
      const auto n = p.rhs.size();
      const bool mixed = std::any_of(p.rhs.begin(), p.rhs.end(), [&](const Symbol& s) {
        return s.indexed() && s.index != index_var;
      }) || (p.lhs.indexed() && p.lhs.index != index_var);
      if (mixed) {
        result.violations.push_back(
            {i, ViolationKind::kMixedIndexVariables,
             "more than one index variable in the grammar: " + p.to_string()});
        continue;
      }
      if (n == 0) {
        out.push_back(p);
      } else if (n == 1) {
        if (p.rhs[0].is_terminal())
          out.push_back(p);
        else
          out.push_back(Production{p.lhs, {p.rhs[0], epsilon_helper()}});
      } else if (n == 2) {
        if (p.rhs[0].is_terminal() && p.rhs[1].is_terminal() && !allow_terminal_pairs_) {
          result.violations.push_back(
              {i, ViolationKind::kTerminalPair,
               "binary rule over two terminals: " + p.to_string()});
          continue;
        }
        out.push_back(Production{p.lhs, {lift(p.rhs[0]), lift(p.rhs[1])}});
      } else {
        result.violations.push_back(
            {i, ViolationKind::kRhsTooLong,
             "right-hand side longer than two symbols: " + p.to_string()});
      }
    }
    if (!result.violations.empty()) return result;

    WcnfGrammar w;
    w.cfg.terminals = source_.terminals;
    w.cfg.nonterminals = source_.nonterminals;
    w.cfg.start = source_.start;
    w.cfg.productions = std::move(out);
    for (auto& h : helpers_) {
      w.cfg.nonterminals.insert(h.lhs);
      w.cfg.productions.push_back(std::move(h));
    }
    for (const auto& p : w.cfg.productions) {
      if (p.rhs.empty())
        w.terminal_rules[Symbol::epsilon()].insert(p.lhs);
      else if (p.rhs.size() == 1)
        w.terminal_rules[p.rhs[0]].insert(p.lhs);
      else
        w.binary_rules.push_back({p.lhs, p.rhs[0], p.rhs[1]});
      if (p.lhs.indexed()) w.indexed_families.push_back(p);
    }
    result.grammar = std::move(w);
    return result;
  }

 private:
  Symbol epsilon_helper() {
    if (!epsilon_) {
      epsilon_ = Symbol::nonterminal(fresh_.claim("@eps"));
      helpers_.push_back(Production{*epsilon_, {}});
    }
    return *epsilon_;
  }

  Symbol lift(const Symbol& s) {
    if (!s.is_terminal()) return s;
    auto it = lifted_.find(s.base);
    if (it == lifted_.end()) {
      it = lifted_.emplace(s.base, fresh_.claim("@" + s.base)).first;
      const Symbol helper = Symbol::nonterminal(it->second, s.index);
      helpers_.push_back(Production{helper, {s}});
    }
    return Symbol::nonterminal(it->second, s.index);
  }

  const Cfg& source_;
  FreshNames fresh_;
  bool allow_terminal_pairs_;
  std::optional<Symbol> epsilon_;
  std::map<std::string, std::string> lifted_;
  std::vector<Production> helpers_;
};

Cfg binarize(const Cfg& g) {
  FreshNames fresh(g);
  std::map<std::string, std::size_t> counters;
  Cfg out;
  out.terminals = g.terminals;
  out.nonterminals = g.nonterminals;
  out.start = g.start;
  const auto index_var = g.index_variable();

  for (const auto& p : g.productions) {
    if (p.rhs.size() <= 2) {
      out.productions.push_back(p);
      continue;
    }
    const auto n = p.rhs.size();
    // suffix_indexed[j]: some symbol in rhs[j..n) carries the index.
    std::vector<bool> suffix_indexed(n + 1, false);
    for (std::size_t j = n; j-- > 0;)
      suffix_indexed[j] = suffix_indexed[j + 1] || p.rhs[j].indexed();

    Symbol current = p.lhs;
    for (std::size_t j = 0; j + 2 < n; ++j) {
      const auto k = ++counters[p.lhs.base];
      const auto name = fresh.claim(p.lhs.base + "#" + std::to_string(k));
      Symbol chain = Symbol::nonterminal(
          name, suffix_indexed[j + 1] ? index_var : std::optional<std::string>{});
      out.nonterminals.insert(chain);
      out.productions.push_back(Production{current, {p.rhs[j], chain}});
      current = chain;
    }
    out.productions.push_back(Production{current, {p.rhs[n - 2], p.rhs[n - 1]}});
  }
  return out;
}

}  // namespace

WcnfValidation validate_wcnf(const Cfg& g) { return Lowering(g, false).run(); }

WcnfGrammar to_wcnf(const Cfg& g) {
  auto result = Lowering(binarize(g), true).run();
  if (!result.ok())
    throw GrammarError("internal error: normalization left violations: " +
                       result.violations.front().message);
  return std::move(*result.grammar);
}

}  // namespace cflr
