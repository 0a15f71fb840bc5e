#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cflr/error.hpp"
#include "cflr/grammar.hpp"

namespace cflr {
namespace {

// Overbar terminals are spelled with a `_bar` suffix; `X_[i]` is indexed.
constexpr std::array<std::pair<std::string_view, std::string_view>, 9> kPresets{{
    {"fsjpt",
     "# Field-sensitive Java points-to\n"
     "PT -> PTH alloc\n"
     "PTH -> eps | assign PTH\n"
     "PTH -> load_[i] Al store_[i] PTH\n"
     "FT -> alloc_bar FTH\n"
     "FTH -> eps | assign_bar FTH\n"
     "FTH -> store_bar_[i] Al load_bar_[i] FTH\n"
     "Al -> PT FT\n"},
    {"fsjpt-opt",
     "# Field-sensitive Java points-to, hand-written WCNF\n"
     "PT -> alloc | assign PT | LPFS_[i] PT\n"
     "FT -> alloc_bar | FT assign_bar | FT SPFL_[i]\n"
     "LPFS_[i] -> LP_[i] FS_[i]\n"
     "LP_[i] -> load_[i] PT\n"
     "FS_[i] -> FT store_[i]\n"
     "SPFL_[i] -> SP_[i] FL_[i]\n"
     "SP_[i] -> store_bar_[i] PT\n"
     "FL_[i] -> FT load_bar_[i]\n"},
    {"fica",
     "# Field-insensitive C/C++ alias\n"
     "M -> d_bar V d\n"
     "V -> eps | V1 V2 V3\n"
     "V1 -> eps | V2 a_bar V1\n"
     "V2 -> eps | M\n"
     "V3 -> eps | a V2 V3\n"},
    {"fica-opt",
     "# Field-insensitive C/C++ memory alias, hand-written WCNF\n"
     "M -> N1 N3 | N2 N3\n"
     "N1 -> d_bar | N1 a_bar | N2 a_bar\n"
     "N2 -> N1 M\n"
     "N3 -> d | a N3 | AM N3\n"
     "AM -> a M\n"},
    {"fsca",
     "# Field-sensitive C/C++ alias\n"
     "M -> d_bar V d\n"
     "V -> A_bar V A | f_bar_[i] V f_[i] | M | eps\n"
     "A -> a M? | eps\n"
     "A_bar -> M? a_bar | eps\n"},
    {"fsca-wcnf",
     "# Field-sensitive C/C++ alias, WCNF\n"
     "M -> DV d\n"
     "DV -> d_bar V\n"
     "V -> A_bar V | V A | FV_[i] f_[i] | M | eps\n"
     "FV_[i] -> f_bar_[i] V\n"
     "A -> a M | a | eps\n"
     "A_bar -> M a_bar | a_bar | eps\n"},
    {"cscvf",
     "# Context-sensitive C/C++ value flow\n"
     "A -> A A | a | eps\n"
     "A -> call_[i] A ret_[i]\n"},
    {"cscvf-wcnf",
     "# Context-sensitive C/C++ value flow, WCNF\n"
     "A -> A a | A AH | eps\n"
     "AH -> call_[i] AR_[i]\n"
     "AR_[i] -> A ret_[i]\n"},
    {"dyck",
     "# Single-parenthesis Dyck language without the empty word\n"
     "S -> a S b | a b | S S\n"},
}};

}  // namespace

std::string_view preset_text(std::string_view name) {
  for (const auto& [key, text] : kPresets)
    if (key == name) return text;
  throw GrammarError("unknown grammar preset '" + std::string(name) + "'");
}

Cfg preset(std::string_view name) { return parse_grammar(preset_text(name)); }

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& entry : kPresets) out.emplace_back(entry.first);
    return out;
  }();
  return names;
}

}  // namespace cflr
