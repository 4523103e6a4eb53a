#pragma once

// ASCII concrete syntax shared by the CLI and every file format.
//
//   terms     x<k>@<s>  c<k>@<s>  !i(t)  t + s  t * s  <t1, ..., th>
//             pi_i(t)  head(t)  tail(t)  ind(t, s)
//   formulas  P<k>  ~A  A & B  A | B  A -> B  [t]@<s> A
//
// with <s> one of 1..h, E, C. Precedence from tightest: unary (`~`, `[t]@s`),
// `&`, `|`, `->`; `&`/`|` associate left and `->` right. For terms `*` binds
// tighter than `+`, both left-associative. Sum and application take their
// sort from their operands, which must agree.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "jck/syntax.hpp"

namespace jck {

/// Optional human-readable aliases for propositions and constants, e.g.
/// `del` for P1 or `m1` for constant index 1 (the sort still comes from the
/// `@<s>` suffix). Aliases are accepted by the parser and used by the
/// printer when supplied.
struct Names {
  std::map<std::string, int> props;
  std::map<std::string, int> constants;

  bool empty() const { return props.empty() && constants.empty(); }
  std::optional<std::string> prop_name(int index) const;
  std::optional<std::string> constant_name(int index) const;
};

Term parse_term(std::string_view text, int agents, const Names* names = nullptr);
Formula parse_formula(std::string_view text, int agents,
                      const Names* names = nullptr);

/// Parse the longest term / formula starting at `pos` and advance `pos` past
/// it (and trailing whitespace). Used by the line-oriented file readers.
Term parse_term_at(std::string_view text, std::size_t& pos, int agents,
                   const Names* names = nullptr);
Formula parse_formula_at(std::string_view text, std::size_t& pos, int agents,
                         const Names* names = nullptr);

/// Parses `1..h`, `E` or `C`.
Sort parse_sort(std::string_view text, int agents);

std::string print_term(const Term& t, const Names* names = nullptr);
std::string print_formula(const Formula& a, const Names* names = nullptr);

}  // namespace jck
