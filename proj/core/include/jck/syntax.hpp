#pragma once

// Sorted evidence terms and formulas of the multi-agent justification logic
// with common knowledge.
//
// Terms and formulas are immutable, structurally compared values backed by
// shared nodes. Copying is cheap. Every node caches its structural hash and
// its natural sort, so equality and hashing never need to walk shared
// prefixes twice.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace jck {

/// Sort of an evidence term: one agent `1..h`, mutual (E) or common (C).
struct Sort {
  enum class Tag : std::uint8_t { Agent, E, C };

  Tag tag = Tag::C;
  int agent = 0;  // 1..h when tag == Agent, otherwise 0

  static constexpr Sort of_agent(int i) { return Sort{Tag::Agent, i}; }
  static constexpr Sort mutual() { return Sort{Tag::E, 0}; }
  static constexpr Sort common() { return Sort{Tag::C, 0}; }

  constexpr bool is_agent() const { return tag == Tag::Agent; }
  constexpr bool is_mutual() const { return tag == Tag::E; }
  constexpr bool is_common() const { return tag == Tag::C; }
  /// Agent sorts and C: the sorts that carry primitive `+`, `*` and
  /// monotone evidence.
  constexpr bool is_star() const { return tag != Tag::E; }

  friend constexpr auto operator<=>(const Sort&, const Sort&) = default;
};

/// `1`..`h`, `E` or `C`.
std::string to_string(Sort s);

enum class TermKind : std::uint8_t {
  Const,
  Var,
  Bang,
  Sum,
  App,
  Tuple,
  Proj,
  Head,
  Tail,
  Ind,
};

class Term {
 public:
  struct Node;

  static Term constant(int index, Sort sort);
  static Term variable(int index, Sort sort);
  static Term bang(Term t, int agent);
  static Term sum(Term t, Term s, Sort sort);
  static Term app(Term t, Term s, Sort sort);
  static Term tuple(std::vector<Term> parts);
  static Term proj(int agent, Term t);
  static Term head(Term t);
  static Term tail(Term t);
  static Term ind(Term t, Term s);

  TermKind kind() const;
  /// Index of a constant or variable; 0 otherwise.
  int index() const;
  /// Agent of `!_i` and `pi_i`; 0 otherwise.
  int agent() const;
  /// The sort this node claims by construction. Use `sort_of` to validate.
  Sort sort() const;
  std::span<const Term> children() const;
  const Term& child(std::size_t k) const { return children()[k]; }
  std::size_t hash() const;

  bool is_leaf() const {
    return kind() == TermKind::Const || kind() == TermKind::Var;
  }

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

enum class FormulaKind : std::uint8_t { Prop, Neg, And, Or, Imp, Just };

class Formula {
 public:
  struct Node;

  static Formula prop(int index);
  static Formula negation(Formula a);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);
  static Formula justified(Term t, Sort sort, Formula body);

  FormulaKind kind() const;
  int prop_index() const;
  /// Left operand of a binary connective or the body of `~` / `[t]@s`.
  const Formula& lhs() const;
  const Formula& rhs() const;
  const Formula& body() const { return lhs(); }
  const Term& term() const;
  Sort sort() const;
  std::size_t hash() const;

  bool is(FormulaKind k) const { return kind() == k; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Short constructors used throughout the builders.
inline Formula prop(int k) { return Formula::prop(k); }
inline Formula neg(Formula a) { return Formula::negation(std::move(a)); }
inline Formula conj(Formula a, Formula b) {
  return Formula::conjunction(std::move(a), std::move(b));
}
inline Formula disj(Formula a, Formula b) {
  return Formula::disjunction(std::move(a), std::move(b));
}
inline Formula imp(Formula a, Formula b) {
  return Formula::implication(std::move(a), std::move(b));
}
inline Formula just(Term t, Sort s, Formula a) {
  return Formula::justified(std::move(t), s, std::move(a));
}
/// `[t]@sort(t) A` using the term's constructed sort.
inline Formula just(const Term& t, Formula a) {
  return Formula::justified(t, t.sort(), std::move(a));
}

/// Validating sort computation for a system with `agents` agents.
/// Throws SortError naming the offending subterm and the violated rule.
Sort sort_of(const Term& t, int agents);

/// Checks every term in `a` with `sort_of` and that each `[t]@s` has
/// sort_of(t) == s. Throws SortError.
void check_well_formed(const Formula& a, int agents);

/// Structural closure including the argument itself.
std::set<Term> subterms(const Term& t);
std::set<Formula> subformulas(const Formula& a);
/// Every term occurring in a justification of `a`, closed under subterms.
std::set<Term> terms_of(const Formula& a);

bool is_ground(const Term& t);
/// Variables of sort `sort` occurring anywhere in the formula.
std::set<int> variable_indices(const Formula& a, Sort sort);

/// Simultaneous replacement of the term variable `x` by `t` and the
/// proposition `P<prop_index>` by `b`. Throws SortError if `x` is not a
/// variable or the claimed sorts of `x` and `t` differ.
Formula substitute(const Formula& a, const Term& x, const Term& t,
                   int prop_index, const Formula& b);
Term substitute(const Term& s, const Term& x, const Term& t);

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept { return t.hash(); }
};
struct FormulaHash {
  std::size_t operator()(const Formula& a) const noexcept { return a.hash(); }
};

}  // namespace jck

template <>
struct std::hash<jck::Term> {
  std::size_t operator()(const jck::Term& t) const noexcept { return t.hash(); }
};
template <>
struct std::hash<jck::Formula> {
  std::size_t operator()(const jck::Formula& a) const noexcept {
    return a.hash();
  }
};
