#include "jck/syntax.hpp"

#include <algorithm>
#include <utility>

#include "jck/error.hpp"
#include "jck/text.hpp"

namespace jck {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  // boost::hash_combine constant, widened.
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t sort_code(Sort s) {
  return static_cast<std::size_t>(s.tag) * 1024 + static_cast<std::size_t>(s.agent);
}

}  // namespace

std::string to_string(Sort s) {
  switch (s.tag) {
    case Sort::Tag::Agent:
      return std::to_string(s.agent);
    case Sort::Tag::E:
      return "E";
    case Sort::Tag::C:
      return "C";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Term

struct Term::Node {
  TermKind kind;
  int index = 0;
  int agent = 0;
  Sort sort;
  std::vector<Term> children;
  std::size_t hash = 0;
};

namespace {

std::shared_ptr<Term::Node> make_term_node(TermKind kind, int index, int agent,
                                           Sort sort, std::vector<Term> children) {
  auto n = std::make_shared<Term::Node>();
  n->kind = kind;
  n->index = index;
  n->agent = agent;
  n->sort = sort;
  std::size_t h = mix(static_cast<std::size_t>(kind) + 1, static_cast<std::size_t>(index));
  h = mix(h, static_cast<std::size_t>(agent));
  h = mix(h, sort_code(sort));
  for (const auto& c : children) h = mix(h, c.hash());
  n->hash = h;
  n->children = std::move(children);
  return n;
}

}  // namespace

Term Term::constant(int index, Sort sort) {
  return Term(make_term_node(TermKind::Const, index, 0, sort, {}));
}
Term Term::variable(int index, Sort sort) {
  return Term(make_term_node(TermKind::Var, index, 0, sort, {}));
}
Term Term::bang(Term t, int agent) {
  return Term(make_term_node(TermKind::Bang, 0, agent, Sort::of_agent(agent),
                             {std::move(t)}));
}
Term Term::sum(Term t, Term s, Sort sort) {
  return Term(make_term_node(TermKind::Sum, 0, 0, sort, {std::move(t), std::move(s)}));
}
Term Term::app(Term t, Term s, Sort sort) {
  return Term(make_term_node(TermKind::App, 0, 0, sort, {std::move(t), std::move(s)}));
}
Term Term::tuple(std::vector<Term> parts) {
  return Term(make_term_node(TermKind::Tuple, 0, 0, Sort::mutual(), std::move(parts)));
}
Term Term::proj(int agent, Term t) {
  return Term(make_term_node(TermKind::Proj, 0, agent, Sort::of_agent(agent),
                             {std::move(t)}));
}
Term Term::head(Term t) {
  return Term(make_term_node(TermKind::Head, 0, 0, Sort::mutual(), {std::move(t)}));
}
Term Term::tail(Term t) {
  return Term(make_term_node(TermKind::Tail, 0, 0, Sort::mutual(), {std::move(t)}));
}
Term Term::ind(Term t, Term s) {
  return Term(make_term_node(TermKind::Ind, 0, 0, Sort::common(), {std::move(t), std::move(s)}));
}

TermKind Term::kind() const { return node_->kind; }
int Term::index() const { return node_->index; }
int Term::agent() const { return node_->agent; }
Sort Term::sort() const { return node_->sort; }
std::span<const Term> Term::children() const { return node_->children; }
std::size_t Term::hash() const { return node_->hash; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.kind != y.kind || x.index != y.index ||
      x.agent != y.agent || x.sort != y.sort ||
      x.children.size() != y.children.size())
    return false;
  return std::equal(x.children.begin(), x.children.end(), y.children.begin());
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.index <=> y.index; c != 0) return c;
  if (auto c = x.agent <=> y.agent; c != 0) return c;
  if (auto c = x.sort <=> y.sort; c != 0) return c;
  return std::lexicographical_compare_three_way(x.children.begin(), x.children.end(),
                                                y.children.begin(), y.children.end());
}

// ---------------------------------------------------------------------------
// Formula

struct Formula::Node {
  FormulaKind kind;
  int index = 0;
  std::vector<Formula> operands;
  std::vector<Term> term;  // zero or one element
  Sort sort;
  std::size_t hash = 0;
};

namespace {

std::shared_ptr<Formula::Node> make_formula_node(FormulaKind kind, int index,
                                                 std::vector<Formula> operands,
                                                 std::vector<Term> term, Sort sort) {
  auto n = std::make_shared<Formula::Node>();
  n->kind = kind;
  n->index = index;
  n->sort = sort;
  std::size_t h = mix(static_cast<std::size_t>(kind) + 101, static_cast<std::size_t>(index));
  for (const auto& t : term) h = mix(h, t.hash());
  h = mix(h, sort_code(sort));
  for (const auto& o : operands) h = mix(h, o.hash());
  n->hash = h;
  n->operands = std::move(operands);
  n->term = std::move(term);
  return n;
}

}  // namespace

Formula Formula::prop(int index) {
  return Formula(make_formula_node(FormulaKind::Prop, index, {}, {}, Sort{}));
}
Formula Formula::negation(Formula a) {
  return Formula(make_formula_node(FormulaKind::Neg, 0, {std::move(a)}, {}, Sort{}));
}
Formula Formula::conjunction(Formula a, Formula b) {
  return Formula(make_formula_node(FormulaKind::And, 0, {std::move(a), std::move(b)}, {}, Sort{}));
}
Formula Formula::disjunction(Formula a, Formula b) {
  return Formula(make_formula_node(FormulaKind::Or, 0, {std::move(a), std::move(b)}, {}, Sort{}));
}
Formula Formula::implication(Formula a, Formula b) {
  return Formula(make_formula_node(FormulaKind::Imp, 0, {std::move(a), std::move(b)}, {}, Sort{}));
}
Formula Formula::justified(Term t, Sort sort, Formula body) {
  return Formula(
      make_formula_node(FormulaKind::Just, 0, {std::move(body)}, {std::move(t)}, sort));
}

FormulaKind Formula::kind() const { return node_->kind; }
int Formula::prop_index() const { return node_->index; }
const Formula& Formula::lhs() const { return node_->operands.at(0); }
const Formula& Formula::rhs() const { return node_->operands.at(1); }
const Term& Formula::term() const { return node_->term.at(0); }
Sort Formula::sort() const { return node_->sort; }
std::size_t Formula::hash() const { return node_->hash; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.kind != y.kind || x.index != y.index || x.sort != y.sort ||
      x.operands.size() != y.operands.size() || x.term.size() != y.term.size())
    return false;
  return std::equal(x.term.begin(), x.term.end(), y.term.begin()) &&
         std::equal(x.operands.begin(), x.operands.end(), y.operands.begin());
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.index <=> y.index; c != 0) return c;
  if (auto c = x.sort <=> y.sort; c != 0) return c;
  if (auto c = std::lexicographical_compare_three_way(x.term.begin(), x.term.end(),
                                                      y.term.begin(), y.term.end());
      c != 0)
    return c;
  return std::lexicographical_compare_three_way(x.operands.begin(), x.operands.end(),
                                                y.operands.begin(), y.operands.end());
}

// ---------------------------------------------------------------------------
// Sorting

namespace {

void require_agent(const Term& t, int agent, int agents, const char* what) {
  if (agent < 1 || agent > agents)
    throw SortError(print_term(t), std::string(what) + " agent index " +
                                       std::to_string(agent) + " outside 1.." +
                                       std::to_string(agents));
}

}  // namespace

Sort sort_of(const Term& t, int agents) {
  switch (t.kind()) {
    case TermKind::Const:
    case TermKind::Var: {
      if (t.index() < 1)
        throw SortError(print_term(t), "indices of constants and variables are positive");
      if (t.sort().is_agent()) require_agent(t, t.sort().agent, agents, "leaf");
      return t.sort();
    }
    case TermKind::Bang: {
      require_agent(t, t.agent(), agents, "!");
      if (sort_of(t.child(0), agents) != Sort::of_agent(t.agent()))
        throw SortError(print_term(t), "!i applies to terms of sort i");
      return Sort::of_agent(t.agent());
    }
    case TermKind::Sum:
    case TermKind::App: {
      const Sort claimed = t.sort();
      const char* op = t.kind() == TermKind::Sum ? "+" : "*";
      if (!claimed.is_star())
        throw SortError(print_term(t), std::string(op) + " is only defined on agent sorts and C");
      if (claimed.is_agent()) require_agent(t, claimed.agent, agents, op);
      if (sort_of(t.child(0), agents) != claimed || sort_of(t.child(1), agents) != claimed)
        throw SortError(print_term(t),
                        std::string(op) + " requires both operands of sort " + to_string(claimed));
      return claimed;
    }
    case TermKind::Tuple: {
      const auto parts = t.children();
      if (static_cast<int>(parts.size()) != agents)
        throw SortError(print_term(t), "tuple arity " + std::to_string(parts.size()) +
                                           " differs from the number of agents " +
                                           std::to_string(agents));
      for (std::size_t k = 0; k < parts.size(); ++k) {
        if (sort_of(parts[k], agents) != Sort::of_agent(static_cast<int>(k) + 1))
          throw SortError(print_term(t), "tuple component " + std::to_string(k + 1) +
                                             " must have sort " + std::to_string(k + 1));
      }
      return Sort::mutual();
    }
    case TermKind::Proj:
      require_agent(t, t.agent(), agents, "pi");
      if (sort_of(t.child(0), agents) != Sort::mutual())
        throw SortError(print_term(t), "pi_i applies to terms of sort E");
      return Sort::of_agent(t.agent());
    case TermKind::Head:
    case TermKind::Tail:
      if (sort_of(t.child(0), agents) != Sort::common())
        throw SortError(print_term(t), "head/tail apply to terms of sort C");
      return Sort::mutual();
    case TermKind::Ind:
      if (sort_of(t.child(0), agents) != Sort::common() ||
          sort_of(t.child(1), agents) != Sort::mutual())
        throw SortError(print_term(t), "ind(t, s) requires t of sort C and s of sort E");
      return Sort::common();
  }
  throw SortError(print_term(t), "unknown term node");
}

void check_well_formed(const Formula& a, int agents) {
  switch (a.kind()) {
    case FormulaKind::Prop:
      if (a.prop_index() < 1)
        throw SortError(print_formula(a), "proposition indices are positive");
      return;
    case FormulaKind::Neg:
      check_well_formed(a.body(), agents);
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp:
      check_well_formed(a.lhs(), agents);
      check_well_formed(a.rhs(), agents);
      return;
    case FormulaKind::Just: {
      const Sort s = sort_of(a.term(), agents);
      if (a.sort().is_agent() && (a.sort().agent < 1 || a.sort().agent > agents))
        throw SortError(print_formula(a), "box agent index out of range");
      if (s != a.sort())
        throw SortError(print_term(a.term()), "term of sort " + to_string(s) +
                                                  " under a box of sort " +
                                                  to_string(a.sort()));
      check_well_formed(a.body(), agents);
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// Closures

namespace {

void collect_subterms(const Term& t, std::set<Term>& out) {
  if (!out.insert(t).second) return;
  for (const auto& c : t.children()) collect_subterms(c, out);
}

void collect_subformulas(const Formula& a, std::set<Formula>& out) {
  if (!out.insert(a).second) return;
  switch (a.kind()) {
    case FormulaKind::Prop:
      return;
    case FormulaKind::Neg:
    case FormulaKind::Just:
      collect_subformulas(a.body(), out);
      return;
    default:
      collect_subformulas(a.lhs(), out);
      collect_subformulas(a.rhs(), out);
  }
}

void collect_terms(const Formula& a, std::set<Term>& out) {
  switch (a.kind()) {
    case FormulaKind::Prop:
      return;
    case FormulaKind::Just:
      collect_subterms(a.term(), out);
      [[fallthrough]];
    case FormulaKind::Neg:
      collect_terms(a.body(), out);
      return;
    default:
      collect_terms(a.lhs(), out);
      collect_terms(a.rhs(), out);
  }
}

}  // namespace

std::set<Term> subterms(const Term& t) {
  std::set<Term> out;
  collect_subterms(t, out);
  return out;
}

std::set<Formula> subformulas(const Formula& a) {
  std::set<Formula> out;
  collect_subformulas(a, out);
  return out;
}

std::set<Term> terms_of(const Formula& a) {
  std::set<Term> out;
  collect_terms(a, out);
  return out;
}

bool is_ground(const Term& t) {
  if (t.kind() == TermKind::Var) return false;
  return std::all_of(t.children().begin(), t.children().end(),
                     [](const Term& c) { return is_ground(c); });
}

std::set<int> variable_indices(const Formula& a, Sort sort) {
  std::set<int> out;
  for (const auto& t : terms_of(a))
    if (t.kind() == TermKind::Var && t.sort() == sort) out.insert(t.index());
  return out;
}

// ---------------------------------------------------------------------------
// Substitution

Term substitute(const Term& s, const Term& x, const Term& t) {
  if (s == x) return t;
  switch (s.kind()) {
    case TermKind::Const:
    case TermKind::Var:
      return s;
    case TermKind::Bang:
      return Term::bang(substitute(s.child(0), x, t), s.agent());
    case TermKind::Sum:
      return Term::sum(substitute(s.child(0), x, t), substitute(s.child(1), x, t), s.sort());
    case TermKind::App:
      return Term::app(substitute(s.child(0), x, t), substitute(s.child(1), x, t), s.sort());
    case TermKind::Tuple: {
      std::vector<Term> parts;
      parts.reserve(s.children().size());
      for (const auto& c : s.children()) parts.push_back(substitute(c, x, t));
      return Term::tuple(std::move(parts));
    }
    case TermKind::Proj:
      return Term::proj(s.agent(), substitute(s.child(0), x, t));
    case TermKind::Head:
      return Term::head(substitute(s.child(0), x, t));
    case TermKind::Tail:
      return Term::tail(substitute(s.child(0), x, t));
    case TermKind::Ind:
      return Term::ind(substitute(s.child(0), x, t), substitute(s.child(1), x, t));
  }
  return s;
}

namespace {

Formula substitute_unchecked(const Formula& a, const Term& x, const Term& t,
                             int prop_index, const Formula& b) {
  switch (a.kind()) {
    case FormulaKind::Prop:
      return a.prop_index() == prop_index ? b : a;
    case FormulaKind::Neg:
      return neg(substitute_unchecked(a.body(), x, t, prop_index, b));
    case FormulaKind::And:
      return conj(substitute_unchecked(a.lhs(), x, t, prop_index, b),
                  substitute_unchecked(a.rhs(), x, t, prop_index, b));
    case FormulaKind::Or:
      return disj(substitute_unchecked(a.lhs(), x, t, prop_index, b),
                  substitute_unchecked(a.rhs(), x, t, prop_index, b));
    case FormulaKind::Imp:
      return imp(substitute_unchecked(a.lhs(), x, t, prop_index, b),
                 substitute_unchecked(a.rhs(), x, t, prop_index, b));
    case FormulaKind::Just:
      return just(substitute(a.term(), x, t), a.sort(),
                  substitute_unchecked(a.body(), x, t, prop_index, b));
  }
  return a;
}

}  // namespace

Formula substitute(const Formula& a, const Term& x, const Term& t, int prop_index,
                   const Formula& b) {
  if (x.kind() != TermKind::Var)
    throw SortError(print_term(x), "substitution target must be a variable");
  if (x.sort() != t.sort())
    throw SortError(print_term(t), "replacement of sort " + to_string(t.sort()) +
                                       " for a variable of sort " + to_string(x.sort()));
  return substitute_unchecked(a, x, t, prop_index, b);
}

}  // namespace jck
