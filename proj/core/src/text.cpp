#include "jck/text.hpp"

#include <utility>

#include "jck/error.hpp"
#include "lexer.hpp"

namespace jck {

using detail::Lexer;
using detail::Tok;
using detail::Token;

std::optional<std::string> Names::prop_name(int index) const {
  for (const auto& [name, k] : props)
    if (k == index) return name;
  return std::nullopt;
}

std::optional<std::string> Names::constant_name(int index) const {
  for (const auto& [name, k] : constants)
    if (k == index) return name;
  return std::nullopt;
}

namespace {

Sort sort_from_token(const Token& tok, int agents) {
  if (tok.kind == Tok::Number) {
    const int i = detail::to_int(tok);
    if (i < 1 || i > agents)
      throw ParseError(tok.pos, "agent " + std::to_string(i) + " outside 1.." +
                                    std::to_string(agents));
    return Sort::of_agent(i);
  }
  if (tok.kind == Tok::Ident && tok.text == "E") return Sort::mutual();
  if (tok.kind == Tok::Ident && tok.text == "C") return Sort::common();
  throw ParseError(tok.pos, "expected a sort (1..h, E or C)");
}

class Parser {
 public:
  Parser(std::string_view src, std::size_t pos, int agents, const Names* names)
      : lex_(src, pos), agents_(agents), names_(names) {
    if (agents < 1) throw InvalidInput("number of agents must be at least 1");
  }

  Lexer& lexer() { return lex_; }

  Term term() {
    Term t = product();
    while (lex_.peek().kind == Tok::Plus) {
      const std::size_t at = lex_.next().pos;
      Term s = product();
      t = Term::sum(t, s, operand_sort(t, s, at, "+"));
    }
    return t;
  }

  Formula formula() {
    Formula a = disjunction();
    if (lex_.accept(Tok::Arrow)) return imp(a, formula());
    return a;
  }

 private:
  Sort operand_sort(const Term& t, const Term& s, std::size_t at, const char* op) {
    const Sort a = sort_of(t, agents_);
    const Sort b = sort_of(s, agents_);
    if (a != b)
      throw SortError(print_term(t) + " " + op + " " + print_term(s),
                      "operands of different sorts " + to_string(a) + " and " + to_string(b));
    if (!a.is_star())
      throw SortError(print_term(t) + " " + op + " " + print_term(s),
                      std::string(op) + " is not defined on sort E");
    (void)at;
    return a;
  }

  Term product() {
    Term t = atom();
    while (lex_.peek().kind == Tok::Star) {
      const std::size_t at = lex_.next().pos;
      Term s = atom();
      t = Term::app(t, s, operand_sort(t, s, at, "*"));
    }
    return t;
  }

  Term unary_arg() {
    lex_.expect(Tok::LParen, "`(`");
    Term t = term();
    lex_.expect(Tok::RParen, "`)`");
    return t;
  }

  int agent_number(const Token& tok) {
    const int i = detail::to_int(tok);
    if (i < 1 || i > agents_)
      throw ParseError(tok.pos, "agent " + std::to_string(i) + " outside 1.." +
                                    std::to_string(agents_));
    return i;
  }

  Term atom() {
    const Token tok = lex_.peek();
    switch (tok.kind) {
      case Tok::LParen: {
        lex_.next();
        Term t = term();
        lex_.expect(Tok::RParen, "`)`");
        return t;
      }
      case Tok::Bang: {
        lex_.next();
        const int i = agent_number(lex_.expect(Tok::Number, "agent index after `!`"));
        Term t = Term::bang(unary_arg(), i);
        sort_of(t, agents_);
        return t;
      }
      case Tok::LAngle: {
        lex_.next();
        std::vector<Term> parts;
        parts.push_back(term());
        while (lex_.accept(Tok::Comma)) parts.push_back(term());
        lex_.expect(Tok::RAngle, "`>` closing the tuple");
        if (static_cast<int>(parts.size()) != agents_)
          throw ParseError(tok.pos, "tuple has " + std::to_string(parts.size()) +
                                        " components but there are " +
                                        std::to_string(agents_) + " agents");
        Term t = Term::tuple(std::move(parts));
        sort_of(t, agents_);
        return t;
      }
      case Tok::Ident:
        return identifier_term();
      default:
        lex_.fail("expected a term");
    }
  }

  Term identifier_term() {
    const Token tok = lex_.next();
    const std::string_view id = tok.text;
    if (id == "head" || id == "tail") {
      Term arg = unary_arg();
      Term t = id == "head" ? Term::head(arg) : Term::tail(arg);
      sort_of(t, agents_);
      return t;
    }
    if (id == "ind") {
      lex_.expect(Tok::LParen, "`(`");
      Term c = term();
      lex_.expect(Tok::Comma, "`,`");
      Term e = term();
      lex_.expect(Tok::RParen, "`)`");
      Term t = Term::ind(c, e);
      sort_of(t, agents_);
      return t;
    }
    if (const int i = detail::indexed_name(id, "pi_"); i >= 0) {
      if (i < 1 || i > agents_)
        throw ParseError(tok.pos, "agent " + std::to_string(i) + " outside 1.." +
                                      std::to_string(agents_));
      Term t = Term::proj(i, unary_arg());
      sort_of(t, agents_);
      return t;
    }
    bool is_var = false;
    int index = detail::indexed_name(id, "x");
    if (index >= 0) {
      is_var = true;
    } else {
      index = detail::indexed_name(id, "c");
    }
    if (index < 0 && names_ != nullptr) {
      if (auto it = names_->constants.find(std::string(id)); it != names_->constants.end())
        index = it->second;
    }
    if (index < 0) throw ParseError(tok.pos, "unknown term `" + std::string(id) + "`");
    if (index < 1) throw ParseError(tok.pos, "indices start at 1");
    lex_.expect(Tok::At, "`@` and a sort");
    const Sort s = sort_from_token(lex_.next(), agents_);
    return is_var ? Term::variable(index, s) : Term::constant(index, s);
  }

  Formula disjunction() {
    Formula a = conjunction();
    while (lex_.accept(Tok::Bar)) a = disj(a, conjunction());
    return a;
  }

  Formula conjunction() {
    Formula a = unary();
    while (lex_.accept(Tok::Amp)) a = conj(a, unary());
    return a;
  }

  Formula unary() {
    const Token tok = lex_.peek();
    switch (tok.kind) {
      case Tok::Tilde:
        lex_.next();
        return neg(unary());
      case Tok::LBracket: {
        lex_.next();
        Term t = term();
        lex_.expect(Tok::RBracket, "`]`");
        lex_.expect(Tok::At, "`@` and a sort after `]`");
        const Sort s = sort_from_token(lex_.next(), agents_);
        const Sort actual = sort_of(t, agents_);
        if (actual != s)
          throw SortError(print_term(t), "term of sort " + to_string(actual) +
                                             " under a box of sort " + to_string(s));
        return just(t, s, unary());
      }
      case Tok::LParen: {
        lex_.next();
        Formula a = formula();
        lex_.expect(Tok::RParen, "`)`");
        return a;
      }
      case Tok::Ident: {
        lex_.next();
        if (const int k = detail::indexed_name(tok.text, "P"); k >= 1) return prop(k);
        if (names_ != nullptr) {
          if (auto it = names_->props.find(std::string(tok.text)); it != names_->props.end())
            return prop(it->second);
        }
        throw ParseError(tok.pos, "unknown proposition `" + std::string(tok.text) + "`");
      }
      default:
        lex_.fail("expected a formula");
    }
  }

  Lexer lex_;
  int agents_;
  const Names* names_;
};

template <typename F>
auto parse_all(std::string_view text, int agents, const Names* names, F f) {
  Parser p(text, 0, agents, names);
  auto v = f(p);
  if (p.lexer().peek().kind != Tok::End) p.lexer().fail("expected end of input");
  return v;
}

}  // namespace

Term parse_term(std::string_view text, int agents, const Names* names) {
  return parse_all(text, agents, names, [](Parser& p) { return p.term(); });
}

Formula parse_formula(std::string_view text, int agents, const Names* names) {
  return parse_all(text, agents, names, [](Parser& p) { return p.formula(); });
}

Term parse_term_at(std::string_view text, std::size_t& pos, int agents, const Names* names) {
  Parser p(text, pos, agents, names);
  Term t = p.term();
  pos = p.lexer().resume_position();
  return t;
}

Formula parse_formula_at(std::string_view text, std::size_t& pos, int agents,
                         const Names* names) {
  Parser p(text, pos, agents, names);
  Formula a = p.formula();
  pos = p.lexer().resume_position();
  return a;
}

Sort parse_sort(std::string_view text, int agents) {
  Lexer lex(text, 0);
  const Sort s = sort_from_token(lex.next(), agents);
  if (lex.peek().kind != Tok::End) lex.fail("expected end of sort");
  return s;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Term precedence: 0 = sum, 1 = product, 2 = atom.
int term_level(const Term& t) {
  switch (t.kind()) {
    case TermKind::Sum:
      return 0;
    case TermKind::App:
      return 1;
    default:
      return 2;
  }
}

void print_term_into(const Term& t, const Names* names, std::string& out);

void print_term_at(const Term& t, int min_level, const Names* names, std::string& out) {
  if (term_level(t) < min_level) {
    out += '(';
    print_term_into(t, names, out);
    out += ')';
  } else {
    print_term_into(t, names, out);
  }
}

void print_term_into(const Term& t, const Names* names, std::string& out) {
  switch (t.kind()) {
    case TermKind::Const:
    case TermKind::Var: {
      std::optional<std::string> alias;
      if (t.kind() == TermKind::Const && names != nullptr) alias = names->constant_name(t.index());
      if (alias) {
        out += *alias;
      } else {
        out += t.kind() == TermKind::Var ? 'x' : 'c';
        out += std::to_string(t.index());
      }
      out += '@';
      out += to_string(t.sort());
      return;
    }
    case TermKind::Bang:
      out += '!';
      out += std::to_string(t.agent());
      out += '(';
      print_term_into(t.child(0), names, out);
      out += ')';
      return;
    case TermKind::Sum:
      print_term_at(t.child(0), 0, names, out);
      out += " + ";
      print_term_at(t.child(1), 1, names, out);
      return;
    case TermKind::App:
      print_term_at(t.child(0), 1, names, out);
      out += " * ";
      print_term_at(t.child(1), 2, names, out);
      return;
    case TermKind::Tuple: {
      out += '<';
      bool first = true;
      for (const auto& c : t.children()) {
        if (!first) out += ", ";
        first = false;
        print_term_into(c, names, out);
      }
      out += '>';
      return;
    }
    case TermKind::Proj:
      out += "pi_";
      out += std::to_string(t.agent());
      out += '(';
      print_term_into(t.child(0), names, out);
      out += ')';
      return;
    case TermKind::Head:
    case TermKind::Tail:
      out += t.kind() == TermKind::Head ? "head(" : "tail(";
      print_term_into(t.child(0), names, out);
      out += ')';
      return;
    case TermKind::Ind:
      out += "ind(";
      print_term_into(t.child(0), names, out);
      out += ", ";
      print_term_into(t.child(1), names, out);
      out += ')';
      return;
  }
}

// Formula precedence: 0 = implication, 1 = or, 2 = and, 3 = unary/atom.
int formula_level(const Formula& a) {
  switch (a.kind()) {
    case FormulaKind::Imp:
      return 0;
    case FormulaKind::Or:
      return 1;
    case FormulaKind::And:
      return 2;
    default:
      return 3;
  }
}

void print_formula_into(const Formula& a, const Names* names, std::string& out);

void print_formula_at(const Formula& a, int min_level, const Names* names, std::string& out) {
  if (formula_level(a) < min_level) {
    out += '(';
    print_formula_into(a, names, out);
    out += ')';
  } else {
    print_formula_into(a, names, out);
  }
}

void print_formula_into(const Formula& a, const Names* names, std::string& out) {
  switch (a.kind()) {
    case FormulaKind::Prop: {
      std::optional<std::string> alias;
      if (names != nullptr) alias = names->prop_name(a.prop_index());
      out += alias ? *alias : "P" + std::to_string(a.prop_index());
      return;
    }
    case FormulaKind::Neg:
      out += '~';
      print_formula_at(a.body(), 3, names, out);
      return;
    case FormulaKind::And:
      print_formula_at(a.lhs(), 2, names, out);
      out += " & ";
      print_formula_at(a.rhs(), 3, names, out);
      return;
    case FormulaKind::Or:
      print_formula_at(a.lhs(), 1, names, out);
      out += " | ";
      print_formula_at(a.rhs(), 2, names, out);
      return;
    case FormulaKind::Imp:
      print_formula_at(a.lhs(), 1, names, out);
      out += " -> ";
      print_formula_at(a.rhs(), 0, names, out);
      return;
    case FormulaKind::Just:
      out += '[';
      print_term_into(a.term(), names, out);
      out += "]@";
      out += to_string(a.sort());
      out += ' ';
      print_formula_at(a.body(), 3, names, out);
      return;
  }
}

}  // namespace

std::string print_term(const Term& t, const Names* names) {
  std::string out;
  print_term_into(t, names, out);
  return out;
}

std::string print_formula(const Formula& a, const Names* names) {
  std::string out;
  print_formula_into(a, names, out);
  return out;
}

}  // namespace jck
