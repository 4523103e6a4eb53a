#include <doctest.h>

#include <jck/error.hpp>
#include <jck/random.hpp>

#include "helpers.hpp"

using namespace jck;
using jck::test::F;
using jck::test::T;

TEST_SUITE("syntax") {

TEST_CASE("sort_of follows the node constraints") {
  const Sort E = Sort::mutual();
  const Sort C = Sort::common();
  CHECK(sort_of(Term::variable(1, C), 2) == C);
  CHECK(sort_of(Term::ind(Term::variable(1, C), Term::variable(1, E)), 2) == C);
  CHECK_THROWS_AS(
      sort_of(Term::app(Term::variable(1, Sort::of_agent(1)), Term::variable(1, E), E), 2),
      SortError);

  CHECK(sort_of(T("!1(x1@1)"), 2) == Sort::of_agent(1));
  CHECK(sort_of(T("pi_2(x1@E)"), 2) == Sort::of_agent(2));
  CHECK(sort_of(T("<x1@1, c1@2>"), 2) == E);
  CHECK(sort_of(T("head(x1@C)"), 2) == E);
  CHECK(sort_of(T("tail(x1@C)"), 2) == E);
  CHECK(sort_of(T("x1@C + c2@C"), 2) == C);
  CHECK(sort_of(T("x1@2 * c2@2"), 2) == Sort::of_agent(2));
}

TEST_CASE("sort errors") {
  CHECK_THROWS_AS(sort_of(T("x1@E + x2@E"), 2), SortError);
  CHECK_THROWS_AS(parse_term("!1(x1@2)", 2), SortError);
  CHECK_THROWS_AS(parse_term("head(x1@E)", 2), SortError);
  CHECK_THROWS_AS(parse_term("pi_3(x1@E)", 2), ParseError);
  CHECK_THROWS_AS(parse_term("<x1@2, x1@1>", 2), SortError);
  try {
    parse_formula("[x1@E]@C P1", 2);
    FAIL("expected a sort error");
  } catch (const SortError& e) {
    CHECK(e.subterm() == "x1@E");
  }
}

TEST_CASE("parse_term builds the expected nodes") {
  CHECK(T("ind(x1@C, x1@E)") ==
        Term::ind(Term::variable(1, Sort::common()), Term::variable(1, Sort::mutual())));
  CHECK(T("pi_2(tail(c3@C))") == Term::proj(2, Term::tail(Term::constant(3, Sort::common()))));
  CHECK_THROWS_AS(parse_term("<x1@1, x1@2>", 3), ParseError);
  CHECK_THROWS_AS(parse_term("x0@1", 2), ParseError);
  CHECK_THROWS_AS(parse_term("x1@3", 2), Error);
  CHECK_THROWS_AS(parse_term("c1@1 +", 2), ParseError);
}

TEST_CASE("parse_formula and printing") {
  const Formula a = F("[x1@1]@1 P1 -> P1");
  CHECK(a == imp(just(Term::variable(1, Sort::of_agent(1)), Sort::of_agent(1), prop(1)), prop(1)));
  CHECK(print_formula(a) == "[x1@1]@1 P1 -> P1");
  CHECK_THROWS_AS(parse_formula("[x1@E]@C P1", 2), SortError);

  // precedence and associativity
  CHECK(F("P1 -> P2 -> P3") == imp(prop(1), imp(prop(2), prop(3))));
  CHECK(F("(P1 -> P2) -> P3") == imp(imp(prop(1), prop(2)), prop(3)));
  CHECK(F("~P1 & P2 | P3") == disj(conj(neg(prop(1)), prop(2)), prop(3)));
  CHECK(F("P1 & P2 & P3") == conj(conj(prop(1), prop(2)), prop(3)));
  CHECK(print_formula(F("P1 & (P2 & P3)")) == "P1 & (P2 & P3)");
  CHECK(print_formula(F("[c1@C]@C (P1 -> P2)")) == "[c1@C]@C (P1 -> P2)");
  CHECK(print_term(T("(c1@1 + c2@1) * c3@1")) == "(c1@1 + c2@1) * c3@1");
  CHECK(print_term(T("c1@1 + c2@1 * c3@1")) == "c1@1 + c2@1 * c3@1");
}

TEST_CASE("aliases") {
  Names n;
  n.props["del"] = 1;
  n.constants["m1"] = 1;
  const Formula a = parse_formula("[m1@2]@2 del", 2, &n);
  CHECK(a == F("[c1@2]@2 P1"));
  CHECK(print_formula(a, &n) == "[m1@2]@2 del");
}

TEST_CASE("substitute") {
  const Term x = T("x1@C");
  CHECK(substitute(F("[x1@C]@C P1"), x, T("c1@C"), 1, prop(2)) == F("[c1@C]@C P2"));
  CHECK(substitute(F("P2"), x, T("c1@C"), 1, prop(3)) == F("P2"));
  CHECK_THROWS_AS(substitute(F("[x1@1]@1 (P1 -> P1)"), T("x1@1"), T("x1@E"), 1, prop(1)),
                  SortError);
  // simultaneous: the replacement proposition is not substituted again
  CHECK(substitute(F("P1 -> [x1@C]@C P1"), x, T("c2@C"), 1, F("P1 & P2")) ==
        F("P1 & P2 -> [c2@C]@C (P1 & P2)"));
}

TEST_CASE("subterms and subformulas") {
  const Term i = T("ind(x1@C, x1@E)");
  CHECK(subterms(i) == std::set<Term>{i, T("x1@C"), T("x1@E")});
  CHECK(subformulas(F("[x1@1]@1 P1")) == std::set<Formula>{F("[x1@1]@1 P1"), prop(1)});
  CHECK(subterms(T("x1@C")) == std::set<Term>{T("x1@C")});
  CHECK(is_ground(T("c1@C * ind(c2@C, tail(c3@C))")));
  CHECK_FALSE(is_ground(T("c1@C * x1@C")));
}

TEST_CASE("random terms are well-sorted and round-trip") {
  for (int h = 1; h <= 3; ++h) {
    SyntaxSampler rng(h, 1000 + static_cast<std::uint64_t>(h));
    for (int k = 0; k < 300; ++k) {
      const Sort s = rng.sort();
      const Term t = rng.term(s, 3);
      REQUIRE(sort_of(t, h) == s);
      CHECK(parse_term(print_term(t), h) == t);
      const Formula a = rng.formula(3);
      REQUIRE_NOTHROW(check_well_formed(a, h));
      CHECK(parse_formula(print_formula(a), h) == a);
    }
  }
}

TEST_CASE("sampler is deterministic") {
  SyntaxSampler a(2, 77), b(2, 77);
  for (int k = 0; k < 50; ++k) CHECK(a.formula(3) == b.formula(3));
}

}
