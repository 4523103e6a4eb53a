#include <doctest.h>

#include <jck/error.hpp>
#include <jck/synthesis.hpp>

#include "helpers.hpp"
#include "jck_test/testkit.hpp"

using namespace jck;
using jck::test::F;
using jck::test::one_axiom;
using jck::test::T;

namespace {

const Sort E = Sort::mutual();
const Sort C = Sort::common();

bool ok(const Derivation& d, const ConstantSpecification& cs) {
  return check_derivation(d, cs).accepted();
}

}  // namespace

TEST_SUITE("synthesis") {

TEST_CASE("E-reflexivity") {
  const Derivation d = e_reflexivity(T("x1@E"), F("P1"), 2);
  CHECK(d.conclusion() == F("[x1@E]@E P1 -> P1"));
  CHECK(d.steps.size() == 5);
  CHECK(ok(d, {}));
  const Derivation h = e_reflexivity(T("head(x1@C)"), F("P1"), 2);
  CHECK(h.conclusion() == F("[head(x1@C)]@E P1 -> P1"));
  CHECK(ok(h, {}));
  CHECK_THROWS_AS(e_reflexivity(T("x1@C"), F("P1"), 2), SortError);
}

TEST_CASE("E-application") {
  const Synthesized r = e_application(T("x1@E"), T("x2@E"), F("P1"), F("P2"), 2);
  CHECK(print_term(r.term) == "<pi_1(x1@E) * pi_1(x2@E), pi_2(x1@E) * pi_2(x2@E)>");
  CHECK(r.derivation.conclusion() ==
        F("[x1@E]@E (P1 -> P2) -> [x2@E]@E P1 -> [" + print_term(r.term) + "]@E P2"));
  CHECK(ok(r.derivation, {}));

  const Synthesized one = e_application(T("x1@E", 1), T("x2@E", 1), F("P1", 1), F("P2", 1), 1);
  CHECK(print_term(one.term) == "<pi_1(x1@E) * pi_1(x2@E)>");
  CHECK(ok(one.derivation, {}));
}

TEST_CASE("E-sum") {
  const SynthesizedSum r = e_sum(T("x1@E"), T("x2@E"), F("P1"), 2);
  CHECK(print_term(r.term) == "<pi_1(x1@E) + pi_1(x2@E), pi_2(x1@E) + pi_2(x2@E)>");
  CHECK(r.left.conclusion() == F("[x1@E]@E P1 -> [" + print_term(r.term) + "]@E P1"));
  CHECK(r.right.conclusion() == F("[x2@E]@E P1 -> [" + print_term(r.term) + "]@E P1"));
  CHECK(ok(r.left, {}));
  CHECK(ok(r.right, {}));
}

TEST_CASE("i-conversion") {
  const Synthesized r = i_conversion(T("x1@C"), 1, F("P1"), 2);
  CHECK(r.term == T("pi_1(head(x1@C))"));
  CHECK(r.derivation.conclusion() == F("[x1@C]@C P1 -> [pi_1(head(x1@C))]@1 P1"));
  CHECK(ok(r.derivation, {}));
  CHECK_THROWS_AS(i_conversion(T("x1@C"), 3, F("P1"), 2), InvalidInput);
}

TEST_CASE("C-reflexivity") {
  const Derivation d = c_reflexivity(T("x1@C"), F("P1"), 2);
  CHECK(d.conclusion() == F("[x1@C]@C P1 -> P1"));
  CHECK(ok(d, {}));
  const Derivation i = c_reflexivity(T("ind(x1@C, x1@E)"), F("P1"), 2);
  CHECK(i.conclusion() == F("[ind(x1@C, x1@E)]@C P1 -> P1"));
  CHECK(ok(i, {}));
}

TEST_CASE("C-inspection") {
  ConstantAllocator alloc(2);
  const Synthesized r = c_inspection(T("x1@C"), F("P1"), alloc);
  const Term c = alloc.constant_for(F("[x1@C]@C P1 -> [tail(x1@C)]@E [x1@C]@C P1"));
  CHECK(r.term == Term::ind(c, T("tail(x1@C)")));
  CHECK(r.derivation.conclusion() ==
        F("[x1@C]@C P1 -> [" + print_term(r.term) + "]@C [x1@C]@C P1"));
  CHECK(ok(r.derivation, alloc.specification()));
  CHECK(alloc.specification().kind() == ConstantSpecification::Kind::Allocated);
  CHECK(alloc.specification().pure_sort() == C);

  const Synthesized again = c_inspection(T("x1@C"), F("P1"), alloc);
  CHECK(again.term == r.term);
  CHECK(alloc.size() == 1);
}

TEST_CASE("C-shift") {
  ConstantAllocator alloc(2);
  const Synthesized r = c_shift(T("x1@C"), F("P1"), alloc);
  REQUIRE(r.term.kind() == TermKind::App);
  CHECK(r.term.child(0).kind() == TermKind::Const);
  CHECK(r.term.child(1).kind() == TermKind::Ind);
  CHECK(r.term.child(1).child(1) == T("tail(x1@C)"));
  CHECK(r.derivation.conclusion() ==
        F("[x1@C]@C P1 -> [" + print_term(r.term) + "]@C [head(x1@C)]@E P1"));
  CHECK(ok(r.derivation, alloc.specification()));
}

TEST_CASE("lift: documented cases") {
  const auto total = ConstantSpecification::total_c();
  SUBCASE("single axiom at C") {
    ConstantAllocator alloc(2);
    const Derivation d = one_axiom(F("[x1@1]@1 P1 -> P1"), AxiomSchema::Refl);
    const Synthesized r = lift(d, C, LiftingContext::from(d, 0), total, alloc);
    CHECK(r.term == alloc.constant_for(d.conclusion()));
    REQUIRE(r.derivation.steps.size() == 1);
    CHECK(std::holds_alternative<AxNecRule>(r.derivation.steps[0].rule));
  }
  SUBCASE("plain hypothesis at agent 1") {
    ConstantAllocator alloc(2);
    Derivation d;
    d.agents = 2;
    d.hypotheses = {F("[x1@1]@1 P2")};
    d.steps = {{F("[x1@1]@1 P2"), HypRule{1}}};
    const Synthesized r = lift(d, Sort::of_agent(1), LiftingContext::from(d, 0), total, alloc);
    CHECK(r.term == T("x2@1"));  // x1@1 is taken
    CHECK(r.derivation.hypotheses == std::vector<Formula>{F("[x2@1]@1 [x1@1]@1 P2")});
    CHECK(ok(r.derivation, total));
  }
  SUBCASE("modus ponens over axioms at E") {
    ConstantAllocator alloc(2);
    Derivation d;
    d.agents = 2;
    const Formula ax = F("[x1@1]@1 P1 -> P1");
    const Formula w = imp(ax, imp(prop(2), ax));
    d.steps = {{ax, AxiomRule{AxiomSchema::Refl}},
               {w, AxiomRule{AxiomSchema::Taut}},
               {imp(prop(2), ax), MpRule{2, 1}}};
    const Synthesized r = lift(d, E, LiftingContext::from(d, 0), total, alloc);
    CHECK(r.term.kind() == TermKind::Tuple);
    CHECK(r.term.child(0).kind() == TermKind::App);
    CHECK(r.derivation.conclusion() == just(r.term, E, imp(prop(2), ax)));
    CHECK(ok(r.derivation, total));
  }
}

TEST_CASE("lift: the sort table per case") {
  const auto total = ConstantSpecification::total_c();
  const Formula ax = F("[x1@2]@2 P1 -> P1");
  const Derivation axiom = one_axiom(ax, AxiomSchema::Refl);
  Derivation boxed;
  boxed.agents = 2;
  boxed.hypotheses = {F("[x3@C]@C P2")};
  boxed.steps = {{F("[x3@C]@C P2"), HypRule{1}}};

  ConstantAllocator alloc(2);
  const Term c = alloc.constant_for(ax);
  CHECK(lift(axiom, C, {}, total, alloc).term == c);
  CHECK(lift(axiom, Sort::of_agent(1), {}, total, alloc).term == Term::proj(1, Term::head(c)));
  CHECK(lift(axiom, E, {}, total, alloc).term == Term::head(c));

  const auto ctx = LiftingContext::from(boxed, 1);
  const Term s = T("x3@C");
  const Term insp = Term::ind(
      alloc.constant_for(imp(boxed.hypotheses[0], just(Term::tail(s), E, boxed.hypotheses[0]))),
      Term::tail(s));
  const Synthesized at_c = lift(boxed, C, ctx, total, alloc);
  CHECK(at_c.term == insp);
  CHECK(at_c.derivation.hypotheses == boxed.hypotheses);
  CHECK(lift(boxed, Sort::of_agent(2), ctx, total, alloc).term ==
        Term::proj(2, Term::head(insp)));
  CHECK(lift(boxed, E, ctx, total, alloc).term == Term::tail(s));
}

TEST_CASE("lift: preconditions") {
  ConstantAllocator alloc(2);
  const Derivation d = one_axiom(F("[x1@1]@1 P1 -> P1"), AxiomSchema::Refl);
  const auto ext = ConstantSpecification::extensional({{T("c1@C"), d.conclusion()}}, 2);
  CHECK_THROWS_AS(lift(d, C, {}, ext, alloc), InvalidInput);
  Derivation plain;
  plain.agents = 2;
  plain.hypotheses = {F("P1")};
  plain.steps = {{F("P1"), HypRule{1}}};
  CHECK_THROWS_AS(LiftingContext::from(plain, 1), InvalidInput);
  CHECK_THROWS_AS(necessitate(plain, C, ConstantSpecification::total_c(), alloc), InvalidInput);

  // a seeded allocator keeps the table's constants
  const auto table = ConstantSpecification::extensional({{T("c7@C"), d.conclusion()}}, 2);
  ConstantAllocator seeded = ConstantAllocator::from_specification(table, 2);
  CHECK(seeded.constant_for(d.conclusion()) == T("c7@C"));
  CHECK(seeded.next_index() == 8);
  const Synthesized r = lift(d, C, {}, seeded.specification(), seeded);
  CHECK(r.term == T("c7@C"));
}

TEST_CASE("necessitate") {
  const auto total = ConstantSpecification::total_c();
  ConstantAllocator alloc(2);
  const Derivation taut = one_axiom(F("P1 -> P1"), AxiomSchema::Taut);
  const Synthesized c = necessitate(taut, C, total, alloc);
  CHECK(c.term == alloc.constant_for(F("P1 -> P1")));
  CHECK(c.derivation.conclusion() == just(c.term, C, F("P1 -> P1")));

  const Derivation refl = one_axiom(F("[x1@1]@1 P1 -> P1"), AxiomSchema::Refl);
  const Synthesized e = necessitate(refl, E, total, alloc);
  CHECK(e.term == Term::head(alloc.constant_for(refl.conclusion())));
  CHECK(is_ground(e.term));
  CHECK(ok(e.derivation, total));

  // the same allocator state gives the same term
  ConstantAllocator fresh(2);
  fresh.constant_for(F("P1 -> P1"));
  CHECK(necessitate(refl, E, total, fresh).term == e.term);
}

TEST_CASE("internalized induction") {
  const auto total = ConstantSpecification::total_c();
  SyntaxSampler rng(2, 5);
  SUBCASE("first rule") {
    ConstantAllocator alloc(2);
    const auto p = testkit::induction1_premise(rng);
    const Synthesized r = internalize_induction_1(p.a, p.s, p.derivation, total, alloc);
    CHECK(r.derivation.conclusion() == imp(p.a, just(Term::ind(r.term, p.s), C, p.a)));
    CHECK(is_ground(r.term));
    CHECK(ok(r.derivation, total));
    CHECK_THROWS_AS(internalize_induction_1(p.a, T("x1@E"), p.derivation, total, alloc),
                    InvalidInput);
  }
  SUBCASE("second rule") {
    ConstantAllocator alloc(2);
    const auto p = testkit::induction2_premise(rng, alloc);
    const SynthesizedInduction r =
        internalize_induction_2(p.a, p.b, p.s, p.derivation, total, alloc);
    const Term goal = Term::app(r.constant, Term::ind(r.term, p.s), C);
    CHECK(r.derivation.conclusion() == imp(p.b, just(goal, C, p.a)));
    CHECK(cs_contains(alloc.specification(), r.constant, C, imp(conj(p.a, p.b), p.a), 2));
    CHECK(ok(r.derivation, total));
    CHECK(ok(r.derivation, alloc.specification()));
  }
}

TEST_CASE("random lifts are kernel-accepted") {
  const auto total = ConstantSpecification::total_c();
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    SyntaxSampler rng(1 + static_cast<int>(seed % 3), seed);
    ConstantAllocator alloc(rng.agents());
    const Derivation d = testkit::random_lift_input(rng);
    const Sort target = rng.sort();
    const Synthesized r = lift(d, target, LiftingContext::from(d, 1), total, alloc);
    CHECK(ok(r.derivation, total));
    CHECK(r.derivation.conclusion() == just(r.term, target, d.conclusion()));
    ConstantAllocator again(rng.agents());
    CHECK(lift(d, target, LiftingContext::from(d, 1), total, again).term == r.term);
  }
}

}
