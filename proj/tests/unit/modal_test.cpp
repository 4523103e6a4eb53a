#include <doctest.h>

#include <jck/attack.hpp>
#include <jck/error.hpp>
#include <jck/modal.hpp>
#include <jck/synthesis.hpp>

#include "helpers.hpp"

using namespace jck;
using jck::test::F;
using jck::test::one_axiom;
using jck::test::T;

namespace {

ModalFormula M(const std::string& text, int agents = 2) { return parse_modal(text, agents); }

bool has_step(const Derivation& d, const Formula& f, AxiomSchema schema) {
  for (const auto& s : d.steps)
    if (const auto* a = std::get_if<AxiomRule>(&s.rule); a && a->schema == schema && s.formula == f)
      return true;
  return false;
}

KripkeModel reflexive_point() {
  KripkeModel k;
  k.agents = 2;
  k.world_names = {"w"};
  k.relations.assign(2, Relation{{0, 0}});
  return k;
}

}  // namespace

TEST_SUITE("modal") {

TEST_CASE("modal syntax") {
  const ModalFormula a = M("#1 P1 & #E P2 -> #C ~P3");
  CHECK(a == ModalFormula::implication(
                 ModalFormula::conjunction(ModalFormula::box(1, ModalFormula::prop(1)),
                                           ModalFormula::every(ModalFormula::prop(2))),
                 ModalFormula::common(ModalFormula::negation(ModalFormula::prop(3)))));
  CHECK(print_modal(a) == "#1 P1 & #E P2 -> #C ~P3");
  CHECK(print_modal(M("#1 (P1 -> P2)")) == "#1 (P1 -> P2)");
  CHECK_THROWS_AS(M("#3 P1"), Error);
  CHECK_THROWS_AS(M("#1"), ParseError);
}

TEST_CASE("forgetful projection") {
  CHECK(forgetful(F("[x1@C]@C P1")) == M("#C P1"));
  CHECK(forgetful(F("P1 -> P2")) == M("P1 -> P2"));
  CHECK(forgetful(F("[c2@1]@1 [c1@2]@2 P1")) == M("#1 #2 P1"));
  CHECK(forgetful(F("[x1@E]@E P1 | ~P2")) == M("#E P1 | ~P2"));
}

TEST_CASE("realizes") {
  CHECK(realizes(F("[x1@C]@C P1"), M("#C P1")));
  CHECK_FALSE(realizes(F("[x1@1]@1 P1"), M("#C P1")));
  CHECK(realizes(F("P1"), M("P1")));
}

TEST_CASE("conservative projection") {
  CHECK(conservative_projection(F("[ind(x1@C, x1@E)]@C P1")) == F("P1"));
  CHECK(conservative_projection(F("[x1@1]@1 P1 -> P1")) == F("[x1@1]@1 P1 -> P1"));
  CHECK(conservative_projection(F("[pi_1(x1@E)]@1 P1")) == F("P1"));
  CHECK(conservative_projection(F("[c1@1 * !1(c2@1)]@1 [x1@C]@C P2")) == F("[c1@1 * !1(c2@1)]@1 P2"));
}

TEST_CASE("conservative specification") {
  const auto cs = ConstantSpecification::extensional(
      {{T("c1@1"), F("[x1@C]@C P1 -> [head(x1@C)]@E P1")}, {T("c2@1"), F("P1 -> P1")},
       {T("c3@C"), F("P1 -> P1")}},
      2);
  const auto x = conservative_specification(cs);
  CHECK(x.entries() == std::set<CsEntry>{{T("c1@1"), F("P1 -> P1")}, {T("c2@1"), F("P1 -> P1")}});
  CHECK(conservative_specification(ConstantSpecification::total_c()).entries().empty());
}

TEST_CASE("translating derivations") {
  const auto total = ConstantSpecification::total_c();
  const auto lph = CheckOptions{.fragment = Fragment::LPh};
  SUBCASE("induction axiom") {
    const Formula ax = F("P1 & [x1@C]@C (P1 -> [x1@E]@E P1) -> [ind(x1@C,x1@E)]@C P1");
    const auto r = translate_derivation_x(one_axiom(ax, AxiomSchema::Induction), total);
    CHECK(r.derivation.conclusion() == F("P1 & (P1 -> P1) -> P1"));
    CHECK(has_step(r.derivation, F("P1 & (P1 -> P1) -> P1"), AxiomSchema::Taut));
    CHECK(check_derivation(r.derivation, r.cs, lph).accepted());
  }
  SUBCASE("co-closure axiom") {
    const Formula ax = F("[x1@C]@C P2 -> [tail(x1@C)]@E [x1@C]@C P2");
    const auto r = translate_derivation_x(one_axiom(ax, AxiomSchema::CoClosTail), total);
    CHECK(r.derivation.conclusion() == F("P2 -> P2"));
    CHECK(has_step(r.derivation, F("P2 -> P2"), AxiomSchema::Taut));
  }
  SUBCASE("pure axioms are kept") {
    const Formula ax = F("[x1@1]@1 P1 -> [!1(x1@1)]@1 [x1@1]@1 P1");
    const auto r = translate_derivation_x(one_axiom(ax, AxiomSchema::Insp), total);
    CHECK(r.derivation.conclusion() == ax);
    CHECK(has_step(r.derivation, ax, AxiomSchema::Insp));
  }
  SUBCASE("synthesized derivation") {
    ConstantAllocator alloc(2);
    const Synthesized s = c_inspection(T("x1@C"), F("P1"), alloc);
    const auto r = translate_derivation_x(s.derivation, alloc.specification());
    CHECK(check_derivation(r.derivation, r.cs, lph).accepted());
    CHECK(r.derivation.conclusion() == conservative_projection(s.derivation.conclusion()));
  }
  SUBCASE("agent constants carry over into CS×") {
    const Formula ax = F("[x1@C]@C P1 -> [head(x1@C)]@E P1");
    const auto cs = ConstantSpecification::extensional({{T("c5@2"), ax}}, 2);
    Derivation d;
    d.agents = 2;
    d.steps = {{just(T("c5@2"), Sort::of_agent(2), ax), AxNecRule{T("c5@2")}}};
    const auto r = translate_derivation_x(d, cs);
    CHECK(r.derivation.conclusion() == F("[c5@2]@2 (P1 -> P1)"));
    CHECK(check_derivation(r.derivation, r.cs, lph).accepted());
    CHECK(r.non_axiom_members.empty());
  }
  SUBCASE("CS× members that are not LP_h axioms are flagged") {
    const Formula ax = F("[x1@1]@1 [x2@C]@C P1 & [x2@2]@2 [x2@C]@C P1 -> [<x1@1, x2@2>]@E [x2@C]@C P1");
    const auto cs = ConstantSpecification::extensional({{T("c1@1"), ax}}, 2);
    Derivation d;
    d.agents = 2;
    d.steps = {{just(T("c1@1"), Sort::of_agent(1), ax), AxNecRule{T("c1@1")}}};
    const auto r = translate_derivation_x(d, cs);
    CHECK(r.non_axiom_members.size() == 1);
  }
  SUBCASE("preconditions") {
    Derivation hyp;
    hyp.agents = 2;
    hyp.hypotheses = {F("P1")};
    hyp.steps = {{F("P1"), HypRule{1}}};
    CHECK_THROWS_AS(translate_derivation_x(hyp, total), InvalidInput);
    CHECK_THROWS_AS(translate_derivation_x(one_axiom(F("P1"), AxiomSchema::Taut), total),
                    InvalidInput);
  }
}

TEST_CASE("Kripke semantics") {
  const KripkeModel k = kripke_from(attack_model(EvidenceMode::Full));
  CHECK_FALSE(kripke_satisfies(k, 0, M("#2 P1 & #1 #2 P1 -> #C P1")));
  CHECK(kripke_satisfies(k, 0, M("#2 P1 & #1 #2 P1")));
  CHECK(kripke_satisfying_worlds(k, M("P1")) == std::set<World>{0, 1, 2});
  CHECK_THROWS_AS(kripke_satisfies(k, 7, M("P1")), UnknownWorld);

  KripkeModel point = reflexive_point();
  CHECK(kripke_satisfies(point, 0, M("#C P1 -> P1")));
  CHECK(kripke_satisfies(point, 0, M("P1 -> #C P1")));
  point.valuation[1] = {0};
  CHECK(kripke_satisfies(point, 0, M("#C P1")));

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const KripkeModel r = random_kripke_model(2, 4, 0.4, 2, seed);
    for (World w = 0; w < r.world_count(); ++w)
      CHECK(kripke_satisfies(r, w, M("#E P1")) == kripke_satisfies(r, w, M("#1 P1 & #2 P1")));
  }
}

TEST_CASE("Kripke model files") {
  const KripkeModel k = kripke_from(attack_model(EvidenceMode::Full));
  const KripkeModel back = read_kripke_model(write_kripke_model(k));
  CHECK(back.relations == k.relations);
  CHECK(back.valuation == k.valuation);
  CHECK_THROWS_AS(read_kripke_model("h: 1\nworlds: w\nevidence: (w, c1@1, P1)\n"), ParseError);
}

TEST_CASE("probes") {
  const ProbeReport refl = forgetful_soundness_probe(one_axiom(F("[x1@1]@1 P1 -> P1"), AxiomSchema::Refl), 100, 1);
  CHECK_FALSE(refl.found());
  CHECK(refl.trials == 100);
  const ProbeReport ind = forgetful_soundness_probe(
      one_axiom(F("P1 & [x1@C]@C (P1 -> [x1@E]@E P1) -> [ind(x1@C,x1@E)]@C P1"),
                AxiomSchema::Induction),
      100, 2);
  CHECK_FALSE(ind.found());
  const ProbeReport bad = modal_validity_probe(M("#1 P1 -> #C P1"), 2, 100, 3);
  REQUIRE(bad.found());
  CHECK_FALSE(kripke_satisfies(*bad.counterexample, bad.world, M("#1 P1 -> #C P1")));
  CHECK(modal_validity_probe(M("#1 P1 -> #C P1"), 2, 100, 3).trials == bad.trials);
}

}
