#include <doctest.h>

#include <algorithm>

#include <jck/attack.hpp>
#include <jck/derivation_io.hpp>
#include <jck/error.hpp>
#include <jck/semantics.hpp>

#include "helpers.hpp"
#include "jck_test/testkit.hpp"

using namespace jck;
using jck::test::F;
using jck::test::T;

namespace {

AFModel single_world(EvidenceMode mode, ConstantSpecification cs = {}) {
  AFModel m;
  m.agents = 2;
  m.world_names = {"w"};
  m.relations.assign(2, Relation{{0, 0}});
  m.mode = mode;
  m.cs = std::move(cs);
  return m;
}

bool mentions(const ValidationReport& r, const std::string& word) {
  return std::any_of(r.issues.begin(), r.issues.end(),
                     [&](const std::string& s) { return s.find(word) != std::string::npos; });
}

bool is_transitive(const Relation& r) {
  for (const auto& [a, b] : r)
    for (const auto& [c, d] : r)
      if (b == c && !r.contains({a, d})) return false;
  return true;
}

}  // namespace

TEST_SUITE("semantics") {

TEST_CASE("validate_model") {
  CHECK(validate_model(attack_model(EvidenceMode::Full)).ok());
  CHECK(validate_model(attack_model(EvidenceMode::Base)).ok());

  AFModel m = single_world(EvidenceMode::Full);
  m.world_names = {"0", "1", "2"};
  m.relations = {reflexive_transitive_closure({}, 3), Relation{{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}}};
  const auto r = validate_model(m);
  CHECK_FALSE(r.ok());
  CHECK(mentions(r, "transitiv"));

  AFModel empty = single_world(EvidenceMode::Full);
  empty.world_names.clear();
  empty.relations.assign(2, Relation{});
  CHECK(mentions(validate_model(empty), "worlds is empty"));

  AFModel not_refl = single_world(EvidenceMode::Full);
  not_refl.relations[1].clear();
  CHECK(mentions(validate_model(not_refl), "reflexiv"));

  AFModel bad_evidence = single_world(EvidenceMode::Base);
  bad_evidence.evidence_base.push_back({0, T("c1@1"), F("P1")});
  bad_evidence.evidence_base.push_back({3, T("c1@1"), F("P1")});
  CHECK_FALSE(validate_model(bad_evidence).ok());
}

TEST_CASE("reachability") {
  const AFModel m = attack_model(EvidenceMode::Full);
  const Relation e = reach_e(m);
  const Relation c = reach_c(m);
  CHECK(c.contains({0, 3}));
  CHECK_FALSE(e.contains({0, 3}));
  CHECK(std::includes(c.begin(), c.end(), e.begin(), e.end()));
  CHECK(is_transitive(c));
  CHECK(reach_c(single_world(EvidenceMode::Full)) == Relation{{0, 0}});
  CHECK(relation_for(m, Sort::of_agent(2)) == m.relations[1]);
  CHECK(relation_for(m, Sort::common()) == c);
}

TEST_CASE("build_universe") {
  const AFModel m = attack_singleton_model();
  const Formula q = just(attack_m1(), Sort::of_agent(2), attack_del());
  const SaturationUniverse u0 = build_universe(m, q, 0);
  CHECK(u0.terms.contains(attack_m1()));
  CHECK(u0.formulas.contains(attack_del()));

  // depth 0 is the plain syntactic closure of the query and the base
  std::set<Formula> forms = subformulas(q);
  std::set<Term> terms = subterms(attack_m1());
  for (const auto& f : m.evidence_base) {
    forms.merge(subformulas(f.formula));
    terms.merge(subterms(f.term));
  }
  CHECK(u0.formulas == forms);
  CHECK(u0.terms == terms);

  const Formula deep = just(T("tail(x1@C)"), Sort::mutual(), prop(1));
  std::size_t last_terms = 0, last_formulas = 0;
  for (int d = 0; d <= 3; ++d) {
    const SaturationUniverse u = build_universe(m, deep, d);
    CHECK(u.terms.size() >= last_terms);
    CHECK(u.formulas.size() >= last_formulas);
    last_terms = u.terms.size();
    last_formulas = u.formulas.size();
  }
  CHECK_THROWS_AS(build_universe(m, deep, 3, {.max_terms = 2, .max_formulas = 2}), ResourceError);
}

TEST_CASE("saturate: single rules") {
  AFModel m = single_world(EvidenceMode::Base);
  m.evidence_base.push_back({0, T("c1@C"), F("P1")});
  const Formula q = just(T("head(c1@C)"), Sort::mutual(), prop(1));
  const SaturationUniverse u = build_universe(m, q, 0);
  const auto facts = saturate(m, u);
  CHECK(facts.contains({0, T("head(c1@C)"), F("P1")}));
  CHECK(facts == testkit::naive_saturate(m, u));
  CHECK(satisfies(m, 0, q, 0) == false);  // P1 is false at w
  m.valuation[1] = {0};
  CHECK(satisfies(m, 0, q, 0));

  AFModel cs = single_world(EvidenceMode::Base, ConstantSpecification::total_c());
  const Formula ax = F("[x1@1]@1 P1 -> P1");
  const Formula cq = just(T("c4@C"), Sort::common(), ax);
  CHECK(saturate(cs, build_universe(cs, cq, 0)).contains({0, T("c4@C"), ax}));
  CHECK(evidence_holds(cs, 0, T("c4@C"), ax, 0));
  CHECK_FALSE(evidence_holds(cs, 0, T("c4@C"), F("P1 -> P2"), 0));
  CHECK_FALSE(evidence_holds(cs, 0, T("c4@1"), ax, 0));
}

TEST_CASE("saturate: monotone in the base") {
  for (std::uint64_t seed = 1; seed < 60; ++seed) {
    auto inst = testkit::random_saturation_instance(seed, 3, 40);
    if (!inst || inst->model.evidence_base.empty()) continue;
    const auto all = saturate(inst->model, inst->universe);
    AFModel fewer = inst->model;
    fewer.evidence_base.pop_back();
    const auto some = saturate(fewer, inst->universe);
    CHECK(std::includes(all.begin(), all.end(), some.begin(), some.end()));
  }
}

TEST_CASE("evidence queries") {
  const AFModel s = attack_singleton_model();
  CHECK(evidence_holds(s, 0, attack_m1(), attack_del(), 0));
  CHECK_FALSE(evidence_holds(s, 0, T("c1@C"), attack_del(), 3));
  CHECK_FALSE(evidence_holds(s, 0, T("ind(c1@C, tail(x1@C))"), attack_del(), 3));
  // inspection and sums are derived from the base facts
  CHECK(evidence_holds(s, 0, T("!2(c1@2)"), F("[c1@2]@2 P1"), 1));
  CHECK(evidence_holds(s, 0, T("c1@2 + x1@2"), attack_del(), 1));

  const AFModel full = single_world(EvidenceMode::Full);
  CHECK(evidence_holds(full, 0, T("x1@C"), F("P1 & ~P1"), 0));
  CHECK_THROWS_AS(evidence_holds(full, 4, T("x1@C"), F("P1"), 0), UnknownWorld);
}

TEST_CASE("satisfaction on the four-world model") {
  for (const auto mode : {EvidenceMode::Full, EvidenceMode::Base}) {
    const AFModel m = attack_model(mode);
    const Formula hk = just(attack_m1(), Sort::of_agent(2), attack_del());
    CHECK(satisfies(m, 0, hk, 2));
    const Formula ghk = just(attack_m2(), Sort::of_agent(1), hk);
    CHECK(satisfies(m, 0, ghk, 2));
    for (const char* s : {"x1@2", "c1@2", "!2(x1@2)", "pi_2(x1@E)", "c1@2 * c2@2"})
      CHECK_FALSE(satisfies(m, 0, just(T(s), Sort::of_agent(2), ghk), 2));
    for (World w = 0; w < 4; ++w) CHECK(satisfies(m, w, attack_del(), 0) == (w != 3));
  }
  CHECK(satisfying_worlds(attack_model(EvidenceMode::Full),
                          just(attack_m1(), Sort::of_agent(2), attack_del()), 0) ==
        std::set<World>{0, 1});
}

TEST_CASE("valid_in_model") {
  const AFModel one = single_world(EvidenceMode::Full);
  CHECK(valid_in_model(one, F("[x1@1]@1 P1 -> P1"), 0));
  CHECK(valid_in_model(one, F("[x1@C]@C P1 -> [head(x1@C)]@E P1"), 0));

  const AFModel m = attack_model(EvidenceMode::Full);
  const Formula image = F("[c1@2]@2 P1 & [c2@1]@1 [c1@2]@2 P1 -> [x1@C]@C P1");
  CHECK_FALSE(satisfies(m, 0, image, 0));
  CHECK_FALSE(valid_in_model(m, image, 0));

  SyntaxSampler rng(2, 9);
  for (int k = 0; k < 40; ++k) {
    const Formula a = rng.formula(2);
    if (valid_in_model(m, a, 1))
      for (World w = 0; w < 4; ++w) CHECK(satisfies(m, w, a, 1));
  }
}

TEST_CASE("restrict_to_world") {
  const AFModel m = attack_model(EvidenceMode::Base);
  const AFModel r = restrict_to_world(m, 0);
  CHECK(r.world_count() == 1);
  for (const auto& rel : r.relations) CHECK(rel == Relation{{0, 0}});
  CHECK(validate_model(r).ok());
  CHECK(r.holds(1, 0));
  for (World w = 0; w < 4; ++w) CHECK(validate_model(restrict_to_world(m, w)).ok());

  const AFModel s = attack_singleton_model();
  const AFModel rs = restrict_to_world(s, 0);
  CHECK(write_model(rs) == write_model(s));
  CHECK_THROWS_AS(restrict_to_world(m, 4), UnknownWorld);
}

TEST_CASE("random_model") {
  RandomModelParams p;
  p.agents = 3;
  p.worlds = 4;
  p.density = 0.4;
  p.base_facts = 3;
  p.mode = EvidenceMode::Base;
  p.seed = 1;
  CHECK(write_model(random_model(p)) == write_model(random_model(p)));
  for (std::uint64_t seed = 1; seed < 30; ++seed) {
    p.seed = seed;
    CHECK(validate_model(random_model(p)).ok());
  }
  p.density = 0;
  const AFModel id = random_model(p);
  for (const auto& rel : id.relations) CHECK(rel.size() == id.world_count());
}

TEST_CASE("model files") {
  const LoadedModel loaded = read_model(read_file(jck::test::data_path("attack.afm")));
  const AFModel& m = loaded.model;
  CHECK(m.agents == 2);
  CHECK(m.world_count() == 4);
  CHECK(m.mode == EvidenceMode::Base);
  CHECK(m.relations == attack_model(EvidenceMode::Base).relations);
  CHECK(m.evidence_base == attack_model(EvidenceMode::Base).evidence_base);
  CHECK(loaded.warnings.size() == 2);

  const LoadedModel again = read_model(write_model(m));
  CHECK(again.warnings.empty());
  CHECK(write_model(again.model) == write_model(m));
  CHECK(satisfies(again.model, m.world("0"), parse_formula("[m1@2]@2 del", 2, &m.names), 2));

  CHECK_THROWS_AS(read_model("h: 1\nworlds: a b\nrel 1: (a,c)\n"), Error);
  CHECK_THROWS_AS(read_model("h: 1\nworlds: a\nbogus line\n"), ParseError);
  CHECK_THROWS_AS(m.world("9"), UnknownWorld);

  const LoadedModel total = read_model("h: 1\nworlds: w\ncs: totalC\nmode: base\n");
  CHECK(total.model.cs.kind() == ConstantSpecification::Kind::TotalC);
  CHECK(evidence_holds(total.model, 0, T("c1@C", 1), F("P1 -> P1", 1), 0));
}

}
