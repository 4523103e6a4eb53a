#include <doctest.h>

#include <jck/attack.hpp>
#include <jck/error.hpp>

#include "helpers.hpp"

using namespace jck;
using jck::test::T;

TEST_SUITE("attack") {

TEST_CASE("fixtures") {
  const AFModel m = attack_model(EvidenceMode::Full);
  CHECK(m.relations[kGeneralG - 1] == Relation{{0, 0}, {1, 1}, {2, 2}, {3, 3}, {1, 2}});
  CHECK(m.relations[kGeneralH - 1] ==
        Relation{{0, 0}, {1, 1}, {2, 2}, {3, 3}, {0, 1}, {2, 3}});
  CHECK(m.valuation.at(1) == std::set<World>{0, 1, 2});
  CHECK(attack_m1() == T("c1@2"));
  CHECK(attack_m2() == T("c2@1"));
}

TEST_CASE("term enumeration") {
  const std::vector<Term> leaves{T("c1@1"), T("x1@C")};
  const auto zero = enumerate_terms(leaves, Sort::common(), 0, 2);
  CHECK(zero == std::vector<Term>{T("x1@C")});
  const auto one = enumerate_terms(leaves, Sort::of_agent(1), 1, 2);
  // c1@1, !1(c1@1), c1@1 + c1@1, c1@1 * c1@1; pi_1 needs an E leaf
  CHECK(one.size() == 4);
  const auto e = enumerate_terms(leaves, Sort::mutual(), 1, 2);
  CHECK(e == std::vector<Term>{T("head(x1@C)"), T("tail(x1@C)")});
  for (const auto& t : enumerate_terms(attack_signature(), Sort::common(), 2, 2))
    CHECK(sort_of(t, 2) == Sort::common());
  CHECK_THROWS_AS(enumerate_terms(leaves, Sort::common(), -1, 2), InvalidInput);
}

TEST_CASE("demo at depth 3") {
  const AttackReport r = demo_attack(3);
  CHECK(r.all_hold());
  for (const char* label : {"a1", "a2", "a3", "a4", "b", "c", "toggle"}) {
    CAPTURE(label);
    REQUIRE(r.find(label) != nullptr);
    CHECK(r.find(label)->holds);
  }
  CHECK(r.find("c")->detail.find("bounded check") != std::string::npos);
  const std::string text = format_report(r);
  CHECK(text.find("all claims hold") != std::string::npos);
  CHECK(text.find("#2 del & #1 #2 del -> #C del") != std::string::npos);
}

}
