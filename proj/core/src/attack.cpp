#include "jck/attack.hpp"

#include <sstream>

#include "jck/deduction.hpp"
#include "jck/error.hpp"

namespace jck {

Names attack_names() {
  Names n;
  n.props["del"] = 1;
  n.constants["m1"] = 1;
  n.constants["m2"] = 2;
  return n;
}

Term attack_m1() { return Term::constant(1, Sort::of_agent(kGeneralH)); }
Term attack_m2() { return Term::constant(2, Sort::of_agent(kGeneralG)); }
Formula attack_del() { return prop(1); }

namespace {

Formula h_knows_del() { return just(attack_m1(), Sort::of_agent(kGeneralH), attack_del()); }
Formula g_knows_h_knows_del() {
  return just(attack_m2(), Sort::of_agent(kGeneralG), h_knows_del());
}

}  // namespace

AFModel attack_model(EvidenceMode mode) {
  AFModel m;
  m.agents = 2;
  m.world_names = {"0", "1", "2", "3"};
  m.relations.assign(2, Relation{});
  m.relations[kGeneralG - 1] = reflexive_transitive_closure({{1, 2}}, 4);
  m.relations[kGeneralH - 1] = reflexive_transitive_closure({{0, 1}, {2, 3}}, 4);
  m.valuation[1] = {0, 1, 2};
  m.mode = mode;
  m.names = attack_names();
  if (mode == EvidenceMode::Base) {
    m.evidence_base.push_back({0, attack_m1(), attack_del()});
    m.evidence_base.push_back({0, attack_m2(), h_knows_del()});
  }
  return m;
}

AFModel attack_singleton_model() {
  AFModel m;
  m.agents = 2;
  m.world_names = {"w"};
  m.relations.assign(2, Relation{{0, 0}});
  m.valuation[1] = {0};
  m.mode = EvidenceMode::Base;
  m.cs = ConstantSpecification::total_c();
  m.names = attack_names();
  m.evidence_base.push_back({0, attack_m1(), attack_del()});
  m.evidence_base.push_back({0, attack_m2(), h_knows_del()});
  return m;
}

std::vector<Term> attack_signature() {
  return {attack_m1(), attack_m2(), Term::constant(1, Sort::common()),
          Term::variable(1, Sort::mutual()), Term::variable(1, Sort::common())};
}

std::vector<Term> enumerate_terms(const std::vector<Term>& leaves, Sort s, int max_ops,
                                  int agents) {
  if (agents < 1) throw InvalidInput("number of agents must be at least 1");
  if (max_ops < 0) throw InvalidInput("operation budget must be non-negative");
  const std::size_t e_slot = static_cast<std::size_t>(agents);
  const std::size_t c_slot = e_slot + 1;
  auto slot = [&](Sort x) -> std::size_t {
    if (x.is_mutual()) return e_slot;
    if (x.is_common()) return c_slot;
    return static_cast<std::size_t>(x.agent - 1);
  };
  auto sort_at = [&](std::size_t k) {
    if (k == e_slot) return Sort::mutual();
    if (k == c_slot) return Sort::common();
    return Sort::of_agent(static_cast<int>(k) + 1);
  };

  // exact[k][sort]: terms with exactly k operation nodes.
  std::vector<std::vector<std::vector<Term>>> exact(
      static_cast<std::size_t>(max_ops) + 1, std::vector<std::vector<Term>>(c_slot + 1));
  for (const auto& leaf : leaves) {
    const Sort x = sort_of(leaf, agents);
    exact[0][slot(x)].push_back(leaf);
  }

  for (std::size_t k = 1; k <= static_cast<std::size_t>(max_ops); ++k) {
    const std::size_t sub = k - 1;
    for (std::size_t sl = 0; sl <= c_slot; ++sl) {
      const Sort x = sort_at(sl);
      auto& out = exact[k][sl];
      if (x.is_agent()) {
        for (const auto& t : exact[sub][sl]) out.push_back(Term::bang(t, x.agent));
        for (const auto& t : exact[sub][e_slot]) out.push_back(Term::proj(x.agent, t));
      }
      if (x.is_star()) {
        for (std::size_t a = 0; a <= sub; ++a)
          for (const auto& l : exact[a][sl])
            for (const auto& r : exact[sub - a][sl]) {
              out.push_back(Term::sum(l, r, x));
              out.push_back(Term::app(l, r, x));
            }
      }
      if (x.is_mutual()) {
        for (const auto& t : exact[sub][c_slot]) {
          out.push_back(Term::head(t));
          out.push_back(Term::tail(t));
        }
        // tuples: distribute `sub` operations over the h components
        std::vector<Term> parts;
        auto tuples = [&](auto&& self, std::size_t i, std::size_t left) -> void {
          if (i == e_slot) {
            if (left == 0) out.push_back(Term::tuple(parts));
            return;
          }
          for (std::size_t a = 0; a <= left; ++a)
            for (const auto& t : exact[a][i]) {
              parts.push_back(t);
              self(self, i + 1, left - a);
              parts.pop_back();
            }
        };
        tuples(tuples, 0, sub);
      }
      if (x.is_common()) {
        for (std::size_t a = 0; a <= sub; ++a)
          for (const auto& l : exact[a][c_slot])
            for (const auto& r : exact[sub - a][e_slot]) out.push_back(Term::ind(l, r));
      }
    }
  }

  std::vector<Term> result;
  for (const auto& level : exact)
    for (const auto& t : level[slot(s)]) result.push_back(t);
  return result;
}

bool AttackReport::all_hold() const {
  for (const auto& c : claims)
    if (!c.holds) return false;
  return !claims.empty();
}

const AttackClaim* AttackReport::find(const std::string& label) const {
  for (const auto& c : claims)
    if (c.label == label) return &c;
  return nullptr;
}

AttackReport demo_attack(int depth) {
  if (depth < 0) throw InvalidInput("depth must be non-negative");
  AttackReport report;
  report.depth = depth;
  const Names names = attack_names();
  const auto sig = attack_signature();
  const auto h_terms = enumerate_terms(sig, Sort::of_agent(kGeneralH), depth, 2);
  const auto c_terms = enumerate_terms(sig, Sort::common(), depth, 2);
  const Formula del = attack_del();
  const Formula hk = h_knows_del();
  const Formula ghk = g_knows_h_knows_del();
  const std::string ops = std::to_string(depth);

  const AFModel full = attack_model(EvidenceMode::Full);
  const AFModel base = attack_model(EvidenceMode::Base);

  {
    AttackClaim c{"a1", "4-world model, world 0 satisfies [m1@2]@2 del and [m2@1]@1 [m1@2]@2 del",
                  true, ""};
    for (const AFModel* m : {&full, &base})
      c.holds = c.holds && satisfies(*m, 0, hk, depth) && satisfies(*m, 0, ghk, depth);
    c.detail = "checked with the everything-evidence function and with the minimal one";
    report.claims.push_back(std::move(c));
  }
  {
    AttackClaim c{"a2", "4-world model, world 0 falsifies [s]@2 [m2@1]@1 [m1@2]@2 del", true, ""};
    for (const auto& s : h_terms)
      for (const AFModel* m : {&full, &base})
        if (satisfies(*m, 0, just(s, Sort::of_agent(kGeneralH), ghk), depth)) {
          c.holds = false;
          c.detail = "satisfied for s = " + print_term(s, &names);
        }
    if (c.holds)
      c.detail = "all " + std::to_string(h_terms.size()) + " terms s of sort 2 with at most " +
                 ops + " operations";
    report.claims.push_back(std::move(c));
  }
  {
    AttackClaim c{"a3", "4-world model, world 0 falsifies [t]@C del", true, ""};
    for (const auto& t : c_terms)
      for (const AFModel* m : {&full, &base})
        if (satisfies(*m, 0, just(t, Sort::common(), del), depth)) {
          c.holds = false;
          c.detail = "satisfied for t = " + print_term(t, &names);
        }
    if (c.holds)
      c.detail = "all " + std::to_string(c_terms.size()) + " terms t of sort C with at most " +
                 ops + " operations";
    report.claims.push_back(std::move(c));
  }
  {
    AttackClaim c{"a4", "4-world model, world 3 falsifies del", !full.holds(1, 3), ""};
    report.claims.push_back(std::move(c));
  }
  const ModalFormula image = ModalFormula::implication(
      ModalFormula::conjunction(
          ModalFormula::box(kGeneralH, ModalFormula::prop(1)),
          ModalFormula::box(kGeneralG, ModalFormula::box(kGeneralH, ModalFormula::prop(1)))),
      ModalFormula::common(ModalFormula::prop(1)));
  {
    const KripkeModel k = kripke_from(full);
    AttackClaim c{"b", "Kripke frame, world 0 falsifies " + print_modal(image, &names),
                  !kripke_satisfies(k, 0, image), ""};
    report.claims.push_back(std::move(c));
  }
  {
    const AFModel m = attack_singleton_model();
    AttackClaim c{"c",
                  "singleton model with minimal evidence, del is not in E_C(w, t) "
                  "(bounded check)",
                  true, ""};
    const bool base_ok = evidence_holds(m, 0, attack_m1(), del, depth) &&
                         evidence_holds(m, 0, attack_m2(), hk, depth) && satisfies(m, 0, ghk, depth);
    if (!base_ok) {
      c.holds = false;
      c.detail = "the base facts do not hold";
    }
    for (const auto& t : c_terms)
      if (c.holds && evidence_holds(m, 0, t, del, depth)) {
        c.holds = false;
        c.detail = "del is evidenced by t = " + print_term(t, &names);
      }
    if (c.holds)
      c.detail = "bounded check only: " + std::to_string(c_terms.size()) +
                 " terms t of sort C with at most " + ops +
                 " operations, saturation depth budget " + ops +
                 "; non-membership for all terms is not established here";
    report.claims.push_back(std::move(c));
  }
  {
    KripkeModel k = kripke_from(full);
    k.valuation[1] = {0, 1, 2, 3};
    AttackClaim c{"toggle", "with del true at every world the Kripke refutation disappears",
                  kripke_satisfies(k, 0, image), ""};
    report.claims.push_back(std::move(c));
  }
  return report;
}

std::string format_report(const AttackReport& r) {
  std::ostringstream out;
  out << "coordinated attack, G = agent 1, H = agent 2, del = P1, m1 = c1@2, m2 = c2@1\n";
  out << "enumeration and saturation depth: " << r.depth << "\n";
  for (const auto& c : r.claims) {
    out << "(" << c.label << ") " << (c.holds ? "holds" : "FAILS") << ": " << c.statement << "\n";
    if (!c.detail.empty()) out << "    " << c.detail << "\n";
  }
  out << (r.all_hold() ? "all claims hold\n" : "some claims fail\n");
  return out.str();
}

}  // namespace jck
