#include "jck/synthesis.hpp"

#include <algorithm>
#include <utility>

#include "jck/error.hpp"
#include "jck/text.hpp"

namespace jck {

using StepRef = ProofBuilder::StepRef;

// ---------------------------------------------------------------------------
// ConstantAllocator

ConstantAllocator::ConstantAllocator(int agents, int first_index)
    : agents_(agents), next_index_(first_index) {
  if (agents < 1) throw InvalidInput("number of agents must be at least 1");
  if (first_index < 1) throw InvalidInput("constant indices start at 1");
}

ConstantAllocator ConstantAllocator::from_specification(const ConstantSpecification& cs,
                                                        int agents) {
  if (cs.kind() == ConstantSpecification::Kind::TotalC) return ConstantAllocator(agents);
  const auto pure = cs.pure_sort();
  if (!cs.entries().empty() && (!pure || !pure->is_common()))
    throw InvalidInput("allocator can only be seeded from a pure specification of sort C");
  ConstantAllocator alloc(agents);
  int top = 0;
  for (const auto& e : cs.entries()) {
    if (match_axiom(e.formula, agents).empty())
      throw InvalidInput("specification member is not an axiom: " + print_formula(e.formula));
    auto [it, fresh] = alloc.memo_.emplace(e.formula, e.constant.index());
    if (!fresh && it->second != e.constant.index())
      throw InvalidInput("specification assigns two constants to " + print_formula(e.formula));
    top = std::max(top, e.constant.index());
  }
  alloc.next_index_ = top + 1;
  return alloc;
}

Term ConstantAllocator::constant_for(const Formula& axiom) {
  if (auto it = memo_.find(axiom); it != memo_.end())
    return Term::constant(it->second, Sort::common());
  check_well_formed(axiom, agents_);
  if (match_axiom(axiom, agents_).empty())
    throw InvalidInput("no proof constant for a non-axiom: " + print_formula(axiom));
  const int k = next_index_++;
  memo_.emplace(axiom, k);
  return Term::constant(k, Sort::common());
}

ConstantSpecification ConstantAllocator::specification() const {
  std::set<CsEntry> entries;
  for (const auto& [f, k] : memo_) entries.insert(CsEntry{Term::constant(k, Sort::common()), f});
  return ConstantSpecification::allocated(std::move(entries));
}

// ---------------------------------------------------------------------------
// ProofBuilder

ProofBuilder::ProofBuilder(int agents, std::vector<Formula> hypotheses)
    : agents_(agents), hypotheses_(std::move(hypotheses)) {}

StepRef ProofBuilder::push(Formula f, Rule r) {
  steps_.push_back(Step{std::move(f), std::move(r)});
  return steps_.size();
}

StepRef ProofBuilder::hyp(std::size_t index) {
  if (index < 1 || index > hypotheses_.size())
    throw InvalidInput("no hypothesis number " + std::to_string(index));
  return push(hypotheses_[index - 1], HypRule{index});
}

StepRef ProofBuilder::axiom(AxiomSchema schema, Formula f) {
  return push(std::move(f), AxiomRule{schema});
}

StepRef ProofBuilder::axnec(const Term& c, const Formula& a) {
  return push(just(c, a), AxNecRule{c});
}

StepRef ProofBuilder::mp(StepRef major, StepRef minor) {
  const Formula& f = formula(major);
  if (f.kind() != FormulaKind::Imp || f.lhs() != formula(minor))
    throw std::logic_error("ProofBuilder::mp: premises do not match");
  return push(f.rhs(), MpRule{major, minor});
}

StepRef ProofBuilder::tautology(std::span<const StepRef> premises, const Formula& target) {
  Formula schema = target;
  for (auto it = premises.rbegin(); it != premises.rend(); ++it) schema = imp(formula(*it), schema);
  StepRef cur = axiom(AxiomSchema::Taut, schema);
  for (StepRef p : premises) cur = mp(cur, p);
  return cur;
}

StepRef ProofBuilder::chain(StepRef ab, StepRef bc) {
  const Formula& x = formula(ab);
  const Formula& y = formula(bc);
  return tautology({ab, bc}, imp(x.lhs(), y.rhs()));
}

StepRef ProofBuilder::splice(const Derivation& sub, std::span<const StepRef> hypothesis_steps) {
  if (hypothesis_steps.size() != sub.hypotheses.size())
    throw std::logic_error("ProofBuilder::splice: hypothesis map has the wrong size");
  for (std::size_t k = 0; k < sub.hypotheses.size(); ++k)
    if (formula(hypothesis_steps[k]) != sub.hypotheses[k])
      throw std::logic_error("ProofBuilder::splice: hypothesis formula mismatch");
  std::vector<StepRef> map;
  map.reserve(sub.steps.size());
  for (const Step& s : sub.steps) {
    if (const auto* h = std::get_if<HypRule>(&s.rule)) {
      map.push_back(hypothesis_steps[h->index - 1]);
    } else if (const auto* m = std::get_if<MpRule>(&s.rule)) {
      map.push_back(push(s.formula, MpRule{map[m->major - 1], map[m->minor - 1]}));
    } else {
      map.push_back(push(s.formula, s.rule));
    }
  }
  if (map.empty()) throw InvalidInput("cannot splice an empty derivation");
  return map.back();
}

Derivation ProofBuilder::finish(StepRef conclusion) && {
  if (conclusion != steps_.size()) tautology({conclusion}, formula(conclusion));
  Derivation d;
  d.agents = agents_;
  d.hypotheses = std::move(hypotheses_);
  d.steps = std::move(steps_);
  return d;
}

// ---------------------------------------------------------------------------
// Builders. Each emits steps into `pb` and returns the step proving the
// stated implication.

namespace {

struct Built {
  Term term;
  StepRef step;
};

void require_sort(const Term& t, Sort s, int agents, const char* op) {
  if (sort_of(t, agents) != s)
    throw SortError(print_term(t), std::string(op) + " expects a term of sort " + to_string(s));
}

Formula tupling_antecedent(std::span<const Term> parts, const Formula& body) {
  Formula acc = just(parts[0], Sort::of_agent(1), body);
  for (std::size_t k = 1; k < parts.size(); ++k)
    acc = conj(acc, just(parts[k], Sort::of_agent(static_cast<int>(k) + 1), body));
  return acc;
}

StepRef build_e_reflexivity(ProofBuilder& pb, const Term& t, const Formula& a) {
  const Term p = Term::proj(1, t);
  const StepRef proj = pb.axiom(AxiomSchema::Proj,
                                imp(just(t, Sort::mutual(), a), just(p, Sort::of_agent(1), a)));
  const StepRef refl = pb.axiom(AxiomSchema::Refl, imp(just(p, Sort::of_agent(1), a), a));
  return pb.chain(proj, refl);
}

Built build_e_application(ProofBuilder& pb, const Term& t, const Term& s, const Formula& a,
                          const Formula& b) {
  const int h = pb.agents();
  const Formula x = just(t, Sort::mutual(), imp(a, b));
  const Formula y = just(s, Sort::mutual(), a);
  std::vector<Term> parts;
  std::vector<StepRef> premises;
  for (int i = 1; i <= h; ++i) {
    const Sort si = Sort::of_agent(i);
    const Term ti = Term::proj(i, t);
    const Term sti = Term::proj(i, s);
    const Term ui = Term::app(ti, sti, si);
    premises.push_back(pb.axiom(AxiomSchema::Proj, imp(x, just(ti, si, imp(a, b)))));
    premises.push_back(pb.axiom(AxiomSchema::Proj, imp(y, just(sti, si, a))));
    premises.push_back(pb.axiom(
        AxiomSchema::App,
        imp(just(ti, si, imp(a, b)), imp(just(sti, si, a), just(ui, si, b)))));
    parts.push_back(ui);
  }
  const Term term = Term::tuple(parts);
  premises.push_back(pb.axiom(AxiomSchema::Tupling,
                              imp(tupling_antecedent(parts, b), just(term, Sort::mutual(), b))));
  const StepRef out = pb.tautology(premises, imp(x, imp(y, just(term, Sort::mutual(), b))));
  return {term, out};
}

// [from]@E A -> [term]@E A where term = <pi_i t + pi_i s>; `left` selects
// whether `from` is t or s.
StepRef build_e_sum_side(ProofBuilder& pb, const Term& t, const Term& s, const Term& term,
                         const Formula& a, bool left) {
  const int h = pb.agents();
  const Term& from = left ? t : s;
  const Formula x = just(from, Sort::mutual(), a);
  std::vector<StepRef> premises;
  for (int i = 1; i <= h; ++i) {
    const Sort si = Sort::of_agent(i);
    const Term& part = term.child(static_cast<std::size_t>(i - 1));
    const Term pi_from = Term::proj(i, from);
    premises.push_back(pb.axiom(AxiomSchema::Proj, imp(x, just(pi_from, si, a))));
    premises.push_back(pb.axiom(left ? AxiomSchema::SumL : AxiomSchema::SumR,
                                imp(just(pi_from, si, a), just(part, si, a))));
  }
  premises.push_back(pb.axiom(AxiomSchema::Tupling,
                              imp(tupling_antecedent(term.children(), a),
                                  just(term, Sort::mutual(), a))));
  return pb.tautology(premises, imp(x, just(term, Sort::mutual(), a)));
}

Built build_i_conversion(ProofBuilder& pb, const Term& t, int i, const Formula& a) {
  const Term head = Term::head(t);
  const Term term = Term::proj(i, head);
  const StepRef cc = pb.axiom(AxiomSchema::CoClosHead,
                              imp(just(t, Sort::common(), a), just(head, Sort::mutual(), a)));
  const StepRef pr = pb.axiom(AxiomSchema::Proj,
                              imp(just(head, Sort::mutual(), a), just(term, Sort::of_agent(i), a)));
  return {term, pb.chain(cc, pr)};
}

StepRef build_c_reflexivity(ProofBuilder& pb, const Term& t, const Formula& a) {
  const Built conv = build_i_conversion(pb, t, 1, a);
  const StepRef refl =
      pb.axiom(AxiomSchema::Refl, imp(just(conv.term, Sort::of_agent(1), a), a));
  return pb.chain(conv.step, refl);
}

Built build_c_inspection(ProofBuilder& pb, const Term& t, const Formula& a,
                         ConstantAllocator& alloc) {
  const Formula x = just(t, Sort::common(), a);
  const Term tl = Term::tail(t);
  const Formula step_axiom = imp(x, just(tl, Sort::mutual(), x));  // CoClosTail instance
  const Term c = alloc.constant_for(step_axiom);
  const Term term = Term::ind(c, tl);
  const StepRef nec = pb.axnec(c, step_axiom);
  const StepRef ind = pb.axiom(AxiomSchema::Induction,
                               imp(conj(x, just(c, Sort::common(), step_axiom)),
                                   just(term, Sort::common(), x)));
  return {term, pb.tautology({nec, ind}, imp(x, just(term, Sort::common(), x)))};
}

Built build_c_shift(ProofBuilder& pb, const Term& t, const Formula& a, ConstantAllocator& alloc) {
  const Formula x = just(t, Sort::common(), a);
  const Formula hx = just(Term::head(t), Sort::mutual(), a);
  const Built insp = build_c_inspection(pb, t, a, alloc);
  const Formula head_axiom = imp(x, hx);
  const Term c = alloc.constant_for(head_axiom);
  const Term term = Term::app(c, insp.term, Sort::common());
  const StepRef nec = pb.axnec(c, head_axiom);
  const StepRef app = pb.axiom(AxiomSchema::App,
                               imp(just(c, Sort::common(), head_axiom),
                                   imp(just(insp.term, Sort::common(), x),
                                       just(term, Sort::common(), hx))));
  return {term, pb.tautology({insp.step, nec, app}, imp(x, just(term, Sort::common(), hx)))};
}

void require_accepted(const Derivation& d, const ConstantSpecification& cs, const char* op) {
  if (auto report = check_derivation(d, cs); !report)
    throw std::logic_error(std::string(op) + ": kernel rejected the synthesized derivation at step " +
                           std::to_string(report.step) + ": " + report.reason);
}

void require_input_accepted(const Derivation& d, const ConstantSpecification& cs,
                            const char* op) {
  if (auto report = check_derivation(d, cs); !report)
    throw InvalidInput(std::string(op) + ": input derivation rejected at step " +
                       std::to_string(report.step) + " (" +
                       std::string(to_string(report.status)) + "): " + report.reason);
}

void require_pure_appropriate(const ConstantSpecification& cs, const ConstantAllocator& alloc) {
  if (cs.kind() == ConstantSpecification::Kind::TotalC) return;
  if (cs.kind() != ConstantSpecification::Kind::Allocated)
    throw InvalidInput(
        "lifting needs a pure C-axiomatically appropriate specification (TotalC or allocated)");
  const auto own = alloc.specification();
  for (const auto& e : cs.entries())
    if (!own.entries().contains(e))
      throw InvalidInput("specification member " + print_term(e.constant) +
                         " was not produced by this allocator");
}

}  // namespace

ConstantSpecification synthesis_specification(const ConstantSpecification& cs,
                                              const ConstantAllocator& alloc) {
  if (cs.kind() == ConstantSpecification::Kind::TotalC) return cs;
  return alloc.specification();
}

// ---------------------------------------------------------------------------
// Basic properties

Derivation e_reflexivity(const Term& t, const Formula& a, int agents) {
  require_sort(t, Sort::mutual(), agents, "E-reflexivity");
  ProofBuilder pb(agents);
  const StepRef s = build_e_reflexivity(pb, t, a);
  Derivation d = std::move(pb).finish(s);
  require_accepted(d, {}, "e_reflexivity");
  return d;
}

Synthesized e_application(const Term& t, const Term& s, const Formula& a, const Formula& b,
                          int agents) {
  require_sort(t, Sort::mutual(), agents, "E-application");
  require_sort(s, Sort::mutual(), agents, "E-application");
  ProofBuilder pb(agents);
  const Built r = build_e_application(pb, t, s, a, b);
  Derivation d = std::move(pb).finish(r.step);
  require_accepted(d, {}, "e_application");
  return {r.term, std::move(d)};
}

SynthesizedSum e_sum(const Term& t, const Term& s, const Formula& a, int agents) {
  require_sort(t, Sort::mutual(), agents, "E-sum");
  require_sort(s, Sort::mutual(), agents, "E-sum");
  std::vector<Term> parts;
  for (int i = 1; i <= agents; ++i)
    parts.push_back(Term::sum(Term::proj(i, t), Term::proj(i, s), Sort::of_agent(i)));
  const Term term = Term::tuple(std::move(parts));
  ProofBuilder left(agents);
  const StepRef l = build_e_sum_side(left, t, s, term, a, true);
  ProofBuilder right(agents);
  const StepRef r = build_e_sum_side(right, t, s, term, a, false);
  SynthesizedSum out{term, std::move(left).finish(l), std::move(right).finish(r)};
  require_accepted(out.left, {}, "e_sum");
  require_accepted(out.right, {}, "e_sum");
  return out;
}

Synthesized i_conversion(const Term& t, int agent, const Formula& a, int agents) {
  require_sort(t, Sort::common(), agents, "i-conversion");
  if (agent < 1 || agent > agents) throw InvalidInput("agent index out of range");
  ProofBuilder pb(agents);
  const Built r = build_i_conversion(pb, t, agent, a);
  Derivation d = std::move(pb).finish(r.step);
  require_accepted(d, {}, "i_conversion");
  return {r.term, std::move(d)};
}

Derivation c_reflexivity(const Term& t, const Formula& a, int agents) {
  require_sort(t, Sort::common(), agents, "C-reflexivity");
  ProofBuilder pb(agents);
  const StepRef s = build_c_reflexivity(pb, t, a);
  Derivation d = std::move(pb).finish(s);
  require_accepted(d, {}, "c_reflexivity");
  return d;
}

Synthesized c_inspection(const Term& t, const Formula& a, ConstantAllocator& alloc) {
  require_sort(t, Sort::common(), alloc.agents(), "C-inspection");
  ProofBuilder pb(alloc.agents());
  const Built r = build_c_inspection(pb, t, a, alloc);
  Derivation d = std::move(pb).finish(r.step);
  require_accepted(d, alloc.specification(), "c_inspection");
  return {r.term, std::move(d)};
}

Synthesized c_shift(const Term& t, const Formula& a, ConstantAllocator& alloc) {
  require_sort(t, Sort::common(), alloc.agents(), "C-shift");
  ProofBuilder pb(alloc.agents());
  const Built r = build_c_shift(pb, t, a, alloc);
  Derivation d = std::move(pb).finish(r.step);
  require_accepted(d, alloc.specification(), "c_shift");
  return {r.term, std::move(d)};
}

// ---------------------------------------------------------------------------
// Lifting

LiftingContext LiftingContext::from(const Derivation& d, std::size_t boxed_count) {
  if (boxed_count > d.hypotheses.size())
    throw InvalidInput("more boxed hypotheses requested than the derivation has");
  LiftingContext ctx;
  for (std::size_t k = 0; k < d.hypotheses.size(); ++k) {
    const Formula& h = d.hypotheses[k];
    if (k < boxed_count) {
      if (h.kind() != FormulaKind::Just || !h.sort().is_common())
        throw InvalidInput("hypothesis " + std::to_string(k + 1) +
                           " is declared boxed but is not of the form [s]@C B");
      ctx.c_hypotheses.push_back({h.term(), h.body()});
    } else {
      ctx.plain_hypotheses.push_back(h);
    }
  }
  return ctx;
}

namespace {

class Lifter {
 public:
  Lifter(ProofBuilder& pb, Sort target, ConstantAllocator& alloc)
      : pb_(pb), target_(target), alloc_(alloc) {}

  // `proof` proves [c]@C f; derive [t]@target f with t per the axiom case.
  Built from_constant(const Term& c, const Formula& f, StepRef proof) {
    switch (target_.tag) {
      case Sort::Tag::C:
        return {c, proof};
      case Sort::Tag::Agent: {
        const Built conv = build_i_conversion(pb_, c, target_.agent, f);
        return {conv.term, pb_.mp(conv.step, proof)};
      }
      case Sort::Tag::E: {
        const Term head = Term::head(c);
        const StepRef ax = pb_.axiom(
            AxiomSchema::CoClosHead, imp(just(c, Sort::common(), f), just(head, Sort::mutual(), f)));
        return {head, pb_.mp(ax, proof)};
      }
    }
    throw std::logic_error("unreachable");
  }

  // `proof` proves [s]@C b; derive [t]@target [s]@C b (inspection case).
  Built from_boxed(const Term& s, const Formula& b, StepRef proof) {
    const Formula x = just(s, Sort::common(), b);
    if (target_.is_mutual()) {
      const Term tl = Term::tail(s);
      const StepRef ax =
          pb_.axiom(AxiomSchema::CoClosTail, imp(x, just(tl, Sort::mutual(), x)));
      return {tl, pb_.mp(ax, proof)};
    }
    const Built insp = build_c_inspection(pb_, s, b, alloc_);
    const StepRef boxed = pb_.mp(insp.step, proof);
    if (target_.is_common()) return {insp.term, boxed};
    const Built conv = build_i_conversion(pb_, insp.term, target_.agent, x);
    return {conv.term, pb_.mp(conv.step, boxed)};
  }

  // r proves [r]@target (d -> a), s proves [s]@target d.
  Built from_mp(const Built& r, const Built& s, const Formula& d, const Formula& a) {
    if (target_.is_mutual()) {
      const Built ea = build_e_application(pb_, r.term, s.term, d, a);
      return {ea.term, pb_.mp(pb_.mp(ea.step, r.step), s.step)};
    }
    const Term term = Term::app(r.term, s.term, target_);
    const StepRef ax = pb_.axiom(
        AxiomSchema::App,
        imp(just(r.term, target_, imp(d, a)), imp(just(s.term, target_, d), just(term, target_, a))));
    return {term, pb_.mp(pb_.mp(ax, r.step), s.step)};
  }

 private:
  ProofBuilder& pb_;
  Sort target_;
  ConstantAllocator& alloc_;
};

}  // namespace

Synthesized lift(const Derivation& d, Sort target, const LiftingContext& ctx,
                 const ConstantSpecification& cs, ConstantAllocator& alloc) {
  const int h = d.agents;
  if (alloc.agents() != h) throw InvalidInput("allocator and derivation disagree on agents");
  if (target.is_agent() && (target.agent < 1 || target.agent > h))
    throw InvalidInput("target agent out of range");
  require_pure_appropriate(cs, alloc);
  require_input_accepted(d, cs, "lift");

  const std::size_t n = ctx.c_hypotheses.size();
  const std::size_t m = ctx.plain_hypotheses.size();
  if (d.hypotheses.size() != n + m)
    throw InvalidInput("lifting context does not match the derivation's hypotheses");
  for (std::size_t j = 0; j < n; ++j)
    if (d.hypotheses[j] != just(ctx.c_hypotheses[j].term, Sort::common(), ctx.c_hypotheses[j].body))
      throw InvalidInput("hypothesis " + std::to_string(j + 1) + " differs from the context");
  for (std::size_t k = 0; k < m; ++k)
    if (d.hypotheses[n + k] != ctx.plain_hypotheses[k])
      throw InvalidInput("hypothesis " + std::to_string(n + k + 1) + " differs from the context");

  // Fresh variables: smallest indices of the target sort unused anywhere.
  std::set<int> used;
  auto scan = [&](const Formula& f) {
    for (int v : variable_indices(f, target)) used.insert(v);
  };
  for (const auto& f : d.hypotheses) scan(f);
  for (const auto& s : d.steps) scan(s.formula);
  std::vector<Term> fresh;
  for (int k = 1; fresh.size() < m; ++k)
    if (!used.contains(k)) fresh.push_back(Term::variable(k, target));

  std::vector<Formula> out_hyps;
  for (std::size_t j = 0; j < n; ++j) out_hyps.push_back(d.hypotheses[j]);
  for (std::size_t k = 0; k < m; ++k) out_hyps.push_back(just(fresh[k], target, ctx.plain_hypotheses[k]));

  ProofBuilder pb(h, out_hyps);
  Lifter lifter(pb, target, alloc);
  std::vector<Built> lifted;
  lifted.reserve(d.steps.size());
  for (const Step& step : d.steps) {
    const Formula& f = step.formula;
    if (std::holds_alternative<AxiomRule>(step.rule)) {
      const Term c = alloc.constant_for(f);
      lifted.push_back(lifter.from_constant(c, f, pb.axnec(c, f)));
    } else if (const auto* hy = std::get_if<HypRule>(&step.rule)) {
      const std::size_t j = hy->index;
      if (j <= n) {
        const auto& boxed = ctx.c_hypotheses[j - 1];
        lifted.push_back(lifter.from_boxed(boxed.term, boxed.body, pb.hyp(j)));
      } else {
        lifted.push_back({fresh[j - n - 1], pb.hyp(j)});
      }
    } else if (const auto* mp = std::get_if<MpRule>(&step.rule)) {
      const Formula& major = d.steps[mp->major - 1].formula;
      lifted.push_back(lifter.from_mp(lifted[mp->major - 1], lifted[mp->minor - 1], major.lhs(),
                                      major.rhs()));
    } else {
      const auto& nec = std::get<AxNecRule>(step.rule);
      if (!f.sort().is_common())
        throw InvalidInput("lifting needs a pure specification of sort C; found axnec at sort " +
                           to_string(f.sort()));
      lifted.push_back(lifter.from_boxed(nec.constant, f.body(), pb.axnec(nec.constant, f.body())));
    }
  }
  const Term term = lifted.back().term;
  Derivation out = std::move(pb).finish(lifted.back().step);
  require_accepted(out, synthesis_specification(cs, alloc), "lift");
  return {term, std::move(out)};
}

Synthesized necessitate(const Derivation& d, Sort target, const ConstantSpecification& cs,
                        ConstantAllocator& alloc) {
  if (!d.hypotheses.empty())
    throw InvalidInput("constructive necessitation needs a hypothesis-free derivation");
  return lift(d, target, LiftingContext{}, cs, alloc);
}

// ---------------------------------------------------------------------------
// Internalized induction

Synthesized internalize_induction_1(const Formula& a, const Term& s, const Derivation& d,
                                    const ConstantSpecification& cs, ConstantAllocator& alloc) {
  const int h = d.agents;
  require_sort(s, Sort::mutual(), h, "internalized induction");
  if (!d.hypotheses.empty()) throw InvalidInput("induction rule needs a hypothesis-free derivation");
  require_input_accepted(d, cs, "internalize_induction_1");
  const Formula step = imp(a, just(s, Sort::mutual(), a));
  if (d.conclusion() != step)
    throw InvalidInput("derivation concludes " + print_formula(d.conclusion()) + ", expected " +
                       print_formula(step));

  const Synthesized nec = necessitate(d, Sort::common(), cs, alloc);
  const Term goal = Term::ind(nec.term, s);
  ProofBuilder pb(h);
  const StepRef boxed = pb.splice(nec.derivation);
  const StepRef ind = pb.axiom(AxiomSchema::Induction,
                               imp(conj(a, just(nec.term, Sort::common(), step)),
                                   just(goal, Sort::common(), a)));
  const StepRef out = pb.tautology({boxed, ind}, imp(a, just(goal, Sort::common(), a)));
  Derivation result = std::move(pb).finish(out);
  require_accepted(result, synthesis_specification(cs, alloc), "internalize_induction_1");
  return {nec.term, std::move(result)};
}

SynthesizedInduction internalize_induction_2(const Formula& a, const Formula& b, const Term& s,
                                             const Derivation& d,
                                             const ConstantSpecification& cs,
                                             ConstantAllocator& alloc) {
  const int h = d.agents;
  require_sort(s, Sort::mutual(), h, "internalized induction");
  if (!d.hypotheses.empty()) throw InvalidInput("induction rule needs a hypothesis-free derivation");
  require_input_accepted(d, cs, "internalize_induction_2");
  const Formula ab = conj(a, b);
  const Formula e_ab = just(s, Sort::mutual(), ab);
  if (d.conclusion() != imp(b, e_ab))
    throw InvalidInput("derivation concludes " + print_formula(d.conclusion()) + ", expected " +
                       print_formula(imp(b, e_ab)));

  // A & B -> [s]@E (A & B)
  ProofBuilder weak(h);
  const StepRef weakened = weak.tautology({weak.splice(d)}, imp(ab, e_ab));
  const Derivation d1 = std::move(weak).finish(weakened);

  // A & B -> [ind(t, s)]@C (A & B)
  const Synthesized first = internalize_induction_1(ab, s, d1, cs, alloc);
  const Term ind = Term::ind(first.term, s);

  const Formula proj_axiom = imp(ab, a);
  const Term c = alloc.constant_for(proj_axiom);
  const Term goal = Term::app(c, ind, Sort::common());

  ProofBuilder pb(h);
  const StepRef e2 = pb.splice(first.derivation);
  const StepRef nc = pb.axnec(c, proj_axiom);
  const StepRef app = pb.axiom(AxiomSchema::App,
                               imp(just(c, Sort::common(), proj_axiom),
                                   imp(just(ind, Sort::common(), ab), just(goal, Sort::common(), a))));
  const StepRef e4 = pb.tautology({e2, nc, app}, imp(ab, just(goal, Sort::common(), a)));
  const StepRef given = pb.splice(d);
  const StepRef refl = build_e_reflexivity(pb, s, ab);
  const StepRef out = pb.tautology({given, refl, e4}, imp(b, just(goal, Sort::common(), a)));
  Derivation result = std::move(pb).finish(out);
  require_accepted(result, synthesis_specification(cs, alloc), "internalize_induction_2");
  return {first.term, c, std::move(result)};
}

}  // namespace jck
