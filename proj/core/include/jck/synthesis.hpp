#pragma once

// Constructive builders for the internalization properties. Every public
// operation returns the evidence term(s) together with an explicit Hilbert
// derivation, and refuses to return unless the kernel accepts that
// derivation.

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "jck/deduction.hpp"
#include "jck/syntax.hpp"

namespace jck {

/// Hands out C-constants for axiom instances, one per distinct formula, in
/// first-request order. The induced specification is pure (sort C) and
/// covers every axiom on demand.
class ConstantAllocator {
 public:
  explicit ConstantAllocator(int agents, int first_index = 1);

  /// Seeds the memo table from a pure-C specification so that its members
  /// keep their constants. Throws InvalidInput for other specifications.
  static ConstantAllocator from_specification(const ConstantSpecification& cs, int agents);

  /// Constant justifying `axiom` at sort C. Throws InvalidInput if `axiom`
  /// is not an axiom instance.
  Term constant_for(const Formula& axiom);

  ConstantSpecification specification() const;
  /// Independent copy, for parallel shards that must not share state.
  ConstantAllocator fork() const { return *this; }

  int agents() const { return agents_; }
  std::size_t size() const { return memo_.size(); }
  int next_index() const { return next_index_; }

 private:
  int agents_;
  int next_index_;
  std::map<Formula, int> memo_;
};

/// Append-only derivation under construction. Step references are the
/// 1-based step numbers of the resulting derivation.
class ProofBuilder {
 public:
  using StepRef = std::size_t;

  explicit ProofBuilder(int agents, std::vector<Formula> hypotheses = {});

  StepRef hyp(std::size_t index);
  StepRef axiom(AxiomSchema schema, Formula f);
  /// `[c]@sort(c) a` by axiom necessitation.
  StepRef axnec(const Term& c, const Formula& a);
  StepRef mp(StepRef major, StepRef minor);

  /// Derives `target` from `premises` with one Taut step
  /// `p1 -> (p2 -> ... -> target)` followed by modus ponens.
  StepRef tautology(std::span<const StepRef> premises, const Formula& target);
  StepRef tautology(std::initializer_list<StepRef> premises, const Formula& target) {
    return tautology(std::span<const StepRef>(premises.begin(), premises.size()), target);
  }

  /// From `a -> b` and `b -> c`, derive `a -> c`.
  StepRef chain(StepRef ab, StepRef bc);

  /// Copies `sub` into this proof. Its hypothesis k is replaced by the step
  /// `hypothesis_steps[k - 1]`, which must prove the same formula. Returns
  /// the step holding `sub`'s conclusion.
  StepRef splice(const Derivation& sub, std::span<const StepRef> hypothesis_steps = {});

  const Formula& formula(StepRef s) const { return steps_.at(s - 1).formula; }
  std::size_t size() const { return steps_.size(); }
  int agents() const { return agents_; }

  /// The finished derivation; if `conclusion` is not the last step it is
  /// re-derived at the end so that it becomes the conclusion.
  Derivation finish(StepRef conclusion) &&;

 private:
  StepRef push(Formula f, Rule r);

  int agents_;
  std::vector<Formula> hypotheses_;
  std::vector<Step> steps_;
};

struct Synthesized {
  Term term;
  Derivation derivation;
};

struct SynthesizedSum {
  Term term;
  Derivation left;   // [t]@E A -> [term]@E A
  Derivation right;  // [s]@E A -> [term]@E A
};

struct SynthesizedInduction {
  Term term;      // t in ind(t, s)
  Term constant;  // c justifying A & B -> A
  Derivation derivation;
};

/// ⊢ [t]@E A -> A
Derivation e_reflexivity(const Term& t, const Formula& a, int agents);

/// term = <pi_1 t * pi_1 s, ..., pi_h t * pi_h s>;
/// ⊢ [t]@E (A -> B) -> ([s]@E A -> [term]@E B)
Synthesized e_application(const Term& t, const Term& s, const Formula& a, const Formula& b,
                          int agents);

/// term = <pi_1 t + pi_1 s, ..., pi_h t + pi_h s>
SynthesizedSum e_sum(const Term& t, const Term& s, const Formula& a, int agents);

/// term = pi_i(head(t)); ⊢ [t]@C A -> [term]@i A
Synthesized i_conversion(const Term& t, int agent, const Formula& a, int agents);

/// ⊢ [t]@C A -> A
Derivation c_reflexivity(const Term& t, const Formula& a, int agents);

/// term = ind(c, tail(t)) with c justifying the co-closure instance
/// [t]@C A -> [tail t]@E [t]@C A; ⊢ [t]@C A -> [term]@C [t]@C A
Synthesized c_inspection(const Term& t, const Formula& a, ConstantAllocator& alloc);

/// term = c * ind(c', tail t) with c justifying [t]@C A -> [head t]@E A;
/// ⊢ [t]@C A -> [term]@C [head t]@E A
Synthesized c_shift(const Term& t, const Formula& a, ConstantAllocator& alloc);

/// Hypothesis layout of a derivation to be lifted: the first
/// `boxed_count` hypotheses are `[s_j]@C B_j`, the rest are plain.
struct LiftingContext {
  struct Boxed {
    Term term;
    Formula body;
  };
  std::vector<Boxed> c_hypotheses;
  std::vector<Formula> plain_hypotheses;

  /// Throws InvalidInput if one of the first `boxed_count` hypotheses is
  /// not C-justified.
  static LiftingContext from(const Derivation& d, std::size_t boxed_count);
};

/// Internalizes `d` at sort `target`. The result proves
/// `[t]@target A` from `[s_j]@C B_j` and `[y_k]@target C_k` with fresh
/// variables y_k. `cs` is the specification `d` checks under; it must be
/// TotalC or the allocator's own (Allocated) specification.
Synthesized lift(const Derivation& d, Sort target, const LiftingContext& ctx,
                 const ConstantSpecification& cs, ConstantAllocator& alloc);

/// Lifting of a hypothesis-free derivation: a ground term t with ⊢ [t]@target A.
Synthesized necessitate(const Derivation& d, Sort target, const ConstantSpecification& cs,
                        ConstantAllocator& alloc);

/// From ⊢ A -> [s]@E A build t and ⊢ A -> [ind(t, s)]@C A.
Synthesized internalize_induction_1(const Formula& a, const Term& s, const Derivation& d,
                                    const ConstantSpecification& cs, ConstantAllocator& alloc);

/// From ⊢ B -> [s]@E (A & B) build t, c and ⊢ B -> [c * ind(t, s)]@C A.
SynthesizedInduction internalize_induction_2(const Formula& a, const Formula& b, const Term& s,
                                             const Derivation& d,
                                             const ConstantSpecification& cs,
                                             ConstantAllocator& alloc);

/// The specification synthesized derivations are checked under: TotalC
/// when `cs` is TotalC, otherwise the allocator's table.
ConstantSpecification synthesis_specification(const ConstantSpecification& cs,
                                              const ConstantAllocator& alloc);

}  // namespace jck
