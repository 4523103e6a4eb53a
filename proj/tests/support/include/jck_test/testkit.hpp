#pragma once

// Oracles and corpus generators shared by the unit tests, the acceptance
// suite and `jck selftest`. The oracles are written independently of the
// library's own algorithms and are deliberately naive.

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include <jck/deduction.hpp>
#include <jck/modal.hpp>
#include <jck/random.hpp>
#include <jck/semantics.hpp>
#include <jck/synthesis.hpp>
#include <jck/syntax.hpp>

namespace jck::testkit {

// ---------------------------------------------------------------------------
// Oracles

/// Least fixpoint by repeated full sweeps: every candidate fact in the
/// universe is re-derived from scratch against the current set until
/// nothing changes.
std::set<EvidenceFact> naive_saturate(const AFModel& m, const SaturationUniverse& u);

/// Kripke evaluation with the common-knowledge box computed by breadth-first
/// search over the agent relations (worlds reachable in one or more steps).
bool bfs_satisfies(const KripkeModel& k, World w, const ModalFormula& a);

/// Truth-table check by explicit enumeration of valuations over the atoms
/// (propositions and maximal justified subformulas).
bool brute_force_tautology(const Formula& a);

// ---------------------------------------------------------------------------
// Generators

Formula random_axiom_instance(SyntaxSampler& rng, AxiomSchema schema, int depth = 1);

/// Hypotheses `[t]@C X` and `Y`; uses every lifting case (boxed hypothesis,
/// plain hypothesis, axiom, axiom necessitation at sort C, modus ponens).
Derivation random_lift_input(SyntaxSampler& rng);

/// A hypothesis-free derivation of a random axiom, optionally followed by
/// a few propositional steps.
Derivation random_theorem_derivation(SyntaxSampler& rng);

struct InductionPremise {
  Formula a;
  Formula b;  // second rule only
  Term s;
  Derivation derivation;
};
/// Proves `A -> [tail t]@E A` for A = [t]@C X; the premise shape of the
/// first induction rule.
InductionPremise induction1_premise(SyntaxSampler& rng);

/// Proves `Y -> [s]@E (X & Y)` with Y = [t]@C X; the premise shape of the
/// second induction rule. Uses the TotalC specification.
InductionPremise induction2_premise(SyntaxSampler& rng, ConstantAllocator& alloc);

/// `count` hypothesis-free theorems produced by the synthesis operations,
/// each kernel-checked under TotalC.
std::vector<Derivation> synthesized_theorems(int agents, std::size_t count, std::uint64_t seed);

/// A random universe small enough for the naive oracle, together with a
/// model whose evidence base lives inside it.
struct SaturationInstance {
  AFModel model;
  Formula query;
  SaturationUniverse universe;
};
/// Empty when the drawn instance exceeds the size bounds.
std::optional<SaturationInstance> random_saturation_instance(std::uint64_t seed,
                                                             std::size_t max_worlds,
                                                             std::size_t max_formulas);

}  // namespace jck::testkit
