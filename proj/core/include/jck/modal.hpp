#pragma once

// The modal side: S4_h with mutual and common knowledge, the forgetful
// projection onto it, and the translation back into the pure multi-agent
// fragment.
//
// Modal syntax extends the formula grammar with `#i A`, `#E A` and `#C A`
// (same precedence as `~`).

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "jck/deduction.hpp"
#include "jck/semantics.hpp"
#include "jck/syntax.hpp"
#include "jck/text.hpp"

namespace jck {

enum class ModalKind : std::uint8_t { Prop, Neg, And, Or, Imp, Box, Every, Common };

class ModalFormula {
 public:
  struct Node;

  static ModalFormula prop(int index);
  static ModalFormula negation(ModalFormula a);
  static ModalFormula conjunction(ModalFormula a, ModalFormula b);
  static ModalFormula disjunction(ModalFormula a, ModalFormula b);
  static ModalFormula implication(ModalFormula a, ModalFormula b);
  static ModalFormula box(int agent, ModalFormula a);
  static ModalFormula every(ModalFormula a);
  static ModalFormula common(ModalFormula a);

  ModalKind kind() const;
  bool is(ModalKind k) const { return kind() == k; }
  int prop_index() const;
  /// Agent of a Box node; 0 otherwise.
  int agent() const;
  const ModalFormula& lhs() const;
  const ModalFormula& rhs() const;
  const ModalFormula& body() const { return lhs(); }
  std::size_t hash() const;

  friend bool operator==(const ModalFormula& a, const ModalFormula& b);

 private:
  explicit ModalFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

ModalFormula parse_modal(std::string_view text, int agents, const Names* names = nullptr);
std::string print_modal(const ModalFormula& a, const Names* names = nullptr);

/// Erases evidence: [t]@i A to #i A, [t]@E A to #E A, [t]@C A to #C A.
ModalFormula forgetful(const Formula& a);
/// True iff forgetful(r) == a.
bool realizes(const Formula& r, const ModalFormula& a);

/// The × map: drops every box whose term has a subterm of sort E or C.
Formula conservative_projection(const Formula& a);

struct TranslatedDerivation {
  Derivation derivation;  // checks under Fragment::LPh with `cs`
  ConstantSpecification cs;
  /// Members of `cs` whose formula is not an LP_h axiom.
  std::vector<CsEntry> non_axiom_members;
};

/// Translates a hypothesis-free derivation into one of the ×-image of its
/// conclusion in the pure fragment. Throws InvalidInput if `d` has
/// hypotheses or does not check under `cs`.
TranslatedDerivation translate_derivation_x(const Derivation& d, const ConstantSpecification& cs);

/// The specification { [c]@i B× : [c]@i B in cs }. Empty for TotalC and
/// Allocated specifications, which only hold C-constants.
ConstantSpecification conservative_specification(const ConstantSpecification& cs);

struct KripkeModel {
  int agents = 1;
  std::vector<std::string> world_names;
  std::vector<Relation> relations;  // relations[i - 1] is R_i
  std::map<int, std::set<World>> valuation;

  std::size_t world_count() const { return world_names.size(); }
  bool holds(int prop, World w) const;
};

KripkeModel kripke_from(const AFModel& m);
/// Model file without evidence lines. Throws ParseError if one is present.
KripkeModel read_kripke_model(std::string_view text);
std::string write_kripke_model(const KripkeModel& k, const Names* names = nullptr);

std::set<World> kripke_satisfying_worlds(const KripkeModel& k, const ModalFormula& a);
/// Throws UnknownWorld for an out-of-range world.
bool kripke_satisfies(const KripkeModel& k, World w, const ModalFormula& a);

KripkeModel random_kripke_model(int agents, std::size_t worlds, double density, int max_props,
                                std::uint64_t seed);

struct ProbeReport {
  std::size_t trials = 0;
  std::optional<KripkeModel> counterexample;
  World world = 0;  // falsifying world of the counterexample

  bool found() const { return counterexample.has_value(); }
};

/// Evaluates `a` on `trials` random reflexive-transitive models of 1 to 5
/// worlds and stops at the first falsifying one.
ProbeReport modal_validity_probe(const ModalFormula& a, int agents, std::size_t trials,
                                 std::uint64_t seed);

/// modal_validity_probe on the forgetful image of the conclusion of `d`.
/// Throws InvalidInput if `d` has hypotheses or no steps.
ProbeReport forgetful_soundness_probe(const Derivation& d, std::size_t trials, std::uint64_t seed);

}  // namespace jck

template <>
struct std::hash<jck::ModalFormula> {
  std::size_t operator()(const jck::ModalFormula& a) const noexcept;
};
