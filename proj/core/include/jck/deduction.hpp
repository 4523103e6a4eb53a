#pragma once

// Hilbert kernel: axiom-schema recognition, constant specifications,
// derivation checking and the deduction-theorem transformation.

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "jck/syntax.hpp"

namespace jck {

enum class AxiomSchema {
  Taut,
  App,
  SumL,
  SumR,
  Refl,
  Insp,
  Tupling,
  Proj,
  CoClosHead,
  CoClosTail,
  Induction,
};

inline constexpr AxiomSchema kAllSchemata[] = {
    AxiomSchema::Taut,    AxiomSchema::App,        AxiomSchema::SumL,
    AxiomSchema::SumR,    AxiomSchema::Refl,       AxiomSchema::Insp,
    AxiomSchema::Tupling, AxiomSchema::Proj,       AxiomSchema::CoClosHead,
    AxiomSchema::CoClosTail, AxiomSchema::Induction,
};

std::string_view to_string(AxiomSchema s);
/// Case-insensitive inverse of to_string.
std::optional<AxiomSchema> parse_schema(std::string_view name);

/// Which axiom set the kernel admits. `LPh` is the pure multi-agent
/// fragment: only Taut, App, SumL, SumR, Refl and Insp at agent sorts, and
/// every formula must be free of E- and C-sorted subterms.
enum class Fragment { Full, LPh };

inline constexpr std::size_t kDefaultAtomCap = 24;

/// True iff `a` is a propositional tautology when each maximal justified
/// subformula is an opaque atom. Throws ResourceError above `atom_cap` atoms.
bool is_tautology(const Formula& a, std::size_t atom_cap = kDefaultAtomCap);

/// Does `a` instantiate `schema` in a system with `agents` agents?
bool instantiates(const Formula& a, AxiomSchema schema, int agents,
                  std::size_t atom_cap = kDefaultAtomCap);

/// Every schema `a` instantiates; empty when `a` is not an axiom.
std::set<AxiomSchema> match_axiom(const Formula& a, int agents,
                                  std::size_t atom_cap = kDefaultAtomCap);

/// True when the term contains no subterm of sort E or C.
bool is_lph_term(const Term& t);
/// True when every term in the formula is an LP_h term.
bool is_lph_formula(const Formula& a);

struct CsEntry {
  Term constant;
  Formula formula;

  friend auto operator<=>(const CsEntry&, const CsEntry&) = default;
  friend bool operator==(const CsEntry&, const CsEntry&) = default;
};

class ConstantSpecification {
 public:
  enum class Kind { Extensional, TotalC, Allocated };

  /// The empty specification.
  ConstantSpecification() = default;

  /// Every `[c]@C A` with `c` a C-constant and `A` an axiom.
  static ConstantSpecification total_c();

  /// Finite specification. Each entry must be a constant whose formula is
  /// an axiom instance; throws InvalidInput otherwise.
  static ConstantSpecification extensional(std::set<CsEntry> entries, int agents);

  /// Finite table without the axiom check. Used for the image of a
  /// specification under the conservativity translation, whose members need
  /// not be axioms.
  static ConstantSpecification unchecked(std::set<CsEntry> entries);

  /// Produced by ConstantAllocator::specification().
  static ConstantSpecification allocated(std::set<CsEntry> entries);

  Kind kind() const { return kind_; }
  const std::set<CsEntry>& entries() const { return entries_; }
  /// For TotalC and Allocated this holds by construction.
  bool is_c_axiomatically_appropriate() const { return kind_ != Kind::Extensional; }
  /// The common sort of all members, if any. Empty specifications report
  /// nothing.
  std::optional<Sort> pure_sort() const;

  bool contains(const Term& constant, Sort sort, const Formula& a, int agents) const;

 private:
  Kind kind_ = Kind::Extensional;
  std::set<CsEntry> entries_;
};

inline bool cs_contains(const ConstantSpecification& cs, const Term& c, Sort s,
                        const Formula& a, int agents) {
  return cs.contains(c, s, a, agents);
}

struct HypRule {
  std::size_t index;  // 1-based into Derivation::hypotheses
  friend bool operator==(const HypRule&, const HypRule&) = default;
};
struct AxiomRule {
  AxiomSchema schema;
  friend bool operator==(const AxiomRule&, const AxiomRule&) = default;
};
/// Step `major` proves X -> Y, step `minor` proves X; both 1-based and
/// strictly earlier.
struct MpRule {
  std::size_t major;
  std::size_t minor;
  friend bool operator==(const MpRule&, const MpRule&) = default;
};
struct AxNecRule {
  Term constant;
  friend bool operator==(const AxNecRule&, const AxNecRule&) = default;
};

using Rule = std::variant<HypRule, AxiomRule, MpRule, AxNecRule>;

struct Step {
  Formula formula;
  Rule rule;
};

struct Derivation {
  int agents = 1;
  std::vector<Formula> hypotheses;
  std::vector<Step> steps;

  /// Formula of the last step. Throws InvalidInput on an empty derivation.
  const Formula& conclusion() const;
};

enum class CheckStatus {
  Accepted,
  Empty,
  IllFormed,
  BadHypIndex,
  NotAnAxiom,
  BadMP,
  NotInCS,
  OutsideFragment,
};

std::string_view to_string(CheckStatus s);

struct CheckReport {
  CheckStatus status = CheckStatus::Accepted;
  std::size_t step = 0;  // 1-based failing step; 0 when accepted
  std::string reason;

  bool accepted() const { return status == CheckStatus::Accepted; }
  explicit operator bool() const { return accepted(); }
};

struct CheckOptions {
  Fragment fragment = Fragment::Full;
  std::size_t atom_cap = kDefaultAtomCap;
};

CheckReport check_derivation(const Derivation& d, const ConstantSpecification& cs,
                             const CheckOptions& options = {});

/// Turns a derivation of B from hypotheses Δ ∪ {A}, where A is hypothesis
/// number `hypothesis` (1-based), into a derivation of A -> B from Δ.
/// Throws InvalidInput if `d` does not check under `cs`.
Derivation deduction_theorem(const Derivation& d, std::size_t hypothesis,
                             const ConstantSpecification& cs);

}  // namespace jck
