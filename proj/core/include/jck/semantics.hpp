#pragma once

// Finite AF-models and M-models.
//
// An evidence function is given by a finite base of facts (w, t, A) and is
// closed on demand: `saturate` computes the least set of facts satisfying
// the nine closure conditions restricted to a finite universe of terms and
// formulas. Answers are therefore a sound under-approximation of the minimal
// evidence function; a `false` is only as strong as the universe it was
// computed over. Full mode models the everything-function instead.

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string_view>
#include <string>
#include <utility>
#include <vector>

#include "jck/deduction.hpp"
#include "jck/syntax.hpp"
#include "jck/text.hpp"

namespace jck {

using World = std::size_t;
using WorldPair = std::pair<World, World>;
using Relation = std::set<WorldPair>;

struct EvidenceFact {
  World world;
  Term term;
  Formula formula;

  friend auto operator<=>(const EvidenceFact&, const EvidenceFact&) = default;
  friend bool operator==(const EvidenceFact&, const EvidenceFact&) = default;
};

enum class EvidenceMode { Base, Full };

struct AFModel {
  int agents = 1;
  std::vector<std::string> world_names;  // world k is named world_names[k]
  std::vector<Relation> relations;       // relations[i - 1] is R_i
  std::map<int, std::set<World>> valuation;
  std::vector<EvidenceFact> evidence_base;
  ConstantSpecification cs;
  EvidenceMode mode = EvidenceMode::Base;
  Names names;

  std::size_t world_count() const { return world_names.size(); }
  /// Index of the world called `name`; throws UnknownWorld.
  World world(const std::string& name) const;
  bool holds(int prop, World w) const;
};

struct ValidationReport {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
};

ValidationReport validate_model(const AFModel& m);

/// R_E: union of the agent relations.
Relation reach_e(const AFModel& m);
/// R_C: transitive closure of R_E.
Relation reach_c(const AFModel& m);
/// Relation of the box `[t]@sort`.
Relation relation_for(const AFModel& m, Sort sort);

/// Reflexive-transitive closure over `n` worlds.
Relation reflexive_transitive_closure(const Relation& r, std::size_t n);
Relation transitive_closure(const Relation& r, std::size_t n);

struct UniverseLimits {
  std::size_t max_terms = 100'000;
  std::size_t max_formulas = 100'000;
};

struct SaturationUniverse {
  std::set<Term> terms;
  std::set<Formula> formulas;
  int depth_budget = 0;
};

/// Terms: subterm closure of the query's and the base facts' terms.
/// Formulas: subformula closure of the query, the base formulas, and the
/// members of a finite specification whose constant is in the universe;
/// then, `depth_budget` times, the conclusion formulas that inspection,
/// co-closure and induction need for terms already present. Throws
/// ResourceError beyond `limits`.
SaturationUniverse build_universe(const AFModel& m, const Formula& query, int depth_budget,
                                  const UniverseLimits& limits = {});

/// Least fixpoint of the closure conditions over the base (Base mode),
/// restricted to the universe.
std::set<EvidenceFact> saturate(const AFModel& m, const SaturationUniverse& u);

/// A ∈ E(w, t)? Full mode always answers true.
bool evidence_holds(const AFModel& m, World w, const Term& t, const Formula& a,
                    int depth_budget, const UniverseLimits& limits = {});

/// M, w ⊩ A. In Base mode evidence is decided by one saturation over the
/// universe built for the whole of `a`.
bool satisfies(const AFModel& m, World w, const Formula& a, int depth_budget,
               const UniverseLimits& limits = {});

/// Worlds satisfying `a`, one saturation for all of them.
std::set<World> satisfying_worlds(const AFModel& m, const Formula& a, int depth_budget,
                                  const UniverseLimits& limits = {});

bool valid_in_model(const AFModel& m, const Formula& a, int depth_budget,
                    const UniverseLimits& limits = {});

/// The M-model on the single world `w`. Throws UnknownWorld.
AFModel restrict_to_world(const AFModel& m, World w);

struct RandomModelParams {
  int agents = 2;
  std::size_t worlds = 3;
  double density = 0.3;
  std::size_t base_facts = 0;
  std::uint64_t seed = 1;
  EvidenceMode mode = EvidenceMode::Full;
  int max_props = 3;
};

AFModel random_model(const RandomModelParams& params);

// ---------------------------------------------------------------------------
// Model files
//
//     h: 2
//     worlds: 0 1 2 3
//     rel 1: (1,2)
//     rel 2: (0,1) (2,3)
//     val P1: 0 1 2
//     evidence: (0, c1@2, P1)
//     mode: base            (or full)
//     cs: totalC            (or `file <path>`, or `none`)
//     alias del = P1        (optional names; `alias m1 = c1` for constants)
//
// Relations are replaced by their reflexive-transitive closure on load; a
// warning is recorded when that changes them.

struct LoadedModel {
  AFModel model;
  std::vector<std::string> warnings;
};

/// `base_dir` resolves relative `cs: file` paths.
LoadedModel read_model(std::string_view text, const std::string& base_dir = ".");
std::string write_model(const AFModel& m);

}  // namespace jck
