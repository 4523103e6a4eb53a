#pragma once

// Coordinated attack with two generals: G is agent 1, H is agent 2, the
// proposition `del` is P1, the message m1 is c1@2 and the acknowledgment m2
// is c2@1.

#include <cstddef>
#include <string>
#include <vector>

#include "jck/modal.hpp"
#include "jck/semantics.hpp"
#include "jck/syntax.hpp"

namespace jck {

inline constexpr int kGeneralG = 1;
inline constexpr int kGeneralH = 2;

/// `alias del = P1`, `alias m1 = c1`, `alias m2 = c2`.
Names attack_names();
Term attack_m1();  // c1@2
Term attack_m2();  // c2@1
Formula attack_del();

/// Four worlds 0..3, del true at 0, 1, 2, R_G the reflexive closure of
/// {(1,2)}, R_H that of {(0,1), (2,3)}. In Base mode the evidence base is
/// del in E_H(0, m1) and [m1]@H del in E_G(0, m2).
AFModel attack_model(EvidenceMode mode);

/// One world, del true, base facts del in E_H(w, m1) and [m1]@H del in
/// E_G(w, m2); TotalC specification.
AFModel attack_singleton_model();

/// Every term of sort `s` built from `leaves` with at most `max_ops`
/// operation nodes, in a fixed order.
std::vector<Term> enumerate_terms(const std::vector<Term>& leaves, Sort s, int max_ops,
                                  int agents);

/// m1, m2, c1@C, x1@E and x1@C.
std::vector<Term> attack_signature();

struct AttackClaim {
  std::string label;
  std::string statement;
  bool holds = false;
  std::string detail;
};

struct AttackReport {
  int depth = 0;
  std::vector<AttackClaim> claims;

  bool all_hold() const;
  const AttackClaim* find(const std::string& label) const;
};

/// Runs every claim with enumerations of at most `depth` operations and
/// saturation depth budget `depth`.
AttackReport demo_attack(int depth);

std::string format_report(const AttackReport& r);

}  // namespace jck
