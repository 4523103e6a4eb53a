#pragma once

#include <string>

#include <jck/deduction.hpp>
#include <jck/syntax.hpp>
#include <jck/text.hpp>

namespace jck::test {

inline Formula F(const std::string& text, int agents = 2) { return parse_formula(text, agents); }
inline Term T(const std::string& text, int agents = 2) { return parse_term(text, agents); }

inline std::string data_path(const std::string& name) {
  return std::string(JCK_TEST_DATA_DIR) + "/" + name;
}

inline Derivation one_axiom(const Formula& f, AxiomSchema schema, int agents = 2) {
  Derivation d;
  d.agents = agents;
  d.steps.push_back({f, AxiomRule{schema}});
  return d;
}

}  // namespace jck::test
