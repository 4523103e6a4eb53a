#include <iostream>

#include <jck/deduction.hpp>
#include <jck/text.hpp>

int main() {
  const jck::Formula a = jck::parse_formula("[x1@1]@1 P1 -> P1", 1);
  const bool ok = !jck::match_axiom(a, 1).empty();
  std::cout << (ok ? "ok" : "not an axiom") << '\n';
  return ok ? 0 : 1;
}
