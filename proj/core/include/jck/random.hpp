#pragma once

// Seeded generators for terms and formulas. Output depends only on the seed
// and the configuration: the engine is std::mt19937_64, whose sequence is
// fixed by the standard, and all range reductions are done here rather than
// by the implementation-defined std distributions.

#include <cstddef>
#include <cstdint>
#include <random>

#include "jck/syntax.hpp"

namespace jck {

struct SamplerConfig {
  int max_index = 2;  // constants and variables use indices 1..max_index
  int max_props = 3;  // propositions P1..P<max_props>
  bool variables = true;
};

class SyntaxSampler {
 public:
  SyntaxSampler(int agents, std::uint64_t seed, SamplerConfig config = {});

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n).
  std::size_t below(std::size_t n);
  /// Uniform in [0, 1).
  double unit();
  bool coin(double p = 0.5) { return unit() < p; }

  Sort sort();
  Sort star_sort();
  Sort agent_sort();

  /// Well-sorted term of sort `s` with at most `depth` levels of operations.
  Term term(Sort s, int depth);
  /// Leaf (constant or variable) of sort `s`.
  Term leaf(Sort s);
  /// Well-formed formula with at most `depth` levels of connectives.
  Formula formula(int depth);
  /// Formula with no E- or C-sorted terms anywhere.
  Formula lph_formula(int depth);
  Term lph_term(int agent, int depth);

  int agents() const { return agents_; }
  const SamplerConfig& config() const { return config_; }

 private:
  int agents_;
  SamplerConfig config_;
  std::mt19937_64 engine_;
};

}  // namespace jck
