#include "jck/random.hpp"

#include "jck/error.hpp"

namespace jck {

SyntaxSampler::SyntaxSampler(int agents, std::uint64_t seed, SamplerConfig config)
    : agents_(agents), config_(config), engine_(seed) {
  if (agents < 1) throw InvalidInput("number of agents must be at least 1");
}

std::size_t SyntaxSampler::below(std::size_t n) {
  if (n == 0) throw InvalidInput("empty range");
  return static_cast<std::size_t>(engine_() % n);
}

double SyntaxSampler::unit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

Sort SyntaxSampler::agent_sort() { return Sort::of_agent(static_cast<int>(below(agents_)) + 1); }

Sort SyntaxSampler::sort() {
  const std::size_t k = below(static_cast<std::size_t>(agents_) + 2);
  if (k == 0) return Sort::mutual();
  if (k == 1) return Sort::common();
  return Sort::of_agent(static_cast<int>(k) - 1);
}

Sort SyntaxSampler::star_sort() {
  const std::size_t k = below(static_cast<std::size_t>(agents_) + 1);
  return k == 0 ? Sort::common() : Sort::of_agent(static_cast<int>(k));
}

Term SyntaxSampler::leaf(Sort s) {
  const int index = static_cast<int>(below(static_cast<std::size_t>(config_.max_index))) + 1;
  if (config_.variables && coin()) return Term::variable(index, s);
  return Term::constant(index, s);
}

Term SyntaxSampler::term(Sort s, int depth) {
  if (depth <= 0 || coin(0.3)) return leaf(s);
  const int d = depth - 1;
  switch (s.tag) {
    case Sort::Tag::Agent:
      switch (below(4)) {
        case 0: return Term::bang(term(s, d), s.agent);
        case 1: return Term::sum(term(s, d), term(s, d), s);
        case 2: return Term::app(term(s, d), term(s, d), s);
        default: return Term::proj(s.agent, term(Sort::mutual(), d));
      }
    case Sort::Tag::E:
      switch (below(3)) {
        case 0: {
          std::vector<Term> parts;
          for (int i = 1; i <= agents_; ++i) parts.push_back(term(Sort::of_agent(i), d));
          return Term::tuple(std::move(parts));
        }
        case 1: return Term::head(term(Sort::common(), d));
        default: return Term::tail(term(Sort::common(), d));
      }
    case Sort::Tag::C:
      switch (below(3)) {
        case 0: return Term::sum(term(s, d), term(s, d), s);
        case 1: return Term::app(term(s, d), term(s, d), s);
        default: return Term::ind(term(s, d), term(Sort::mutual(), d));
      }
  }
  return leaf(s);
}

Formula SyntaxSampler::formula(int depth) {
  auto p = [&] { return prop(static_cast<int>(below(static_cast<std::size_t>(config_.max_props))) + 1); };
  if (depth <= 0) return p();
  const int d = depth - 1;
  switch (below(6)) {
    case 0: return p();
    case 1: return neg(formula(d));
    case 2: return conj(formula(d), formula(d));
    case 3: return disj(formula(d), formula(d));
    case 4: return imp(formula(d), formula(d));
    default: {
      const Sort s = sort();
      return just(term(s, d), s, formula(d));
    }
  }
}

Term SyntaxSampler::lph_term(int agent, int depth) {
  const Sort s = Sort::of_agent(agent);
  if (depth <= 0 || coin(0.3)) return leaf(s);
  switch (below(3)) {
    case 0: return Term::bang(lph_term(agent, depth - 1), agent);
    case 1: return Term::sum(lph_term(agent, depth - 1), lph_term(agent, depth - 1), s);
    default: return Term::app(lph_term(agent, depth - 1), lph_term(agent, depth - 1), s);
  }
}

Formula SyntaxSampler::lph_formula(int depth) {
  auto p = [&] { return prop(static_cast<int>(below(static_cast<std::size_t>(config_.max_props))) + 1); };
  if (depth <= 0) return p();
  const int d = depth - 1;
  switch (below(6)) {
    case 0: return p();
    case 1: return neg(lph_formula(d));
    case 2: return conj(lph_formula(d), lph_formula(d));
    case 3: return disj(lph_formula(d), lph_formula(d));
    case 4: return imp(lph_formula(d), lph_formula(d));
    default: {
      const int i = static_cast<int>(below(static_cast<std::size_t>(agents_))) + 1;
      return just(lph_term(i, d), Sort::of_agent(i), lph_formula(d));
    }
  }
}

}  // namespace jck
