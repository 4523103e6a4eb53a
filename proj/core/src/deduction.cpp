#include "jck/deduction.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <unordered_map>

#include "jck/error.hpp"
#include "jck/text.hpp"

namespace jck {

std::string_view to_string(AxiomSchema s) {
  switch (s) {
    case AxiomSchema::Taut: return "Taut";
    case AxiomSchema::App: return "App";
    case AxiomSchema::SumL: return "SumL";
    case AxiomSchema::SumR: return "SumR";
    case AxiomSchema::Refl: return "Refl";
    case AxiomSchema::Insp: return "Insp";
    case AxiomSchema::Tupling: return "Tupling";
    case AxiomSchema::Proj: return "Proj";
    case AxiomSchema::CoClosHead: return "CoClosHead";
    case AxiomSchema::CoClosTail: return "CoClosTail";
    case AxiomSchema::Induction: return "Induction";
  }
  return "?";
}

std::optional<AxiomSchema> parse_schema(std::string_view name) {
  auto lower = [](std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
  };
  const std::string key = lower(name);
  for (AxiomSchema s : kAllSchemata)
    if (lower(to_string(s)) == key) return s;
  return std::nullopt;
}

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Accepted: return "Accepted";
    case CheckStatus::Empty: return "Empty";
    case CheckStatus::IllFormed: return "IllFormed";
    case CheckStatus::BadHypIndex: return "BadHypIndex";
    case CheckStatus::NotAnAxiom: return "NotAnAxiom";
    case CheckStatus::BadMP: return "BadMP";
    case CheckStatus::NotInCS: return "NotInCS";
    case CheckStatus::OutsideFragment: return "OutsideFragment";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Tautologies: bit-parallel truth tables, 64 valuations per machine word.

namespace {

struct TruthProgram {
  enum class Op : std::uint8_t { Atom, Not, And, Or, Imp };
  struct Instr {
    Op op;
    std::uint32_t a = 0;  // atom index or operand register
    std::uint32_t b = 0;
  };
  std::vector<Instr> code;
  std::size_t atoms = 0;
};

class TruthCompiler {
 public:
  std::uint32_t compile(const Formula& f, TruthProgram& prog) {
    using Op = TruthProgram::Op;
    switch (f.kind()) {
      case FormulaKind::Prop:
      case FormulaKind::Just: {
        auto [it, fresh] = atoms_.try_emplace(f, atoms_.size());
        prog.code.push_back({Op::Atom, static_cast<std::uint32_t>(it->second), 0});
        return static_cast<std::uint32_t>(prog.code.size() - 1);
      }
      case FormulaKind::Neg: {
        const auto a = compile(f.body(), prog);
        prog.code.push_back({Op::Not, a, 0});
        return static_cast<std::uint32_t>(prog.code.size() - 1);
      }
      default: {
        const auto a = compile(f.lhs(), prog);
        const auto b = compile(f.rhs(), prog);
        const Op op = f.kind() == FormulaKind::And ? Op::And
                      : f.kind() == FormulaKind::Or ? Op::Or
                                                    : Op::Imp;
        prog.code.push_back({op, a, b});
        return static_cast<std::uint32_t>(prog.code.size() - 1);
      }
    }
  }
  std::size_t atom_count() const { return atoms_.size(); }

 private:
  std::unordered_map<Formula, std::size_t, FormulaHash> atoms_;
};

constexpr std::array<std::uint64_t, 6> kLowPatterns = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

}  // namespace

bool is_tautology(const Formula& a, std::size_t atom_cap) {
  TruthProgram prog;
  TruthCompiler compiler;
  compiler.compile(a, prog);
  const std::size_t n = compiler.atom_count();
  if (n > atom_cap)
    throw ResourceError("tautology check needs " + std::to_string(n) +
                        " atoms, above the cap of " + std::to_string(atom_cap));
  const std::uint64_t blocks = n <= 6 ? 1 : (std::uint64_t{1} << (n - 6));
  std::vector<std::uint64_t> reg(prog.code.size());
  for (std::uint64_t block = 0; block < blocks; ++block) {
    for (std::size_t k = 0; k < prog.code.size(); ++k) {
      const auto& in = prog.code[k];
      switch (in.op) {
        case TruthProgram::Op::Atom:
          reg[k] = in.a < 6 ? kLowPatterns[in.a]
                            : (((block >> (in.a - 6)) & 1U) ? ~std::uint64_t{0} : 0);
          break;
        case TruthProgram::Op::Not: reg[k] = ~reg[in.a]; break;
        case TruthProgram::Op::And: reg[k] = reg[in.a] & reg[in.b]; break;
        case TruthProgram::Op::Or: reg[k] = reg[in.a] | reg[in.b]; break;
        case TruthProgram::Op::Imp: reg[k] = ~reg[in.a] | reg[in.b]; break;
      }
    }
    if (reg.back() != ~std::uint64_t{0}) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Structural schemata

namespace {

bool is_imp(const Formula& f) { return f.kind() == FormulaKind::Imp; }
bool is_just(const Formula& f) { return f.kind() == FormulaKind::Just; }

// [t]_* (A -> B) -> ([s]_* A -> [t * s]_* B)
bool match_app(const Formula& f) {
  if (!is_imp(f) || !is_just(f.lhs()) || !is_imp(f.rhs())) return false;
  const Formula& left = f.lhs();
  const Formula& first = f.rhs().lhs();
  const Formula& second = f.rhs().rhs();
  if (!is_imp(left.body()) || !is_just(first) || !is_just(second)) return false;
  const Sort s = left.sort();
  if (!s.is_star() || first.sort() != s || second.sort() != s) return false;
  if (first.body() != left.body().lhs() || second.body() != left.body().rhs()) return false;
  const Term& v = second.term();
  return v.kind() == TermKind::App && v.sort() == s && v.child(0) == left.term() &&
         v.child(1) == first.term();
}

// [t]_* A -> [t + s]_* A  (left) or [s]_* A -> [t + s]_* A  (right)
bool match_sum(const Formula& f, bool left) {
  if (!is_imp(f) || !is_just(f.lhs()) || !is_just(f.rhs())) return false;
  const Sort s = f.lhs().sort();
  if (!s.is_star() || f.rhs().sort() != s || f.lhs().body() != f.rhs().body()) return false;
  const Term& v = f.rhs().term();
  return v.kind() == TermKind::Sum && v.sort() == s && v.child(left ? 0 : 1) == f.lhs().term();
}

// [t]_i A -> A
bool match_refl(const Formula& f) {
  return is_imp(f) && is_just(f.lhs()) && f.lhs().sort().is_agent() &&
         f.lhs().body() == f.rhs();
}

// [t]_i A -> [!t]_i [t]_i A
bool match_insp(const Formula& f) {
  if (!is_imp(f) || !is_just(f.lhs()) || !is_just(f.rhs())) return false;
  const Formula& x = f.lhs();
  const Sort s = x.sort();
  if (!s.is_agent() || f.rhs().sort() != s || f.rhs().body() != x) return false;
  const Term& v = f.rhs().term();
  return v.kind() == TermKind::Bang && v.agent() == s.agent && v.child(0) == x.term();
}

// [t1]_1 A & ... & [th]_h A -> [<t1, ..., th>]_E A, conjunction nested left.
bool match_tupling(const Formula& f, int agents) {
  if (!is_imp(f) || !is_just(f.rhs()) || !f.rhs().sort().is_mutual()) return false;
  const Term& tuple = f.rhs().term();
  if (tuple.kind() != TermKind::Tuple || static_cast<int>(tuple.children().size()) != agents)
    return false;
  const Formula& body = f.rhs().body();
  Formula rest = f.lhs();
  for (int k = agents; k >= 1; --k) {
    Formula conjunct = rest;
    if (k > 1) {
      if (rest.kind() != FormulaKind::And) return false;
      conjunct = rest.rhs();
      rest = rest.lhs();
    }
    if (!is_just(conjunct) || conjunct.sort() != Sort::of_agent(k) || conjunct.body() != body ||
        conjunct.term() != tuple.child(static_cast<std::size_t>(k - 1)))
      return false;
  }
  return true;
}

// [t]_E A -> [pi_i t]_i A
bool match_proj(const Formula& f) {
  if (!is_imp(f) || !is_just(f.lhs()) || !is_just(f.rhs())) return false;
  if (!f.lhs().sort().is_mutual() || !f.rhs().sort().is_agent()) return false;
  if (f.lhs().body() != f.rhs().body()) return false;
  const Term& v = f.rhs().term();
  return v.kind() == TermKind::Proj && v.agent() == f.rhs().sort().agent &&
         v.child(0) == f.lhs().term();
}

// [t]_C A -> [head t]_E A
bool match_head(const Formula& f) {
  if (!is_imp(f) || !is_just(f.lhs()) || !is_just(f.rhs())) return false;
  if (!f.lhs().sort().is_common() || !f.rhs().sort().is_mutual()) return false;
  const Term& v = f.rhs().term();
  return f.lhs().body() == f.rhs().body() && v.kind() == TermKind::Head &&
         v.child(0) == f.lhs().term();
}

// [t]_C A -> [tail t]_E [t]_C A
bool match_tail(const Formula& f) {
  if (!is_imp(f) || !is_just(f.lhs()) || !is_just(f.rhs())) return false;
  if (!f.lhs().sort().is_common() || !f.rhs().sort().is_mutual()) return false;
  const Term& v = f.rhs().term();
  return f.rhs().body() == f.lhs() && v.kind() == TermKind::Tail && v.child(0) == f.lhs().term();
}

// A & [t]_C (A -> [s]_E A) -> [ind(t, s)]_C A
bool match_induction(const Formula& f) {
  if (!is_imp(f) || f.lhs().kind() != FormulaKind::And || !is_just(f.rhs())) return false;
  const Formula& a = f.lhs().lhs();
  const Formula& boxed = f.lhs().rhs();
  const Formula& goal = f.rhs();
  if (!is_just(boxed) || !boxed.sort().is_common() || !goal.sort().is_common()) return false;
  if (goal.body() != a) return false;
  const Formula& step = boxed.body();
  if (!is_imp(step) || step.lhs() != a || !is_just(step.rhs())) return false;
  const Formula& ebox = step.rhs();
  if (!ebox.sort().is_mutual() || ebox.body() != a) return false;
  const Term& v = goal.term();
  return v.kind() == TermKind::Ind && v.child(0) == boxed.term() && v.child(1) == ebox.term();
}

}  // namespace

bool instantiates(const Formula& a, AxiomSchema schema, int agents, std::size_t atom_cap) {
  switch (schema) {
    case AxiomSchema::Taut: return is_tautology(a, atom_cap);
    case AxiomSchema::App: return match_app(a);
    case AxiomSchema::SumL: return match_sum(a, true);
    case AxiomSchema::SumR: return match_sum(a, false);
    case AxiomSchema::Refl: return match_refl(a);
    case AxiomSchema::Insp: return match_insp(a);
    case AxiomSchema::Tupling: return match_tupling(a, agents);
    case AxiomSchema::Proj: return match_proj(a);
    case AxiomSchema::CoClosHead: return match_head(a);
    case AxiomSchema::CoClosTail: return match_tail(a);
    case AxiomSchema::Induction: return match_induction(a);
  }
  return false;
}

std::set<AxiomSchema> match_axiom(const Formula& a, int agents, std::size_t atom_cap) {
  std::set<AxiomSchema> out;
  for (AxiomSchema s : kAllSchemata)
    if (instantiates(a, s, agents, atom_cap)) out.insert(s);
  return out;
}

bool is_lph_term(const Term& t) {
  switch (t.kind()) {
    case TermKind::Const:
    case TermKind::Var:
      return t.sort().is_agent();
    case TermKind::Bang:
      return is_lph_term(t.child(0));
    case TermKind::Sum:
    case TermKind::App:
      return t.sort().is_agent() && is_lph_term(t.child(0)) && is_lph_term(t.child(1));
    default:
      return false;
  }
}

bool is_lph_formula(const Formula& a) {
  switch (a.kind()) {
    case FormulaKind::Prop:
      return true;
    case FormulaKind::Neg:
      return is_lph_formula(a.body());
    case FormulaKind::Just:
      return a.sort().is_agent() && is_lph_term(a.term()) && is_lph_formula(a.body());
    default:
      return is_lph_formula(a.lhs()) && is_lph_formula(a.rhs());
  }
}

// ---------------------------------------------------------------------------
// Constant specifications

ConstantSpecification ConstantSpecification::total_c() {
  ConstantSpecification cs;
  cs.kind_ = Kind::TotalC;
  return cs;
}

ConstantSpecification ConstantSpecification::extensional(std::set<CsEntry> entries, int agents) {
  for (const auto& e : entries) {
    if (e.constant.kind() != TermKind::Const)
      throw InvalidInput("constant specification member `" + print_term(e.constant) +
                         "` is not a constant");
    check_well_formed(e.formula, agents);
    if (match_axiom(e.formula, agents).empty())
      throw InvalidInput("constant specification member for `" + print_term(e.constant) +
                         "` is not an axiom: " + print_formula(e.formula));
  }
  ConstantSpecification cs;
  cs.entries_ = std::move(entries);
  return cs;
}

ConstantSpecification ConstantSpecification::unchecked(std::set<CsEntry> entries) {
  ConstantSpecification cs;
  cs.entries_ = std::move(entries);
  return cs;
}

ConstantSpecification ConstantSpecification::allocated(std::set<CsEntry> entries) {
  ConstantSpecification cs;
  cs.kind_ = Kind::Allocated;
  cs.entries_ = std::move(entries);
  return cs;
}

std::optional<Sort> ConstantSpecification::pure_sort() const {
  if (kind_ == Kind::TotalC || kind_ == Kind::Allocated) return Sort::common();
  std::optional<Sort> s;
  for (const auto& e : entries_) {
    if (s && *s != e.constant.sort()) return std::nullopt;
    s = e.constant.sort();
  }
  return s;
}

bool ConstantSpecification::contains(const Term& constant, Sort sort, const Formula& a,
                                     int agents) const {
  if (constant.kind() != TermKind::Const || constant.sort() != sort) return false;
  if (kind_ == Kind::TotalC) return sort.is_common() && !match_axiom(a, agents).empty();
  return entries_.contains(CsEntry{constant, a});
}

// ---------------------------------------------------------------------------
// Derivations

const Formula& Derivation::conclusion() const {
  if (steps.empty()) throw InvalidInput("derivation has no steps");
  return steps.back().formula;
}

namespace {

CheckReport reject(CheckStatus status, std::size_t step, std::string reason) {
  return CheckReport{status, step, std::move(reason)};
}

bool schema_in_fragment(AxiomSchema s) {
  switch (s) {
    case AxiomSchema::Taut:
    case AxiomSchema::App:
    case AxiomSchema::SumL:
    case AxiomSchema::SumR:
    case AxiomSchema::Refl:
    case AxiomSchema::Insp:
      return true;
    default:
      return false;
  }
}

}  // namespace

CheckReport check_derivation(const Derivation& d, const ConstantSpecification& cs,
                             const CheckOptions& options) {
  if (d.agents < 1) return reject(CheckStatus::IllFormed, 0, "number of agents must be >= 1");
  for (std::size_t k = 0; k < d.hypotheses.size(); ++k) {
    try {
      check_well_formed(d.hypotheses[k], d.agents);
    } catch (const SortError& e) {
      return reject(CheckStatus::IllFormed, 0,
                    "hypothesis " + std::to_string(k + 1) + ": " + e.what());
    }
  }
  if (d.steps.empty()) return reject(CheckStatus::Empty, 0, "derivation has no steps");

  const bool lph = options.fragment == Fragment::LPh;
  for (std::size_t k = 0; k < d.steps.size(); ++k) {
    const std::size_t no = k + 1;
    const Step& step = d.steps[k];
    try {
      check_well_formed(step.formula, d.agents);
    } catch (const SortError& e) {
      return reject(CheckStatus::IllFormed, no, e.what());
    }
    if (lph && !is_lph_formula(step.formula))
      return reject(CheckStatus::OutsideFragment, no, "formula mentions E or C evidence");

    if (const auto* h = std::get_if<HypRule>(&step.rule)) {
      if (h->index < 1 || h->index > d.hypotheses.size())
        return reject(CheckStatus::BadHypIndex, no,
                      "no hypothesis number " + std::to_string(h->index));
      if (d.hypotheses[h->index - 1] != step.formula)
        return reject(CheckStatus::BadHypIndex, no,
                      "formula differs from hypothesis " + std::to_string(h->index));
    } else if (const auto* ax = std::get_if<AxiomRule>(&step.rule)) {
      if (lph && !schema_in_fragment(ax->schema))
        return reject(CheckStatus::OutsideFragment, no,
                      std::string(to_string(ax->schema)) + " is not an LP_h axiom");
      bool ok = false;
      try {
        ok = instantiates(step.formula, ax->schema, d.agents, options.atom_cap);
      } catch (const ResourceError& e) {
        return reject(CheckStatus::NotAnAxiom, no, e.what());
      }
      if (!ok)
        return reject(CheckStatus::NotAnAxiom, no,
                      "not an instance of " + std::string(to_string(ax->schema)));
    } else if (const auto* mp = std::get_if<MpRule>(&step.rule)) {
      if (mp->major < 1 || mp->major >= no || mp->minor < 1 || mp->minor >= no)
        return reject(CheckStatus::BadMP, no, "premises must be earlier steps");
      const Formula& major = d.steps[mp->major - 1].formula;
      const Formula& minor = d.steps[mp->minor - 1].formula;
      if (major.kind() != FormulaKind::Imp)
        return reject(CheckStatus::BadMP, no,
                      "step " + std::to_string(mp->major) + " is not an implication");
      if (major.lhs() != minor)
        return reject(CheckStatus::BadMP, no,
                      "antecedent of step " + std::to_string(mp->major) + " differs from step " +
                          std::to_string(mp->minor));
      if (major.rhs() != step.formula)
        return reject(CheckStatus::BadMP, no, "consequent differs from the step formula");
    } else {
      const auto& nec = std::get<AxNecRule>(step.rule);
      if (step.formula.kind() != FormulaKind::Just || step.formula.term() != nec.constant)
        return reject(CheckStatus::NotInCS, no,
                      "formula is not justified by " + print_term(nec.constant));
      if (!cs.contains(nec.constant, step.formula.sort(), step.formula.body(), d.agents))
        return reject(CheckStatus::NotInCS, no,
                      "[" + print_term(nec.constant) + "]@" + to_string(step.formula.sort()) +
                          " " + print_formula(step.formula.body()) +
                          " is not in the constant specification");
    }
  }
  return CheckReport{};
}

Derivation deduction_theorem(const Derivation& d, std::size_t hypothesis,
                             const ConstantSpecification& cs) {
  if (hypothesis < 1 || hypothesis > d.hypotheses.size())
    throw InvalidInput("no hypothesis number " + std::to_string(hypothesis));
  if (auto report = check_derivation(d, cs); !report)
    throw InvalidInput("input derivation rejected at step " + std::to_string(report.step) +
                       ": " + report.reason);

  const Formula a = d.hypotheses[hypothesis - 1];
  Derivation out;
  out.agents = d.agents;
  for (std::size_t k = 0; k < d.hypotheses.size(); ++k)
    if (k + 1 != hypothesis) out.hypotheses.push_back(d.hypotheses[k]);

  auto emit = [&](Formula f, Rule r) {
    out.steps.push_back(Step{std::move(f), std::move(r)});
    return out.steps.size();
  };

  // proves[k] = output step proving a -> (formula of input step k + 1).
  std::vector<std::size_t> proves;
  proves.reserve(d.steps.size());
  for (const Step& step : d.steps) {
    const Formula& f = step.formula;
    const auto* h = std::get_if<HypRule>(&step.rule);
    if (h != nullptr && h->index == hypothesis) {
      proves.push_back(emit(imp(a, a), AxiomRule{AxiomSchema::Taut}));
      continue;
    }
    if (const auto* mp = std::get_if<MpRule>(&step.rule)) {
      const Formula& major = d.steps[mp->major - 1].formula;  // X -> Y
      const Formula& x = major.lhs();
      const Formula dist = imp(imp(a, major), imp(imp(a, x), imp(a, f)));
      const std::size_t taut = emit(dist, AxiomRule{AxiomSchema::Taut});
      const std::size_t half = emit(imp(imp(a, x), imp(a, f)), MpRule{taut, proves[mp->major - 1]});
      proves.push_back(emit(imp(a, f), MpRule{half, proves[mp->minor - 1]}));
      continue;
    }
    Rule r = step.rule;
    if (h != nullptr) r = HypRule{h->index < hypothesis ? h->index : h->index - 1};
    const std::size_t orig = emit(f, std::move(r));
    const std::size_t weak = emit(imp(f, imp(a, f)), AxiomRule{AxiomSchema::Taut});
    proves.push_back(emit(imp(a, f), MpRule{weak, orig}));
  }
  return out;
}

}  // namespace jck
