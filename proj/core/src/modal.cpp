#include "jck/modal.hpp"

#include <algorithm>
#include <stdexcept>

#include "jck/error.hpp"
#include "jck/random.hpp"
#include "jck/synthesis.hpp"
#include "lexer.hpp"

namespace jck {

struct ModalFormula::Node {
  ModalKind kind;
  int index = 0;  // proposition index or agent
  std::optional<ModalFormula> a, b;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

ModalFormula ModalFormula::prop(int index) {
  if (index < 1) throw InvalidInput("proposition index must be positive");
  auto n = std::make_shared<Node>(Node{ModalKind::Prop, index, std::nullopt, std::nullopt, 0});
  n->hash = mix(1, static_cast<std::size_t>(index));
  return ModalFormula(std::move(n));
}

namespace {

std::shared_ptr<ModalFormula::Node> make(ModalKind k, int index, ModalFormula a,
                                         std::optional<ModalFormula> b) {
  auto n = std::make_shared<ModalFormula::Node>();
  n->kind = k;
  n->index = index;
  std::size_t h = mix(static_cast<std::size_t>(k) + 17, static_cast<std::size_t>(index));
  h = mix(h, a.hash());
  if (b) h = mix(h, b->hash());
  n->a = std::move(a);
  n->b = std::move(b);
  n->hash = h;
  return n;
}

}  // namespace

ModalFormula ModalFormula::negation(ModalFormula a) {
  return ModalFormula(make(ModalKind::Neg, 0, std::move(a), std::nullopt));
}
ModalFormula ModalFormula::conjunction(ModalFormula a, ModalFormula b) {
  return ModalFormula(make(ModalKind::And, 0, std::move(a), std::move(b)));
}
ModalFormula ModalFormula::disjunction(ModalFormula a, ModalFormula b) {
  return ModalFormula(make(ModalKind::Or, 0, std::move(a), std::move(b)));
}
ModalFormula ModalFormula::implication(ModalFormula a, ModalFormula b) {
  return ModalFormula(make(ModalKind::Imp, 0, std::move(a), std::move(b)));
}
ModalFormula ModalFormula::box(int agent, ModalFormula a) {
  if (agent < 1) throw InvalidInput("agent index must be positive");
  return ModalFormula(make(ModalKind::Box, agent, std::move(a), std::nullopt));
}
ModalFormula ModalFormula::every(ModalFormula a) {
  return ModalFormula(make(ModalKind::Every, 0, std::move(a), std::nullopt));
}
ModalFormula ModalFormula::common(ModalFormula a) {
  return ModalFormula(make(ModalKind::Common, 0, std::move(a), std::nullopt));
}

ModalKind ModalFormula::kind() const { return node_->kind; }
int ModalFormula::prop_index() const { return node_->kind == ModalKind::Prop ? node_->index : 0; }
int ModalFormula::agent() const { return node_->kind == ModalKind::Box ? node_->index : 0; }
std::size_t ModalFormula::hash() const { return node_->hash; }
const ModalFormula& ModalFormula::lhs() const {
  if (!node_->a) throw InvalidInput("modal formula has no subformula");
  return *node_->a;
}
const ModalFormula& ModalFormula::rhs() const {
  if (!node_->b) throw InvalidInput("modal formula has no right subformula");
  return *node_->b;
}

bool operator==(const ModalFormula& x, const ModalFormula& y) {
  if (x.node_ == y.node_) return true;
  const auto& a = *x.node_;
  const auto& b = *y.node_;
  return a.hash == b.hash && a.kind == b.kind && a.index == b.index && a.a == b.a && a.b == b.b;
}

// ---------------------------------------------------------------------------
// Text

namespace {

using detail::Lexer;
using detail::Tok;

class ModalParser {
 public:
  ModalParser(std::string_view text, int agents, const Names* names)
      : lex_(text, 0), agents_(agents), names_(names) {}

  ModalFormula parse() {
    ModalFormula a = formula();
    if (lex_.peek().kind != Tok::End) lex_.fail("unexpected input after formula");
    return a;
  }

 private:
  ModalFormula formula() {
    ModalFormula a = disjunction();
    if (lex_.accept(Tok::Arrow)) return ModalFormula::implication(std::move(a), formula());
    return a;
  }
  ModalFormula disjunction() {
    ModalFormula a = conjunction();
    while (lex_.accept(Tok::Bar)) a = ModalFormula::disjunction(std::move(a), conjunction());
    return a;
  }
  ModalFormula conjunction() {
    ModalFormula a = unary();
    while (lex_.accept(Tok::Amp)) a = ModalFormula::conjunction(std::move(a), unary());
    return a;
  }
  ModalFormula unary() {
    const detail::Token tok = lex_.peek();
    switch (tok.kind) {
      case Tok::Tilde:
        lex_.next();
        return ModalFormula::negation(unary());
      case Tok::Hash: {
        lex_.next();
        const detail::Token m = lex_.next();
        if (m.kind == Tok::Number) {
          const int i = detail::to_int(m);
          if (i < 1 || i > agents_)
            throw ParseError(m.pos, "agent " + std::to_string(i) + " out of range 1.." +
                                        std::to_string(agents_));
          return ModalFormula::box(i, unary());
        }
        if (m.kind == Tok::Ident && m.text == "E") return ModalFormula::every(unary());
        if (m.kind == Tok::Ident && m.text == "C") return ModalFormula::common(unary());
        throw ParseError(m.pos, "expected an agent, `E` or `C` after `#`");
      }
      case Tok::LParen: {
        lex_.next();
        ModalFormula a = formula();
        lex_.expect(Tok::RParen, "`)`");
        return a;
      }
      case Tok::Ident: {
        lex_.next();
        if (const int k = detail::indexed_name(tok.text, "P"); k >= 1) return ModalFormula::prop(k);
        if (names_ != nullptr) {
          if (auto it = names_->props.find(std::string(tok.text)); it != names_->props.end())
            return ModalFormula::prop(it->second);
        }
        throw ParseError(tok.pos, "unknown proposition `" + std::string(tok.text) + "`");
      }
      default:
        lex_.fail("expected a modal formula");
    }
  }

  Lexer lex_;
  int agents_;
  const Names* names_;
};

int level(const ModalFormula& a) {
  switch (a.kind()) {
    case ModalKind::Imp: return 0;
    case ModalKind::Or: return 1;
    case ModalKind::And: return 2;
    default: return 3;
  }
}

void print_into(const ModalFormula& a, const Names* names, std::string& out);

void print_at(const ModalFormula& a, int min_level, const Names* names, std::string& out) {
  if (level(a) < min_level) {
    out += '(';
    print_into(a, names, out);
    out += ')';
  } else {
    print_into(a, names, out);
  }
}

void print_into(const ModalFormula& a, const Names* names, std::string& out) {
  switch (a.kind()) {
    case ModalKind::Prop: {
      std::optional<std::string> alias;
      if (names != nullptr) alias = names->prop_name(a.prop_index());
      out += alias ? *alias : "P" + std::to_string(a.prop_index());
      return;
    }
    case ModalKind::Neg:
      out += '~';
      print_at(a.body(), 3, names, out);
      return;
    case ModalKind::And:
      print_at(a.lhs(), 2, names, out);
      out += " & ";
      print_at(a.rhs(), 3, names, out);
      return;
    case ModalKind::Or:
      print_at(a.lhs(), 1, names, out);
      out += " | ";
      print_at(a.rhs(), 2, names, out);
      return;
    case ModalKind::Imp:
      print_at(a.lhs(), 1, names, out);
      out += " -> ";
      print_at(a.rhs(), 0, names, out);
      return;
    case ModalKind::Box:
      out += '#' + std::to_string(a.agent()) + ' ';
      print_at(a.body(), 3, names, out);
      return;
    case ModalKind::Every:
      out += "#E ";
      print_at(a.body(), 3, names, out);
      return;
    case ModalKind::Common:
      out += "#C ";
      print_at(a.body(), 3, names, out);
      return;
  }
}

}  // namespace

ModalFormula parse_modal(std::string_view text, int agents, const Names* names) {
  return ModalParser(text, agents, names).parse();
}

std::string print_modal(const ModalFormula& a, const Names* names) {
  std::string out;
  print_into(a, names, out);
  return out;
}

// ---------------------------------------------------------------------------
// Projections

ModalFormula forgetful(const Formula& a) {
  switch (a.kind()) {
    case FormulaKind::Prop: return ModalFormula::prop(a.prop_index());
    case FormulaKind::Neg: return ModalFormula::negation(forgetful(a.body()));
    case FormulaKind::And: return ModalFormula::conjunction(forgetful(a.lhs()), forgetful(a.rhs()));
    case FormulaKind::Or: return ModalFormula::disjunction(forgetful(a.lhs()), forgetful(a.rhs()));
    case FormulaKind::Imp: return ModalFormula::implication(forgetful(a.lhs()), forgetful(a.rhs()));
    case FormulaKind::Just: {
      const Sort s = a.sort();
      if (s.is_mutual()) return ModalFormula::every(forgetful(a.body()));
      if (s.is_common()) return ModalFormula::common(forgetful(a.body()));
      return ModalFormula::box(s.agent, forgetful(a.body()));
    }
  }
  throw std::logic_error("forgetful: unknown formula kind");
}

bool realizes(const Formula& r, const ModalFormula& a) { return forgetful(r) == a; }

Formula conservative_projection(const Formula& a) {
  switch (a.kind()) {
    case FormulaKind::Prop: return a;
    case FormulaKind::Neg: return neg(conservative_projection(a.body()));
    case FormulaKind::And:
      return conj(conservative_projection(a.lhs()), conservative_projection(a.rhs()));
    case FormulaKind::Or:
      return disj(conservative_projection(a.lhs()), conservative_projection(a.rhs()));
    case FormulaKind::Imp:
      return imp(conservative_projection(a.lhs()), conservative_projection(a.rhs()));
    case FormulaKind::Just:
      if (!is_lph_term(a.term())) return conservative_projection(a.body());
      return just(a.term(), a.sort(), conservative_projection(a.body()));
  }
  throw std::logic_error("conservative_projection: unknown formula kind");
}

namespace {

constexpr AxiomSchema kLphSchemata[] = {AxiomSchema::App, AxiomSchema::SumL, AxiomSchema::SumR,
                                        AxiomSchema::Refl, AxiomSchema::Insp};

std::optional<AxiomSchema> lph_axiom_schema(const Formula& x, int agents) {
  if (!is_lph_formula(x)) return std::nullopt;
  if (is_tautology(x)) return AxiomSchema::Taut;
  for (AxiomSchema s : kLphSchemata)
    if (instantiates(x, s, agents)) return s;
  return std::nullopt;
}

void collect_boxes(const Formula& a, std::vector<Formula>& out) {
  switch (a.kind()) {
    case FormulaKind::Prop: return;
    case FormulaKind::Neg: collect_boxes(a.body(), out); return;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp:
      collect_boxes(a.lhs(), out);
      collect_boxes(a.rhs(), out);
      return;
    case FormulaKind::Just:
      if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
      return;
  }
}

// Proves the ×-image of the axiom instance `d`. Images that are neither
// tautologies nor LP_h axioms (application with only the left term erased,
// tupling with no term erased) follow propositionally from reflexivity
// instances for the boxes they still contain.
ProofBuilder::StepRef translate_axiom(ProofBuilder& pb, const Formula& d) {
  const Formula x = conservative_projection(d);
  if (auto s = lph_axiom_schema(x, pb.agents())) return pb.axiom(*s, x);
  std::vector<Formula> boxes;
  collect_boxes(x, boxes);
  std::vector<ProofBuilder::StepRef> refl;
  for (const auto& b : boxes) refl.push_back(pb.axiom(AxiomSchema::Refl, imp(b, b.body())));
  return pb.tautology(std::span<const ProofBuilder::StepRef>(refl), x);
}

}  // namespace

ConstantSpecification conservative_specification(const ConstantSpecification& cs) {
  std::set<CsEntry> out;
  if (cs.kind() == ConstantSpecification::Kind::TotalC) return ConstantSpecification::unchecked({});
  for (const auto& e : cs.entries())
    if (e.constant.sort().is_agent()) out.insert({e.constant, conservative_projection(e.formula)});
  return ConstantSpecification::unchecked(std::move(out));
}

TranslatedDerivation translate_derivation_x(const Derivation& d, const ConstantSpecification& cs) {
  if (!d.hypotheses.empty()) throw InvalidInput("translation needs a hypothesis-free derivation");
  if (const auto report = check_derivation(d, cs); !report)
    throw InvalidInput("derivation rejected at step " + std::to_string(report.step) + ": " +
                       report.reason);

  TranslatedDerivation out;
  out.cs = conservative_specification(cs);
  for (const auto& e : out.cs.entries())
    if (!lph_axiom_schema(e.formula, d.agents)) out.non_axiom_members.push_back(e);

  ProofBuilder pb(d.agents);
  std::vector<ProofBuilder::StepRef> at;
  at.reserve(d.steps.size());
  for (const Step& step : d.steps) {
    if (std::get_if<AxiomRule>(&step.rule) != nullptr) {
      at.push_back(translate_axiom(pb, step.formula));
    } else if (const auto* m = std::get_if<MpRule>(&step.rule)) {
      at.push_back(pb.mp(at[m->major - 1], at[m->minor - 1]));
    } else if (const auto* n = std::get_if<AxNecRule>(&step.rule)) {
      const Formula& body = step.formula.body();
      if (n->constant.sort().is_agent())
        at.push_back(pb.axnec(n->constant, conservative_projection(body)));
      else
        at.push_back(translate_axiom(pb, body));
    } else {
      throw std::logic_error("translate_derivation_x: hypothesis step in a checked derivation");
    }
  }
  out.derivation = std::move(pb).finish(at.back());
  const auto report = check_derivation(out.derivation, out.cs, {.fragment = Fragment::LPh});
  if (!report)
    throw std::logic_error("translate_derivation_x produced a rejected derivation at step " +
                           std::to_string(report.step) + ": " + report.reason);
  if (out.derivation.conclusion() != conservative_projection(d.conclusion()))
    throw std::logic_error("translate_derivation_x: conclusion mismatch");
  return out;
}

// ---------------------------------------------------------------------------
// Kripke models

bool KripkeModel::holds(int prop, World w) const {
  auto it = valuation.find(prop);
  return it != valuation.end() && it->second.contains(w);
}

KripkeModel kripke_from(const AFModel& m) {
  return KripkeModel{m.agents, m.world_names, m.relations, m.valuation};
}

KripkeModel read_kripke_model(std::string_view text) {
  LoadedModel loaded = read_model(text);
  if (!loaded.model.evidence_base.empty())
    throw ParseError(0, "Kripke model files have no evidence lines");
  return kripke_from(loaded.model);
}

std::string write_kripke_model(const KripkeModel& k, const Names* names) {
  AFModel m;
  m.agents = k.agents;
  m.world_names = k.world_names;
  m.relations = k.relations;
  m.valuation = k.valuation;
  if (names != nullptr) m.names = *names;
  std::string text = write_model(m);
  // Drop the evidence-only `mode:` line.
  const auto pos = text.find("mode: ");
  if (pos != std::string::npos) text.erase(pos, text.find('\n', pos) - pos + 1);
  return text;
}

namespace {

using Adjacency = std::vector<std::vector<World>>;

Adjacency adjacency(const Relation& r, std::size_t n) {
  Adjacency adj(n);
  for (const auto& [a, b] : r)
    if (a < n && b < n) adj[a].push_back(b);
  return adj;
}

class KripkeEvaluator {
 public:
  explicit KripkeEvaluator(const KripkeModel& k) : k_(k), n_(k.world_count()) {
    Relation e;
    for (const auto& r : k.relations) {
      agent_.push_back(adjacency(r, n_));
      e.insert(r.begin(), r.end());
    }
    every_ = adjacency(e, n_);
    common_ = adjacency(transitive_closure(e, n_), n_);
  }

  std::vector<char> eval(const ModalFormula& a) const {
    std::vector<char> out(n_, 0);
    switch (a.kind()) {
      case ModalKind::Prop:
        for (World w = 0; w < n_; ++w) out[w] = k_.holds(a.prop_index(), w);
        return out;
      case ModalKind::Neg: {
        const auto x = eval(a.body());
        for (World w = 0; w < n_; ++w) out[w] = !x[w];
        return out;
      }
      case ModalKind::And:
      case ModalKind::Or:
      case ModalKind::Imp: {
        const auto x = eval(a.lhs());
        const auto y = eval(a.rhs());
        for (World w = 0; w < n_; ++w) {
          if (a.is(ModalKind::And)) out[w] = x[w] && y[w];
          else if (a.is(ModalKind::Or)) out[w] = x[w] || y[w];
          else out[w] = !x[w] || y[w];
        }
        return out;
      }
      case ModalKind::Box:
      case ModalKind::Every:
      case ModalKind::Common: {
        const Adjacency* succ = &every_;
        if (a.is(ModalKind::Common)) succ = &common_;
        if (a.is(ModalKind::Box)) {
          if (a.agent() > static_cast<int>(agent_.size()))
            throw InvalidInput("no relation for agent " + std::to_string(a.agent()));
          succ = &agent_[static_cast<std::size_t>(a.agent() - 1)];
        }
        const auto x = eval(a.body());
        for (World w = 0; w < n_; ++w)
          out[w] = std::all_of((*succ)[w].begin(), (*succ)[w].end(),
                               [&](World v) { return x[v] != 0; });
        return out;
      }
    }
    return out;
  }

 private:
  const KripkeModel& k_;
  std::size_t n_;
  std::vector<Adjacency> agent_;
  Adjacency every_, common_;
};

int max_prop(const ModalFormula& a) {
  switch (a.kind()) {
    case ModalKind::Prop: return a.prop_index();
    case ModalKind::And:
    case ModalKind::Or:
    case ModalKind::Imp: return std::max(max_prop(a.lhs()), max_prop(a.rhs()));
    default: return max_prop(a.body());
  }
}

}  // namespace

std::set<World> kripke_satisfying_worlds(const KripkeModel& k, const ModalFormula& a) {
  const auto v = KripkeEvaluator(k).eval(a);
  std::set<World> out;
  for (World w = 0; w < v.size(); ++w)
    if (v[w]) out.insert(w);
  return out;
}

bool kripke_satisfies(const KripkeModel& k, World w, const ModalFormula& a) {
  if (w >= k.world_count()) throw UnknownWorld("world index " + std::to_string(w));
  return KripkeEvaluator(k).eval(a)[w] != 0;
}

KripkeModel random_kripke_model(int agents, std::size_t worlds, double density, int max_props,
                                std::uint64_t seed) {
  RandomModelParams params;
  params.agents = agents;
  params.worlds = worlds;
  params.density = density;
  params.max_props = max_props;
  params.seed = seed;
  return kripke_from(random_model(params));
}

ProbeReport modal_validity_probe(const ModalFormula& a, int agents, std::size_t trials,
                                 std::uint64_t seed) {
  SyntaxSampler rng(agents, seed);
  const int props = std::max(1, max_prop(a));
  ProbeReport report;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t worlds = 1 + rng.below(5);
    const double density = 0.2 + 0.6 * rng.unit();
    KripkeModel k = random_kripke_model(agents, worlds, density, props, rng.next());
    ++report.trials;
    const auto v = KripkeEvaluator(k).eval(a);
    for (World w = 0; w < v.size(); ++w)
      if (!v[w]) {
        report.counterexample = std::move(k);
        report.world = w;
        return report;
      }
  }
  return report;
}

ProbeReport forgetful_soundness_probe(const Derivation& d, std::size_t trials, std::uint64_t seed) {
  if (!d.hypotheses.empty()) throw InvalidInput("probe needs a hypothesis-free derivation");
  return modal_validity_probe(forgetful(d.conclusion()), d.agents, trials, seed);
}

}  // namespace jck

std::size_t std::hash<jck::ModalFormula>::operator()(const jck::ModalFormula& a) const noexcept {
  return a.hash();
}
