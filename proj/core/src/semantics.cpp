#include "jck/semantics.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <filesystem>
#include <regex>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "jck/derivation_io.hpp"
#include "jck/error.hpp"
#include "jck/random.hpp"

namespace jck {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      out.push_back(text.substr(start));
      break;
    }
    out.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

int parse_int(std::string_view s, std::size_t line) {
  s = trim(s);
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size())
    throw ParseError(line, "line " + std::to_string(line) + ": expected a number, found `" +
                               std::string(s) + "`");
  return v;
}

using Adjacency = std::vector<std::vector<World>>;

Adjacency successors(const Relation& r, std::size_t n) {
  Adjacency adj(n);
  for (const auto& [a, b] : r)
    if (a < n && b < n) adj[a].push_back(b);
  return adj;
}

}  // namespace

World AFModel::world(const std::string& name) const {
  for (World w = 0; w < world_names.size(); ++w)
    if (world_names[w] == name) return w;
  throw UnknownWorld("unknown world `" + name + "`");
}

bool AFModel::holds(int prop, World w) const {
  auto it = valuation.find(prop);
  return it != valuation.end() && it->second.contains(w);
}

ValidationReport validate_model(const AFModel& m) {
  ValidationReport report;
  auto issue = [&](std::string s) { report.issues.push_back(std::move(s)); };
  const std::size_t n = m.world_count();
  if (m.agents < 1) issue("number of agents must be at least 1");
  if (n == 0) issue("the set of worlds is empty");
  {
    std::set<std::string> seen;
    for (const auto& name : m.world_names)
      if (!seen.insert(name).second) issue("duplicate world name `" + name + "`");
  }
  if (m.relations.size() != static_cast<std::size_t>(std::max(m.agents, 0)))
    issue("expected " + std::to_string(m.agents) + " relations, found " +
          std::to_string(m.relations.size()));
  for (std::size_t i = 0; i < m.relations.size(); ++i) {
    const Relation& r = m.relations[i];
    const std::string label = "R_" + std::to_string(i + 1);
    bool in_range = true;
    for (const auto& [a, b] : r)
      if (a >= n || b >= n) {
        issue(label + " mentions a world outside the model");
        in_range = false;
        break;
      }
    if (!in_range) continue;
    for (World w = 0; w < n; ++w)
      if (!r.contains({w, w})) {
        issue(label + " is not reflexive at " + m.world_names[w]);
        break;
      }
    bool transitive = true;
    for (const auto& [a, b] : r) {
      for (auto it = r.lower_bound({b, 0}); it != r.end() && it->first == b; ++it)
        if (!r.contains({a, it->second})) {
          issue(label + " is not transitive: (" + m.world_names[a] + "," + m.world_names[b] +
                ") and (" + m.world_names[b] + "," + m.world_names[it->second] + ")");
          transitive = false;
          break;
        }
      if (!transitive) break;
    }
  }
  for (const auto& [p, ws] : m.valuation)
    for (World w : ws)
      if (w >= n) issue("valuation of P" + std::to_string(p) + " mentions an unknown world");
  for (const auto& f : m.evidence_base) {
    if (f.world >= n) issue("evidence fact at an unknown world");
    try {
      sort_of(f.term, m.agents);
      check_well_formed(f.formula, m.agents);
    } catch (const SortError& e) {
      issue(std::string("ill-sorted evidence fact: ") + e.what());
    }
  }
  return report;
}

Relation transitive_closure(const Relation& r, std::size_t n) {
  std::vector<std::vector<char>> m(n, std::vector<char>(n, 0));
  for (const auto& [a, b] : r)
    if (a < n && b < n) m[a][b] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (m[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (m[k][j]) m[i][j] = 1;
  Relation out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m[i][j]) out.insert({i, j});
  return out;
}

Relation reflexive_transitive_closure(const Relation& r, std::size_t n) {
  Relation with_refl = r;
  for (World w = 0; w < n; ++w) with_refl.insert({w, w});
  return transitive_closure(with_refl, n);
}

Relation reach_e(const AFModel& m) {
  Relation out;
  for (const auto& r : m.relations) out.insert(r.begin(), r.end());
  return out;
}

Relation reach_c(const AFModel& m) { return transitive_closure(reach_e(m), m.world_count()); }

Relation relation_for(const AFModel& m, Sort sort) {
  switch (sort.tag) {
    case Sort::Tag::Agent:
      if (sort.agent < 1 || sort.agent > static_cast<int>(m.relations.size()))
        throw InvalidInput("no relation for agent " + std::to_string(sort.agent));
      return m.relations[static_cast<std::size_t>(sort.agent - 1)];
    case Sort::Tag::E: return reach_e(m);
    case Sort::Tag::C: return reach_c(m);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Universe

SaturationUniverse build_universe(const AFModel& m, const Formula& query, int depth_budget,
                                  const UniverseLimits& limits) {
  SaturationUniverse u;
  u.depth_budget = depth_budget;

  auto check = [&] {
    if (u.terms.size() > limits.max_terms)
      throw ResourceError("saturation universe exceeds " + std::to_string(limits.max_terms) +
                          " terms");
    if (u.formulas.size() > limits.max_formulas)
      throw ResourceError("saturation universe exceeds " +
                          std::to_string(limits.max_formulas) + " formulas");
  };
  auto add_formula = [&](const Formula& a) {
    if (u.formulas.contains(a)) return;
    for (const auto& f : subformulas(a)) u.formulas.insert(f);
  };
  auto add_terms_of = [&](const Formula& a) {
    for (const auto& t : terms_of(a))
      for (const auto& s : subterms(t)) u.terms.insert(s);
  };

  add_formula(query);
  add_terms_of(query);
  for (const auto& f : m.evidence_base) {
    for (const auto& s : subterms(f.term)) u.terms.insert(s);
    add_formula(f.formula);
    add_terms_of(f.formula);
  }
  if (m.cs.kind() != ConstantSpecification::Kind::TotalC) {
    for (const auto& e : m.cs.entries())
      if (u.terms.contains(e.constant)) add_formula(e.formula);
  }
  check();

  std::vector<Term> c_terms, bangs, inds;
  for (const auto& t : u.terms) {
    if (t.kind() == TermKind::Tail) c_terms.push_back(t.child(0));
    if (t.kind() == TermKind::Bang) bangs.push_back(t);
    if (t.kind() == TermKind::Ind) inds.push_back(t);
  }
  for (int round = 0; round < depth_budget; ++round) {
    const std::vector<Formula> current(u.formulas.begin(), u.formulas.end());
    std::vector<Formula> fresh;
    for (const auto& a : current) {
      // co-closure tail: tail(t) is evidence for [t]@C A
      for (const auto& t : c_terms) fresh.push_back(just(t, Sort::common(), a));
      // inspection: !i(t) is evidence for [t]@i A
      for (const auto& b : bangs) fresh.push_back(just(b.child(0), b.child(0).sort(), a));
      // induction premise A -> [s]@E A
      for (const auto& d : inds) fresh.push_back(imp(a, just(d.child(1), Sort::mutual(), a)));
    }
    const std::size_t before = u.formulas.size();
    for (const auto& f : fresh) {
      add_formula(f);
      if (u.formulas.size() > limits.max_formulas) check();
    }
    check();
    if (u.formulas.size() == before) break;
  }
  return u;
}

// ---------------------------------------------------------------------------
// Saturation: semi-naive propagation over interned terms and formulas.

namespace {

class Saturator {
 public:
  Saturator(const AFModel& m, const SaturationUniverse& u) : m_(m), n_(m.world_count()) {
    terms_.assign(u.terms.begin(), u.terms.end());
    formulas_.assign(u.formulas.begin(), u.formulas.end());
    for (std::uint32_t i = 0; i < terms_.size(); ++i) term_id_.emplace(terms_[i], i);
    for (std::uint32_t i = 0; i < formulas_.size(); ++i) formula_id_.emplace(formulas_[i], i);

    children_.resize(terms_.size());
    parents_.resize(terms_.size());
    for (std::uint32_t i = 0; i < terms_.size(); ++i)
      for (const auto& c : terms_[i].children()) {
        const std::uint32_t cid = term_id_.at(c);
        children_[i].push_back(cid);
        if (std::find(parents_[cid].begin(), parents_[cid].end(), i) == parents_[cid].end())
          parents_[cid].push_back(i);
      }

    imp_by_lhs_.resize(formulas_.size());
    for (std::uint32_t i = 0; i < formulas_.size(); ++i) {
      const Formula& f = formulas_[i];
      if (f.is(FormulaKind::Imp)) {
        const std::uint32_t l = formula_id_.at(f.lhs());
        imp_by_lhs_[l].push_back(i);
        imp_index_.emplace(pair_key(l, formula_id_.at(f.rhs())), i);
      } else if (f.is(FormulaKind::Just)) {
        auto t = term_id_.find(f.term());
        if (t != term_id_.end())
          just_index_.emplace(just_key(t->second, f.sort(), formula_id_.at(f.body())), i);
      }
    }

    const Relation re = reach_e(m);
    succ_c_ = successors(transitive_closure(re, n_), n_);
    for (const auto& r : m.relations) succ_agent_.push_back(successors(r, n_));

    by_wt_.resize(n_ * terms_.size());
  }

  std::set<EvidenceFact> run() {
    seed();
    while (!queue_.empty()) {
      const auto [w, t, a] = queue_.front();
      queue_.pop_front();
      propagate(w, t, a);
    }
    std::set<EvidenceFact> out;
    for (std::size_t w = 0; w < n_; ++w)
      for (std::uint32_t t = 0; t < terms_.size(); ++t)
        for (std::uint32_t a : by_wt_[w * terms_.size() + t])
          out.insert({w, terms_[t], formulas_[a]});
    return out;
  }

 private:
  struct Item {
    World w;
    std::uint32_t t;
    std::uint32_t a;
  };

  static std::uint64_t pair_key(std::uint64_t a, std::uint64_t b) { return (a << 32) | b; }
  static std::uint64_t just_key(std::uint64_t t, Sort s, std::uint64_t a) {
    const std::uint64_t sc = s.is_agent() ? static_cast<std::uint64_t>(s.agent) + 2
                                          : (s.is_mutual() ? 0 : 1);
    return (t << 40) | (a << 16) | sc;
  }
  std::uint64_t fact_key(World w, std::uint32_t t, std::uint32_t a) const {
    return (static_cast<std::uint64_t>(w) * terms_.size() + t) * formulas_.size() + a;
  }
  bool known(World w, std::uint32_t t, std::uint32_t a) const {
    return facts_.contains(fact_key(w, t, a));
  }
  void add(World w, std::uint32_t t, std::uint32_t a) {
    if (!facts_.insert(fact_key(w, t, a)).second) return;
    by_wt_[w * terms_.size() + t].push_back(a);
    queue_.push_back({w, t, a});
  }
  std::optional<std::uint32_t> just_id(std::uint32_t t, Sort s, std::uint32_t a) const {
    auto it = just_index_.find(just_key(t, s, a));
    if (it == just_index_.end()) return std::nullopt;
    return it->second;
  }

  void seed() {
    for (const auto& f : m_.evidence_base) {
      auto t = term_id_.find(f.term);
      auto a = formula_id_.find(f.formula);
      if (f.world < n_ && t != term_id_.end() && a != formula_id_.end())
        add(f.world, t->second, a->second);
    }
    const ConstantSpecification& cs = m_.cs;
    if (cs.kind() == ConstantSpecification::Kind::Extensional && cs.entries().empty()) return;
    const bool total = cs.kind() == ConstantSpecification::Kind::TotalC;
    std::vector<signed char> axiom(formulas_.size(), -1);
    for (std::uint32_t t = 0; t < terms_.size(); ++t) {
      const Term& c = terms_[t];
      if (c.kind() != TermKind::Const) continue;
      if (total && !c.sort().is_common()) continue;
      for (std::uint32_t a = 0; a < formulas_.size(); ++a) {
        bool member = false;
        if (total) {
          if (axiom[a] < 0) {
            try {
              axiom[a] = match_axiom(formulas_[a], m_.agents).empty() ? 0 : 1;
            } catch (const ResourceError&) {
              axiom[a] = 0;
            }
          }
          member = axiom[a] == 1;
        } else {
          member = cs.contains(c, c.sort(), formulas_[a], m_.agents);
        }
        if (member)
          for (World w = 0; w < n_; ++w) add(w, t, a);
      }
    }
  }

  void propagate(World w, std::uint32_t t, std::uint32_t a) {
    const Term& term = terms_[t];
    const Sort sort = term.sort();
    // monotonicity
    if (sort.is_common()) {
      for (World v : succ_c_[w]) add(v, t, a);
    } else if (sort.is_agent() && sort.agent >= 1 &&
               static_cast<std::size_t>(sort.agent) <= succ_agent_.size()) {
      for (World v : succ_agent_[static_cast<std::size_t>(sort.agent - 1)][w]) add(v, t, a);
    }

    const Formula& f = formulas_[a];
    for (std::uint32_t p : parents_[t]) {
      const Term& parent = terms_[p];
      const auto& ch = children_[p];
      switch (parent.kind()) {
        case TermKind::Sum:
        case TermKind::Proj:
        case TermKind::Head:
          add(w, p, a);
          break;
        case TermKind::App:
          if (ch[0] == t && f.is(FormulaKind::Imp)) {
            const std::uint32_t x = formula_id_.at(f.lhs());
            if (known(w, ch[1], x)) add(w, p, formula_id_.at(f.rhs()));
          }
          if (ch[1] == t) {
            for (std::uint32_t g : imp_by_lhs_[a])
              if (known(w, ch[0], g)) add(w, p, formula_id_.at(formulas_[g].rhs()));
          }
          break;
        case TermKind::Bang:
          if (auto j = just_id(t, sort, a)) add(w, p, *j);
          break;
        case TermKind::Tail:
          if (auto j = just_id(t, Sort::common(), a)) add(w, p, *j);
          break;
        case TermKind::Tuple: {
          bool all = true;
          for (std::uint32_t c : ch)
            if (!known(w, c, a)) {
              all = false;
              break;
            }
          if (all) add(w, p, a);
          break;
        }
        case TermKind::Ind:
          if (ch[0] == t && f.is(FormulaKind::Imp)) {
            const Formula& r = f.rhs();
            if (r.is(FormulaKind::Just) && r.sort().is_mutual() && r.body() == f.lhs() &&
                r.term() == terms_[ch[1]]) {
              const std::uint32_t x = formula_id_.at(f.lhs());
              if (known(w, ch[1], x)) add(w, p, x);
            }
          }
          if (ch[1] == t) {
            if (auto j = just_id(t, Sort::mutual(), a)) {
              auto g = imp_index_.find(pair_key(a, *j));
              if (g != imp_index_.end() && known(w, ch[0], g->second)) add(w, p, a);
            }
          }
          break;
        default:
          break;
      }
    }
  }

  const AFModel& m_;
  std::size_t n_;
  std::vector<Term> terms_;
  std::vector<Formula> formulas_;
  std::unordered_map<Term, std::uint32_t> term_id_;
  std::unordered_map<Formula, std::uint32_t> formula_id_;
  std::vector<std::vector<std::uint32_t>> children_, parents_;
  std::vector<std::vector<std::uint32_t>> imp_by_lhs_;
  std::unordered_map<std::uint64_t, std::uint32_t> imp_index_, just_index_;
  Adjacency succ_c_;
  std::vector<Adjacency> succ_agent_;
  std::unordered_set<std::uint64_t> facts_;
  std::vector<std::vector<std::uint32_t>> by_wt_;
  std::deque<Item> queue_;
};

class Evaluator {
 public:
  Evaluator(const AFModel& m, const Formula& query, int depth, const UniverseLimits& limits)
      : m_(m), n_(m.world_count()) {
    if (m.mode == EvidenceMode::Base) {
      const auto u = build_universe(m, query, depth, limits);
      facts_ = saturate(m, u);
    }
    succ_e_ = successors(reach_e(m), n_);
    succ_c_ = successors(reach_c(m), n_);
    for (const auto& r : m.relations) succ_agent_.push_back(successors(r, n_));
  }

  const std::vector<char>& eval(const Formula& a) {
    if (auto it = memo_.find(a); it != memo_.end()) return it->second;
    std::vector<char> out(n_, 0);
    switch (a.kind()) {
      case FormulaKind::Prop:
        for (World w = 0; w < n_; ++w) out[w] = m_.holds(a.prop_index(), w);
        break;
      case FormulaKind::Neg: {
        const auto& x = eval(a.lhs());
        for (World w = 0; w < n_; ++w) out[w] = !x[w];
        break;
      }
      case FormulaKind::And:
      case FormulaKind::Or:
      case FormulaKind::Imp: {
        const auto x = eval(a.lhs());
        const auto& y = eval(a.rhs());
        for (World w = 0; w < n_; ++w) {
          if (a.is(FormulaKind::And)) out[w] = x[w] && y[w];
          else if (a.is(FormulaKind::Or)) out[w] = x[w] || y[w];
          else out[w] = !x[w] || y[w];
        }
        break;
      }
      case FormulaKind::Just: {
        const auto& body = eval(a.body());
        const Adjacency& succ = succ_for(a.sort());
        for (World w = 0; w < n_; ++w) {
          bool ok = m_.mode == EvidenceMode::Full ||
                    facts_.contains(EvidenceFact{w, a.term(), a.body()});
          for (World v : succ[w])
            if (!ok || !body[v]) {
              ok = false;
              break;
            }
          out[w] = ok;
        }
        break;
      }
    }
    return memo_.emplace(a, std::move(out)).first->second;
  }

 private:
  const Adjacency& succ_for(Sort s) const {
    if (s.is_mutual()) return succ_e_;
    if (s.is_common()) return succ_c_;
    if (s.agent < 1 || static_cast<std::size_t>(s.agent) > succ_agent_.size())
      throw InvalidInput("no relation for agent " + std::to_string(s.agent));
    return succ_agent_[static_cast<std::size_t>(s.agent - 1)];
  }

  const AFModel& m_;
  std::size_t n_;
  std::set<EvidenceFact> facts_;
  Adjacency succ_e_, succ_c_;
  std::vector<Adjacency> succ_agent_;
  std::unordered_map<Formula, std::vector<char>> memo_;
};

}  // namespace

std::set<EvidenceFact> saturate(const AFModel& m, const SaturationUniverse& u) {
  return Saturator(m, u).run();
}

bool evidence_holds(const AFModel& m, World w, const Term& t, const Formula& a,
                    int depth_budget, const UniverseLimits& limits) {
  if (w >= m.world_count()) throw UnknownWorld("world index " + std::to_string(w));
  if (m.mode == EvidenceMode::Full) return true;
  const Formula query = just(t, a);
  const auto facts = saturate(m, build_universe(m, query, depth_budget, limits));
  return facts.contains(EvidenceFact{w, t, a});
}

std::set<World> satisfying_worlds(const AFModel& m, const Formula& a, int depth_budget,
                                  const UniverseLimits& limits) {
  check_well_formed(a, m.agents);
  Evaluator ev(m, a, depth_budget, limits);
  const auto& v = ev.eval(a);
  std::set<World> out;
  for (World w = 0; w < v.size(); ++w)
    if (v[w]) out.insert(w);
  return out;
}

bool satisfies(const AFModel& m, World w, const Formula& a, int depth_budget,
               const UniverseLimits& limits) {
  if (w >= m.world_count()) throw UnknownWorld("world index " + std::to_string(w));
  return satisfying_worlds(m, a, depth_budget, limits).contains(w);
}

bool valid_in_model(const AFModel& m, const Formula& a, int depth_budget,
                    const UniverseLimits& limits) {
  return satisfying_worlds(m, a, depth_budget, limits).size() == m.world_count();
}

AFModel restrict_to_world(const AFModel& m, World w) {
  if (w >= m.world_count()) throw UnknownWorld("world index " + std::to_string(w));
  AFModel out;
  out.agents = m.agents;
  out.world_names = {m.world_names[w]};
  out.relations.assign(static_cast<std::size_t>(m.agents), Relation{{0, 0}});
  for (const auto& [p, ws] : m.valuation)
    if (ws.contains(w)) out.valuation[p].insert(0);
  for (const auto& f : m.evidence_base)
    if (f.world == w) out.evidence_base.push_back({0, f.term, f.formula});
  out.cs = m.cs;
  out.mode = m.mode;
  out.names = m.names;
  return out;
}

AFModel random_model(const RandomModelParams& params) {
  if (params.worlds == 0) throw InvalidInput("a model needs at least one world");
  SyntaxSampler rng(params.agents, params.seed, {.max_index = 2, .max_props = params.max_props});
  AFModel m;
  m.agents = params.agents;
  m.mode = params.mode;
  for (std::size_t w = 0; w < params.worlds; ++w) m.world_names.push_back(std::to_string(w));
  for (int i = 0; i < params.agents; ++i) {
    Relation r;
    for (World u = 0; u < params.worlds; ++u)
      for (World v = 0; v < params.worlds; ++v)
        if (u != v && rng.coin(params.density)) r.insert({u, v});
    m.relations.push_back(reflexive_transitive_closure(r, params.worlds));
  }
  for (int p = 1; p <= params.max_props; ++p)
    for (World w = 0; w < params.worlds; ++w)
      if (rng.coin()) m.valuation[p].insert(w);
  for (std::size_t k = 0; k < params.base_facts; ++k) {
    const World w = rng.below(params.worlds);
    const Sort s = rng.sort();
    m.evidence_base.push_back({w, rng.term(s, 2), rng.formula(2)});
  }
  return m;
}

// ---------------------------------------------------------------------------
// Model files

LoadedModel read_model(std::string_view text, const std::string& base_dir) {
  LoadedModel out;
  AFModel& m = out.model;
  const auto lines = split_lines(text);

  struct Pending {
    std::size_t line;
    std::string key;
    std::string value;
  };
  std::vector<Pending> later;
  bool have_h = false, have_worlds = false;
  std::optional<std::string> cs_spec;
  std::size_t cs_line = 0;

  auto fail = [](std::size_t line, const std::string& msg) -> ParseError {
    return ParseError(line, "line " + std::to_string(line) + ": " + msg);
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t ln = i + 1;
    std::string_view line = lines[i];
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.starts_with("alias ")) {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) throw fail(ln, "expected `alias name = P<k>`");
      const std::string name(trim(line.substr(6, eq - 6)));
      const std::string_view target = trim(line.substr(eq + 1));
      if (name.empty() || target.size() < 2) throw fail(ln, "malformed alias");
      if (target[0] == 'P') m.names.props[name] = parse_int(target.substr(1), ln);
      else if (target[0] == 'c') m.names.constants[name] = parse_int(target.substr(1), ln);
      else throw fail(ln, "alias target must be P<k> or c<k>");
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw fail(ln, "expected `key: value`");
    const std::string key(trim(line.substr(0, colon)));
    const std::string value(trim(line.substr(colon + 1)));
    if (key == "h") {
      m.agents = parse_int(value, ln);
      if (m.agents < 1) throw fail(ln, "number of agents must be at least 1");
      have_h = true;
    } else if (key == "worlds") {
      m.world_names = words(value);
      have_worlds = true;
    } else if (key == "mode") {
      if (value == "base") m.mode = EvidenceMode::Base;
      else if (value == "full") m.mode = EvidenceMode::Full;
      else throw fail(ln, "mode must be `base` or `full`");
    } else if (key == "cs") {
      cs_spec = value;
      cs_line = ln;
    } else if (key.starts_with("rel ") || key.starts_with("val ") || key == "evidence") {
      later.push_back({ln, key, value});
    } else {
      throw fail(ln, "unknown key `" + key + "`");
    }
  }
  if (!have_h) throw ParseError(0, "missing `h:` line");
  if (!have_worlds || m.world_names.empty()) throw ParseError(0, "missing or empty `worlds:` line");

  const std::size_t n = m.world_count();
  m.relations.assign(static_cast<std::size_t>(m.agents), Relation{});
  auto world_at = [&](const std::string& name, std::size_t ln) {
    try {
      return m.world(name);
    } catch (const UnknownWorld&) {
      throw fail(ln, "unknown world `" + name + "`");
    }
  };
  static const std::regex pair_re(R"(\(\s*([^,\s()]+)\s*,\s*([^,\s()]+)\s*\))");

  for (const auto& p : later) {
    if (p.key.starts_with("rel ")) {
      const int agent = parse_int(std::string_view(p.key).substr(4), p.line);
      if (agent < 1 || agent > m.agents) throw fail(p.line, "agent out of range");
      Relation& r = m.relations[static_cast<std::size_t>(agent - 1)];
      std::string rest = p.value;
      std::smatch match;
      while (std::regex_search(rest, match, pair_re)) {
        if (!trim(match.prefix().str()).empty()) throw fail(p.line, "malformed pair list");
        r.insert({world_at(match[1].str(), p.line), world_at(match[2].str(), p.line)});
        rest = match.suffix().str();
      }
      if (!trim(rest).empty()) throw fail(p.line, "malformed pair list");
    } else if (p.key.starts_with("val ")) {
      const std::string_view name = trim(std::string_view(p.key).substr(4));
      int index = 0;
      if (auto it = m.names.props.find(std::string(name)); it != m.names.props.end())
        index = it->second;
      else if (name.size() > 1 && name[0] == 'P')
        index = parse_int(name.substr(1), p.line);
      else
        throw fail(p.line, "unknown proposition `" + std::string(name) + "`");
      auto& ws = m.valuation[index];
      for (const auto& w : words(p.value)) ws.insert(world_at(w, p.line));
    } else {
      std::string_view v = p.value;
      if (v.size() < 2 || v.front() != '(' || v.back() != ')')
        throw fail(p.line, "expected `(world, term, formula)`");
      v = v.substr(1, v.size() - 2);
      const auto comma = v.find(',');
      if (comma == std::string_view::npos) throw fail(p.line, "expected `(world, term, formula)`");
      const World w = world_at(std::string(trim(v.substr(0, comma))), p.line);
      const std::string_view rest = v.substr(comma + 1);
      try {
        std::size_t pos = 0;
        Term t = parse_term_at(rest, pos, m.agents, &m.names);
        if (pos >= rest.size() || rest[pos] != ',')
          throw fail(p.line, "expected `,` after the evidence term");
        Formula a = parse_formula(rest.substr(pos + 1), m.agents, &m.names);
        m.evidence_base.push_back({w, std::move(t), std::move(a)});
      } catch (const ParseError& e) {
        throw fail(p.line, e.what());
      }
    }
  }

  for (std::size_t i = 0; i < m.relations.size(); ++i) {
    Relation closed = reflexive_transitive_closure(m.relations[i], n);
    if (closed != m.relations[i])
      out.warnings.push_back("rel " + std::to_string(i + 1) +
                             ": replaced by its reflexive-transitive closure");
    m.relations[i] = std::move(closed);
  }

  if (cs_spec) {
    const auto parts = words(*cs_spec);
    if (parts.size() == 1 && parts[0] == "totalC") {
      m.cs = ConstantSpecification::total_c();
    } else if (parts.size() == 1 && parts[0] == "none") {
      m.cs = ConstantSpecification();
    } else if (parts.size() == 2 && parts[0] == "file") {
      std::filesystem::path path(parts[1]);
      if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
      m.cs = read_cs_table(read_file(path.string()), m.agents, &m.names);
    } else {
      throw fail(cs_line, "cs must be `totalC`, `none` or `file <path>`");
    }
  }
  return out;
}

std::string write_model(const AFModel& m) {
  std::ostringstream out;
  out << "h: " << m.agents << "\n";
  for (const auto& [name, k] : m.names.props) out << "alias " << name << " = P" << k << "\n";
  for (const auto& [name, k] : m.names.constants) out << "alias " << name << " = c" << k << "\n";
  out << "worlds:";
  for (const auto& w : m.world_names) out << ' ' << w;
  out << "\n";
  for (std::size_t i = 0; i < m.relations.size(); ++i) {
    out << "rel " << i + 1 << ":";
    for (const auto& [a, b] : m.relations[i])
      out << " (" << m.world_names[a] << "," << m.world_names[b] << ")";
    out << "\n";
  }
  for (const auto& [p, ws] : m.valuation) {
    out << "val P" << p << ":";
    for (World w : ws) out << ' ' << m.world_names[w];
    out << "\n";
  }
  for (const auto& f : m.evidence_base)
    out << "evidence: (" << m.world_names[f.world] << ", " << print_term(f.term, &m.names)
        << ", " << print_formula(f.formula, &m.names) << ")\n";
  out << "mode: " << (m.mode == EvidenceMode::Base ? "base" : "full") << "\n";
  if (m.cs.kind() == ConstantSpecification::Kind::TotalC) out << "cs: totalC\n";
  return out.str();
}

}  // namespace jck
