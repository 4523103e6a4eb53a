#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include <jck/attack.hpp>
#include <jck/deduction.hpp>
#include <jck/derivation_io.hpp>
#include <jck/error.hpp>
#include <jck/modal.hpp>
#include <jck/semantics.hpp>
#include <jck/synthesis.hpp>
#include <jck/text.hpp>

#include "jck_test/acceptance.hpp"

namespace jck::cli {

namespace {

struct Options {
  int agents = 2;
  std::string cs = "totalC";
  std::string file;
  std::string text;
  std::string second;
  std::string sort;
  std::size_t boxed = 0;
  std::string out_path;
  std::string cs_out_path;
  std::string fragment = "full";
  std::string world;
  std::string modal;
  bool as_term = false;
  int depth = 3;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::uint64_t selftest_seed = acceptance::kDefaultSeed;
};

ConstantSpecification load_cs(const std::string& spec, int agents) {
  if (spec == "totalC") return ConstantSpecification::total_c();
  if (spec == "none") return {};
  return read_cs_table(read_file(spec), agents);
}

Derivation load_derivation(const Options& o) {
  return read_derivation(read_file(o.file), o.agents);
}

LoadedModel load_model(const std::string& path) {
  const auto dir = std::filesystem::path(path).parent_path();
  return read_model(read_file(path), dir.empty() ? "." : dir.string());
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write `" + path + "`");
  f << text;
}

// Emits a derivation and a constant-specification table, each to its file
// when one was given and to `out` otherwise.
void emit(const Options& o, const Derivation& d, const ConstantSpecification& cs,
          std::ostream& out) {
  const std::string drv = write_derivation(d);
  const std::string table = cs.kind() == ConstantSpecification::Kind::TotalC
                                ? std::string("# totalC\n")
                                : write_cs_table(cs);
  if (o.out_path.empty()) {
    out << "# derivation\n" << drv;
  } else {
    write_text(o.out_path, drv);
  }
  if (o.cs_out_path.empty()) {
    out << "# constant specification\n" << table;
  } else {
    write_text(o.cs_out_path, table);
  }
}

struct Synthesis {
  ConstantSpecification cs;
  ConstantAllocator alloc;
};

Synthesis synthesis_setup(const Options& o, int agents) {
  const ConstantSpecification cs = load_cs(o.cs, agents);
  ConstantAllocator alloc = ConstantAllocator::from_specification(cs, agents);
  ConstantSpecification used =
      cs.kind() == ConstantSpecification::Kind::TotalC ? cs : alloc.specification();
  return {std::move(used), std::move(alloc)};
}

// ---------------------------------------------------------------------------
// Verbs

int cmd_parse(const Options& o, std::ostream& out) {
  if (!o.as_term) {
    try {
      out << print_formula(parse_formula(o.text, o.agents)) << '\n';
      return kOk;
    } catch (const ParseError&) {
      // fall back to a term below
    }
  }
  const Term t = parse_term(o.text, o.agents);
  out << print_term(t) << " : " << to_string(sort_of(t, o.agents)) << '\n';
  return kOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  const Derivation d = load_derivation(o);
  CheckOptions opts;
  if (o.fragment == "lph") opts.fragment = Fragment::LPh;
  else if (o.fragment != "full") throw InvalidInput("unknown fragment `" + o.fragment + "`");
  const CheckReport r = check_derivation(d, load_cs(o.cs, d.agents), opts);
  if (r.accepted()) {
    out << "accepted: " << d.steps.size() << " steps, conclusion " << print_formula(d.conclusion())
        << '\n';
    return kOk;
  }
  out << "rejected at step " << r.step << " (" << to_string(r.status) << "): " << r.reason << '\n';
  return kRejected;
}

int cmd_lift(const Options& o, std::ostream& out) {
  const Derivation d = load_derivation(o);
  auto [cs, alloc] = synthesis_setup(o, d.agents);
  const Sort target = parse_sort(o.sort, d.agents);
  const Synthesized r = lift(d, target, LiftingContext::from(d, o.boxed), cs, alloc);
  out << "term: " << print_term(r.term) << '\n';
  emit(o, r.derivation, synthesis_specification(cs, alloc), out);
  return kOk;
}

int cmd_necessitate(const Options& o, std::ostream& out) {
  const Derivation d = load_derivation(o);
  auto [cs, alloc] = synthesis_setup(o, d.agents);
  const Synthesized r = necessitate(d, parse_sort(o.sort, d.agents), cs, alloc);
  out << "term: " << print_term(r.term) << '\n';
  emit(o, r.derivation, synthesis_specification(cs, alloc), out);
  return kOk;
}

// Premise `A -> [s]@E A`.
int cmd_induct1(const Options& o, std::ostream& out) {
  const Derivation d = load_derivation(o);
  const Formula& c = d.conclusion();
  if (!c.is(FormulaKind::Imp) || !c.rhs().is(FormulaKind::Just) || !c.rhs().sort().is_mutual() ||
      c.rhs().body() != c.lhs())
    throw InvalidInput("induct1 needs a derivation of A -> [s]@E A");
  auto [cs, alloc] = synthesis_setup(o, d.agents);
  const Synthesized r = internalize_induction_1(c.lhs(), c.rhs().term(), d, cs, alloc);
  out << "term: " << print_term(r.term) << '\n';
  emit(o, r.derivation, synthesis_specification(cs, alloc), out);
  return kOk;
}

// Premise `B -> [s]@E (A & B)`.
int cmd_induct2(const Options& o, std::ostream& out) {
  const Derivation d = load_derivation(o);
  const Formula& c = d.conclusion();
  if (!c.is(FormulaKind::Imp) || !c.rhs().is(FormulaKind::Just) || !c.rhs().sort().is_mutual() ||
      !c.rhs().body().is(FormulaKind::And) || c.rhs().body().rhs() != c.lhs())
    throw InvalidInput("induct2 needs a derivation of B -> [s]@E (A & B)");
  auto [cs, alloc] = synthesis_setup(o, d.agents);
  const SynthesizedInduction r =
      internalize_induction_2(c.rhs().body().lhs(), c.lhs(), c.rhs().term(), d, cs, alloc);
  out << "term: " << print_term(r.term) << '\n';
  out << "constant: " << print_term(r.constant) << '\n';
  emit(o, r.derivation, synthesis_specification(cs, alloc), out);
  return kOk;
}

int cmd_eval(const Options& o, std::ostream& out, std::ostream& err) {
  const LoadedModel loaded = load_model(o.file);
  for (const auto& w : loaded.warnings) err << "warning: " << w << '\n';
  const AFModel& m = loaded.model;
  if (const auto report = validate_model(m); !report.ok())
    throw InvalidInput("invalid model: " + report.issues.front());
  const Formula a = parse_formula(o.text, m.agents, &m.names);
  if (!o.world.empty()) {
    out << (satisfies(m, m.world(o.world), a, o.depth) ? "true" : "false") << '\n';
    return kOk;
  }
  out << "satisfied at:";
  for (const World w : satisfying_worlds(m, a, o.depth)) out << ' ' << m.world_names[w];
  out << '\n';
  return kOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const LoadedModel loaded = load_model(o.file);
  for (const auto& w : loaded.warnings) out << "warning: " << w << '\n';
  const ValidationReport report = validate_model(loaded.model);
  if (report.ok()) {
    out << "valid: " << loaded.model.world_count() << " worlds, " << loaded.model.agents
        << " agents\n";
    return kOk;
  }
  for (const auto& issue : report.issues) out << "issue: " << issue << '\n';
  return kRejected;
}

int cmd_translate_x(const Options& o, std::ostream& out) {
  if (!o.text.empty()) {
    out << print_formula(conservative_projection(parse_formula(o.text, o.agents))) << '\n';
    return kOk;
  }
  if (o.file.empty()) throw InvalidInput("translate-x needs a derivation file or --formula");
  const Derivation d = load_derivation(o);
  const TranslatedDerivation r = translate_derivation_x(d, load_cs(o.cs, d.agents));
  emit(o, r.derivation, r.cs, out);
  for (const auto& e : r.non_axiom_members)
    out << "# not an LP_h axiom: " << print_term(e.constant) << " := " << print_formula(e.formula)
        << '\n';
  return kOk;
}

int cmd_translate_o(const Options& o, std::ostream& out) {
  out << print_modal(forgetful(parse_formula(o.text, o.agents))) << '\n';
  return kOk;
}

int cmd_realize_check(const Options& o, std::ostream& out) {
  const Formula r = parse_formula(o.text, o.agents);
  const ModalFormula a = parse_modal(o.second, o.agents);
  if (realizes(r, a)) {
    out << "realizes\n";
    return kOk;
  }
  out << "does not realize: forgetful image is " << print_modal(forgetful(r)) << '\n';
  return kRejected;
}

int cmd_probe(const Options& o, std::ostream& out) {
  ProbeReport r;
  if (!o.modal.empty()) {
    r = modal_validity_probe(parse_modal(o.modal, o.agents), o.agents, o.trials, o.seed);
  } else if (!o.file.empty()) {
    r = forgetful_soundness_probe(load_derivation(o), o.trials, o.seed);
  } else {
    throw InvalidInput("probe needs a derivation file or --modal");
  }
  if (!r.found()) {
    out << "no counterexample in " << r.trials << " trials\n";
    return kOk;
  }
  out << "counterexample after " << r.trials << " trials, falsified at world "
      << r.counterexample->world_names[r.world] << '\n'
      << write_kripke_model(*r.counterexample);
  return kRejected;
}

int cmd_demo_attack(const Options& o, std::ostream& out) {
  const AttackReport r = demo_attack(o.depth);
  out << format_report(r);
  return r.all_hold() ? kOk : kRejected;
}

int cmd_selftest(const Options& o, std::ostream& out) {
  return acceptance::run_and_report(o.selftest_seed, out) ? kOk : kRejected;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Toolkit for multi-agent justification logic with common knowledge", "jck"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--agents,-a", o.agents, "Number of agents h when the input does not say")
      ->check(CLI::PositiveNumber);

  auto* parse = app.add_subcommand("parse", "Parse and print a formula or term");
  parse->add_option("text", o.text)->required();
  parse->add_flag("--term", o.as_term, "Read the input as a term");

  auto cs_option = [&](CLI::App* sub) {
    sub->add_option("--cs", o.cs, "Constant specification: totalC, none, or a table file");
  };
  auto file_arg = [&](CLI::App* sub, bool required = true) {
    auto* opt = sub->add_option("file", o.file, "Derivation file");
    if (required) opt->required();
  };
  auto outputs = [&](CLI::App* sub) {
    sub->add_option("-o,--output", o.out_path, "Write the derivation here");
    sub->add_option("--cs-out", o.cs_out_path, "Write the constant specification here");
  };

  auto* check = app.add_subcommand("check", "Check a derivation");
  file_arg(check);
  cs_option(check);
  check->add_option("--fragment", o.fragment, "full or lph")
      ->check(CLI::IsMember({"full", "lph"}));

  auto* lift_cmd = app.add_subcommand("lift", "Internalize a derivation at a sort");
  file_arg(lift_cmd);
  cs_option(lift_cmd);
  outputs(lift_cmd);
  lift_cmd->add_option("--sort,-s", o.sort, "Target sort: 1..h, E or C")->required();
  lift_cmd->add_option("--boxed", o.boxed, "Number of leading C-justified hypotheses");

  auto* nec = app.add_subcommand("necessitate", "Internalize a hypothesis-free derivation");
  file_arg(nec);
  cs_option(nec);
  outputs(nec);
  nec->add_option("--sort,-s", o.sort, "Target sort: 1..h, E or C")->required();

  auto* ind1 = app.add_subcommand("induct1", "From A -> [s]@E A derive A -> [ind(t,s)]@C A");
  file_arg(ind1);
  cs_option(ind1);
  outputs(ind1);
  auto* ind2 =
      app.add_subcommand("induct2", "From B -> [s]@E (A & B) derive B -> [c * ind(t,s)]@C A");
  file_arg(ind2);
  cs_option(ind2);
  outputs(ind2);

  auto* eval = app.add_subcommand("eval", "Evaluate a formula in a model file");
  eval->add_option("model", o.file, "Model file")->required();
  eval->add_option("formula", o.text)->required();
  eval->add_option("--world,-w", o.world, "World name; omit to list satisfying worlds");
  eval->add_option("--depth,-d", o.depth, "Saturation depth budget")->check(CLI::NonNegativeNumber);

  auto* validate = app.add_subcommand("validate", "Validate a model file");
  validate->add_option("model", o.file, "Model file")->required();

  auto* tx = app.add_subcommand("translate-x", "Conservativity translation into the pure fragment");
  file_arg(tx, false);
  cs_option(tx);
  outputs(tx);
  tx->add_option("--formula,-f", o.text, "Translate a single formula");

  auto* to = app.add_subcommand("translate-o", "Forgetful projection to a modal formula");
  to->add_option("formula", o.text)->required();

  auto* rc = app.add_subcommand("realize-check", "Does a formula realize a modal formula?");
  rc->add_option("formula", o.text)->required();
  rc->add_option("modal", o.second)->required();

  auto* probe = app.add_subcommand("probe", "Search random Kripke models for a counterexample");
  file_arg(probe, false);
  probe->add_option("--modal,-m", o.modal, "Probe this modal formula instead of a derivation");
  probe->add_option("--trials", o.trials)->check(CLI::PositiveNumber);
  probe->add_option("--seed", o.seed);

  auto* attack = app.add_subcommand("demo-attack", "Coordinated attack demonstration");
  attack->add_option("--depth,-d", o.depth, "Term enumeration and saturation depth")
      ->check(CLI::NonNegativeNumber);

  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest->add_option("--seed", o.selftest_seed);

  std::vector<const char*> argv{"jck"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*parse) return cmd_parse(o, out);
    if (*check) return cmd_check(o, out);
    if (*lift_cmd) return cmd_lift(o, out);
    if (*nec) return cmd_necessitate(o, out);
    if (*ind1) return cmd_induct1(o, out);
    if (*ind2) return cmd_induct2(o, out);
    if (*eval) return cmd_eval(o, out, err);
    if (*validate) return cmd_validate(o, out);
    if (*tx) return cmd_translate_x(o, out);
    if (*to) return cmd_translate_o(o, out);
    if (*rc) return cmd_realize_check(o, out);
    if (*probe) return cmd_probe(o, out);
    if (*attack) return cmd_demo_attack(o, out);
    if (*selftest) return cmd_selftest(o, out);
  } catch (const Error& e) {
    err << "jck: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace jck::cli
