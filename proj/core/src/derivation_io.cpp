#include "jck/derivation_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "jck/error.hpp"

namespace jck {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> lines_of(std::string_view text) {
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

std::size_t to_index(std::string_view s, std::size_t line) {
  s = trim(s);
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw ParseError(line, "line " + std::to_string(line) + ": expected a number, found `" +
                               std::string(s) + "`");
  return v;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// Rethrow parse errors with the line number attached.
template <typename F>
auto on_line(std::size_t line, F f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw ParseError(e.position(), "line " + std::to_string(line) + ": " + e.what());
  } catch (const SortError& e) {
    throw SortError(e.subterm(), "line " + std::to_string(line) + ": " + e.rule());
  }
}

}  // namespace

Derivation read_derivation(std::string_view text, int default_agents, const Names* names) {
  Derivation d;
  d.agents = default_agents;
  const auto lines = lines_of(text);
  // First pass: agent count, so formulas can be sorted against it.
  for (auto raw : lines) {
    auto line = trim(raw);
    if (line.substr(0, 2) == "h:") d.agents = static_cast<int>(to_index(line.substr(2), 0));
  }
  if (d.agents < 1) throw InvalidInput("number of agents must be at least 1");

  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t lineno = n + 1;
    auto line = trim(lines[n]);
    if (line.empty() || line.front() == '#' || line.substr(0, 2) == "h:") continue;
    if (line.substr(0, 4) == "hyp:") {
      if (!d.steps.empty())
        throw ParseError(lineno, "line " + std::to_string(lineno) +
                                     ": hypotheses must precede the steps");
      d.hypotheses.push_back(
          on_line(lineno, [&] { return parse_formula(line.substr(4), d.agents, names); }));
      continue;
    }
    const auto dot = line.find('.');
    const auto semi = line.rfind(';');
    if (dot == std::string_view::npos || semi == std::string_view::npos || semi < dot)
      throw ParseError(lineno, "line " + std::to_string(lineno) +
                                   ": expected `k. <formula> ; <rule>`");
    const std::size_t number = to_index(line.substr(0, dot), lineno);
    if (number != d.steps.size() + 1)
      throw ParseError(lineno, "line " + std::to_string(lineno) + ": step number " +
                                   std::to_string(number) + " out of sequence");
    Formula f = on_line(lineno, [&] {
      return parse_formula(line.substr(dot + 1, semi - dot - 1), d.agents, names);
    });
    const auto rule = words(line.substr(semi + 1));
    auto arity = [&](std::size_t k) {
      if (rule.size() != k + 1)
        throw ParseError(lineno, "line " + std::to_string(lineno) + ": rule `" +
                                     std::string(rule.empty() ? "" : rule[0]) + "` takes " +
                                     std::to_string(k) + " argument(s)");
    };
    if (rule.empty()) throw ParseError(lineno, "line " + std::to_string(lineno) + ": missing rule");
    Rule r = HypRule{0};
    if (rule[0] == "hyp") {
      arity(1);
      r = HypRule{to_index(rule[1], lineno)};
    } else if (rule[0] == "axiom") {
      arity(1);
      auto s = parse_schema(rule[1]);
      if (!s)
        throw ParseError(lineno, "line " + std::to_string(lineno) + ": unknown schema `" +
                                     std::string(rule[1]) + "`");
      r = AxiomRule{*s};
    } else if (rule[0] == "mp") {
      arity(2);
      r = MpRule{to_index(rule[1], lineno), to_index(rule[2], lineno)};
    } else if (rule[0] == "axnec") {
      arity(1);
      Term c = on_line(lineno, [&] { return parse_term(rule[1], d.agents, names); });
      if (c.kind() != TermKind::Const)
        throw ParseError(lineno, "line " + std::to_string(lineno) + ": axnec needs a constant");
      r = AxNecRule{c};
    } else {
      throw ParseError(lineno, "line " + std::to_string(lineno) + ": unknown rule `" +
                                   std::string(rule[0]) + "`");
    }
    d.steps.push_back(Step{std::move(f), std::move(r)});
  }
  return d;
}

std::string write_derivation(const Derivation& d, const Names* names) {
  std::ostringstream out;
  out << "h: " << d.agents << '\n';
  for (const auto& h : d.hypotheses) out << "hyp: " << print_formula(h, names) << '\n';
  for (std::size_t k = 0; k < d.steps.size(); ++k) {
    const Step& s = d.steps[k];
    out << k + 1 << ". " << print_formula(s.formula, names) << " ; ";
    std::visit(
        [&](const auto& r) {
          using R = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<R, HypRule>) {
            out << "hyp " << r.index;
          } else if constexpr (std::is_same_v<R, AxiomRule>) {
            out << "axiom " << to_string(r.schema);
          } else if constexpr (std::is_same_v<R, MpRule>) {
            out << "mp " << r.major << ' ' << r.minor;
          } else {
            out << "axnec " << print_term(r.constant, names);
          }
        },
        s.rule);
    out << '\n';
  }
  return out.str();
}

ConstantSpecification read_cs_table(std::string_view text, int agents, const Names* names) {
  std::set<CsEntry> entries;
  const auto lines = lines_of(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t lineno = n + 1;
    auto line = trim(lines[n]);
    if (line.empty() || line.front() == '#') continue;
    const auto sep = line.find(":=");
    if (sep == std::string_view::npos)
      throw ParseError(lineno, "line " + std::to_string(lineno) + ": expected `c<k>@<s> := <formula>`");
    Term c = on_line(lineno, [&] { return parse_term(line.substr(0, sep), agents, names); });
    if (c.kind() != TermKind::Const)
      throw ParseError(lineno, "line " + std::to_string(lineno) + ": left side must be a constant");
    Formula f = on_line(lineno, [&] { return parse_formula(line.substr(sep + 2), agents, names); });
    entries.insert(CsEntry{c, f});
  }
  return ConstantSpecification::extensional(std::move(entries), agents);
}

std::string write_cs_table(const ConstantSpecification& cs, const Names* names) {
  std::ostringstream out;
  for (const auto& e : cs.entries())
    out << print_term(e.constant, names) << " := " << print_formula(e.formula, names) << '\n';
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open `" + path + "`");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace jck
