#pragma once

// Line-oriented text formats for derivations and constant-specification
// tables.
//
// Derivation file:
//     h: 2                       (optional; number of agents)
//     hyp: <formula>             (zero or more, before any step)
//     1. <formula> ; axiom Refl
//     2. <formula> ; hyp 1
//     3. <formula> ; mp 2 1
//     4. <formula> ; axnec c3@C
// Blank lines and lines starting with `#` are ignored.
//
// Constant-specification table: one `c<k>@<s> := <formula>` per line.

#include <string>
#include <string_view>

#include "jck/deduction.hpp"
#include "jck/text.hpp"

namespace jck {

/// `default_agents` applies when the text has no `h:` line.
Derivation read_derivation(std::string_view text, int default_agents,
                           const Names* names = nullptr);
std::string write_derivation(const Derivation& d, const Names* names = nullptr);

/// Reads an extensional table; every member must be an axiom instance.
ConstantSpecification read_cs_table(std::string_view text, int agents,
                                    const Names* names = nullptr);
std::string write_cs_table(const ConstantSpecification& cs, const Names* names = nullptr);

std::string read_file(const std::string& path);

}  // namespace jck
