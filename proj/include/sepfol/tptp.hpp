#pragma once

#include <string>
#include <vector>

#include "sepfol/syntax.hpp"

namespace sepfol {

enum class Role { Axiom, Conjecture };

struct AnnotatedFormula {
  std::string label;
  Role role;
  Formula formula;
};

struct Problem {
  std::string name;
  std::vector<AnnotatedFormula> formulas;
  Signature signature;
};

// Reads a sequence of `fof(label, role, formula).` entries.
Problem parse_tptp(const std::string& text, std::string name = "");
// Reads a bare formula such as "![X]: p(X)".
Formula parse_formula(const std::string& text);

std::string print_tptp(const Formula& phi);
std::string print_tptp(const Term& t);
std::string print_fof(const std::string& label, Role role, const Formula& phi);

}  // namespace sepfol
