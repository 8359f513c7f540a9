#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sepfol/caps.hpp"
#include "sepfol/structure.hpp"
#include "sepfol/syntax.hpp"

namespace sepfol {

struct Clause {
  std::vector<Formula> literals;  // sorted by literal_less, no duplicates
  std::string origin;             // matrix, domain_axiom, guard or congruence
};

struct ClauseSet {
  std::vector<Clause> clauses;
  Signature signature;

  // One `cnf(<origin>_<n>, axiom, (...)).` line per clause.
  std::string print() const;
  // Universal closure of the conjunction of all clauses.
  Formula to_formula() const;
  std::size_t count(const std::string& origin) const;
};

// Which fresh predicate replaced P(f(·)), for rebuilding f from a model of the output.
struct FunctionLink {
  std::string function;
  std::vector<std::pair<std::string, std::string>> pairs;  // (P, R) with P(f(t)) rewritten to R(t)
};

struct UnaryFunctionElimination {
  Formula formula;
  std::vector<FunctionLink> links;
  Signature original;
};

UnaryFunctionElimination eliminate_unary_functions_traced(const Formula& phi);
Formula eliminate_unary_functions(const Formula& phi);

// A model of the input over the same universe: f(a) is the least e with P(e) <-> R(a) for every
// linked pair. Fresh predicates are dropped.
Structure transport_unary_model(const Structure& model, const UnaryFunctionElimination& elimination);

Formula eliminate_equality_monadic(const Formula& phi);

// k must be a valid small-model bound for phi.
Formula eliminate_equality_bounded(const Formula& phi, std::uint64_t k);

enum class BsrEncoding { SkolemFn, Relational };

ClauseSet to_bsr_clauses(const Formula& phi, BsrEncoding encoding, const Caps& caps = {});

}  // namespace sepfol
