#pragma once

#include <random>
#include <string>
#include <vector>

#include "sepfol/structure.hpp"
#include "sepfol/syntax.hpp"

namespace sepfol::testing {

// A second evaluator written directly against the AST, used to cross-check the compiled one.
bool naive_eval(const Structure& s, const Assignment& beta, const Formula& phi);

// Brute-force search over all structures of sizes 1..max_size using naive_eval; free variables
// are read existentially.
bool naive_satisfiable(const Formula& phi, int max_size);

Structure random_structure(const Signature& sig, int size, std::mt19937& rng);

// Quantifier-free combination of the given atoms with connectives of every kind.
Formula random_matrix(const std::vector<Formula>& atoms, int depth, std::mt19937& rng);

// An arbitrary formula over the signature whose free variables lie in `vars`; may quantify.
Formula random_formula(const Signature& sig, std::vector<std::string> vars, int depth, std::mt19937& rng);

// ∃z*∀x*.ψ without functions.
Formula random_bsr(std::mt19937& rng);

// Unary predicates only, arbitrary nesting of quantifiers, no equality.
Formula random_monadic(std::mt19937& rng);

// A prenex SF sentence ∃z ∀x1∃y1 [∀x2∃y2].ψ over at most 3 predicates of arity at most 2 and at
// most 4 variables.
Formula random_sf(std::mt19937& rng, int max_levels = 2);

// ∀x∃y.ψ with separated x and y and optional free parameters.
Formula random_transposable(std::mt19937& rng);

// Atoms of p/q/r (arity up to 2) over the given variables.
std::vector<Formula> atoms_over(const std::vector<std::string>& vars, std::mt19937& rng, int count);

Formula parse(const std::string& text);

}  // namespace sepfol::testing
