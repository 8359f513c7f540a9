#pragma once

// Literal-set normal forms and a small DPLL solver shared by the
// normal-form and transposition code.

#include <cstdint>
#include <map>
#include <vector>

#include "sepfol/syntax.hpp"

namespace sepfol::detail {

// Literal encoding: atom * 2 + (negated ? 1 : 0). Sets are kept sorted.
using LitSet = std::vector<int>;

inline int negate(int lit) { return lit ^ 1; }
inline int make_lit(int atom, bool negated) { return atom * 2 + (negated ? 1 : 0); }

bool has_complementary(const LitSet& s);
LitSet merge(const LitSet& a, const LitSet& b);
bool is_subset(const LitSet& a, const LitSet& b);

// Drops duplicates and strict supersets of other members; survivors keep their order.
void remove_subsumed(std::vector<LitSet>& sets);

// Pairwise unions (the distribution step).
std::vector<LitSet> product(const std::vector<LitSet>& a, const std::vector<LitSet>& b, bool drop_complementary,
                            std::uint64_t cap);

class AtomTable {
 public:
  int id(const Formula& atom);
  const Formula& atom(int id) const { return atoms_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return atoms_.size(); }
  Formula literal(int lit) const;

 private:
  std::map<Formula, int> ids_;
  std::vector<Formula> atoms_;
};

// Disjunctive normal form of a quantifier-free formula (or of its negation when positive = false).
std::vector<LitSet> literal_dnf(const Formula& phi, bool positive, AtomTable& atoms, bool drop_complementary,
                                std::uint64_t cap);
std::vector<LitSet> literal_cnf(const Formula& phi, AtomTable& atoms, bool drop_complementary, std::uint64_t cap);

bool satisfiable(const std::vector<LitSet>& clauses);

}  // namespace sepfol::detail
