#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "sepfol/caps.hpp"
#include "sepfol/structure.hpp"
#include "sepfol/syntax.hpp"

namespace sepfol {

// Tarskian truth; equality is identity on elements.
bool eval(const Structure& s, const Assignment& beta, const Formula& phi);

// Number of interpretations of sig over a universe of the given size, saturating at UINT64_MAX.
std::uint64_t count_structures(const Signature& sig, int size);

// All interpretations of a signature over {0..size-1}: constants first, then function tables,
// then predicate tables, each in lexicographic order with the last entry varying fastest.
class StructureEnumerator {
 public:
  // Throws BudgetExceeded when the count passes caps.structure_cap. With `prune_constants`, only
  // constant assignments in restricted-growth form are visited (one per renaming of elements).
  StructureEnumerator(Signature sig, int size, const Caps& caps = {}, bool prune_constants = false);
  ~StructureEnumerator();
  StructureEnumerator(StructureEnumerator&&) noexcept;
  StructureEnumerator& operator=(StructureEnumerator&&) noexcept;

  // Advances to the next structure; false once exhausted. The first call yields the first one.
  bool next();
  Structure current() const;
  std::uint64_t total() const;

 private:
  friend struct EnumeratorAccess;
  struct State;
  std::unique_ptr<State> state_;
};

// Read access to the flat digit vector of the current structure, for the model search.
struct EnumeratorAccess {
  static const std::vector<int>& digits(const StructureEnumerator& e);
};

std::vector<Structure> enumerate_structures(const Signature& sig, int size, const Caps& caps = {});

struct Sat {
  Structure model;
  int size = 0;
};
struct Unsat {
  int bound_checked = 0;
};
enum class UnknownReason { BoundOverflow, CapExceeded };
struct Unknown {
  UnknownReason reason = UnknownReason::CapExceeded;
};
using Verdict = std::variant<Sat, Unsat, Unknown>;

std::string verdict_name(const Verdict& v);

// First model of size 1..max_size in enumeration order; free variables are read existentially.
Verdict oracle_decide(const Formula& phi, int max_size, const Caps& caps = {}, bool prune_constants = false);

// Same truth value in every structure of size <= max_size over the joint signature, under every
// assignment to the joint free variables.
bool oracle_equivalent(const Formula& phi, const Formula& psi, int max_size, const Caps& caps = {});

// Small-model search up to the computed domain bound.
Verdict decide_sf(const Formula& phi, const Caps& caps = {});

// A level-n fingerprint is a set of 1-based formula indices; a level-k one is a set of level-(k+1)
// fingerprints.
struct Fingerprint {
  bool leaf = true;
  std::vector<int> indices;          // sorted, for leaves
  std::vector<Fingerprint> members;  // sorted and unique, for inner levels
};

bool operator==(const Fingerprint& a, const Fingerprint& b);
bool operator<(const Fingerprint& a, const Fingerprint& b);
// "{1,2}" for leaves, "{{2},{1,2}}" one level up.
std::string to_string(const Fingerprint& f);

struct FingerprintTable {
  std::size_t level = 0;  // 1-based block count covered by the keys
  std::size_t arity = 0;  // key tuple length
  std::vector<Formula> eta_formulas;
  std::map<std::vector<int>, Fingerprint> entries;
};

// tables[k-1] keys tuples for the first k blocks.
std::vector<FingerprintTable> fingerprint_table(const Structure& s, const std::vector<Formula>& eta_list,
                                                const std::vector<std::vector<std::string>>& y_blocks);

}  // namespace sepfol
