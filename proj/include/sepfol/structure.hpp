#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sepfol/syntax.hpp"

namespace sepfol {

struct FunctionTable {
  int arity = 0;
  std::vector<int> values;  // row-major over universe^arity

  friend bool operator==(const FunctionTable&, const FunctionTable&) = default;
};

struct PredicateTable {
  int arity = 0;  // -1: empty relation read from JSON without any tuple to fix the arity
  std::vector<std::uint8_t> bits;

  friend bool operator==(const PredicateTable&, const PredicateTable&) = default;
};

// A finite interpretation over the universe {0, ..., universe_size-1}.
struct Structure {
  int universe_size = 1;
  std::map<std::string, int> constants;
  std::map<std::string, FunctionTable> functions;
  std::map<std::string, PredicateTable> predicates;

  // Row-major position of a tuple in a table over this universe.
  std::size_t index(const std::vector<int>& tuple) const;
  std::size_t table_size(int arity) const;

  bool holds(const std::string& predicate, const std::vector<int>& tuple) const;
  int apply(const std::string& function, const std::vector<int>& tuple) const;

  // Creates all-false / all-zero tables for every symbol of sig not yet interpreted.
  void declare(const Signature& sig);
  void set(const std::string& predicate, const std::vector<int>& tuple, bool value = true);
  void set_function(const std::string& function, const std::vector<int>& tuple, int value);

  Signature signature() const;
  // Whether every symbol of sig is interpreted with a matching arity.
  bool interprets(const Signature& sig) const;

  friend bool operator==(const Structure&, const Structure&) = default;
};

using Assignment = std::map<std::string, int>;

// Enumerates the tuples of universe^arity in lexicographic order.
std::vector<std::vector<int>> all_tuples(int universe_size, int arity);

Structure parse_structure(const std::string& text);
std::string print_structure(const Structure& s);

}  // namespace sepfol
