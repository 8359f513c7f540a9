#pragma once

#include <cstdint>
#include <string>

namespace sepfol {

// Resource limits shared by the transformations and the model search.
struct Caps {
  std::uint64_t node_cap = 1'000'000;         // formula / normal-form size
  std::uint64_t constant_cap = 10'000;        // fresh constants in emitted constraints
  std::uint64_t structure_cap = 10'000'000;   // structures enumerated per universe size
  std::uint64_t size_cap = 10;                // largest universe decide_sf will search
  std::uint64_t magnitude_cap = 1'000'000'000;  // bounds above this are reported as overflow
};

// Parses "node,constant,structure,size" (trailing fields may be omitted).
Caps parse_caps(const std::string& text, Caps base = {});

}  // namespace sepfol
