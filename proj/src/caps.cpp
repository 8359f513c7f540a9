#include "sepfol/caps.hpp"

#include <sstream>
#include <stdexcept>

namespace sepfol {

Caps parse_caps(const std::string& text, Caps base) {
  std::uint64_t* fields[] = {&base.node_cap, &base.constant_cap, &base.structure_cap, &base.size_cap};
  std::stringstream in(text);
  std::string item;
  std::size_t i = 0;
  while (std::getline(in, item, ',')) {
    if (i >= 4) throw std::invalid_argument("too many cap values: " + text);
    if (!item.empty()) {
      std::size_t used = 0;
      unsigned long long v = std::stoull(item, &used);
      if (used != item.size() || v == 0) throw std::invalid_argument("caps must be positive integers: " + text);
      *fields[i] = v;
    }
    ++i;
  }
  return base;
}

}  // namespace sepfol
