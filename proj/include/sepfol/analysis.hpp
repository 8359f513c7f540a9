#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sepfol/syntax.hpp"

namespace sepfol {

enum class Fragment {
  BS,
  BSR,
  RelationalMonadic,
  RelationalMonadicEq,
  MonadicWithUnaryFns,
  SF,
  SFExtendedUnaryFns,
  NotClassified,
};

std::string fragment_name(Fragment f);

struct FragmentLabel {
  std::set<Fragment> labels;
  bool has_equality = false;
  bool has_nonconstant_functions = false;
  // Set when the canonical prenex form is not separated but the universal-first pull order is.
  bool sf_under_alternate_prenexing = false;

  bool contains(Fragment f) const { return labels.count(f) > 0; }
  std::vector<std::string> names() const;
};

bool are_separated(const Formula& phi, const std::set<std::string>& xs, const std::set<std::string>& ys);

FragmentLabel classify(const Formula& phi);

// Maximal same-polarity blocks of a prenex formula and its quantifier-free matrix.
std::pair<QuantifierBlockPrefix, Formula> prefix_blocks(const Formula& phi);

// A prefix read as ∃z ∀x1 ∃y1 … ∀xn ∃yn; x1 may only be empty when n = 0, yn may be empty.
struct SeparatedShape {
  std::vector<std::string> leading;
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> levels;
  Formula matrix;

  std::set<std::string> universal_vars() const;
  std::set<std::string> existential_vars() const;  // y-variables, leading block excluded
  std::size_t alternations() const;                // number of levels with a nonempty y block
};

SeparatedShape separated_shape(const QuantifierBlockPrefix& prefix, const Formula& matrix);
// rename_apart + to_prenex + prefix_blocks.
SeparatedShape separated_shape(const Formula& phi);

}  // namespace sepfol
