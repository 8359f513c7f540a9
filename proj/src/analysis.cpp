#include "sepfol/analysis.hpp"

#include <algorithm>

#include "sepfol/transform.hpp"

namespace sepfol {

std::string fragment_name(Fragment f) {
  switch (f) {
    case Fragment::BS: return "BS";
    case Fragment::BSR: return "BSR";
    case Fragment::RelationalMonadic: return "RelationalMonadic";
    case Fragment::RelationalMonadicEq: return "RelationalMonadicEq";
    case Fragment::MonadicWithUnaryFns: return "MonadicWithUnaryFns";
    case Fragment::SF: return "SF";
    case Fragment::SFExtendedUnaryFns: return "SFExtendedUnaryFns";
    case Fragment::NotClassified: return "NotClassified";
  }
  return "NotClassified";
}

std::vector<std::string> FragmentLabel::names() const {
  std::vector<std::string> out;
  for (auto f : labels) out.push_back(fragment_name(f));
  return out;
}

namespace {

std::set<std::string> atom_vars(const Formula& a) {
  std::set<std::string> out;
  for (const auto& t : a.terms()) {
    auto tv = term_vars(t);
    out.insert(tv.begin(), tv.end());
  }
  return out;
}

bool intersects(const std::set<std::string>& a, const std::set<std::string>& b) {
  return std::any_of(a.begin(), a.end(), [&](const std::string& v) { return b.count(v) > 0; });
}

// Unary function symbols may only appear as (nested) arguments of unary predicates.
bool functions_confined_to_monadic_atoms(const Formula& phi) {
  for (const auto& a : atoms(phi)) {
    bool has_fn = std::any_of(a.terms().begin(), a.terms().end(), [](const Term& t) { return t.is_application(); });
    if (!has_fn) continue;
    if (a.kind() == Formula::Kind::Equality || a.terms().size() != 1) return false;
  }
  return true;
}

}  // namespace

bool are_separated(const Formula& phi, const std::set<std::string>& xs, const std::set<std::string>& ys) {
  if (intersects(xs, ys)) throw OverlapError("variable sets overlap");
  for (const auto& a : atoms(phi)) {
    auto vs = atom_vars(a);
    if (intersects(vs, xs) && intersects(vs, ys)) return false;
  }
  return true;
}

std::pair<QuantifierBlockPrefix, Formula> prefix_blocks(const Formula& phi) {
  QuantifierBlockPrefix prefix;
  const Formula* cur = &phi;
  while (cur->is_quantifier()) {
    Quantifier q = cur->quantifier();
    if (prefix.empty() || prefix.back().quantifier != q) prefix.push_back({q, {}});
    prefix.back().variables.push_back(cur->symbol());
    cur = &cur->operand();
  }
  if (!is_quantifier_free(*cur)) throw NotPrenex("formula is not in prenex form");
  return {prefix, *cur};
}

std::set<std::string> SeparatedShape::universal_vars() const {
  std::set<std::string> out;
  for (const auto& [xs, ys] : levels) out.insert(xs.begin(), xs.end());
  return out;
}

std::set<std::string> SeparatedShape::existential_vars() const {
  std::set<std::string> out;
  for (const auto& [xs, ys] : levels) out.insert(ys.begin(), ys.end());
  return out;
}

std::size_t SeparatedShape::alternations() const {
  return static_cast<std::size_t>(
      std::count_if(levels.begin(), levels.end(), [](const auto& l) { return !l.second.empty(); }));
}

SeparatedShape separated_shape(const QuantifierBlockPrefix& prefix, const Formula& matrix) {
  SeparatedShape shape;
  shape.matrix = matrix;
  std::size_t i = 0;
  if (i < prefix.size() && prefix[i].quantifier == Quantifier::Exists) shape.leading = prefix[i++].variables;
  while (i < prefix.size()) {
    std::vector<std::string> xs = prefix[i++].variables;
    std::vector<std::string> ys;
    if (i < prefix.size()) ys = prefix[i++].variables;
    shape.levels.emplace_back(std::move(xs), std::move(ys));
  }
  return shape;
}

SeparatedShape separated_shape(const Formula& phi) {
  auto [prefix, matrix] = prefix_blocks(to_prenex(rename_apart(phi)));
  return separated_shape(prefix, matrix);
}

FragmentLabel classify(const Formula& phi) {
  if (!free_vars(phi).empty()) throw NonSentence("classify expects a sentence");
  FragmentLabel label;
  const Signature sig = extract_signature(phi);
  label.has_equality = has_equality(phi);
  label.has_nonconstant_functions = !sig.functions.empty();

  const bool monadic = std::all_of(sig.predicates.begin(), sig.predicates.end(),
                                   [](const auto& p) { return p.second <= 1; });
  const bool unary_fns = std::all_of(sig.functions.begin(), sig.functions.end(),
                                     [](const auto& f) { return f.second == 1; });
  const bool fns = label.has_nonconstant_functions;
  const bool eq = label.has_equality;

  const Formula renamed = rename_apart(phi);
  auto [prefix, matrix] = prefix_blocks(to_prenex(renamed));
  const SeparatedShape shape = separated_shape(prefix, matrix);
  const bool bsr_prefix = shape.alternations() == 0 && shape.levels.size() <= 1;
  const bool separated = are_separated(matrix, shape.universal_vars(), shape.existential_vars());

  if (bsr_prefix && !fns && !eq) label.labels.insert(Fragment::BS);
  if (bsr_prefix && !fns) label.labels.insert(Fragment::BSR);
  if (monadic && !fns && !eq) label.labels.insert(Fragment::RelationalMonadic);
  if (monadic && !fns) label.labels.insert(Fragment::RelationalMonadicEq);
  if (monadic && unary_fns) label.labels.insert(Fragment::MonadicWithUnaryFns);
  if (separated && !fns) label.labels.insert(Fragment::SF);
  if (separated && unary_fns && functions_confined_to_monadic_atoms(phi))
    label.labels.insert(Fragment::SFExtendedUnaryFns);

  if (!separated && unary_fns) {
    auto [alt_prefix, alt_matrix] = prefix_blocks(to_prenex(renamed, PullOrder::ForallFirst));
    auto alt = separated_shape(alt_prefix, alt_matrix);
    label.sf_under_alternate_prenexing = are_separated(alt_matrix, alt.universal_vars(), alt.existential_vars());
  }
  if (label.labels.empty()) label.labels.insert(Fragment::NotClassified);
  return label;
}

}  // namespace sepfol
