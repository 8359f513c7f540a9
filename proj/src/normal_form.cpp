#include <algorithm>

#include "propositional.hpp"
#include "sepfol/analysis.hpp"
#include "sepfol/transform.hpp"

namespace sepfol {

namespace {

const Formula& atom_of(const Formula& lit) { return lit.kind() == Formula::Kind::Not ? lit.operand() : lit; }

}  // namespace

bool literal_less(const Formula& a, const Formula& b) {
  const Formula& x = atom_of(a);
  const Formula& y = atom_of(b);
  const std::string xs = x.kind() == Formula::Kind::Equality ? "=" : x.symbol();
  const std::string ys = y.kind() == Formula::Kind::Equality ? "=" : y.symbol();
  if (xs != ys) return xs < ys;
  if (x.terms() != y.terms()) return x.terms() < y.terms();
  bool na = a.kind() == Formula::Kind::Not;
  bool nb = b.kind() == Formula::Kind::Not;
  return !na && nb;
}

std::vector<Formula> Constituent::literals() const {
  std::vector<Formula> out;
  out.insert(out.end(), chi.begin(), chi.end());
  out.insert(out.end(), eta.begin(), eta.end());
  out.insert(out.end(), param.begin(), param.end());
  std::sort(out.begin(), out.end(), literal_less);
  return out;
}

Formula NormalFormMatrix::to_formula() const {
  std::vector<Formula> parts;
  for (const auto& c : constituents) {
    auto lits = c.literals();
    parts.push_back(kind == NormalFormKind::DNF ? Formula::conjunction(lits) : Formula::disjunction(lits));
  }
  return kind == NormalFormKind::DNF ? Formula::disjunction(parts) : Formula::conjunction(parts);
}

NormalFormMatrix matrix_to_nf(const Formula& psi, const std::vector<std::string>& x_vars,
                              const std::vector<std::string>& y_vars, const std::vector<std::string>& z_vars,
                              NormalFormKind kind, const Caps& caps) {
  if (!is_quantifier_free(psi)) throw NotPrenex("matrix_to_nf expects a quantifier-free formula");
  const std::set<std::string> xs(x_vars.begin(), x_vars.end());
  const std::set<std::string> ys(y_vars.begin(), y_vars.end());
  if (!are_separated(psi, xs, ys)) throw SeparationError("universal and existential variables share an atom");

  detail::AtomTable atoms;
  auto compute = [&](bool drop) {
    return kind == NormalFormKind::DNF ? detail::literal_dnf(psi, true, atoms, drop, caps.node_cap)
                                       : detail::literal_cnf(psi, atoms, drop, caps.node_cap);
  };
  const auto sets = compute(true);

  NormalFormMatrix nf;
  nf.kind = kind;
  nf.x_vars = x_vars;
  nf.y_vars = y_vars;
  nf.z_vars = z_vars;
  nf.unpruned_count = compute(false).size();
  for (const auto& s : sets) {
    Constituent c;
    for (int lit : s) {
      Formula f = atoms.literal(lit);
      std::set<std::string> vs;
      for (const auto& t : atom_of(f).terms()) {
        auto tv = term_vars(t);
        vs.insert(tv.begin(), tv.end());
      }
      bool has_x = std::any_of(vs.begin(), vs.end(), [&](const std::string& v) { return xs.count(v) > 0; });
      bool has_y = std::any_of(vs.begin(), vs.end(), [&](const std::string& v) { return ys.count(v) > 0; });
      (has_x ? c.chi : has_y ? c.eta : c.param).push_back(std::move(f));
    }
    std::sort(c.chi.begin(), c.chi.end(), literal_less);
    std::sort(c.eta.begin(), c.eta.end(), literal_less);
    std::sort(c.param.begin(), c.param.end(), literal_less);
    nf.constituents.push_back(std::move(c));
  }
  return nf;
}

}  // namespace sepfol
