#include <algorithm>
#include <functional>

#include "sepfol/analysis.hpp"
#include "sepfol/bounds.hpp"
#include "sepfol/transform.hpp"

namespace sepfol {

namespace {

void require_sf(const Formula& phi) {
  if (!classify(phi).contains(Fragment::SF)) throw NotSF("expected an SF sentence");
}

std::vector<Term> variables(const std::vector<std::string>& names) {
  std::vector<Term> out;
  for (const auto& v : names) out.push_back(Term::variable(v));
  return out;
}

Term skolem_term(const std::string& name, const std::vector<Term>& args) {
  return args.empty() ? Term::constant(name) : Term::apply(name, args);
}

// ∃z ∀x1 ∃y1 … around a new matrix, skipping empty blocks.
Formula rebuild(const SeparatedShape& shape, Formula matrix) {
  QuantifierBlockPrefix prefix;
  auto push = [&](Quantifier q, const std::vector<std::string>& vs) {
    if (!vs.empty()) prefix.push_back({q, vs});
  };
  push(Quantifier::Exists, shape.leading);
  for (const auto& [xs, ys] : shape.levels) {
    push(Quantifier::Forall, xs);
    push(Quantifier::Exists, ys);
  }
  return apply_prefix(prefix, std::move(matrix));
}

// ⋀_i lhs_i ≈ rhs_i
Formula pointwise(const std::vector<Term>& lhs, const std::vector<Term>& rhs) {
  std::vector<Formula> eqs;
  for (std::size_t i = 0; i < lhs.size(); ++i) eqs.push_back(Formula::equality(lhs[i], rhs[i]));
  return Formula::conjunction(eqs);
}

void check_constant_budget(std::uint64_t count, const Caps& caps) {
  if (count > caps.constant_cap) throw BudgetExceeded("finite-domain constraint needs too many fresh symbols");
}

// ⋁_{ℓ ≤ width} ⋀_i terms_i ≈ name(ℓ, i)(args); ⊤ when there is nothing to restrict.
Formula finite_domain(const std::vector<Term>& terms, std::size_t width, const std::vector<Term>& args,
                      const std::function<std::string(std::size_t, std::size_t)>& name) {
  if (terms.empty()) return Formula::truth();
  std::vector<Formula> cases;
  for (std::size_t l = 1; l <= width; ++l) {
    std::vector<Term> targets;
    for (std::size_t i = 1; i <= terms.size(); ++i) targets.push_back(skolem_term(name(l, i), args));
    cases.push_back(pointwise(terms, targets));
  }
  return Formula::disjunction(cases);
}

struct SingleBlock {
  SeparatedShape shape;
  std::vector<std::string> xs;
  std::vector<std::string> ys;
};

SingleBlock single_block(const Formula& phi) {
  require_sf(phi);
  SingleBlock sb{separated_shape(phi), {}, {}};
  if (sb.shape.levels.size() > 1) throw UnsupportedShape("expected a single ∀∃ block");
  if (!sb.shape.levels.empty()) {
    sb.xs = sb.shape.levels[0].first;
    sb.ys = sb.shape.levels[0].second;
  }
  return sb;
}

std::string suffix(std::size_t n) { return "_" + std::to_string(n); }

}  // namespace

Formula range_restrict(const Formula& phi, const Caps& caps) {
  SingleBlock sb = single_block(phi);
  const Bounds b = compute_bounds(phi, caps);
  check_constant_budget(static_cast<std::uint64_t>(b.m_star) * sb.ys.size(), caps);
  NameSupply supply(all_names(phi));
  Formula constraint = finite_domain(variables(sb.ys), b.m_star, {}, [&](std::size_t l, std::size_t i) {
    return supply.fresh("c" + suffix(l) + suffix(i));
  });
  if (sb.ys.empty()) return rebuild(sb.shape, sb.shape.matrix);
  return rebuild(sb.shape, Formula::conjunction(sb.shape.matrix, constraint));
}

Formula skolemize_range_restricted(const Formula& phi, const Caps& caps) {
  SingleBlock sb = single_block(phi);
  const Bounds b = compute_bounds(phi, caps);
  check_constant_budget(static_cast<std::uint64_t>(b.m_star) * sb.ys.size() + sb.ys.size(), caps);
  NameSupply supply(all_names(sb.shape.matrix));
  supply.reserve(all_names(phi));

  const std::vector<Term> xs = variables(sb.xs);
  Substitution sigma;
  for (const auto& z : sb.shape.leading) sigma.emplace(z, Term::constant(supply.fresh("d")));
  std::vector<Term> images;
  for (std::size_t i = 1; i <= sb.ys.size(); ++i) {
    Term t = skolem_term(supply.fresh("f" + suffix(i)), xs);
    sigma.emplace(sb.ys[i - 1], t);
    images.push_back(t);
  }
  Formula body = substitute(sb.shape.matrix, sigma);
  if (!images.empty()) {
    body = Formula::conjunction(body, finite_domain(images, b.m_star, {}, [&](std::size_t l, std::size_t i) {
                                  return supply.fresh("c" + suffix(l) + suffix(i));
                                }));
  }
  return Formula::quantified(Quantifier::Forall, sb.xs, body);
}

Formula inner_skolemize(const Formula& phi, const Caps& caps) {
  SingleBlock sb = single_block(phi);
  const NormalFormMatrix dnf =
      matrix_to_nf(sb.shape.matrix, sb.xs, sb.ys, sb.shape.leading, NormalFormKind::DNF, caps);
  check_constant_budget(static_cast<std::uint64_t>(dnf.size()) * sb.ys.size(), caps);
  NameSupply supply(all_names(phi));

  Substitution leading;
  for (const auto& z : sb.shape.leading) leading.emplace(z, Term::constant(supply.fresh("d")));
  std::vector<Formula> disjuncts;
  for (std::size_t k = 1; k <= dnf.size(); ++k) {
    Substitution sigma = leading;
    for (std::size_t i = 1; i <= sb.ys.size(); ++i) {
      const std::string name = sb.ys.size() == 1 ? "c" + suffix(k) : "c" + suffix(k) + suffix(i);
      sigma.emplace(sb.ys[i - 1], Term::constant(supply.fresh(name)));
    }
    std::vector<Formula> lits;
    for (const auto& lit : dnf.constituents[k - 1].literals()) lits.push_back(substitute(lit, sigma));
    disjuncts.push_back(Formula::conjunction(lits));
  }
  return Formula::quantified(Quantifier::Forall, sb.xs, Formula::disjunction(disjuncts));
}

Formula multi_block_constraints(const Formula& phi, const Caps& caps) {
  require_sf(phi);
  const SeparatedShape shape = separated_shape(phi);
  const std::size_t n = shape.levels.size();
  if (n <= 1) return range_restrict(phi, caps);
  const Bounds b = compute_bounds(phi, caps);
  NameSupply supply(all_names(phi));
  auto ys = [&](std::size_t k) { return variables(shape.levels[k - 1].second); };

  if (b.regime == Regime::StrongSeparation) {
    const BigNat kappa = binom_central(b.m_dnf);
    if (kappa > BigNat(caps.constant_cap)) throw BudgetExceeded("finite-domain constraint needs too many fresh symbols");
    std::uint64_t count = 0;
    std::vector<std::size_t> widths;
    for (std::size_t k = 1; k <= n; ++k) {
      widths.push_back(k < n ? kappa.convert_to<std::size_t>() : b.m_dnf);
      count += static_cast<std::uint64_t>(widths.back()) * shape.levels[k - 1].second.size();
    }
    check_constant_budget(count, caps);
    std::vector<Formula> parts;
    for (std::size_t k = 1; k <= n; ++k) {
      if (shape.levels[k - 1].second.empty()) continue;
      parts.push_back(finite_domain(ys(k), widths[k - 1], {}, [&](std::size_t j, std::size_t i) {
        return supply.fresh("c" + suffix(k) + suffix(j) + suffix(i));
      }));
    }
    return rebuild(shape, Formula::conjunction(shape.matrix, Formula::conjunction(parts)));
  }

  // Nested regime: block k branches twoup(n-k, m) ways below every choice made for blocks 1..k-1.
  std::vector<std::size_t> widths(n + 1, 1);
  BigNat count = 0, paths = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    if (shape.levels[k - 1].second.empty()) continue;
    Magnitude w = twoup(n - k, b.m_dnf, caps.magnitude_cap);
    if (!w || *w > BigNat(caps.constant_cap)) throw BudgetExceeded("nested constraint is too wide");
    widths[k] = w->convert_to<std::size_t>();
    paths *= *w;
    count += paths * shape.levels[k - 1].second.size();
    if (count > BigNat(caps.constant_cap)) throw BudgetExceeded("nested constraint needs too many fresh constants");
  }

  std::function<Formula(std::size_t, const std::string&)> nest = [&](std::size_t k, const std::string& path) {
    if (k > n) return Formula::truth();
    std::vector<Formula> cases;
    const auto vars = ys(k);
    for (std::size_t j = 1; j <= widths[k]; ++j) {
      const std::string here = path + suffix(j);
      std::vector<Term> targets;
      for (std::size_t i = 1; i <= vars.size(); ++i) targets.push_back(Term::constant(supply.fresh("c" + here + suffix(i))));
      Formula rest = nest(k + 1, here);
      cases.push_back(vars.empty() ? rest : rest.kind() == Formula::Kind::Truth
                                                  ? pointwise(vars, targets)
                                                  : Formula::conjunction(pointwise(vars, targets), rest));
    }
    return Formula::disjunction(cases);
  };
  return rebuild(shape, Formula::conjunction(shape.matrix, nest(1, "")));
}

Formula range_restrict_open(const Formula& phi, const Caps& caps) {
  const Formula prenex = to_prenex(rename_apart(phi));
  auto [prefix, matrix] = prefix_blocks(prenex);
  if (prefix.size() < 2 || prefix.back().quantifier != Quantifier::Exists ||
      prefix[prefix.size() - 2].quantifier != Quantifier::Forall)
    throw UnsupportedShape("expected a prefix ending in a ∀ block followed by an ∃ block");

  const std::vector<std::string>& y_names = prefix.back().variables;
  const std::set<std::string> ys(y_names.begin(), y_names.end());
  std::set<std::string> linked;  // variables sharing an atom with some y
  for (const auto& a : atoms(matrix)) {
    std::set<std::string> vs;
    for (const auto& t : a.terms()) {
      auto tv = term_vars(t);
      vs.insert(tv.begin(), tv.end());
    }
    if (std::any_of(vs.begin(), vs.end(), [&](const std::string& v) { return ys.count(v) > 0; }))
      linked.insert(vs.begin(), vs.end());
  }

  std::vector<std::string> zs, xs;
  for (const auto& v : free_vars(phi)) zs.push_back(v);
  for (std::size_t b = 0; b + 2 < prefix.size(); ++b)
    zs.insert(zs.end(), prefix[b].variables.begin(), prefix[b].variables.end());
  for (const auto& v : prefix[prefix.size() - 2].variables) (linked.count(v) ? zs : xs).push_back(v);
  if (!are_separated(matrix, {xs.begin(), xs.end()}, ys))
    throw SeparationError("universal and existential variables share an atom");

  const std::size_t m_dnf = matrix_to_nf(matrix, xs, y_names, zs, NormalFormKind::DNF, caps).size();
  const std::size_t m_cnf = matrix_to_nf(matrix, xs, y_names, zs, NormalFormKind::CNF, caps).size();
  const std::size_t m_star = m_cnf < 63 ? std::min<std::size_t>(std::size_t{1} << m_cnf, m_dnf) : m_dnf;
  check_constant_budget(static_cast<std::uint64_t>(m_star) * y_names.size(), caps);

  NameSupply supply(all_names(prenex));
  supply.reserve(all_names(phi));
  Formula constraint = finite_domain(variables(y_names), m_star, variables(zs), [&](std::size_t j, std::size_t i) {
    return supply.fresh(y_names.size() == 1 ? "g" + suffix(j) : "g" + suffix(j) + suffix(i));
  });
  return apply_prefix(prefix, Formula::conjunction(matrix, constraint));
}

}  // namespace sepfol
