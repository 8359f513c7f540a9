#include "sepfol/reductions.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "sepfol/analysis.hpp"
#include "sepfol/bounds.hpp"
#include "sepfol/decide.hpp"
#include "sepfol/tptp.hpp"
#include "sepfol/transform.hpp"

namespace sepfol {

namespace {

using K = Formula::Kind;

Formula map_atoms(const Formula& f, const std::function<Formula(const Formula&)>& fn) {
  switch (f.kind()) {
    case K::Atom:
    case K::Equality:
      return fn(f);
    case K::Not:
      return Formula::negation(map_atoms(f.operand(), fn));
    case K::And:
    case K::Or:
    case K::Implies:
    case K::Iff: {
      // fn may draw fresh names, so the left operand must be visited first.
      Formula l = map_atoms(f.left(), fn);
      Formula r = map_atoms(f.right(), fn);
      if (f.kind() == K::And) return Formula::conjunction(l, r);
      if (f.kind() == K::Or) return Formula::disjunction(l, r);
      if (f.kind() == K::Implies) return Formula::implication(l, r);
      return Formula::equivalence(l, r);
    }
    case K::Forall:
    case K::Exists:
      return Formula::quantified(f.quantifier(), f.symbol(), map_atoms(f.operand(), fn));
    default:
      return f;
  }
}

std::size_t ceil_log2(std::uint64_t k) {
  std::size_t kappa = 0;
  while (kappa < 64 && (std::uint64_t{1} << kappa) < k) ++kappa;
  return kappa;
}

bool mentions_function(const Term& t) { return t.is_application(); }

// ⋀_P (P(s) ↔ P(t)); ⊤ for an empty list.
Formula agree_on(const std::vector<std::string>& unary, const Term& s, const Term& t) {
  std::vector<Formula> parts;
  for (const auto& p : unary) parts.push_back(Formula::equivalence(Formula::atom(p, {s}), Formula::atom(p, {t})));
  return Formula::conjunction(parts);
}

std::vector<std::string> fresh_unary(NameSupply& supply, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= count; ++i) out.push_back(supply.fresh("q_" + std::to_string(i)));
  return out;
}

Formula replace_equations(const Formula& phi, const std::vector<std::string>& unary) {
  return map_atoms(phi, [&](const Formula& a) {
    if (a.kind() != K::Equality) return a;
    return agree_on(unary, a.terms()[0], a.terms()[1]);
  });
}

std::vector<Term> fresh_vars(NameSupply& supply, const std::string& base, std::size_t count) {
  std::vector<Term> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(Term::variable(supply.fresh(base)));
  return out;
}

std::vector<std::string> names_of(const std::vector<Term>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(t.name());
  return out;
}

}  // namespace

// ---------------------------------------------------------------- unary functions

UnaryFunctionElimination eliminate_unary_functions_traced(const Formula& phi) {
  if (!free_vars(phi).empty()) throw NonSentence("eliminate_unary_functions expects a sentence");
  UnaryFunctionElimination out;
  out.original = extract_signature(phi);
  for (const auto& [f, arity] : out.original.functions)
    if (arity != 1) throw IneligibleOccurrence("function '" + f + "' is not unary");
  for (const auto& a : atoms(phi)) {
    const bool has_fn = std::any_of(a.terms().begin(), a.terms().end(), mentions_function);
    if (has_fn && (a.kind() == K::Equality || a.terms().size() != 1))
      throw IneligibleOccurrence("function symbol outside a unary atom: " + print_tptp(a));
  }
  if (out.original.functions.empty()) {
    out.formula = phi;
    return out;
  }

  NameSupply supply(all_names(phi));
  std::map<std::string, std::size_t> link_of;  // function -> index in out.links
  std::map<std::pair<std::string, std::string>, std::string> fresh_pred;  // (P, f) -> R
  std::size_t counter = 0;
  auto predicate_for = [&](const std::string& p, const std::string& f) {
    auto key = std::make_pair(p, f);
    auto it = fresh_pred.find(key);
    if (it != fresh_pred.end()) return it->second;
    const std::string r = supply.fresh("r_" + std::to_string(++counter));
    fresh_pred.emplace(key, r);
    if (!link_of.count(f)) {
      link_of[f] = out.links.size();
      out.links.push_back({f, {}});
    }
    out.links[link_of[f]].pairs.emplace_back(p, r);
    return r;
  };

  Formula psi = map_atoms(phi, [&](const Formula& a) {
    if (a.kind() != K::Atom || a.terms().size() != 1) return a;
    std::string p = a.symbol();
    Term t = a.terms()[0];
    while (t.is_application()) {
      p = predicate_for(p, t.name());
      t = t.args()[0];
    }
    return Formula::atom(p, {t});
  });

  const Term x = Term::variable(supply.fresh("X"));
  std::vector<std::string> ys;
  std::vector<Formula> defs;
  for (const auto& link : out.links) {
    const std::string y = supply.fresh(out.links.size() == 1 ? "Y" : "Y_" + std::to_string(ys.size() + 1));
    ys.push_back(y);
    for (const auto& [p, r] : link.pairs)
      defs.push_back(Formula::equivalence(Formula::atom(p, {Term::variable(y)}), Formula::atom(r, {x})));
  }
  out.formula = Formula::conjunction(
      psi, Formula::forall(x.name(), Formula::quantified(Quantifier::Exists, ys, Formula::conjunction(defs))));
  return out;
}

Formula eliminate_unary_functions(const Formula& phi) { return eliminate_unary_functions_traced(phi).formula; }

Structure transport_unary_model(const Structure& model, const UnaryFunctionElimination& elimination) {
  Structure out;
  out.universe_size = model.universe_size;
  const int n = model.universe_size;
  for (const auto& link : elimination.links) {
    FunctionTable table{1, std::vector<int>(static_cast<std::size_t>(n), 0)};
    for (int a = 0; a < n; ++a) {
      int chosen = -1;
      for (int e = 0; e < n && chosen < 0; ++e) {
        const bool fits = std::all_of(link.pairs.begin(), link.pairs.end(), [&](const auto& pr) {
          return model.holds(pr.first, {e}) == model.holds(pr.second, {a});
        });
        if (fits) chosen = e;
      }
      if (chosen < 0) throw std::invalid_argument("structure is not a model of the reduced sentence");
      table.values[static_cast<std::size_t>(a)] = chosen;
    }
    out.functions[link.function] = std::move(table);
  }
  for (const auto& [c, v] : model.constants)
    if (elimination.original.constants.count(c)) out.constants[c] = v;
  for (const auto& [p, t] : model.predicates)
    if (elimination.original.predicates.count(p)) out.predicates[p] = t;
  out.declare(elimination.original);
  return out;
}

// ---------------------------------------------------------------- equality

Formula eliminate_equality_monadic(const Formula& phi) {
  if (!classify(phi).contains(Fragment::RelationalMonadicEq))
    throw NotRelationalMonadic("expected a relational monadic sentence");
  if (!has_equality(phi)) return phi;
  const std::uint64_t k = count_quantifiers(phi) + consts(phi).size();
  NameSupply supply(all_names(phi));
  std::vector<std::string> unary;
  for (const auto& [p, arity] : extract_signature(phi).predicates)
    if (arity == 1) unary.push_back(p);
  auto qs = fresh_unary(supply, ceil_log2(k));
  unary.insert(unary.end(), qs.begin(), qs.end());
  return replace_equations(phi, unary);
}

Formula eliminate_equality_bounded(const Formula& phi, std::uint64_t k) {
  if (k < 1) throw std::invalid_argument("the model-size bound must be positive");
  if (!has_equality(phi)) return phi;
  const Signature sig = extract_signature(phi);
  NameSupply supply(all_names(phi));
  const std::vector<std::string> qs = fresh_unary(supply, ceil_log2(k));
  const Formula body = replace_equations(phi, qs);

  const Term x = Term::variable(supply.fresh("X"));
  const Term y = Term::variable(supply.fresh("Y"));
  const Formula same = agree_on(qs, x, y);
  std::vector<Formula> parts{body};

  // Both congruence axioms share the shape ∀xy. ψ≈(x,y) → ⋀ instances.
  auto axiom = [&](const std::vector<Formula>& instances) {
    if (instances.empty()) return;
    parts.push_back(Formula::forall(
        x.name(), Formula::forall(y.name(), Formula::implication(same, Formula::conjunction(instances)))));
  };

  std::vector<Formula> pred;
  for (const auto& [p, arity] : sig.predicates) {
    for (int i = 0; i < arity; ++i) {
      auto before = fresh_vars(supply, "U", static_cast<std::size_t>(i));
      auto after = fresh_vars(supply, "U", static_cast<std::size_t>(arity - i - 1));
      std::vector<Term> lhs = before, rhs = before;
      lhs.push_back(x);
      rhs.push_back(y);
      lhs.insert(lhs.end(), after.begin(), after.end());
      rhs.insert(rhs.end(), after.begin(), after.end());
      std::vector<std::string> bound = names_of(before);
      for (const auto& v : names_of(after)) bound.push_back(v);
      pred.push_back(Formula::quantified(Quantifier::Forall, bound,
                                         Formula::implication(Formula::atom(p, lhs), Formula::atom(p, rhs))));
    }
  }
  axiom(pred);

  std::vector<Formula> func;
  if (!qs.empty()) {
    for (const auto& [f, arity] : sig.functions) {
      for (int i = 0; i < arity; ++i) {
        auto before = fresh_vars(supply, "V", static_cast<std::size_t>(i));
        auto after = fresh_vars(supply, "V", static_cast<std::size_t>(arity - i - 1));
        std::vector<Term> lhs = before, rhs = before;
        lhs.push_back(x);
        rhs.push_back(y);
        lhs.insert(lhs.end(), after.begin(), after.end());
        rhs.insert(rhs.end(), after.begin(), after.end());
        std::vector<std::string> bound = names_of(before);
        for (const auto& v : names_of(after)) bound.push_back(v);
        func.push_back(Formula::quantified(Quantifier::Forall, bound,
                                           agree_on(qs, Term::apply(f, lhs), Term::apply(f, rhs))));
      }
    }
  }
  axiom(func);
  return Formula::conjunction(parts);
}

// ---------------------------------------------------------------- clause export

std::string ClauseSet::print() const {
  std::string out;
  std::size_t n = 0;
  for (const auto& c : clauses) {
    std::string body;
    for (std::size_t i = 0; i < c.literals.size(); ++i) body += (i ? " | " : "") + print_tptp(c.literals[i]);
    if (c.literals.empty()) body = "$false";
    out += "cnf(" + c.origin + "_" + std::to_string(++n) + ", axiom, (" + body + ")).\n";
  }
  return out;
}

Formula ClauseSet::to_formula() const {
  std::vector<Formula> parts;
  std::set<std::string> vars;
  for (const auto& c : clauses) {
    parts.push_back(Formula::disjunction(c.literals));
    for (const auto& l : c.literals) {
      auto vs = free_vars(l);
      vars.insert(vs.begin(), vs.end());
    }
  }
  return Formula::quantified(Quantifier::Forall, std::vector<std::string>(vars.begin(), vars.end()),
                             Formula::conjunction(parts));
}

std::size_t ClauseSet::count(const std::string& origin) const {
  return static_cast<std::size_t>(
      std::count_if(clauses.begin(), clauses.end(), [&](const Clause& c) { return c.origin == origin; }));
}

namespace {

class ClauseBuilder {
 public:
  explicit ClauseBuilder(ClauseSet& out) : out_(out) {}

  void add(std::vector<Formula> lits, const std::string& origin) {
    std::sort(lits.begin(), lits.end(), literal_less);
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    if (!seen_.insert(lits).second) return;
    for (const auto& l : lits) out_.signature.merge(extract_signature(l));
    out_.clauses.push_back({std::move(lits), origin});
  }

 private:
  ClauseSet& out_;
  std::set<std::vector<Formula>> seen_;
};

// Clauses of ⋁_ℓ ⋀_i atom(ℓ, i): one literal per disjunct, every combination.
void distribute_domain_axiom(ClauseBuilder& b, std::size_t width, std::size_t arity,
                             const std::function<Formula(std::size_t, std::size_t)>& atom, const Caps& caps) {
  if (arity == 0) return;
  // Literal count of the distributed axiom: arity^width clauses of width literals each.
  std::uint64_t total = std::max<std::size_t>(width, 1);
  for (std::size_t l = 0; l < width; ++l) {
    if (total > caps.node_cap / arity) throw BudgetExceeded("finite-domain axiom has too many clauses");
    total *= arity;
  }
  std::vector<std::size_t> pick(width, 0);
  for (;;) {
    std::vector<Formula> lits;
    for (std::size_t l = 0; l < width; ++l) lits.push_back(atom(l + 1, pick[l] + 1));
    b.add(std::move(lits), "domain_axiom");
    std::size_t i = width;
    while (i > 0 && pick[i - 1] == arity - 1) pick[--i] = 0;
    if (i == 0) return;
    ++pick[i - 1];
  }
}

}  // namespace

ClauseSet to_bsr_clauses(const Formula& phi, BsrEncoding encoding, const Caps& caps) {
  if (!classify(phi).contains(Fragment::SF)) throw NotSF("to_bsr_clauses expects an SF sentence");
  const SeparatedShape shape = separated_shape(phi);
  if (shape.levels.size() > 1) throw UnsupportedShape("to_bsr_clauses expects a single ∀∃ block");
  std::vector<std::string> xs, ys;
  if (!shape.levels.empty()) {
    xs = shape.levels[0].first;
    ys = shape.levels[0].second;
  }
  const Bounds bounds = compute_bounds(phi, caps);
  const NormalFormMatrix cnf = matrix_to_nf(shape.matrix, xs, ys, shape.leading, NormalFormKind::CNF, caps);

  NameSupply supply(all_names(phi));
  Substitution sigma;
  for (const auto& z : shape.leading) sigma.emplace(z, Term::constant(supply.fresh("d")));
  std::vector<Term> x_terms;
  for (const auto& x : xs) x_terms.push_back(Term::variable(x));

  std::vector<std::vector<std::string>> constants(bounds.m_star + 1, std::vector<std::string>(ys.size() + 1));
  for (std::size_t l = 1; l <= bounds.m_star && !ys.empty(); ++l)
    for (std::size_t i = 1; i <= ys.size(); ++i)
      constants[l][i] = supply.fresh("c_" + std::to_string(l) + "_" + std::to_string(i));

  ClauseSet out;
  ClauseBuilder builder(out);

  if (encoding == BsrEncoding::SkolemFn) {
    std::vector<Term> images;
    for (std::size_t i = 1; i <= ys.size(); ++i) {
      const std::string f = supply.fresh("f_" + std::to_string(i));
      Term t = x_terms.empty() ? Term::constant(f) : Term::apply(f, x_terms);
      sigma.emplace(ys[i - 1], t);
      images.push_back(t);
    }
    for (const auto& c : cnf.constituents) {
      std::vector<Formula> lits;
      for (const auto& l : c.literals()) lits.push_back(substitute(l, sigma));
      builder.add(std::move(lits), "matrix");
    }
    distribute_domain_axiom(builder, bounds.m_star, ys.size(), [&](std::size_t l, std::size_t i) {
      return Formula::equality(images[i - 1], Term::constant(constants[l][i]));
    }, caps);
    return out;
  }

  std::vector<std::string> relations;
  for (std::size_t i = 1; i <= ys.size(); ++i) relations.push_back(supply.fresh("r_" + std::to_string(i)));
  auto relate = [&](std::size_t i, const Term& value) {
    std::vector<Term> args = x_terms;
    args.push_back(value);
    return Formula::atom(relations[i - 1], args);
  };
  for (const auto& c : cnf.constituents) {
    std::vector<Formula> lits;
    for (std::size_t i = 1; i <= ys.size(); ++i)
      lits.push_back(Formula::negation(relate(i, Term::variable(ys[i - 1]))));
    for (const auto& l : c.literals()) lits.push_back(substitute(l, sigma));
    builder.add(std::move(lits), ys.empty() ? "matrix" : "guard");
  }
  distribute_domain_axiom(builder, bounds.m_star, ys.size(), [&](std::size_t l, std::size_t i) {
    return relate(i, Term::constant(constants[l][i]));
  }, caps);
  if (!ys.empty() && bounds.m_star == 0) builder.add({}, "domain_axiom");
  return out;
}

}  // namespace sepfol
