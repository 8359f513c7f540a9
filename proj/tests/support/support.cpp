#include "support.hpp"

#include <stdexcept>

#include "sepfol/tptp.hpp"

namespace sepfol::testing {

namespace {

int eval_term(const Structure& s, const Assignment& beta, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return beta.at(t.name());
    case Term::Kind::Constant:
      return s.constants.at(t.name());
    case Term::Kind::Application: {
      std::vector<int> args;
      for (const auto& a : t.args()) args.push_back(eval_term(s, beta, a));
      return s.apply(t.name(), args);
    }
  }
  throw std::logic_error("term kind");
}

int pick(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

template <typename T>
const T& pick(std::mt19937& rng, const std::vector<T>& xs) {
  return xs[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(xs.size()) - 1))];
}

Term random_term(const Signature& sig, const std::vector<std::string>& vars, int depth, std::mt19937& rng) {
  int choice = pick(rng, 0, 5);
  if (depth > 0 && choice == 0 && !sig.functions.empty()) {
    auto it = std::next(sig.functions.begin(), pick(rng, 0, static_cast<int>(sig.functions.size()) - 1));
    std::vector<Term> args;
    for (int i = 0; i < it->second; ++i) args.push_back(random_term(sig, vars, depth - 1, rng));
    return Term::apply(it->first, args);
  }
  if ((choice == 1 || vars.empty()) && !sig.constants.empty()) {
    auto it = std::next(sig.constants.begin(), pick(rng, 0, static_cast<int>(sig.constants.size()) - 1));
    return Term::constant(*it);
  }
  if (vars.empty()) throw std::logic_error("no term available");
  return Term::variable(pick(rng, vars));
}

Formula random_atom(const Signature& sig, const std::vector<std::string>& vars, std::mt19937& rng) {
  if (pick(rng, 0, 6) == 0) {
    return Formula::equality(random_term(sig, vars, 1, rng), random_term(sig, vars, 1, rng));
  }
  auto it = std::next(sig.predicates.begin(), pick(rng, 0, static_cast<int>(sig.predicates.size()) - 1));
  std::vector<Term> args;
  for (int i = 0; i < it->second; ++i) args.push_back(random_term(sig, vars, 1, rng));
  return Formula::atom(it->first, args);
}

}  // namespace

bool naive_eval(const Structure& s, const Assignment& beta, const Formula& phi) {
  using K = Formula::Kind;
  switch (phi.kind()) {
    case K::Truth:
      return true;
    case K::Falsity:
      return false;
    case K::Atom: {
      std::vector<int> args;
      for (const auto& t : phi.terms()) args.push_back(eval_term(s, beta, t));
      return s.holds(phi.symbol(), args);
    }
    case K::Equality:
      return eval_term(s, beta, phi.terms()[0]) == eval_term(s, beta, phi.terms()[1]);
    case K::Not:
      return !naive_eval(s, beta, phi.operand());
    case K::And:
      return naive_eval(s, beta, phi.left()) && naive_eval(s, beta, phi.right());
    case K::Or:
      return naive_eval(s, beta, phi.left()) || naive_eval(s, beta, phi.right());
    case K::Implies:
      return !naive_eval(s, beta, phi.left()) || naive_eval(s, beta, phi.right());
    case K::Iff:
      return naive_eval(s, beta, phi.left()) == naive_eval(s, beta, phi.right());
    case K::Forall:
    case K::Exists: {
      bool universal = phi.kind() == K::Forall;
      Assignment inner = beta;
      for (int e = 0; e < s.universe_size; ++e) {
        inner[phi.symbol()] = e;
        if (naive_eval(s, inner, phi.operand()) != universal) return !universal;
      }
      return universal;
    }
  }
  throw std::logic_error("formula kind");
}

bool naive_satisfiable(const Formula& phi, int max_size) {
  Formula closed = phi;
  for (const auto& v : free_vars(phi)) closed = Formula::exists(v, closed);
  Signature sig = extract_signature(closed);
  for (int size = 1; size <= max_size; ++size) {
    Structure base;
    base.universe_size = size;
    base.declare(sig);
    // One digit per table entry: elements for constants and functions, bits for predicates.
    std::vector<int> radix;
    for (std::size_t i = 0; i < sig.constants.size(); ++i) radix.push_back(size);
    for (const auto& [f, a] : sig.functions) radix.insert(radix.end(), base.table_size(a), size);
    for (const auto& [p, a] : sig.predicates) radix.insert(radix.end(), base.table_size(a), 2);
    std::vector<int> digits(radix.size(), 0);
    for (bool more = true; more;) {
      Structure s = base;
      std::size_t i = 0;
      for (const auto& c : sig.constants) s.constants[c] = digits[i++];
      for (auto& [f, table] : s.functions)
        for (auto& v : table.values) v = digits[i++];
      for (auto& [p, table] : s.predicates)
        for (auto& b : table.bits) b = static_cast<std::uint8_t>(digits[i++]);
      if (naive_eval(s, {}, closed)) return true;
      more = false;
      for (std::size_t k = digits.size(); k-- > 0;) {
        if (++digits[k] < radix[k]) {
          more = true;
          break;
        }
        digits[k] = 0;
      }
    }
  }
  return false;
}

Structure random_structure(const Signature& sig, int size, std::mt19937& rng) {
  Structure s;
  s.universe_size = size;
  s.declare(sig);
  for (auto& [c, v] : s.constants) v = pick(rng, 0, size - 1);
  for (auto& [f, table] : s.functions)
    for (auto& v : table.values) v = pick(rng, 0, size - 1);
  for (auto& [p, table] : s.predicates)
    for (auto& b : table.bits) b = static_cast<std::uint8_t>(pick(rng, 0, 1));
  return s;
}

Formula random_matrix(const std::vector<Formula>& atoms, int depth, std::mt19937& rng) {
  if (depth == 0 || pick(rng, 0, 4) == 0) {
    Formula a = pick(rng, atoms);
    return pick(rng, 0, 2) == 0 ? Formula::negation(a) : a;
  }
  Formula l = random_matrix(atoms, depth - 1, rng);
  Formula r = random_matrix(atoms, depth - 1, rng);
  switch (pick(rng, 0, 5)) {
    case 0:
    case 1:
      return Formula::conjunction(l, r);
    case 2:
    case 3:
      return Formula::disjunction(l, r);
    case 4:
      return Formula::implication(l, r);
    default:
      return Formula::equivalence(l, r);
  }
}

Formula random_formula(const Signature& sig, std::vector<std::string> vars, int depth, std::mt19937& rng) {
  int choice = pick(rng, 0, 9);
  if (depth == 0 || choice < 2) {
    if (choice == 0 && depth > 0) return pick(rng, 0, 1) ? Formula::truth() : Formula::falsity();
    return random_atom(sig, vars, rng);
  }
  if (choice < 4) {
    std::string v = "V" + std::to_string(vars.size());
    if (pick(rng, 0, 3) == 0 && !vars.empty()) v = pick(rng, vars);  // shadowing
    std::vector<std::string> inner = vars;
    inner.push_back(v);
    Formula body = random_formula(sig, inner, depth - 1, rng);
    return choice == 2 ? Formula::forall(v, body) : Formula::exists(v, body);
  }
  if (choice == 4) return Formula::negation(random_formula(sig, vars, depth - 1, rng));
  Formula l = random_formula(sig, vars, depth - 1, rng);
  Formula r = random_formula(sig, vars, depth - 1, rng);
  switch (choice) {
    case 5:
      return Formula::conjunction(l, r);
    case 6:
      return Formula::disjunction(l, r);
    case 7:
      return Formula::implication(l, r);
    default:
      return Formula::equivalence(l, r);
  }
}

std::vector<Formula> atoms_over(const std::vector<std::string>& vars, std::mt19937& rng, int count) {
  std::vector<Formula> out;
  for (int i = 0; i < count; ++i) {
    switch (pick(rng, 0, 2)) {
      case 0:
        out.push_back(Formula::atom("p", {Term::variable(pick(rng, vars))}));
        break;
      case 1:
        out.push_back(Formula::atom("q", {Term::variable(pick(rng, vars))}));
        break;
      default:
        out.push_back(Formula::atom("r", {Term::variable(pick(rng, vars)), Term::variable(pick(rng, vars))}));
    }
  }
  return out;
}

Formula random_bsr(std::mt19937& rng) {
  std::vector<std::string> zs, xs, all;
  for (int i = 0, n = pick(rng, 0, 2); i < n; ++i) zs.push_back("Z" + std::to_string(i));
  for (int i = 0, n = pick(rng, 0, 3); i < n; ++i) xs.push_back("X" + std::to_string(i));
  all = zs;
  all.insert(all.end(), xs.begin(), xs.end());
  std::vector<Formula> atoms;
  if (all.empty()) {
    atoms.push_back(Formula::atom("s"));
  } else {
    atoms = atoms_over(all, rng, pick(rng, 1, 4));
    if (pick(rng, 0, 3) == 0) atoms.push_back(Formula::atom("t", {Term::constant("c"), Term::variable(pick(rng, all))}));
  }
  Formula body = random_matrix(atoms, 3, rng);
  return Formula::quantified(Quantifier::Exists, zs, Formula::quantified(Quantifier::Forall, xs, body));
}

Formula random_monadic(std::mt19937& rng) {
  Signature sig;
  sig.add_predicate("p", 1);
  sig.add_predicate("q", 1);
  sig.add_predicate("s", 1);
  if (pick(rng, 0, 2) == 0) sig.add_constant("c");
  // Start from one bound variable so every atom has a term available.
  std::string v = "V0";
  Formula body = random_formula(sig, {v}, 4, rng);
  Formula phi = pick(rng, 0, 1) ? Formula::forall(v, body) : Formula::exists(v, body);
  // Strip equality by construction: random_formula may emit it, so replace those sentences.
  while (has_equality(phi)) {
    body = random_formula(sig, {v}, 4, rng);
    phi = pick(rng, 0, 1) ? Formula::forall(v, body) : Formula::exists(v, body);
  }
  return phi;
}

Formula random_sf(std::mt19937& rng, int max_levels) {
  int levels = pick(rng, 1, max_levels);
  std::vector<std::string> zs;
  if (levels == 1 && pick(rng, 0, 1)) zs.push_back("Z");
  std::vector<std::string> universal = zs, existential = zs;
  QuantifierBlockPrefix prefix;
  if (!zs.empty()) prefix.push_back({Quantifier::Exists, zs});
  for (int k = 1; k <= levels; ++k) {
    std::string x = "X" + std::to_string(k), y = "Y" + std::to_string(k);
    std::vector<std::string> xb{x};
    if (levels == 1 && zs.empty() && pick(rng, 0, 1)) xb.push_back("U");
    prefix.push_back({Quantifier::Forall, xb});
    prefix.push_back({Quantifier::Exists, {y}});
    universal.insert(universal.end(), xb.begin(), xb.end());
    existential.push_back(y);
  }
  std::vector<Formula> atoms = atoms_over(universal, rng, pick(rng, 1, 2));
  auto more = atoms_over(existential, rng, pick(rng, 1, 2));
  atoms.insert(atoms.end(), more.begin(), more.end());
  return apply_prefix(prefix, random_matrix(atoms, 3, rng));
}

Formula random_transposable(std::mt19937& rng) {
  std::vector<std::string> xs{"X"}, ys{"Y"};
  if (pick(rng, 0, 1)) xs.push_back("U");
  if (pick(rng, 0, 2) == 0) ys.push_back("W");
  std::vector<std::string> xside = xs, yside = ys;
  if (pick(rng, 0, 1)) {
    xside.push_back("Z");
    yside.push_back("Z");
  }
  std::vector<Formula> atoms = atoms_over(xside, rng, pick(rng, 1, 3));
  auto more = atoms_over(yside, rng, pick(rng, 1, 2));
  atoms.insert(atoms.end(), more.begin(), more.end());
  return Formula::quantified(Quantifier::Forall, xs,
                             Formula::quantified(Quantifier::Exists, ys, random_matrix(atoms, 3, rng)));
}

Formula parse(const std::string& text) { return parse_formula(text); }

}  // namespace sepfol::testing
