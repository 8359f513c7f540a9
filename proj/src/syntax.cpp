#include "sepfol/syntax.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace sepfol {

// ---------------------------------------------------------------- terms

Term::Term(Kind kind, std::string name, std::vector<Term> args)
    : kind_(kind), name_(std::move(name)), args_(std::move(args)) {}

Term Term::variable(std::string name) { return Term(Kind::Variable, std::move(name), {}); }
Term Term::constant(std::string name) { return Term(Kind::Constant, std::move(name), {}); }
Term Term::apply(std::string function, std::vector<Term> args) {
  if (args.empty()) return constant(std::move(function));
  return Term(Kind::Application, std::move(function), std::move(args));
}

bool operator==(const Term& a, const Term& b) {
  return a.kind_ == b.kind_ && a.name_ == b.name_ && a.args_ == b.args_;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.name_.compare(b.name_); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::lexicographical_compare_three_way(a.args_.begin(), a.args_.end(), b.args_.begin(),
                                                b.args_.end());
}

// ---------------------------------------------------------------- formulas

struct Formula::Node {
  Kind kind;
  std::string symbol;
  std::vector<Term> terms;
  std::vector<Formula> children;
};

Formula::Formula() : Formula(truth()) {}

Formula Formula::atom(std::string predicate, std::vector<Term> args) {
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, std::move(predicate), std::move(args), {}}));
}

Formula Formula::equality(Term left, Term right) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Equality, {}, {std::move(left), std::move(right)}, {}}));
}

Formula Formula::truth() {
  static const Formula t(std::make_shared<const Node>(Node{Kind::Truth, {}, {}, {}}));
  return t;
}

Formula Formula::falsity() {
  static const Formula f(std::make_shared<const Node>(Node{Kind::Falsity, {}, {}, {}}));
  return f;
}

Formula Formula::negation(Formula operand) {
  return Formula(std::make_shared<const Node>(Node{Kind::Not, {}, {}, {std::move(operand)}}));
}

Formula Formula::conjunction(Formula left, Formula right) {
  return Formula(std::make_shared<const Node>(Node{Kind::And, {}, {}, {std::move(left), std::move(right)}}));
}

Formula Formula::disjunction(Formula left, Formula right) {
  return Formula(std::make_shared<const Node>(Node{Kind::Or, {}, {}, {std::move(left), std::move(right)}}));
}

Formula Formula::implication(Formula left, Formula right) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::Implies, {}, {}, {std::move(left), std::move(right)}}));
}

Formula Formula::equivalence(Formula left, Formula right) {
  return Formula(std::make_shared<const Node>(Node{Kind::Iff, {}, {}, {std::move(left), std::move(right)}}));
}

Formula Formula::forall(std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(Node{Kind::Forall, std::move(var), {}, {std::move(body)}}));
}

Formula Formula::exists(std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(Node{Kind::Exists, std::move(var), {}, {std::move(body)}}));
}

Formula Formula::quantified(Quantifier q, std::string var, Formula body) {
  return q == Quantifier::Forall ? forall(std::move(var), std::move(body))
                                 : exists(std::move(var), std::move(body));
}

Formula Formula::conjunction(const std::vector<Formula>& parts) {
  if (parts.empty()) return truth();
  Formula result = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) result = conjunction(result, parts[i]);
  return result;
}

Formula Formula::disjunction(const std::vector<Formula>& parts) {
  if (parts.empty()) return falsity();
  Formula result = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) result = disjunction(result, parts[i]);
  return result;
}

Formula Formula::quantified(Quantifier q, const std::vector<std::string>& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = quantified(q, *it, std::move(body));
  return body;
}

Formula::Kind Formula::kind() const { return node_->kind; }

const std::string& Formula::symbol() const { return node_->symbol; }

const std::vector<Term>& Formula::terms() const { return node_->terms; }

const Formula& Formula::operand() const { return node_->children.at(0); }
const Formula& Formula::left() const { return node_->children.at(0); }
const Formula& Formula::right() const { return node_->children.at(1); }

bool Formula::is_atomic() const { return kind() == Kind::Atom || kind() == Kind::Equality; }

bool Formula::is_literal() const { return is_atomic() || (kind() == Kind::Not && operand().is_atomic()); }

bool Formula::is_binary() const {
  switch (kind()) {
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff:
      return true;
    default:
      return false;
  }
}

bool Formula::is_quantifier() const { return kind() == Kind::Forall || kind() == Kind::Exists; }

Quantifier Formula::quantifier() const {
  return kind() == Kind::Forall ? Quantifier::Forall : Quantifier::Exists;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  return a.node_->kind == b.node_->kind && a.node_->symbol == b.node_->symbol &&
         a.node_->terms == b.node_->terms && a.node_->children == b.node_->children;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.node_->kind <=> b.node_->kind; c != 0) return c;
  if (auto c = a.node_->symbol.compare(b.node_->symbol); c != 0)
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  const auto& ta = a.node_->terms;
  const auto& tb = b.node_->terms;
  if (auto c = std::lexicographical_compare_three_way(ta.begin(), ta.end(), tb.begin(), tb.end()); c != 0)
    return c;
  const auto& ca = a.node_->children;
  const auto& cb = b.node_->children;
  return std::lexicographical_compare_three_way(ca.begin(), ca.end(), cb.begin(), cb.end());
}

// ---------------------------------------------------------------- signatures

namespace {

[[noreturn]] void arity_conflict(const std::string& name, const std::string& detail) {
  throw ArityConflict("symbol '" + name + "' " + detail);
}

}  // namespace

void Signature::add_predicate(const std::string& name, int arity) {
  if (functions.count(name) || constants.count(name)) arity_conflict(name, "used as predicate and term symbol");
  auto [it, inserted] = predicates.emplace(name, arity);
  if (!inserted && it->second != arity)
    arity_conflict(name, "used with arities " + std::to_string(it->second) + " and " + std::to_string(arity));
}

void Signature::add_function(const std::string& name, int arity) {
  if (arity == 0) return add_constant(name);
  if (predicates.count(name) || constants.count(name)) arity_conflict(name, "used as function and another kind of symbol");
  auto [it, inserted] = functions.emplace(name, arity);
  if (!inserted && it->second != arity)
    arity_conflict(name, "used with arities " + std::to_string(it->second) + " and " + std::to_string(arity));
}

void Signature::add_constant(const std::string& name) {
  if (predicates.count(name) || functions.count(name)) arity_conflict(name, "used as constant and another kind of symbol");
  constants.insert(name);
}

void Signature::merge(const Signature& other) {
  for (const auto& [name, arity] : other.predicates) add_predicate(name, arity);
  for (const auto& [name, arity] : other.functions) add_function(name, arity);
  for (const auto& name : other.constants) add_constant(name);
}

bool Signature::contains(const std::string& name) const {
  return predicates.count(name) || functions.count(name) || constants.count(name);
}

std::set<std::string> Signature::symbols() const {
  std::set<std::string> out(constants);
  for (const auto& [name, arity] : predicates) out.insert(name);
  for (const auto& [name, arity] : functions) out.insert(name);
  return out;
}

// ---------------------------------------------------------------- traversals

namespace {

void collect_term_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_variable()) {
    out.insert(t.name());
    return;
  }
  for (const auto& a : t.args()) collect_term_vars(a, out);
}

void collect_free(const Formula& phi, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (phi.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Equality: {
      std::set<std::string> vs;
      for (const auto& t : phi.terms()) collect_term_vars(t, vs);
      for (const auto& v : vs)
        if (!bound.count(v)) out.insert(v);
      return;
    }
    case Formula::Kind::Truth:
    case Formula::Kind::Falsity:
      return;
    case Formula::Kind::Not:
      collect_free(phi.operand(), bound, out);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      bool fresh = bound.insert(phi.symbol()).second;
      collect_free(phi.operand(), bound, out);
      if (fresh) bound.erase(phi.symbol());
      return;
    }
    default:
      collect_free(phi.left(), bound, out);
      collect_free(phi.right(), bound, out);
  }
}

template <typename Fn>
void visit(const Formula& phi, Fn&& fn) {
  fn(phi);
  switch (phi.kind()) {
    case Formula::Kind::Not:
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      visit(phi.operand(), fn);
      break;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      visit(phi.left(), fn);
      visit(phi.right(), fn);
      break;
    default:
      break;
  }
}

template <typename Fn>
void visit_terms(const Term& t, Fn&& fn) {
  fn(t);
  for (const auto& a : t.args()) visit_terms(a, fn);
}

}  // namespace

std::set<std::string> term_vars(const Term& t) {
  std::set<std::string> out;
  collect_term_vars(t, out);
  return out;
}

std::set<std::string> free_vars(const Formula& phi) {
  std::set<std::string> bound, out;
  collect_free(phi, bound, out);
  return out;
}

std::set<std::string> all_vars(const Formula& phi) {
  std::set<std::string> out;
  visit(phi, [&](const Formula& f) {
    if (f.is_quantifier()) out.insert(f.symbol());
    if (f.is_atomic())
      for (const auto& t : f.terms()) collect_term_vars(t, out);
  });
  return out;
}

std::set<std::string> bound_vars(const Formula& phi) {
  std::set<std::string> out;
  visit(phi, [&](const Formula& f) {
    if (f.is_quantifier()) out.insert(f.symbol());
  });
  return out;
}

std::vector<Formula> atoms(const Formula& phi) {
  std::vector<Formula> out;
  visit(phi, [&](const Formula& f) {
    if (f.is_atomic()) out.push_back(f);
  });
  return out;
}

Signature extract_signature(const Formula& phi) {
  Signature sig;
  visit(phi, [&](const Formula& f) {
    if (f.kind() == Formula::Kind::Atom) sig.add_predicate(f.symbol(), static_cast<int>(f.terms().size()));
    if (f.is_atomic()) {
      for (const auto& t : f.terms()) {
        visit_terms(t, [&](const Term& s) {
          if (s.is_constant()) sig.add_constant(s.name());
          if (s.is_application()) sig.add_function(s.name(), static_cast<int>(s.args().size()));
        });
      }
    }
  });
  return sig;
}

std::set<std::string> consts(const Formula& phi) { return extract_signature(phi).constants; }

std::set<std::string> all_names(const Formula& phi) {
  std::set<std::string> out = all_vars(phi);
  visit(phi, [&](const Formula& f) {
    if (f.kind() == Formula::Kind::Atom) out.insert(f.symbol());
    if (f.is_atomic())
      for (const auto& t : f.terms())
        visit_terms(t, [&](const Term& s) {
          if (!s.is_variable()) out.insert(s.name());
        });
  });
  return out;
}

bool has_equality(const Formula& phi) {
  bool found = false;
  visit(phi, [&](const Formula& f) { found = found || f.kind() == Formula::Kind::Equality; });
  return found;
}

bool has_nonconstant_functions(const Formula& phi) { return !extract_signature(phi).functions.empty(); }

bool is_quantifier_free(const Formula& phi) {
  bool found = false;
  visit(phi, [&](const Formula& f) { found = found || f.is_quantifier(); });
  return !found;
}

std::size_t count_quantifiers(const Formula& phi, Quantifier q) {
  std::size_t n = 0;
  visit(phi, [&](const Formula& f) {
    if (f.is_quantifier() && f.quantifier() == q) ++n;
  });
  return n;
}

std::size_t count_quantifiers(const Formula& phi) {
  return count_quantifiers(phi, Quantifier::Forall) + count_quantifiers(phi, Quantifier::Exists);
}

// ---------------------------------------------------------------- substitution

Term substitute(const Term& t, const Substitution& sigma) {
  if (t.is_variable()) {
    auto it = sigma.find(t.name());
    return it == sigma.end() ? t : it->second;
  }
  if (t.is_constant()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(substitute(a, sigma));
  return Term::apply(t.name(), std::move(args));
}

namespace {

Formula rebuild_binary(const Formula& phi, Formula l, Formula r) {
  switch (phi.kind()) {
    case Formula::Kind::And:
      return Formula::conjunction(std::move(l), std::move(r));
    case Formula::Kind::Or:
      return Formula::disjunction(std::move(l), std::move(r));
    case Formula::Kind::Implies:
      return Formula::implication(std::move(l), std::move(r));
    default:
      return Formula::equivalence(std::move(l), std::move(r));
  }
}

Formula substitute_rec(const Formula& phi, const Substitution& sigma) {
  if (sigma.empty()) return phi;
  switch (phi.kind()) {
    case Formula::Kind::Atom: {
      std::vector<Term> args;
      for (const auto& t : phi.terms()) args.push_back(substitute(t, sigma));
      return Formula::atom(phi.symbol(), std::move(args));
    }
    case Formula::Kind::Equality:
      return Formula::equality(substitute(phi.terms()[0], sigma), substitute(phi.terms()[1], sigma));
    case Formula::Kind::Truth:
    case Formula::Kind::Falsity:
      return phi;
    case Formula::Kind::Not:
      return Formula::negation(substitute_rec(phi.operand(), sigma));
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      const std::string& v = phi.symbol();
      const auto body_free = free_vars(phi.operand());
      Substitution inner;
      for (const auto& [key, image] : sigma) {
        if (key == v || !body_free.count(key)) continue;
        if (term_vars(image).count(v))
          throw CaptureError("substituting for '" + key + "' would be captured by the binder of '" + v + "'");
        inner.emplace(key, image);
      }
      if (inner.empty()) return phi;
      return Formula::quantified(phi.quantifier(), v, substitute_rec(phi.operand(), inner));
    }
    default:
      return rebuild_binary(phi, substitute_rec(phi.left(), sigma), substitute_rec(phi.right(), sigma));
  }
}

}  // namespace

Formula substitute(const Formula& phi, const Substitution& sigma) { return substitute_rec(phi, sigma); }

Formula rename_variable(const Formula& phi, const std::string& from, const std::string& to) {
  if (from == to) return phi;
  return substitute(phi, {{from, Term::variable(to)}});
}

// ---------------------------------------------------------------- renaming apart

namespace {

Term rename_term(const Term& t, const std::map<std::string, std::string>& env) {
  if (t.is_variable()) {
    auto it = env.find(t.name());
    return it == env.end() ? t : Term::variable(it->second);
  }
  if (t.is_constant()) return t;
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(rename_term(a, env));
  return Term::apply(t.name(), std::move(args));
}

struct Renamer {
  std::set<std::string> taken;
  NameSupply supply;

  Formula run(const Formula& phi, std::map<std::string, std::string>& env) {
    switch (phi.kind()) {
      case Formula::Kind::Atom: {
        std::vector<Term> args;
        for (const auto& t : phi.terms()) args.push_back(rename_term(t, env));
        return Formula::atom(phi.symbol(), std::move(args));
      }
      case Formula::Kind::Equality:
        return Formula::equality(rename_term(phi.terms()[0], env), rename_term(phi.terms()[1], env));
      case Formula::Kind::Truth:
      case Formula::Kind::Falsity:
        return phi;
      case Formula::Kind::Not:
        return Formula::negation(run(phi.operand(), env));
      case Formula::Kind::Forall:
      case Formula::Kind::Exists: {
        const std::string& v = phi.symbol();
        std::string name = v;
        if (taken.count(v)) name = supply.fresh_variant(v);
        taken.insert(name);
        supply.reserve(name);
        auto saved = env.find(v) == env.end() ? std::optional<std::string>() : std::optional<std::string>(env[v]);
        env[v] = name;
        Formula body = run(phi.operand(), env);
        if (saved)
          env[v] = *saved;
        else
          env.erase(v);
        return Formula::quantified(phi.quantifier(), name, std::move(body));
      }
      default: {
        Formula l = run(phi.left(), env);
        Formula r = run(phi.right(), env);
        return rebuild_binary(phi, std::move(l), std::move(r));
      }
    }
  }
};

}  // namespace

Formula rename_apart(const Formula& phi, const std::set<std::string>& reserved) {
  Renamer r;
  r.taken = reserved;
  const auto fv = free_vars(phi);
  r.taken.insert(fv.begin(), fv.end());
  const auto sig = extract_signature(phi).symbols();
  r.taken.insert(sig.begin(), sig.end());
  r.supply.reserve(r.taken);
  r.supply.reserve(all_names(phi));
  std::map<std::string, std::string> env;
  return r.run(phi, env);
}

bool is_renamed_apart(const Formula& phi) {
  std::set<std::string> seen = free_vars(phi);
  bool ok = true;
  visit(phi, [&](const Formula& f) {
    if (f.is_quantifier() && !seen.insert(f.symbol()).second) ok = false;
  });
  return ok;
}

// ---------------------------------------------------------------- sizes

std::size_t term_len(const Term& t) {
  std::size_t n = 1;
  for (const auto& a : t.args()) n += term_len(a);
  return n;
}

std::size_t formula_len(const Formula& phi) {
  switch (phi.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Equality: {
      std::size_t n = 1;
      for (const auto& t : phi.terms()) n += term_len(t);
      return n;
    }
    case Formula::Kind::Truth:
    case Formula::Kind::Falsity:
      return 1;
    case Formula::Kind::Not:
      return 1 + formula_len(phi.operand());
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      return 2 + formula_len(phi.operand());
    case Formula::Kind::And:
    case Formula::Kind::Or:
      return 1 + formula_len(phi.left()) + formula_len(phi.right());
    case Formula::Kind::Implies:
      // len(¬a ∨ b)
      return 2 + formula_len(phi.left()) + formula_len(phi.right());
    case Formula::Kind::Iff:
      // len((¬a ∨ b) ∧ (a ∨ ¬b))
      return 5 + 2 * (formula_len(phi.left()) + formula_len(phi.right()));
  }
  return 0;
}

std::size_t node_count(const Formula& phi) {
  std::size_t n = 0;
  visit(phi, [&](const Formula& f) {
    ++n;
    if (f.is_atomic())
      for (const auto& t : f.terms()) n += term_len(t);
  });
  return n;
}

Formula apply_prefix(const QuantifierBlockPrefix& prefix, Formula matrix) {
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
    matrix = Formula::quantified(it->quantifier, it->variables, std::move(matrix));
  return matrix;
}

// ---------------------------------------------------------------- names

void NameSupply::reserve(const Formula& phi) { reserve(all_names(phi)); }

std::string NameSupply::fresh(const std::string& base) {
  if (!used_.count(base)) {
    used_.insert(base);
    return base;
  }
  return fresh_variant(base);
}

std::string NameSupply::fresh_variant(const std::string& base) {
  for (std::size_t n = 1;; ++n) {
    std::string candidate = base + "_" + std::to_string(n);
    if (!used_.count(candidate)) {
      used_.insert(candidate);
      return candidate;
    }
  }
}

}  // namespace sepfol
