#pragma once

#include <compare>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "sepfol/errors.hpp"

namespace sepfol {

class Term {
 public:
  enum class Kind { Variable, Constant, Application };

  static Term variable(std::string name);
  static Term constant(std::string name);
  static Term apply(std::string function, std::vector<Term> args);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::vector<Term>& args() const { return args_; }

  bool is_variable() const { return kind_ == Kind::Variable; }
  bool is_constant() const { return kind_ == Kind::Constant; }
  bool is_application() const { return kind_ == Kind::Application; }

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  Term(Kind kind, std::string name, std::vector<Term> args);

  Kind kind_;
  std::string name_;
  std::vector<Term> args_;
};

enum class Quantifier { Forall, Exists };

class Formula {
 public:
  enum class Kind { Atom, Equality, Truth, Falsity, Not, And, Or, Implies, Iff, Forall, Exists };

  Formula();  // ⊤

  static Formula atom(std::string predicate, std::vector<Term> args = {});
  static Formula equality(Term left, Term right);
  static Formula truth();
  static Formula falsity();
  static Formula negation(Formula operand);
  static Formula conjunction(Formula left, Formula right);
  static Formula disjunction(Formula left, Formula right);
  static Formula implication(Formula left, Formula right);
  static Formula equivalence(Formula left, Formula right);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);
  static Formula quantified(Quantifier q, std::string var, Formula body);

  // Left-nested folds; the empty conjunction is ⊤ and the empty disjunction is ⊥.
  static Formula conjunction(const std::vector<Formula>& parts);
  static Formula disjunction(const std::vector<Formula>& parts);
  // Wraps body in the quantifiers of `vars`, first variable outermost.
  static Formula quantified(Quantifier q, const std::vector<std::string>& vars, Formula body);

  Kind kind() const;
  // Predicate name for atoms, bound variable for quantifiers, empty otherwise.
  const std::string& symbol() const;
  // Atom arguments, or the two sides of an equation.
  const std::vector<Term>& terms() const;
  // Operand of a negation or body of a quantifier.
  const Formula& operand() const;
  const Formula& left() const;
  const Formula& right() const;

  bool is_atomic() const;  // Atom or Equality
  bool is_literal() const;
  bool is_binary() const;
  bool is_quantifier() const;
  Quantifier quantifier() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Signature {
  std::map<std::string, int> predicates;
  std::map<std::string, int> functions;
  std::set<std::string> constants;

  // Adds every symbol of `other`; throws ArityConflict on clashes.
  void merge(const Signature& other);
  void add_predicate(const std::string& name, int arity);
  void add_function(const std::string& name, int arity);
  void add_constant(const std::string& name);
  bool contains(const std::string& name) const;
  std::set<std::string> symbols() const;
  bool empty() const { return predicates.empty() && functions.empty() && constants.empty(); }

  friend bool operator==(const Signature&, const Signature&) = default;
};

struct QuantifierBlock {
  Quantifier quantifier;
  std::vector<std::string> variables;

  friend bool operator==(const QuantifierBlock&, const QuantifierBlock&) = default;
};

using QuantifierBlockPrefix = std::vector<QuantifierBlock>;

using Substitution = std::map<std::string, Term>;

std::set<std::string> free_vars(const Formula& phi);
std::set<std::string> term_vars(const Term& t);
// Variables occurring in an atom or equation (or any formula, bound or free).
std::set<std::string> all_vars(const Formula& phi);
std::set<std::string> bound_vars(const Formula& phi);

Term substitute(const Term& t, const Substitution& sigma);
// Simultaneous capture-checked substitution of free occurrences.
Formula substitute(const Formula& phi, const Substitution& sigma);
Formula rename_variable(const Formula& phi, const std::string& from, const std::string& to);

Formula rename_apart(const Formula& phi, const std::set<std::string>& reserved = {});
bool is_renamed_apart(const Formula& phi);

std::size_t formula_len(const Formula& phi);
std::size_t term_len(const Term& t);
// Number of AST nodes, used for size budgets.
std::size_t node_count(const Formula& phi);

std::vector<Formula> atoms(const Formula& phi);
Signature extract_signature(const Formula& phi);
std::set<std::string> consts(const Formula& phi);
// Every variable, predicate, function and constant name in phi.
std::set<std::string> all_names(const Formula& phi);

bool has_equality(const Formula& phi);
bool has_nonconstant_functions(const Formula& phi);
bool is_quantifier_free(const Formula& phi);

Formula apply_prefix(const QuantifierBlockPrefix& prefix, Formula matrix);

std::size_t count_quantifiers(const Formula& phi, Quantifier q);
std::size_t count_quantifiers(const Formula& phi);

// Deterministic fresh symbols: `base` itself when unused, otherwise base_<n> for the least n.
class NameSupply {
 public:
  NameSupply() = default;
  explicit NameSupply(std::set<std::string> used) : used_(std::move(used)) {}

  void reserve(const std::string& name) { used_.insert(name); }
  void reserve(const std::set<std::string>& names) { used_.insert(names.begin(), names.end()); }
  void reserve(const Formula& phi);
  bool is_used(const std::string& name) const { return used_.count(name) > 0; }
  std::string fresh(const std::string& base);
  // Always appends a numeric suffix.
  std::string fresh_variant(const std::string& base);

 private:
  std::set<std::string> used_;
};

}  // namespace sepfol
