#include "sepfol/decide.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>

#include "sepfol/analysis.hpp"
#include "sepfol/bounds.hpp"

namespace sepfol {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp && out != kSaturated; ++i) out = sat_mul(out, base);
  return out;
}

// Digit positions of every symbol in the flat encoding of a structure.
struct Layout {
  struct Table {
    std::size_t base = 0;
    int arity = 0;
  };

  int size = 1;
  std::vector<std::string> constant_names;
  std::map<std::string, std::size_t> constants;
  std::map<std::string, Table> functions;
  std::map<std::string, Table> predicates;
  std::vector<int> radix;

  Layout(const Signature& sig, int n) : size(n) {
    for (const auto& c : sig.constants) {
      constants[c] = radix.size();
      constant_names.push_back(c);
      radix.push_back(n);
    }
    for (const auto& [f, arity] : sig.functions) {
      functions[f] = {radix.size(), arity};
      radix.resize(radix.size() + cells(arity), n);
    }
    for (const auto& [p, arity] : sig.predicates) {
      predicates[p] = {radix.size(), arity};
      radix.resize(radix.size() + cells(arity), 2);
    }
  }

  std::size_t cells(int arity) const {
    std::size_t c = 1;
    for (int i = 0; i < arity; ++i) c *= static_cast<std::size_t>(size);
    return c;
  }

  Structure decode(const std::vector<int>& digits) const {
    Structure s;
    s.universe_size = size;
    for (const auto& [c, pos] : constants) s.constants[c] = digits[pos];
    for (const auto& [f, t] : functions) {
      FunctionTable ft{t.arity, {}};
      ft.values.assign(digits.begin() + static_cast<std::ptrdiff_t>(t.base),
                       digits.begin() + static_cast<std::ptrdiff_t>(t.base + cells(t.arity)));
      s.functions[f] = std::move(ft);
    }
    for (const auto& [p, t] : predicates) {
      PredicateTable pt{t.arity, {}};
      for (std::size_t i = 0; i < cells(t.arity); ++i) pt.bits.push_back(static_cast<std::uint8_t>(digits[t.base + i]));
      s.predicates[p] = std::move(pt);
    }
    return s;
  }

  // Throws MissingInterpretation when s lacks a symbol or interprets it with another arity.
  std::vector<int> encode(const Structure& s) const {
    std::vector<int> digits(radix.size(), 0);
    for (const auto& [c, pos] : constants) {
      auto it = s.constants.find(c);
      if (it == s.constants.end()) throw MissingInterpretation("no interpretation for constant '" + c + "'");
      digits[pos] = it->second;
    }
    for (const auto& [f, t] : functions) {
      auto it = s.functions.find(f);
      if (it == s.functions.end() || it->second.arity != t.arity || it->second.values.size() != cells(t.arity))
        throw MissingInterpretation("no interpretation for function '" + f + "'/" + std::to_string(t.arity));
      std::copy(it->second.values.begin(), it->second.values.end(), digits.begin() + static_cast<std::ptrdiff_t>(t.base));
    }
    for (const auto& [p, t] : predicates) {
      auto it = s.predicates.find(p);
      if (it == s.predicates.end() || (it->second.arity >= 0 && it->second.arity != t.arity))
        throw MissingInterpretation("no interpretation for predicate '" + p + "'/" + std::to_string(t.arity));
      if (it->second.arity < 0) continue;  // empty relation
      for (std::size_t i = 0; i < cells(t.arity); ++i) digits[t.base + i] = it->second.bits[i];
    }
    return digits;
  }
};

// Formula compiled against a layout: symbols become digit offsets and variables become slots.
class Compiled {
 public:
  Compiled(const Formula& phi, const Layout& layout, const std::vector<std::string>& free)
      : n_(static_cast<std::size_t>(layout.size)) {
    std::map<std::string, int> scope;
    for (const auto& v : free) scope[v] = slots_++;
    root_ = compile(phi, layout, scope);
  }

  int slots() const { return slots_; }

  bool run(const std::vector<int>& digits, std::vector<int>& env) const { return eval(root_, digits, env); }

 private:
  struct TermCode {
    enum Kind { Var, Const, App } kind;
    std::size_t index = 0;  // slot, digit, or table base
    std::vector<TermCode> args;
  };
  struct Code {
    enum Op { True, False, Pred, Eq, Not, And, Or, Imp, Iff, All, Ex } op;
    std::size_t index = 0;  // predicate table base or bound slot
    std::vector<TermCode> terms;
    std::vector<Code> kids;
  };

  TermCode compile(const Term& t, const Layout& layout, const std::map<std::string, int>& scope) {
    switch (t.kind()) {
      case Term::Kind::Variable: {
        auto it = scope.find(t.name());
        if (it == scope.end()) throw MissingInterpretation("no value for variable '" + t.name() + "'");
        return {TermCode::Var, static_cast<std::size_t>(it->second), {}};
      }
      case Term::Kind::Constant:
        return {TermCode::Const, layout.constants.at(t.name()), {}};
      case Term::Kind::Application: {
        TermCode c{TermCode::App, layout.functions.at(t.name()).base, {}};
        for (const auto& a : t.args()) c.args.push_back(compile(a, layout, scope));
        return c;
      }
    }
    throw std::logic_error("unknown term kind");
  }

  Code compile(const Formula& f, const Layout& layout, std::map<std::string, int>& scope) {
    using K = Formula::Kind;
    Code c{Code::True, 0, {}, {}};
    switch (f.kind()) {
      case K::Truth: return c;
      case K::Falsity: c.op = Code::False; return c;
      case K::Atom:
        c.op = Code::Pred;
        c.index = layout.predicates.at(f.symbol()).base;
        for (const auto& t : f.terms()) c.terms.push_back(compile(t, layout, scope));
        return c;
      case K::Equality:
        c.op = Code::Eq;
        for (const auto& t : f.terms()) c.terms.push_back(compile(t, layout, scope));
        return c;
      case K::Not:
        c.op = Code::Not;
        c.kids.push_back(compile(f.operand(), layout, scope));
        return c;
      case K::And: c.op = Code::And; break;
      case K::Or: c.op = Code::Or; break;
      case K::Implies: c.op = Code::Imp; break;
      case K::Iff: c.op = Code::Iff; break;
      case K::Forall:
      case K::Exists: {
        c.op = f.kind() == K::Forall ? Code::All : Code::Ex;
        const int slot = slots_++;
        c.index = static_cast<std::size_t>(slot);
        auto saved = scope.find(f.symbol());
        std::optional<int> previous;
        if (saved != scope.end()) previous = saved->second;
        scope[f.symbol()] = slot;
        c.kids.push_back(compile(f.operand(), layout, scope));
        if (previous)
          scope[f.symbol()] = *previous;
        else
          scope.erase(f.symbol());
        return c;
      }
    }
    c.kids.push_back(compile(f.left(), layout, scope));
    c.kids.push_back(compile(f.right(), layout, scope));
    return c;
  }

  int value(const TermCode& t, const std::vector<int>& digits, const std::vector<int>& env) const {
    switch (t.kind) {
      case TermCode::Var: return env[t.index];
      case TermCode::Const: return digits[t.index];
      case TermCode::App: {
        std::size_t idx = 0;
        for (const auto& a : t.args) idx = idx * n_ + static_cast<std::size_t>(value(a, digits, env));
        return digits[t.index + idx];
      }
    }
    return 0;
  }

  bool eval(const Code& c, const std::vector<int>& digits, std::vector<int>& env) const {
    switch (c.op) {
      case Code::True: return true;
      case Code::False: return false;
      case Code::Pred: {
        std::size_t idx = 0;
        for (const auto& a : c.terms) idx = idx * n_ + static_cast<std::size_t>(value(a, digits, env));
        return digits[c.index + idx] != 0;
      }
      case Code::Eq: return value(c.terms[0], digits, env) == value(c.terms[1], digits, env);
      case Code::Not: return !eval(c.kids[0], digits, env);
      case Code::And: return eval(c.kids[0], digits, env) && eval(c.kids[1], digits, env);
      case Code::Or: return eval(c.kids[0], digits, env) || eval(c.kids[1], digits, env);
      case Code::Imp: return !eval(c.kids[0], digits, env) || eval(c.kids[1], digits, env);
      case Code::Iff: return eval(c.kids[0], digits, env) == eval(c.kids[1], digits, env);
      case Code::All:
      case Code::Ex: {
        const bool want = c.op == Code::Ex;
        for (std::size_t d = 0; d < n_; ++d) {
          env[c.index] = static_cast<int>(d);
          if (eval(c.kids[0], digits, env) == want) return want;
        }
        return !want;
      }
    }
    return false;
  }

  std::size_t n_;
  int slots_ = 0;
  Code root_{Code::True, 0, {}, {}};
};

// Restricted-growth constant vectors: each value at most one above every earlier value.
bool restricted_growth(const std::vector<int>& digits, std::size_t count) {
  int top = -1;
  for (std::size_t i = 0; i < count; ++i) {
    if (digits[i] > top + 1) return false;
    top = std::max(top, digits[i]);
  }
  return true;
}

// Number of restricted-growth strings of length k with at most n distinct values.
std::uint64_t restricted_growth_count(std::size_t k, int n) {
  // ways[j]: strings so far using exactly j distinct values
  std::vector<std::uint64_t> ways(static_cast<std::size_t>(n) + 1, 0);
  ways[0] = 1;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::uint64_t> next(ways.size(), 0);
    for (std::size_t j = 0; j < ways.size(); ++j) {
      if (!ways[j]) continue;
      next[j] = sat_add(next[j], sat_mul(ways[j], j));
      if (j + 1 < ways.size()) next[j + 1] = sat_add(next[j + 1], ways[j]);
    }
    ways = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto w : ways) total = sat_add(total, w);
  return total;
}

std::vector<std::string> sorted_free(const Formula& phi) {
  auto fv = free_vars(phi);
  return {fv.begin(), fv.end()};
}

}  // namespace

struct StructureEnumerator::State {
  Layout layout;
  std::vector<int> digits;
  bool started = false;
  bool prune = false;
  std::uint64_t total = 0;

  State(const Signature& sig, int n, bool p) : layout(sig, n), digits(layout.radix.size(), 0), prune(p) {}

  // Increments at `pos` with carry; returns the lowest changed position or -1 when exhausted.
  long bump(long pos) {
    long i = pos;
    while (i >= 0 && digits[static_cast<std::size_t>(i)] == layout.radix[static_cast<std::size_t>(i)] - 1)
      digits[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return -1;
    ++digits[static_cast<std::size_t>(i)];
    return i;
  }
};

std::uint64_t count_structures(const Signature& sig, int size) {
  const auto n = static_cast<std::uint64_t>(size);
  std::uint64_t total = sat_pow(n, sig.constants.size());
  for (const auto& [f, arity] : sig.functions) total = sat_mul(total, sat_pow(n, sat_pow(n, static_cast<std::uint64_t>(arity))));
  for (const auto& [p, arity] : sig.predicates) total = sat_mul(total, sat_pow(2, sat_pow(n, static_cast<std::uint64_t>(arity))));
  return total;
}

StructureEnumerator::StructureEnumerator(Signature sig, int size, const Caps& caps, bool prune_constants) {
  if (size < 1) throw std::invalid_argument("universe size must be at least 1");
  std::uint64_t total = count_structures(sig, size);
  if (prune_constants && !sig.constants.empty())
    total = sat_mul(total / sat_pow(static_cast<std::uint64_t>(size), sig.constants.size()),
                    restricted_growth_count(sig.constants.size(), size));
  if (total > caps.structure_cap)
    throw BudgetExceeded(std::to_string(size) + "-element structures exceed the enumeration cap");
  state_ = std::make_unique<State>(sig, size, prune_constants);
  state_->total = total;
}

StructureEnumerator::~StructureEnumerator() = default;
StructureEnumerator::StructureEnumerator(StructureEnumerator&&) noexcept = default;
StructureEnumerator& StructureEnumerator::operator=(StructureEnumerator&&) noexcept = default;

bool StructureEnumerator::next() {
  State& s = *state_;
  if (!s.started) {
    s.started = true;
    return true;
  }
  const long last = static_cast<long>(s.digits.size()) - 1;
  long changed = s.bump(last);
  if (changed < 0) return false;
  const auto nconst = s.layout.constants.size();
  if (s.prune && static_cast<std::size_t>(changed) < nconst) {
    while (!restricted_growth(s.digits, nconst))
      if (s.bump(static_cast<long>(nconst) - 1) < 0) return false;
  }
  return true;
}

Structure StructureEnumerator::current() const { return state_->layout.decode(state_->digits); }

const std::vector<int>& EnumeratorAccess::digits(const StructureEnumerator& e) { return e.state_->digits; }

std::uint64_t StructureEnumerator::total() const { return state_->total; }

std::vector<Structure> enumerate_structures(const Signature& sig, int size, const Caps& caps) {
  StructureEnumerator e(sig, size, caps);
  std::vector<Structure> out;
  while (e.next()) out.push_back(e.current());
  return out;
}

bool eval(const Structure& s, const Assignment& beta, const Formula& phi) {
  const Layout layout(extract_signature(phi), s.universe_size);
  const std::vector<int> digits = layout.encode(s);
  const auto free = sorted_free(phi);
  Compiled code(phi, layout, free);
  std::vector<int> env(static_cast<std::size_t>(code.slots()), 0);
  for (std::size_t i = 0; i < free.size(); ++i) {
    auto it = beta.find(free[i]);
    if (it == beta.end()) throw MissingInterpretation("no value for free variable '" + free[i] + "'");
    if (it->second < 0 || it->second >= s.universe_size)
      throw std::out_of_range("assignment value outside the universe");
    env[i] = it->second;
  }
  return code.run(digits, env);
}

std::string verdict_name(const Verdict& v) {
  if (std::holds_alternative<Sat>(v)) return "Sat";
  if (std::holds_alternative<Unsat>(v)) return "Unsat";
  return "Unknown";
}

Verdict oracle_decide(const Formula& phi, int max_size, const Caps& caps, bool prune_constants) {
  const Formula closed = Formula::quantified(Quantifier::Exists, sorted_free(phi), phi);
  const Signature sig = extract_signature(closed);
  for (int n = 1; n <= max_size; ++n) {
    StructureEnumerator e(sig, n, caps, prune_constants);
    Layout layout(sig, n);
    Compiled code(closed, layout, {});
    std::vector<int> env(static_cast<std::size_t>(code.slots()), 0);
    while (e.next())
      if (code.run(EnumeratorAccess::digits(e), env)) return Sat{e.current(), n};
  }
  return Unsat{max_size};
}

bool oracle_equivalent(const Formula& phi, const Formula& psi, int max_size, const Caps& caps) {
  Signature sig = extract_signature(phi);
  sig.merge(extract_signature(psi));
  std::set<std::string> fv = free_vars(phi);
  for (const auto& v : free_vars(psi)) fv.insert(v);
  const std::vector<std::string> free(fv.begin(), fv.end());

  for (int n = 1; n <= max_size; ++n) {
    const std::uint64_t assignments = sat_pow(static_cast<std::uint64_t>(n), free.size());
    if (sat_mul(count_structures(sig, n), assignments) > caps.structure_cap)
      throw BudgetExceeded("equivalence check exceeds the enumeration cap");
    Layout layout(sig, n);
    Compiled a(phi, layout, free), b(psi, layout, free);
    std::vector<int> env_a(static_cast<std::size_t>(a.slots()), 0), env_b(static_cast<std::size_t>(b.slots()), 0);
    StructureEnumerator e(sig, n, caps);
    while (e.next()) {
      const std::vector<int>& digits = EnumeratorAccess::digits(e);
      std::vector<int> beta(free.size(), 0);
      for (;;) {
        std::copy(beta.begin(), beta.end(), env_a.begin());
        std::copy(beta.begin(), beta.end(), env_b.begin());
        if (a.run(digits, env_a) != b.run(digits, env_b)) return false;
        long i = static_cast<long>(beta.size()) - 1;
        while (i >= 0 && beta[static_cast<std::size_t>(i)] == n - 1) beta[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) break;
        ++beta[static_cast<std::size_t>(i)];
      }
    }
  }
  return true;
}

Verdict decide_sf(const Formula& phi, const Caps& caps) {
  const Bounds b = compute_bounds(phi, caps);
  if (!b.domain_bound || *b.domain_bound > BigNat(caps.size_cap)) return Unknown{UnknownReason::BoundOverflow};
  const int bound = b.domain_bound->convert_to<int>();
  Verdict v;
  try {
    v = oracle_decide(phi, bound, caps);
  } catch (const BudgetExceeded&) {
    return Unknown{UnknownReason::CapExceeded};
  }
  if (auto* sat = std::get_if<Sat>(&v)) {
    if (!eval(sat->model, {}, phi)) throw std::logic_error("model search returned a non-model");
  }
  return v;
}

// ---------------------------------------------------------------- fingerprints

bool operator==(const Fingerprint& a, const Fingerprint& b) {
  return a.leaf == b.leaf && a.indices == b.indices && a.members == b.members;
}

bool operator<(const Fingerprint& a, const Fingerprint& b) {
  if (a.leaf != b.leaf) return a.leaf;
  if (a.leaf) return a.indices < b.indices;
  return std::lexicographical_compare(a.members.begin(), a.members.end(), b.members.begin(), b.members.end());
}

std::string to_string(const Fingerprint& f) {
  std::string out = "{";
  if (f.leaf) {
    for (std::size_t i = 0; i < f.indices.size(); ++i) out += (i ? "," : "") + std::to_string(f.indices[i]);
  } else {
    for (std::size_t i = 0; i < f.members.size(); ++i) out += (i ? "," : "") + to_string(f.members[i]);
  }
  return out + "}";
}

std::vector<FingerprintTable> fingerprint_table(const Structure& s, const std::vector<Formula>& eta_list,
                                                const std::vector<std::vector<std::string>>& y_blocks) {
  std::vector<std::string> vars;
  for (const auto& block : y_blocks) vars.insert(vars.end(), block.begin(), block.end());
  Signature sig;
  for (const auto& eta : eta_list) sig.merge(extract_signature(eta));
  const Layout layout(sig, s.universe_size);
  const std::vector<int> digits = layout.encode(s);
  std::vector<Compiled> codes;
  for (const auto& eta : eta_list) codes.emplace_back(eta, layout, vars);

  const std::size_t n = y_blocks.size();
  std::vector<FingerprintTable> tables(n);
  std::size_t arity = vars.size();
  for (std::size_t k = n; k >= 1; --k) {
    FingerprintTable& t = tables[k - 1];
    t.level = k;
    t.arity = arity;
    t.eta_formulas = eta_list;
    for (const auto& tuple : all_tuples(s.universe_size, static_cast<int>(arity))) {
      Fingerprint fp;
      if (k == n) {
        for (std::size_t i = 0; i < codes.size(); ++i) {
          std::vector<int> env(static_cast<std::size_t>(codes[i].slots()), 0);
          std::copy(tuple.begin(), tuple.end(), env.begin());
          if (codes[i].run(digits, env)) fp.indices.push_back(static_cast<int>(i) + 1);
        }
      } else {
        fp.leaf = false;
        const auto& below = tables[k].entries;
        const std::size_t extra = y_blocks[k].size();
        for (const auto& ext : all_tuples(s.universe_size, static_cast<int>(extra))) {
          std::vector<int> key = tuple;
          key.insert(key.end(), ext.begin(), ext.end());
          fp.members.push_back(below.at(key));
        }
        std::sort(fp.members.begin(), fp.members.end());
        fp.members.erase(std::unique(fp.members.begin(), fp.members.end()), fp.members.end());
      }
      t.entries.emplace(tuple, std::move(fp));
    }
    arity -= y_blocks[k - 1].size();
  }
  return tables;
}

}  // namespace sepfol
