#include "propositional.hpp"

#include <algorithm>
#include <numeric>

#include "sepfol/errors.hpp"

namespace sepfol::detail {

bool has_complementary(const LitSet& s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if ((s[i] >> 1) == (s[i - 1] >> 1)) return true;
  return false;
}

LitSet merge(const LitSet& a, const LitSet& b) {
  LitSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const LitSet& a, const LitSet& b) {
  return a.size() <= b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void remove_subsumed(std::vector<LitSet>& sets) {
  std::vector<std::size_t> order(sets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return sets[i].size() < sets[j].size(); });
  std::vector<bool> keep(sets.size(), false);
  std::vector<std::size_t> kept;
  for (std::size_t i : order) {
    bool subsumed = false;
    for (std::size_t k : kept) {
      if (is_subset(sets[k], sets[i])) {
        subsumed = true;
        break;
      }
    }
    if (!subsumed) {
      keep[i] = true;
      kept.push_back(i);
    }
  }
  std::vector<LitSet> out;
  out.reserve(kept.size());
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (keep[i]) out.push_back(std::move(sets[i]));
  sets = std::move(out);
}

std::vector<LitSet> product(const std::vector<LitSet>& a, const std::vector<LitSet>& b, bool drop_complementary,
                            std::uint64_t cap) {
  if (static_cast<std::uint64_t>(a.size()) * static_cast<std::uint64_t>(b.size()) > cap)
    throw BudgetExceeded("normal form exceeds the node cap");
  std::vector<LitSet> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) {
      LitSet m = merge(x, y);
      if (drop_complementary && has_complementary(m)) continue;
      out.push_back(std::move(m));
    }
  }
  remove_subsumed(out);
  return out;
}

int AtomTable::id(const Formula& atom) {
  auto [it, inserted] = ids_.emplace(atom, static_cast<int>(atoms_.size()));
  if (inserted) atoms_.push_back(atom);
  return it->second;
}

Formula AtomTable::literal(int lit) const {
  const Formula& a = atom(lit >> 1);
  return (lit & 1) ? Formula::negation(a) : a;
}

namespace {

std::vector<LitSet> concat(std::vector<LitSet> a, const std::vector<LitSet>& b, std::uint64_t cap) {
  a.insert(a.end(), b.begin(), b.end());
  if (a.size() > cap) throw BudgetExceeded("normal form exceeds the node cap");
  remove_subsumed(a);
  return a;
}

}  // namespace

std::vector<LitSet> literal_dnf(const Formula& phi, bool positive, AtomTable& atoms, bool drop_complementary,
                                std::uint64_t cap) {
  using K = Formula::Kind;
  auto rec = [&](const Formula& f, bool pos) { return literal_dnf(f, pos, atoms, drop_complementary, cap); };
  // Operands are always converted left before right so atom ids do not depend on the compiler.
  auto both = [&](bool lp, bool rp, bool conj) {
    auto l = rec(phi.left(), lp);
    auto r = rec(phi.right(), rp);
    return conj ? product(l, r, drop_complementary, cap) : concat(std::move(l), r, cap);
  };
  switch (phi.kind()) {
    case K::Atom:
    case K::Equality:
      return {LitSet{make_lit(atoms.id(phi), !positive)}};
    case K::Truth:
      return positive ? std::vector<LitSet>{LitSet{}} : std::vector<LitSet>{};
    case K::Falsity:
      return positive ? std::vector<LitSet>{} : std::vector<LitSet>{LitSet{}};
    case K::Not:
      return rec(phi.operand(), !positive);
    case K::And:
      return both(positive, positive, positive);
    case K::Or:
      return both(positive, positive, !positive);
    case K::Implies:
      return both(!positive, positive, !positive);
    case K::Iff: {
      auto first = both(true, positive, true);
      auto second = both(false, !positive, true);
      return concat(std::move(first), second, cap);
    }
    case K::Forall:
    case K::Exists:
      throw NotPrenex("normal forms need a quantifier-free formula");
  }
  return {};
}

std::vector<LitSet> literal_cnf(const Formula& phi, AtomTable& atoms, bool drop_complementary, std::uint64_t cap) {
  auto sets = literal_dnf(phi, false, atoms, drop_complementary, cap);
  for (auto& s : sets) {
    for (int& l : s) l = negate(l);
    std::sort(s.begin(), s.end());
  }
  return sets;
}

namespace {

struct Dpll {
  const std::vector<LitSet>& clauses;
  std::vector<signed char> value;  // -1 unassigned, 0 false, 1 true

  bool literal_true(int l) const { return value[static_cast<std::size_t>(l >> 1)] == ((l & 1) ? 0 : 1); }
  bool assigned(int l) const { return value[static_cast<std::size_t>(l >> 1)] >= 0; }
  void assign(int l) { value[static_cast<std::size_t>(l >> 1)] = (l & 1) ? 0 : 1; }

  bool solve() {
    std::vector<int> trail;
    auto undo = [&] {
      for (int v : trail) value[static_cast<std::size_t>(v)] = -1;
    };
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& c : clauses) {
        int open = 0, last = -1;
        bool sat = false;
        for (int l : c) {
          if (!assigned(l)) {
            ++open;
            last = l;
          } else if (literal_true(l)) {
            sat = true;
            break;
          }
        }
        if (sat) continue;
        if (open == 0) {
          undo();
          return false;
        }
        if (open == 1) {
          assign(last);
          trail.push_back(last >> 1);
          changed = true;
        }
      }
    }
    int branch = -1;
    for (const auto& c : clauses) {
      bool sat = false;
      int candidate = -1;
      for (int l : c) {
        if (!assigned(l)) {
          if (candidate < 0) candidate = l;
        } else if (literal_true(l)) {
          sat = true;
          break;
        }
      }
      if (!sat && candidate >= 0) {
        branch = candidate;
        break;
      }
    }
    if (branch < 0) return true;
    for (int l : {branch, negate(branch)}) {
      assign(l);
      if (solve()) return true;
      value[static_cast<std::size_t>(l >> 1)] = -1;
    }
    undo();
    return false;
  }
};

}  // namespace

bool satisfiable(const std::vector<LitSet>& clauses) {
  int max_var = -1;
  for (const auto& c : clauses) {
    if (c.empty()) return false;
    for (int l : c) max_var = std::max(max_var, l >> 1);
  }
  Dpll d{clauses, std::vector<signed char>(static_cast<std::size_t>(max_var + 1), -1)};
  return d.solve();
}

}  // namespace sepfol::detail
