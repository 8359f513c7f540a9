// Quantifier-block transposition for separated formulas.
//
// The matrix is kept as a set of literal sets over "items": input literals,
// existential units ∃y.⋀(…) and universal units ∀x.⋁(…). Blocks are
// eliminated innermost first: push ∃y_k onto the y-part of every disjunct,
// switch to CNF, push ∀x_k onto the x-part of every clause, switch back to
// DNF for the next level. The final CNF over units is prenexed with
// quantifier sharing so existentials come out first.

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "propositional.hpp"
#include "sepfol/analysis.hpp"
#include "sepfol/transform.hpp"

namespace sepfol {

namespace {

using detail::LitSet;
using K = Formula::Kind;

constexpr std::size_t kRedundancyLimit = 2000;

enum class Side { X, Y, Z };

struct ItemInfo {
  Side side = Side::Z;
  int level = -1;  // block level for units, -1 for input atoms
  bool existential_unit = false;
  bool universal_unit = false;
  std::vector<LitSet> inner;  // the conjunction (∃) or disjunction (∀) inside a unit, as one set
};

class Engine {
 public:
  Engine(std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> levels, const Caps& caps)
      : levels_(std::move(levels)), caps_(caps) {
    for (const auto& [xs, ys] : levels_) {
      all_x_.insert(xs.begin(), xs.end());
      all_y_.insert(ys.begin(), ys.end());
    }
  }

  Formula run(const Formula& matrix) {
    std::vector<LitSet> dnf = detail::literal_dnf(matrix, true, table_, true, caps_.node_cap);
    sync();
    std::vector<LitSet> cnf;
    for (int k = static_cast<int>(levels_.size()) - 1; k >= 0; --k) {
      const auto& [xs, ys] = levels_[static_cast<std::size_t>(k)];
      for (auto& d : dnf) d = wrap(d, k, ys, true);
      cnf = flip(dnf);
      prune_valid_clauses(cnf, k);
      prune_redundant(cnf, true);
      for (auto& c : cnf) c = wrap(c, k, xs, false);
      if (k > 0) {
        dnf = flip(cnf);
        prune_unsat_disjuncts(dnf, k);
        prune_redundant(dnf, false);
      }
    }
    if (levels_.empty()) cnf = flip(dnf);
    std::vector<Formula> clauses;
    for (const auto& c : cnf) {
      std::vector<Formula> lits;
      for (int l : c) lits.push_back(table_.literal(l));
      clauses.push_back(Formula::disjunction(lits));
    }
    Formula out = Formula::conjunction(clauses);
    if (node_count(out) > caps_.node_cap) throw BudgetExceeded("transposed formula exceeds the node cap");
    return out;
  }

 private:
  const ItemInfo& info(int lit) const { return infos_[static_cast<std::size_t>(lit >> 1)]; }

  // Computes side information for atoms interned since the last call.
  void sync() {
    while (infos_.size() < table_.size()) {
      const Formula& a = table_.atom(static_cast<int>(infos_.size()));
      ItemInfo inf;
      const auto fv = free_vars(a);
      const bool has_x = std::any_of(fv.begin(), fv.end(), [&](const auto& v) { return all_x_.count(v) > 0; });
      const bool has_y = std::any_of(fv.begin(), fv.end(), [&](const auto& v) { return all_y_.count(v) > 0; });
      inf.side = has_x ? Side::X : has_y ? Side::Y : Side::Z;
      infos_.push_back(std::move(inf));
    }
  }

  bool mentions(int lit, const std::vector<std::string>& vars) const {
    const auto fv = free_vars(table_.atom(lit >> 1));
    return std::any_of(vars.begin(), vars.end(), [&](const auto& v) { return fv.count(v) > 0; });
  }

  // Replaces the y-part (existential) or x-part (universal) of one constituent by a unit over `vars`.
  LitSet wrap(const LitSet& s, int level, const std::vector<std::string>& vars, bool existential) {
    if (vars.empty()) return s;
    const Side want = existential ? Side::Y : Side::X;
    LitSet part, rest;
    for (int l : s) (info(l).side == want ? part : rest).push_back(l);
    if (part.empty() || std::none_of(part.begin(), part.end(), [&](int l) { return mentions(l, vars); })) return s;

    std::vector<Formula> body;
    for (int l : part) body.push_back(table_.literal(l));
    Formula unit = existential ? Formula::quantified(Quantifier::Exists, vars, Formula::conjunction(body))
                               : Formula::quantified(Quantifier::Forall, vars, Formula::disjunction(body));
    const int id = table_.id(unit);
    if (static_cast<std::size_t>(id) >= infos_.size()) {
      sync();
      ItemInfo& inf = infos_[static_cast<std::size_t>(id)];
      inf.level = level;
      inf.existential_unit = existential;
      inf.universal_unit = !existential;
      inf.inner = {part};
    }
    rest.push_back(detail::make_lit(id, false));
    std::sort(rest.begin(), rest.end());
    rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
    return rest;
  }

  // DNF ↔ CNF by distribution: every choice of one literal per constituent.
  std::vector<LitSet> flip(const std::vector<LitSet>& sets) const {
    std::vector<LitSet> out{LitSet{}};
    for (const auto& s : sets) {
      std::vector<LitSet> singles;
      for (int l : s) singles.push_back(LitSet{l});
      out = detail::product(out, singles, true, caps_.node_cap);
    }
    return out;
  }

  // A clause whose level-k existential units jointly cover every case is valid.
  void prune_valid_clauses(std::vector<LitSet>& cnf, int level) const {
    std::vector<LitSet> kept;
    for (auto& c : cnf) {
      std::vector<LitSet> negated;
      for (int l : c) {
        const ItemInfo& inf = info(l);
        if (!inf.existential_unit || inf.level != level || (l & 1)) continue;
        LitSet clause;
        for (int m : inf.inner.front()) clause.push_back(detail::negate(m));
        std::sort(clause.begin(), clause.end());
        negated.push_back(std::move(clause));
      }
      if (!negated.empty() && !detail::satisfiable(negated)) continue;
      kept.push_back(std::move(c));
    }
    cnf = std::move(kept);
  }

  // A disjunct whose level-k universal units are jointly contradictory is unsatisfiable.
  void prune_unsat_disjuncts(std::vector<LitSet>& dnf, int level) const {
    std::vector<LitSet> kept;
    for (auto& d : dnf) {
      std::vector<LitSet> clauses;
      for (int l : d) {
        const ItemInfo& inf = info(l);
        if (inf.universal_unit && inf.level == level && !(l & 1)) clauses.push_back(inf.inner.front());
      }
      if (!clauses.empty() && !detail::satisfiable(clauses)) continue;
      kept.push_back(std::move(d));
    }
    dnf = std::move(kept);
  }

  int unit_count(const LitSet& s) const {
    return static_cast<int>(std::count_if(s.begin(), s.end(), [&](int l) {
      return info(l).existential_unit || info(l).universal_unit;
    }));
  }

  // Drops constituents implied (CNF) or covered (DNF) by the others, treating items as propositions.
  void prune_redundant(std::vector<LitSet>& sets, bool cnf) const {
    if (sets.size() < 2 || sets.size() > kRedundancyLimit) return;
    std::vector<std::size_t> order(sets.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      int ua = unit_count(sets[a]), ub = unit_count(sets[b]);
      if (ua != ub) return ua > ub;
      return sets[a].size() > sets[b].size();
    });
    std::vector<bool> alive(sets.size(), true);
    for (std::size_t i : order) {
      std::vector<LitSet> problem;
      for (std::size_t j = 0; j < sets.size(); ++j) {
        if (j == i || !alive[j]) continue;
        if (cnf) {
          problem.push_back(sets[j]);
        } else {
          LitSet neg;
          for (int l : sets[j]) neg.push_back(detail::negate(l));
          std::sort(neg.begin(), neg.end());
          problem.push_back(std::move(neg));
        }
      }
      // CNF: others ∧ ¬C unsat. DNF: D ∧ ¬(others) unsat.
      for (int l : sets[i]) problem.push_back(LitSet{cnf ? detail::negate(l) : l});
      if (!detail::satisfiable(problem)) alive[i] = false;
    }
    std::vector<LitSet> out;
    for (std::size_t i = 0; i < sets.size(); ++i)
      if (alive[i]) out.push_back(std::move(sets[i]));
    sets = std::move(out);
  }

  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> levels_;
  Caps caps_;
  std::set<std::string> all_x_, all_y_;
  detail::AtomTable table_;
  std::vector<ItemInfo> infos_;
};

// ---------------------------------------------------------------- sharing prenexer

struct Shared {
  std::vector<std::string> exists;
  std::vector<std::string> forall;
  Formula matrix;
};

Formula rename_vars(const Formula& f, const std::vector<std::string>& from, const std::vector<std::string>& to,
                    std::size_t n) {
  Substitution s;
  for (std::size_t i = 0; i < n; ++i)
    if (from[i] != to[i]) s.emplace(from[i], Term::variable(to[i]));
  return s.empty() ? f : substitute(f, s);
}

// Existentials are shared position-wise across ∨, universals across ∧; the others concatenate.
Shared pull_shared(const Formula& f) {
  switch (f.kind()) {
    case K::Exists: {
      Shared s = pull_shared(f.operand());
      s.exists.insert(s.exists.begin(), f.symbol());
      return s;
    }
    case K::Forall: {
      Shared s = pull_shared(f.operand());
      if (!s.exists.empty()) throw std::logic_error("universal unit over an existential");
      s.forall.insert(s.forall.begin(), f.symbol());
      return s;
    }
    case K::And:
    case K::Or: {
      Shared l = pull_shared(f.left());
      Shared r = pull_shared(f.right());
      const bool conj = f.kind() == K::And;
      auto& shared_l = conj ? l.forall : l.exists;
      auto& shared_r = conj ? r.forall : r.exists;
      const std::size_t n = std::min(shared_l.size(), shared_r.size());
      Formula rm = rename_vars(r.matrix, shared_r, shared_l, n);
      Shared out;
      out.matrix = conj ? Formula::conjunction(l.matrix, rm) : Formula::disjunction(l.matrix, rm);
      std::vector<std::string> shared = shared_l;
      shared.insert(shared.end(), shared_r.begin() + static_cast<std::ptrdiff_t>(n), shared_r.end());
      auto& other_l = conj ? l.exists : l.forall;
      auto& other_r = conj ? r.exists : r.forall;
      std::vector<std::string> concat = other_l;
      concat.insert(concat.end(), other_r.begin(), other_r.end());
      out.exists = conj ? concat : shared;
      out.forall = conj ? shared : concat;
      return out;
    }
    default:
      return {{}, {}, f};
  }
}

Formula finish(const std::vector<std::string>& leading, const Formula& cnf) {
  Formula apart = rename_apart(cnf);
  Shared s = pull_shared(apart);
  Formula out = Formula::quantified(Quantifier::Forall, s.forall, s.matrix);
  out = Formula::quantified(Quantifier::Exists, s.exists, out);
  return Formula::quantified(Quantifier::Exists, leading, out);
}

void require_separated(const Formula& matrix, const SeparatedShape& shape) {
  if (!are_separated(matrix, shape.universal_vars(), shape.existential_vars()))
    throw SeparationError("universal and existential variables share an atom");
}

}  // namespace

Formula transpose_block(const Formula& phi, const Caps& caps) {
  auto [prefix, matrix] = prefix_blocks(phi);
  if (prefix.size() != 2 || prefix[0].quantifier != Quantifier::Forall)
    throw UnsupportedShape("transpose_block expects a ∀∃ prefix");
  SeparatedShape shape = separated_shape(prefix, matrix);
  require_separated(matrix, shape);
  Engine engine(shape.levels, caps);
  return finish({}, engine.run(matrix));
}

Formula transpose_all(const Formula& phi, const Caps& caps) {
  Formula prenex = to_prenex(rename_apart(phi));
  auto [prefix, matrix] = prefix_blocks(prenex);
  SeparatedShape shape = separated_shape(prefix, matrix);
  if (shape.alternations() == 0) return prenex;
  require_separated(matrix, shape);
  Engine engine(shape.levels, caps);
  return finish(shape.leading, engine.run(matrix));
}

}  // namespace sepfol
