#include "sepfol/transform.hpp"

#include <stdexcept>

#include "sepfol/analysis.hpp"

namespace sepfol {

namespace {

using K = Formula::Kind;

Quantifier dual(Quantifier q) { return q == Quantifier::Forall ? Quantifier::Exists : Quantifier::Forall; }

Formula binary(K kind, const Formula& l, const Formula& r) {
  switch (kind) {
    case K::And: return Formula::conjunction(l, r);
    case K::Or: return Formula::disjunction(l, r);
    case K::Implies: return Formula::implication(l, r);
    default: return Formula::equivalence(l, r);
  }
}

Formula nnf(const Formula& f, bool positive) {
  switch (f.kind()) {
    case K::Atom:
    case K::Equality:
      return positive ? f : Formula::negation(f);
    case K::Truth:
      return positive ? f : Formula::falsity();
    case K::Falsity:
      return positive ? f : Formula::truth();
    case K::Not:
      return nnf(f.operand(), !positive);
    case K::And:
      return positive ? Formula::conjunction(nnf(f.left(), true), nnf(f.right(), true))
                      : Formula::disjunction(nnf(f.left(), false), nnf(f.right(), false));
    case K::Or:
      return positive ? Formula::disjunction(nnf(f.left(), true), nnf(f.right(), true))
                      : Formula::conjunction(nnf(f.left(), false), nnf(f.right(), false));
    case K::Implies:
      return positive ? Formula::disjunction(nnf(f.left(), false), nnf(f.right(), true))
                      : Formula::conjunction(nnf(f.left(), true), nnf(f.right(), false));
    case K::Iff:
      if (positive)
        return Formula::conjunction(Formula::disjunction(nnf(f.left(), false), nnf(f.right(), true)),
                                    Formula::disjunction(nnf(f.left(), true), nnf(f.right(), false)));
      return Formula::disjunction(Formula::conjunction(nnf(f.left(), true), nnf(f.right(), false)),
                                  Formula::conjunction(nnf(f.left(), false), nnf(f.right(), true)));
    case K::Forall:
    case K::Exists: {
      Quantifier q = positive ? f.quantifier() : dual(f.quantifier());
      return Formula::quantified(q, f.symbol(), nnf(f.operand(), positive));
    }
  }
  return f;
}

// ---------------------------------------------------------------- miniscoping

class Miniscoper {
 public:
  explicit Miniscoper(const Formula& phi) : supply_(all_names(phi)) {}

  Formula run(const Formula& f) {
    switch (f.kind()) {
      case K::Not:
        return Formula::negation(run(f.operand()));
      case K::And:
      case K::Or:
      case K::Implies:
      case K::Iff: {
        Formula l = run(f.left());  // left first keeps fresh names stable
        Formula r = run(f.right());
        return binary(f.kind(), l, r);
      }
      case K::Forall:
      case K::Exists:
        return push(f.quantifier(), f.symbol(), run(f.operand()));
      default:
        return f;
    }
  }

 private:
  static bool occurs(const std::string& x, const Formula& f) { return free_vars(f).count(x) > 0; }

  Formula split(Quantifier q, const std::string& x, const Formula& a, const Formula& b, bool conj) {
    const std::string x1 = supply_.fresh_variant(x);
    const std::string x2 = supply_.fresh_variant(x);
    Formula l = push(q, x1, rename_variable(a, x, x1));
    Formula r = push(q, x2, rename_variable(b, x, x2));
    return conj ? Formula::conjunction(l, r) : Formula::disjunction(l, r);
  }

  Formula push(Quantifier q, const std::string& x, const Formula& body) {
    if (!occurs(x, body)) return body;
    const bool exists = q == Quantifier::Exists;
    switch (body.kind()) {
      case K::Or:
      case K::And: {
        const bool conj = body.kind() == K::And;
        const bool in_l = occurs(x, body.left());
        const bool in_r = occurs(x, body.right());
        if (in_l && in_r) {
          // ∃ distributes over ∨, ∀ over ∧.
          if (exists != conj) return split(q, x, body.left(), body.right(), conj);
          break;
        }
        Formula l = in_l ? push(q, x, body.left()) : body.left();
        Formula r = in_r ? push(q, x, body.right()) : body.right();
        return conj ? Formula::conjunction(l, r) : Formula::disjunction(l, r);
      }
      case K::Implies: {
        const bool in_l = occurs(x, body.left());
        const bool in_r = occurs(x, body.right());
        if (in_l && in_r) break;
        if (in_r) return Formula::implication(body.left(), push(q, x, body.right()));
        return Formula::implication(push(dual(q), x, body.left()), body.right());
      }
      default:
        break;
    }
    return Formula::quantified(q, x, body);
  }

  NameSupply supply_;
};

// ---------------------------------------------------------------- prenexing

using Prefix = std::vector<std::pair<Quantifier, std::string>>;

struct Pulled {
  Prefix prefix;
  Formula matrix;
};

class Prenexer {
 public:
  Prenexer(const Formula& phi, PullOrder order) : order_(order), supply_(all_names(phi)) {}

  Pulled pull(const Formula& f) {
    switch (f.kind()) {
      case K::Not: {
        Pulled p = pull(f.operand());
        return {dualize(p.prefix), Formula::negation(p.matrix)};
      }
      case K::And:
      case K::Or: {
        Pulled l = pull(f.left());
        Pulled r = pull(f.right());
        Formula m = f.kind() == K::And ? Formula::conjunction(l.matrix, r.matrix)
                                       : Formula::disjunction(l.matrix, r.matrix);
        return {merge(l.prefix, r.prefix), m};
      }
      case K::Implies: {
        Pulled l = pull(f.left());
        Pulled r = pull(f.right());
        return {merge(dualize(l.prefix), r.prefix), Formula::implication(l.matrix, r.matrix)};
      }
      case K::Iff: {
        if (is_quantifier_free(f.left()) && is_quantifier_free(f.right())) return {{}, f};
        Formula l2 = rename_bound(f.left());
        Formula r2 = rename_bound(f.right());
        return pull(Formula::conjunction(Formula::implication(f.left(), f.right()), Formula::implication(r2, l2)));
      }
      case K::Forall:
      case K::Exists: {
        Pulled p = pull(f.operand());
        p.prefix.insert(p.prefix.begin(), {f.quantifier(), f.symbol()});
        return p;
      }
      default:
        return {{}, f};
    }
  }

 private:
  static Prefix dualize(Prefix p) {
    for (auto& [q, v] : p) q = dual(q);
    return p;
  }

  Prefix merge(const Prefix& a, const Prefix& b) const {
    const Quantifier first = order_ == PullOrder::ExistsFirst ? Quantifier::Exists : Quantifier::Forall;
    Prefix out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i].first == first)
        out.push_back(a[i++]);
      else if (b[j].first == first)
        out.push_back(b[j++]);
      else
        out.push_back(a[i++]);
    }
    out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
    out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
    return out;
  }

  // Copy of f whose bound variables are all fresh.
  Formula rename_bound(const Formula& f) {
    switch (f.kind()) {
      case K::Not:
        return Formula::negation(rename_bound(f.operand()));
      case K::And:
      case K::Or:
      case K::Implies:
      case K::Iff: {
        Formula l = rename_bound(f.left());
        Formula r = rename_bound(f.right());
        return binary(f.kind(), l, r);
      }
      case K::Forall:
      case K::Exists: {
        std::string v = supply_.fresh_variant(f.symbol());
        return Formula::quantified(f.quantifier(), v, rename_variable(rename_bound(f.operand()), f.symbol(), v));
      }
      default:
        return f;
    }
  }

  PullOrder order_;
  NameSupply supply_;
};

}  // namespace

Formula to_nnf(const Formula& phi) { return nnf(phi, true); }

Formula miniscope(const Formula& phi) {
  Formula apart = rename_apart(phi);
  return Miniscoper(apart).run(apart);
}

Formula to_prenex(const Formula& phi, PullOrder order) {
  Formula apart = rename_apart(phi);
  Prenexer p(apart, order);
  Pulled pulled = p.pull(apart);
  Formula out = pulled.matrix;
  for (auto it = pulled.prefix.rbegin(); it != pulled.prefix.rend(); ++it)
    out = Formula::quantified(it->first, it->second, out);
  return out;
}

std::pair<Formula, Formula> gen_blowup(int n, const Caps& caps) {
  if (n < 1) throw std::invalid_argument("gen_blowup needs n >= 1");
  if (n > 30 || (std::uint64_t{1} << n) * 4u * static_cast<std::uint64_t>(n) > caps.node_cap)
    throw BudgetExceeded("blow-up formula exceeds the node cap");
  const Term x = Term::variable("X");
  const Term y = Term::variable("Y");
  auto p = [](int i, const Term& t) { return Formula::atom("p_" + std::to_string(i), {t}); };
  auto q = [](int i, const Term& t) { return Formula::atom("q_" + std::to_string(i), {t}); };

  std::vector<Formula> iffs;
  for (int i = 1; i <= n; ++i) iffs.push_back(Formula::equivalence(p(i, x), q(i, y)));
  Formula original = Formula::forall("X", Formula::exists("Y", Formula::conjunction(iffs)));

  std::vector<std::string> ys;
  std::vector<Formula> cases;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    std::string label;
    for (int i = 1; i <= n; ++i) label += ((bits >> (n - i)) & 1u) ? '1' : '0';
    const std::string yb = "Y_" + label;
    ys.push_back(yb);
    const Term yt = Term::variable(yb);
    std::vector<Formula> guard, goal;
    for (int i = 1; i <= n; ++i) {
      const bool on = label[static_cast<std::size_t>(i - 1)] == '1';
      guard.push_back(on ? p(i, x) : Formula::negation(p(i, x)));
      goal.push_back(on ? q(i, yt) : Formula::negation(q(i, yt)));
    }
    cases.push_back(Formula::implication(Formula::conjunction(guard), Formula::conjunction(goal)));
  }
  Formula blown = Formula::quantified(Quantifier::Exists, ys, Formula::forall("X", Formula::conjunction(cases)));
  return {original, blown};
}

}  // namespace sepfol
