#include "sepfol/bounds.hpp"

#include <algorithm>

#include "sepfol/analysis.hpp"
#include "sepfol/transform.hpp"

namespace sepfol {

std::string to_string(const Magnitude& m) { return m ? m->str() : "overflow"; }

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::SingleBlock: return "SingleBlock";
    case Regime::StrongSeparation: return "StrongSeparation";
    case Regime::GeneralNested: return "GeneralNested";
  }
  return "SingleBlock";
}

BigNat binom_central(std::size_t m) {
  const std::size_t k = m / 2;
  BigNat out = 1;
  // Multiplicative formula; every prefix quotient is itself a binomial coefficient.
  for (std::size_t i = 1; i <= k; ++i) {
    out *= m - k + i;
    out /= i;
  }
  return out;
}

Magnitude twoup(std::size_t k, std::size_t m, std::uint64_t magnitude_cap) {
  BigNat v = m;
  const BigNat cap = magnitude_cap;
  if (v > cap) return std::nullopt;
  for (std::size_t i = 0; i < k; ++i) {
    if (v >= 64) return std::nullopt;
    v = BigNat(1) << static_cast<unsigned>(v);
    if (v > cap) return std::nullopt;
  }
  return v;
}

namespace {

Magnitude capped(const BigNat& v, std::uint64_t cap) {
  if (v > BigNat(cap)) return std::nullopt;
  return v;
}

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

bool blocks_pairwise_separated(const SeparatedShape& shape) {
  for (std::size_t i = 0; i < shape.levels.size(); ++i)
    for (std::size_t j = i + 1; j < shape.levels.size(); ++j)
      if (!are_separated(shape.matrix, as_set(shape.levels[i].second), as_set(shape.levels[j].second)))
        return false;
  return true;
}

}  // namespace

Bounds compute_bounds(const Formula& phi, const Caps& caps) {
  if (!classify(phi).contains(Fragment::SF)) throw NotSF("compute_bounds expects an SF sentence");
  const SeparatedShape shape = separated_shape(phi);
  std::vector<std::string> xs, ys;
  for (const auto& [x, y] : shape.levels) {
    xs.insert(xs.end(), x.begin(), x.end());
    ys.insert(ys.end(), y.begin(), y.end());
  }

  Bounds b;
  b.m_dnf = matrix_to_nf(shape.matrix, xs, ys, shape.leading, NormalFormKind::DNF, caps).size();
  b.m_cnf = matrix_to_nf(shape.matrix, xs, ys, shape.leading, NormalFormKind::CNF, caps).size();
  b.kappa_cnf = binom_central(b.m_cnf);
  b.m_star = b.kappa_cnf < b.m_dnf ? b.kappa_cnf.convert_to<std::size_t>() : b.m_dnf;
  b.constants = consts(phi).size();
  b.leading = shape.leading.size();

  const std::size_t n = shape.levels.size();
  const BigNat base = b.constants + b.leading;
  auto width = [&](std::size_t k) { return shape.levels[k - 1].second.size(); };

  if (n <= 1) {
    b.regime = Regime::SingleBlock;
    const std::size_t y = n == 0 ? 0 : width(1);
    if (n == 1) b.per_block.emplace_back(1, capped(BigNat(b.m_star) * y, caps.magnitude_cap));
    b.domain_bound = capped(std::max(BigNat(1), base + BigNat(b.m_star) * y), caps.magnitude_cap);
    return b;
  }

  if (blocks_pairwise_separated(shape)) {
    b.regime = Regime::StrongSeparation;
    const BigNat kappa_dnf = binom_central(b.m_dnf);
    BigNat total = base;
    for (std::size_t k = 1; k <= n; ++k) {
      BigNat count = (k < n ? kappa_dnf : BigNat(b.m_dnf)) * width(k);
      b.per_block.emplace_back(k, capped(count, caps.magnitude_cap));
      total += count;
    }
    b.domain_bound = capped(std::max(BigNat(1), total), caps.magnitude_cap);
    return b;
  }

  b.regime = Regime::GeneralNested;
  // Block n-k carries the product of twoup(l, m) for l = k..n-1.
  std::vector<Magnitude> counts(n + 1);
  bool overflow = false;
  BigNat total = base;
  for (std::size_t k = 0; k < n; ++k) {
    Magnitude product = BigNat(1);
    for (std::size_t l = k; l < n && product; ++l) {
      Magnitude t = twoup(l, b.m_dnf, caps.magnitude_cap);
      product = t ? capped(*product * *t, caps.magnitude_cap) : std::nullopt;
    }
    const std::size_t block = n - k;
    if (product) {
      counts[block] = capped(*product * width(block), caps.magnitude_cap);
    } else {
      // An astronomically large multiplier still contributes nothing to an empty block.
      counts[block] = width(block) == 0 ? Magnitude(BigNat(0)) : std::nullopt;
    }
    if (counts[block])
      total += *counts[block];
    else
      overflow = true;
  }
  for (std::size_t k = 1; k <= n; ++k) b.per_block.emplace_back(k, counts[k]);
  b.domain_bound = overflow ? std::nullopt : capped(std::max(BigNat(1), total), caps.magnitude_cap);
  return b;
}

}  // namespace sepfol
