#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sepfol/caps.hpp"
#include "sepfol/syntax.hpp"

namespace sepfol {

using BigNat = boost::multiprecision::cpp_int;
// An unbounded count, or nullopt once it passes the magnitude cap.
using Magnitude = std::optional<BigNat>;

std::string to_string(const Magnitude& m);

// C(m, floor(m/2)), the width of the largest antichain over an m-set.
BigNat binom_central(std::size_t m);

// Iterated exponential: twoup(0, m) = m, twoup(k+1, m) = 2^twoup(k, m).
Magnitude twoup(std::size_t k, std::size_t m, std::uint64_t magnitude_cap = Caps{}.magnitude_cap);

enum class Regime { SingleBlock, StrongSeparation, GeneralNested };

std::string regime_name(Regime r);

struct Bounds {
  std::size_t m_dnf = 0;
  std::size_t m_cnf = 0;
  BigNat kappa_cnf = 1;
  std::size_t m_star = 0;
  // (1-based existential block, element count attributed to it)
  std::vector<std::pair<std::size_t, Magnitude>> per_block;
  Magnitude domain_bound;
  Regime regime = Regime::SingleBlock;
  std::size_t constants = 0;  // constant symbols of the input
  std::size_t leading = 0;    // leading existential variables
};

Bounds compute_bounds(const Formula& phi, const Caps& caps = {});

// ∃z∀x∃y.ψ ↦ ∃z∀x∃y.ψ ∧ ⋁_ℓ ⋀_i y_i ≈ c_ℓ_i
Formula range_restrict(const Formula& phi, const Caps& caps = {});

// ∃z∀x∃y.ψ ↦ ∀x.ψ[z/d, y/f(x)] ∧ ⋁_ℓ ⋀_i f_i(x) ≈ c_ℓ_i
Formula skolemize_range_restricted(const Formula& phi, const Caps& caps = {});

// ∃z∀x∃y.ψ ↦ ∀x.⋁_k χ_k ∧ η_k[y/c_k] over the DNF of ψ
Formula inner_skolemize(const Formula& phi, const Caps& caps = {});

// Finite-domain constraints for every existential block of a multi-level SF sentence.
Formula multi_block_constraints(const Formula& phi, const Caps& caps = {});

// Qz∀x∃y.ψ ↦ Qz∀x∃y.ψ ∧ ⋁_j ⋀_i y_i ≈ g_j_i(z), z being every variable the y block depends on.
Formula range_restrict_open(const Formula& phi, const Caps& caps = {});

}  // namespace sepfol
