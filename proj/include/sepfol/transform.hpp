#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sepfol/caps.hpp"
#include "sepfol/syntax.hpp"

namespace sepfol {

class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

Formula to_nnf(const Formula& phi);

Formula miniscope(const Formula& phi);

enum class PullOrder { ExistsFirst, ForallFirst };

Formula to_prenex(const Formula& phi, PullOrder order = PullOrder::ExistsFirst);

enum class NormalFormKind { DNF, CNF };

struct Constituent {
  std::vector<Formula> chi;    // literals with a universal variable
  std::vector<Formula> eta;    // literals with an existential variable
  std::vector<Formula> param;  // literals over parameters only

  std::vector<Formula> literals() const;
  friend bool operator==(const Constituent&, const Constituent&) = default;
};

struct NormalFormMatrix {
  NormalFormKind kind = NormalFormKind::DNF;
  std::vector<Constituent> constituents;
  std::vector<std::string> x_vars;
  std::vector<std::string> y_vars;
  std::vector<std::string> z_vars;
  // Constituent count when complementary-literal pruning is skipped (subset pruning only).
  std::size_t unpruned_count = 0;

  std::size_t size() const { return constituents.size(); }
  Formula to_formula() const;
};

// Canonical literal order: predicate name, then arguments, positive before negative.
bool literal_less(const Formula& a, const Formula& b);

NormalFormMatrix matrix_to_nf(const Formula& psi, const std::vector<std::string>& x_vars,
                              const std::vector<std::string>& y_vars, const std::vector<std::string>& z_vars,
                              NormalFormKind kind, const Caps& caps = {});

// ∀x∃y.ψ  ↦  ∃y_1…∃y_m ∀x.ψ′
Formula transpose_block(const Formula& phi, const Caps& caps = {});

// ∃z ∀x1∃y1 … ∀xn∃yn.ψ  ↦  an equivalent ∃*∀* sentence.
Formula transpose_all(const Formula& phi, const Caps& caps = {});

// (φ_n, φ′_n): ∀x∃y.⋀(p_i(x) ↔ q_i(y)) and its explicit ∃^(2^n)∀ equivalent.
std::pair<Formula, Formula> gen_blowup(int n, const Caps& caps = {});

}  // namespace sepfol
