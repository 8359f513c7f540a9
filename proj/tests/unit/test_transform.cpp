#include <doctest.h>

#include <random>

#include "sepfol/analysis.hpp"
#include "sepfol/decide.hpp"
#include "sepfol/errors.hpp"
#include "sepfol/tptp.hpp"
#include "sepfol/transform.hpp"
#include "support.hpp"

using namespace sepfol;
using sepfol::testing::parse;

namespace {

std::string text(const Formula& phi) { return print_tptp(phi); }

std::vector<std::string> strings(const std::vector<Formula>& fs) {
  std::vector<std::string> out;
  for (const auto& f : fs) out.push_back(text(f));
  return out;
}

using Strings = std::vector<std::string>;

// Whether every atom of `out` is an atom of `in` up to renaming variables.
bool atoms_are_variants(const Formula& in, const Formula& out) {
  auto shape = [](const Formula& a) {
    std::string s = a.kind() == Formula::Kind::Equality ? "=" : a.symbol();
    for (const auto& t : a.terms()) s += t.is_variable() ? ",?" : "," + print_tptp(t);
    return s;
  };
  std::set<std::string> source;
  for (const auto& a : atoms(in)) source.insert(shape(a));
  for (const auto& a : atoms(out))
    if (!source.count(shape(a))) return false;
  return true;
}

}  // namespace

TEST_SUITE("transform") {
  TEST_CASE("negation normal form") {
    CHECK(text(to_nnf(parse("~(p(X) & q(Y))"))) == "~p(X) | ~q(Y)");
    CHECK(text(to_nnf(parse("p(X) <=> q(Y)"))) == "(~p(X) | q(Y)) & (p(X) | ~q(Y))");
    CHECK(text(to_nnf(parse("~~p(X)"))) == "p(X)");
    CHECK(text(to_nnf(parse("~![X]: p(X)"))) == "?[X]: ~p(X)");
  }

  TEST_CASE("miniscoping") {
    CHECK(text(miniscope(parse("?[X]: (p(X) | q(X))"))) == "(?[X_1]: p(X_1)) | (?[X_2]: q(X_2))");
    CHECK(text(miniscope(parse("?[X]: (p(X) & s)"))) == "(?[X]: p(X)) & s");
    CHECK(text(miniscope(parse("![X]: (p(X) & q(X))"))) == "(![X_1]: p(X_1)) & (![X_2]: q(X_2))");
    CHECK(text(miniscope(parse("![X]: (p(X) | s)"))) == "(![X]: p(X)) | s");
  }

  TEST_CASE("prenexing") {
    CHECK(text(to_prenex(parse("(?[Y]: q(Y)) & (![X]: p(X))"))) == "?[Y]: ![X]: (q(Y) & p(X))");
    Formula prenex = parse("![X]: ?[Y]: (p(X) <=> q(Y))");
    CHECK(to_prenex(prenex) == prenex);
    CHECK(text(to_prenex(parse("(![X]: p(X)) | (![U]: s2(U))"))) == "![X,U]: (p(X) | s2(U))");
    // Universal-first order puts the ∀ block outside.
    CHECK(text(to_prenex(parse("(![X]: p(X)) & (?[Y]: q(Y))"), PullOrder::ForallFirst)) ==
          "![X]: ?[Y]: (p(X) & q(Y))");
    CHECK(text(to_prenex(parse("(![X]: p(X)) & (?[Y]: q(Y))"))) == "?[Y]: ![X]: (p(X) & q(Y))");
  }

  TEST_CASE("normal forms of the matrix") {
    Formula psi = parse("p(X) <=> q(Y)");
    NormalFormMatrix dnf = matrix_to_nf(psi, {"X"}, {"Y"}, {}, NormalFormKind::DNF);
    REQUIRE(dnf.size() == 2);
    CHECK(strings(dnf.constituents[0].chi) == Strings{"p(X)"});
    CHECK(strings(dnf.constituents[0].eta) == Strings{"q(Y)"});
    CHECK(strings(dnf.constituents[1].chi) == Strings{"~p(X)"});
    CHECK(strings(dnf.constituents[1].eta) == Strings{"~q(Y)"});

    NormalFormMatrix cnf = matrix_to_nf(psi, {"X"}, {"Y"}, {}, NormalFormKind::CNF);
    REQUIRE(cnf.size() == 2);
    CHECK(strings(cnf.constituents[0].chi) == Strings{"~p(X)"});
    CHECK(strings(cnf.constituents[0].eta) == Strings{"q(Y)"});
    CHECK(strings(cnf.constituents[1].chi) == Strings{"p(X)"});
    CHECK(strings(cnf.constituents[1].eta) == Strings{"~q(Y)"});

    NormalFormMatrix one = matrix_to_nf(parse("p(X) & q(Y)"), {"X"}, {"Y"}, {}, NormalFormKind::DNF);
    REQUIRE(one.size() == 1);
    CHECK(strings(one.constituents[0].chi) == Strings{"p(X)"});

    NormalFormMatrix params = matrix_to_nf(parse("(p(X) & s2(Z)) | q(Y)"), {"X"}, {"Y"}, {"Z"}, NormalFormKind::DNF);
    REQUIRE(params.size() == 2);
    CHECK(strings(params.constituents[0].param) == Strings{"s2(Z)"});

    CHECK_THROWS_AS(matrix_to_nf(parse("r(X,Y)"), {"X"}, {"Y"}, {}, NormalFormKind::DNF), SeparationError);
  }

  TEST_CASE("normal forms drop complementary and subsumed constituents") {
    NormalFormMatrix dnf = matrix_to_nf(parse("(p(X) & ~p(X)) | q(Y) | (q(Y) & p(X))"), {"X"}, {"Y"}, {},
                                        NormalFormKind::DNF);
    CHECK(dnf.size() == 1);
    CHECK(dnf.unpruned_count == 2);
    NormalFormMatrix empty = matrix_to_nf(Formula::falsity(), {}, {}, {}, NormalFormKind::DNF);
    CHECK(empty.size() == 0);
  }

  TEST_CASE("normal forms agree with a truth table") {
    std::mt19937 rng(17);
    for (int i = 0; i < 150; ++i) {
      auto xs = sepfol::testing::atoms_over({"X"}, rng, 2);
      auto ys = sepfol::testing::atoms_over({"Y"}, rng, 2);
      xs.insert(xs.end(), ys.begin(), ys.end());
      Formula psi = sepfol::testing::random_matrix(xs, 3, rng);
      for (auto kind : {NormalFormKind::DNF, NormalFormKind::CNF}) {
        NormalFormMatrix nf = matrix_to_nf(psi, {"X"}, {"Y"}, {}, kind);
        CHECK(oracle_equivalent(psi, nf.to_formula(), 2));
        for (std::size_t a = 0; a < nf.size(); ++a)
          for (std::size_t b = 0; b < nf.size(); ++b) {
            if (a == b) continue;
            auto la = nf.constituents[a].literals(), lb = nf.constituents[b].literals();
            CHECK_FALSE(std::includes(lb.begin(), lb.end(), la.begin(), la.end(), literal_less));
          }
      }
    }
  }

  TEST_CASE("worked transposition") {
    Formula phi = parse("![X]: ?[Y]: (p(X) <=> q(Y))");
    Formula out = transpose_block(phi);
    CHECK(text(out) == "?[Y,Y_1]: ![X]: ((~q(Y) | p(X)) & (q(Y_1) | ~p(X)))");
    CHECK(oracle_equivalent(phi, out, 3));
    CHECK(transpose_all(phi) == out);
  }

  TEST_CASE("transposition special cases") {
    Formula vacuous = parse("![X]: ?[Y]: q(Y)");
    Formula out = transpose_block(vacuous);
    CHECK(oracle_equivalent(vacuous, out, 3));
    CHECK(count_quantifiers(out, Quantifier::Exists) == 1);

    Formula single = parse("![X]: ?[Y]: (p(X) & q(Y))");
    Formula one = transpose_block(single);
    CHECK(count_quantifiers(one, Quantifier::Exists) == 1);
    CHECK(oracle_equivalent(single, one, 3));

    Formula bsr = parse("?[Z]: ![X]: r(Z,X)");
    CHECK(oracle_equivalent(transpose_all(bsr), bsr, 3));
    CHECK(classify(transpose_all(bsr)).contains(Fragment::BSR));

    CHECK_THROWS_AS(transpose_block(parse("![X]: ?[Y]: r(X,Y)")), SeparationError);
  }

  TEST_CASE("two alternations collapse to an equivalent BSR sentence") {
    Formula phi = parse("![X1]: ?[Y1]: ![X2]: ?[Y2]: ((q1(X1,X2) & r1(Y1,Y2)) | (q2(X1,X2) & r2(Y1,Y2)))");
    Formula out = transpose_all(phi);
    CHECK(classify(out).contains(Fragment::BSR));
    CHECK(atoms_are_variants(phi, out));
    CHECK(oracle_equivalent(phi, out, 2));
  }

  TEST_CASE("node budget") {
    Caps tight;
    tight.node_cap = 20;
    Formula phi = parse("![X1]: ?[Y1]: ![X2]: ?[Y2]: ((q1(X1,X2) & r1(Y1,Y2)) | (q2(X1,X2) & r2(Y1,Y2)))");
    CHECK_THROWS_AS(transpose_all(phi, tight), BudgetExceeded);
  }

  TEST_CASE("blow-up family") {
    auto [phi1, out1] = gen_blowup(1);
    CHECK(text(phi1) == "![X]: ?[Y]: (p_1(X) <=> q_1(Y))");
    CHECK(count_quantifiers(out1, Quantifier::Exists) == 2);
    CHECK(oracle_equivalent(phi1, out1, 3));
    auto [phi2, out2] = gen_blowup(2);
    CHECK(count_quantifiers(out2, Quantifier::Exists) == 4);
    CHECK(oracle_equivalent(phi2, out2, 2));
    CHECK_THROWS_AS(gen_blowup(0), std::invalid_argument);
    Caps tight;
    tight.node_cap = 50;
    CHECK_THROWS_AS(gen_blowup(6, tight), BudgetExceeded);
  }

  TEST_CASE("random transpositions preserve meaning and atoms") {
    std::mt19937 rng(29);
    for (int i = 0; i < 120; ++i) {
      Formula phi = sepfol::testing::random_transposable(rng);
      Formula out = transpose_block(phi);
      CHECK_MESSAGE(oracle_equivalent(phi, out, 2), text(phi));
      CHECK(atoms_are_variants(phi, out));
    }
  }

  TEST_CASE("random SF sentences keep their meaning") {
    std::mt19937 rng(31);
    for (int i = 0; i < 60; ++i) {
      Formula phi = sepfol::testing::random_sf(rng);
      CHECK(oracle_equivalent(phi, to_nnf(phi), 2));
      CHECK(oracle_equivalent(phi, miniscope(phi), 2));
      CHECK(oracle_equivalent(phi, to_prenex(miniscope(phi)), 2));
      Formula bsr = transpose_all(phi);
      CHECK(classify(bsr).contains(Fragment::BSR));
      CHECK_MESSAGE(oracle_equivalent(phi, bsr, 2), text(phi));
    }
  }
}
