#include <doctest.h>

#include <random>

#include "sepfol/bounds.hpp"
#include "sepfol/decide.hpp"
#include "sepfol/errors.hpp"
#include "sepfol/tptp.hpp"
#include "support.hpp"

using namespace sepfol;
using sepfol::testing::parse;

namespace {

constexpr int a = 0, a2 = 1, b = 2;

// The three-element structure used to illustrate nested fingerprints.
Structure fingerprint_fixture() {
  Structure s;
  s.universe_size = 3;
  Signature sig;
  for (auto p : {"q1", "q2", "r1", "r2"}) sig.add_predicate(p, 2);
  s.declare(sig);
  for (auto t : std::vector<std::vector<int>>{{a, b}, {a2, a}, {a2, a2}, {b, b}}) s.set("r1", t);
  for (auto t : std::vector<std::vector<int>>{{a, a}, {a, a2}, {a, b}, {a2, a}, {a2, a2}, {a2, b}, {b, a}})
    s.set("r2", t);
  return s;
}

Fingerprint leaf(std::vector<int> indices) { return Fingerprint{true, std::move(indices), {}}; }

Fingerprint inner(std::vector<Fingerprint> members) {
  std::sort(members.begin(), members.end());
  return Fingerprint{false, {}, std::move(members)};
}

bool is_sat(const Verdict& v) { return std::holds_alternative<Sat>(v); }

}  // namespace

TEST_SUITE("decide") {
  TEST_CASE("evaluation") {
    Structure s = parse_structure(R"({"universe":2,"predicates":{"p":[[0]],"q":[[0]]}})");
    CHECK(eval(s, {}, parse("![X]: ?[Y]: (p(X) <=> q(Y))")));
    CHECK_FALSE(eval(s, {}, parse("?[Y]: ![X]: (p(X) <=> q(Y))")));
    CHECK(eval(s, {}, Formula::truth()));
    CHECK(eval(s, {{"X", 1}}, parse("~p(X)")));
    CHECK(eval(s, {{"X", 1}, {"Y", 1}}, parse("X = Y")));
  }

  TEST_CASE("evaluation errors") {
    Structure s = parse_structure(R"({"universe":2,"predicates":{"p":[[0]]}})");
    CHECK_THROWS_AS(eval(s, {}, parse("p(X)")), MissingInterpretation);
    CHECK_THROWS_AS(eval(s, {}, parse("![X]: q(X)")), MissingInterpretation);
    CHECK_THROWS_AS(eval(s, {}, parse("p(c)")), MissingInterpretation);
  }

  TEST_CASE("compiled and naive evaluators agree") {
    std::mt19937 rng(1000);
    Signature sig;
    sig.add_predicate("p", 1);
    sig.add_predicate("r", 2);
    sig.add_predicate("s", 0);
    sig.add_function("f", 1);
    sig.add_function("g", 2);
    sig.add_constant("c");
    for (int i = 0; i < 1000; ++i) {
      int size = 1 + static_cast<int>(rng() % 4);
      Structure s = sepfol::testing::random_structure(sig, size, rng);
      Formula phi = sepfol::testing::random_formula(sig, {"A", "B"}, 5, rng);
      Assignment beta{{"A", static_cast<int>(rng() % size)}, {"B", static_cast<int>(rng() % size)}};
      CHECK_MESSAGE(eval(s, beta, phi) == sepfol::testing::naive_eval(s, beta, phi), print_tptp(phi));
    }
  }

  TEST_CASE("enumeration counts") {
    Signature unary;
    unary.add_predicate("p", 1);
    CHECK(enumerate_structures(unary, 1).size() == 2);
    Signature with_constant = unary;
    with_constant.add_constant("c");
    CHECK(enumerate_structures(with_constant, 2).size() == 8);
    Signature binary;
    binary.add_predicate("r", 2);
    CHECK(enumerate_structures(binary, 2).size() == 16);

    Signature mixed;
    mixed.add_predicate("r", 2);
    mixed.add_function("f", 1);
    mixed.add_constant("c");
    mixed.add_constant("d");
    for (int n = 1; n <= 3; ++n) {
      std::uint64_t expected = 1;
      for (int i = 0; i < n * n; ++i) expected *= 2;  // r
      for (int i = 0; i < n; ++i) expected *= n;      // f
      expected *= n * n;                              // c, d
      CHECK(count_structures(mixed, n) == expected);
      StructureEnumerator e(mixed, n);
      std::uint64_t seen = 0;
      std::set<std::string> distinct;
      while (e.next()) {
        ++seen;
        if (n <= 2) distinct.insert(print_structure(e.current()));
      }
      CHECK(seen == expected);
      if (n <= 2) CHECK(distinct.size() == expected);
    }
  }

  TEST_CASE("enumeration order and budget") {
    Signature sig;
    sig.add_predicate("p", 1);
    auto all = enumerate_structures(sig, 2);
    REQUIRE(all.size() == 4);
    CHECK_FALSE(all[0].holds("p", {0}));
    CHECK_FALSE(all[0].holds("p", {1}));
    CHECK(all[1].holds("p", {1}));
    CHECK(all[3].holds("p", {0}));
    Caps tight;
    tight.structure_cap = 3;
    CHECK_THROWS_AS(StructureEnumerator(sig, 2, tight), BudgetExceeded);
  }

  TEST_CASE("constant pruning visits fewer structures with the same verdicts") {
    Signature sig;
    sig.add_predicate("p", 1);
    sig.add_constant("c");
    sig.add_constant("d");
    StructureEnumerator pruned(sig, 3, {}, true);
    CHECK(pruned.total() < count_structures(sig, 3));
    std::mt19937 rng(8);
    for (int i = 0; i < 100; ++i) {
      Formula phi = sepfol::testing::random_formula(sig, {"A"}, 4, rng);
      phi = Formula::forall("A", phi);
      CHECK(is_sat(oracle_decide(phi, 3)) == is_sat(oracle_decide(phi, 3, {}, true)));
    }
  }

  TEST_CASE("oracle decisions") {
    Verdict v = oracle_decide(parse("![X]: ?[Y]: (p(X) <=> q(Y))"), 2);
    REQUIRE(is_sat(v));
    CHECK(std::get<Sat>(v).size == 1);
    Verdict u = oracle_decide(parse("(![X]: p(X)) & (?[Y]: ~p(Y))"), 3);
    REQUIRE(std::holds_alternative<Unsat>(u));
    CHECK(std::get<Unsat>(u).bound_checked == 3);
    Formula two = parse("?[Z1,Z2]: Z1 != Z2");
    CHECK(std::holds_alternative<Unsat>(oracle_decide(two, 1)));
    Verdict w = oracle_decide(two, 2);
    REQUIRE(is_sat(w));
    CHECK(std::get<Sat>(w).size == 2);
    // Free variables are read existentially.
    CHECK(is_sat(oracle_decide(parse("p(X) & ~p(Y)"), 2)));
  }

  TEST_CASE("oracle decisions match a naive search") {
    std::mt19937 rng(12);
    Signature sig;
    sig.add_predicate("p", 1);
    sig.add_predicate("r", 2);
    sig.add_constant("c");
    for (int i = 0; i < 150; ++i) {
      Formula phi = Formula::forall("A", sepfol::testing::random_formula(sig, {"A"}, 4, rng));
      CHECK(is_sat(oracle_decide(phi, 2)) == sepfol::testing::naive_satisfiable(phi, 2));
    }
  }

  TEST_CASE("oracle equivalence") {
    CHECK_FALSE(oracle_equivalent(parse("p(X)"), parse("q(X)"), 1));
    Formula phi = parse("![X]: ?[Y]: (p(X) <=> q(Y))");
    CHECK(oracle_equivalent(phi, phi, 3));
    CHECK(oracle_equivalent(phi, parse("?[Y1,Y2]: ![X]: ((~p(X) | q(Y1)) & (~q(Y2) | p(X)))"), 3));
    CHECK_FALSE(oracle_equivalent(phi, parse("?[Y]: ![X]: (p(X) <=> q(Y))"), 2));
    // Differences that only show at size two.
    CHECK(oracle_equivalent(parse("![X,Y]: X = Y"), Formula::truth(), 1));
    CHECK_FALSE(oracle_equivalent(parse("![X,Y]: X = Y"), Formula::truth(), 2));
    CHECK_FALSE(oracle_equivalent(parse("p(X)"), parse("p(Y)"), 2));
  }

  TEST_CASE("decision procedure") {
    Verdict v = decide_sf(parse("![X]: ?[Y]: (p(X) <=> q(Y))"));
    REQUIRE(is_sat(v));
    CHECK(std::get<Sat>(v).size <= 2);
    CHECK(eval(std::get<Sat>(v).model, {}, parse("![X]: ?[Y]: (p(X) <=> q(Y))")));

    Verdict u = decide_sf(parse("(![X]: p(X)) & (?[Y]: ~p(Y))"));
    REQUIRE(std::holds_alternative<Unsat>(u));
    CHECK(std::get<Unsat>(u).bound_checked == 1);

    Verdict o = decide_sf(parse("![X1]: ?[Y1]: ![X2]: ?[Y2]: ![X3]: ?[Y3]: ![X4]: ?[Y4]: "
                                "((r(Y1,Y2) & p(X1)) | (r(Y2,Y3) & p(X2)) | (r(Y3,Y4) & p(X3)))"));
    REQUIRE(std::holds_alternative<Unknown>(o));
    CHECK(std::get<Unknown>(o).reason == UnknownReason::BoundOverflow);

    Caps small;
    small.structure_cap = 10;
    Verdict c = decide_sf(parse("?[Z1,Z2,Z3]: ![X]: ((r(Z1,X) | r(Z2,X)) & ~r(Z3,Z3) & Z1 != Z2 & Z2 != Z3 & Z1 != Z3)"),
                          small);
    REQUIRE(std::holds_alternative<Unknown>(c));
    CHECK(std::get<Unknown>(c).reason == UnknownReason::CapExceeded);

    CHECK_THROWS_AS(decide_sf(parse("![X]: ?[Y]: r(X,Y)")), NotSF);
    CHECK(verdict_name(v) == "Sat");
  }

  TEST_CASE("decision procedure agrees with the oracle at the bound") {
    std::mt19937 rng(55);
    for (int i = 0; i < 80; ++i) {
      Formula phi = sepfol::testing::random_sf(rng, 1);
      auto bound = compute_bounds(phi).domain_bound;
      REQUIRE(bound.has_value());
      int n = static_cast<int>(*bound);
      if (n > 4) continue;
      Verdict d = decide_sf(phi);
      CHECK(is_sat(d) == is_sat(oracle_decide(phi, n)));
      if (is_sat(d)) CHECK(eval(std::get<Sat>(d).model, {}, phi));
    }
  }

  TEST_CASE("fingerprint tables") {
    Structure s = fingerprint_fixture();
    std::vector<Formula> eta{parse("r1(Y1,Y2)"), parse("r2(Y1,Y2)")};
    auto tables = fingerprint_table(s, eta, {{"Y1"}, {"Y2"}});
    REQUIRE(tables.size() == 2);
    const auto& l2 = tables[1].entries;
    CHECK(tables[1].arity == 2);
    CHECK(l2.size() == 9);
    CHECK(l2.at({a, a}) == leaf({2}));
    CHECK(l2.at({a, a2}) == leaf({2}));
    CHECK(l2.at({a, b}) == leaf({1, 2}));
    CHECK(l2.at({a2, a}) == leaf({1, 2}));
    CHECK(l2.at({a2, a2}) == leaf({1, 2}));
    CHECK(l2.at({a2, b}) == leaf({2}));
    CHECK(l2.at({b, a}) == leaf({2}));
    CHECK(l2.at({b, a2}) == leaf({}));
    CHECK(l2.at({b, b}) == leaf({1}));

    const auto& l1 = tables[0].entries;
    CHECK(l1.at({a}) == inner({leaf({2}), leaf({1, 2})}));
    CHECK(l1.at({a2}) == inner({leaf({2}), leaf({1, 2})}));
    CHECK(l1.at({b}) == inner({leaf({}), leaf({1}), leaf({2})}));
    CHECK(to_string(l1.at({b})) == "{{},{1},{2}}");
    CHECK(to_string(l2.at({a, b})) == "{1,2}");

    auto none = fingerprint_table(s, {}, {{"Y1"}, {"Y2"}});
    for (const auto& [tuple, f] : none[1].entries) CHECK(f.indices.empty());
  }

  TEST_CASE("equal fingerprints are interchangeable") {
    Structure base = fingerprint_fixture();
    Formula suffix = parse("![X2]: ?[Y2]: ((q1(X1,X2) & r1(Y1,Y2)) | (q2(X1,X2) & r2(Y1,Y2)))");
    std::mt19937 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
      Structure s = base;
      for (auto q : {"q1", "q2"})
        for (auto& bit : s.predicates.at(q).bits) bit = static_cast<std::uint8_t>(rng() % 2);
      for (int x1 = 0; x1 < 3; ++x1)
        CHECK(eval(s, {{"X1", x1}, {"Y1", a}}, suffix) == eval(s, {{"X1", x1}, {"Y1", a2}}, suffix));
    }
  }

  TEST_CASE("truth is inherited by substructures of universal sentences") {
    std::mt19937 rng(77);
    Signature sig;
    sig.add_predicate("p", 1);
    sig.add_predicate("q", 1);
    sig.add_predicate("r", 2);
    sig.add_constant("c");
    for (int i = 0; i < 60; ++i) {
      Formula matrix = sepfol::testing::random_matrix(sepfol::testing::atoms_over({"A", "B"}, rng, 3), 3, rng);
      Formula phi = Formula::forall("A", Formula::forall("B", Formula::disjunction(matrix, parse("p(c)"))));
      Structure big = sepfol::testing::random_structure(sig, 3, rng);
      if (!eval(big, {}, phi)) continue;
      int c = big.constants.at("c");
      for (int other = 0; other < 3; ++other) {
        if (other == c) continue;
        // The substructure on {c, other}, renumbered to {0, 1}.
        std::vector<int> keep{std::min(c, other), std::max(c, other)};
        Structure small;
        small.universe_size = 2;
        small.declare(sig);
        small.constants["c"] = c == keep[0] ? 0 : 1;
        for (int u = 0; u < 2; ++u) {
          for (auto p : {"p", "q"})
            if (big.holds(p, {keep[u]})) small.set(p, {u});
          for (int v = 0; v < 2; ++v)
            if (big.holds("r", {keep[u], keep[v]})) small.set("r", {u, v});
        }
        CHECK(eval(small, {}, phi));
      }
    }
  }
}
