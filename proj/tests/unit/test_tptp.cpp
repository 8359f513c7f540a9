#include <doctest.h>

#include <random>

#include "sepfol/errors.hpp"
#include "sepfol/structure.hpp"
#include "sepfol/tptp.hpp"
#include "support.hpp"

using namespace sepfol;

TEST_SUITE("tptp") {
  TEST_CASE("reading annotated formulas") {
    Problem p = parse_tptp("fof(a, axiom, ![X]: ?[Y]: (p(X) <=> q(Y))).");
    REQUIRE(p.formulas.size() == 1);
    CHECK(p.formulas[0].label == "a");
    CHECK(p.formulas[0].role == Role::Axiom);
    Formula expected = Formula::forall(
        "X", Formula::exists("Y", Formula::equivalence(Formula::atom("p", {Term::variable("X")}),
                                                       Formula::atom("q", {Term::variable("Y")}))));
    CHECK(p.formulas[0].formula == expected);
    CHECK(p.signature.predicates == std::map<std::string, int>{{"p", 1}, {"q", 1}});
  }

  TEST_CASE("equality and disequality") {
    Formula eq = parse_tptp("fof(a, axiom, ![X]: ?[Y]: X = Y).").formulas[0].formula;
    CHECK(eq.operand().operand().kind() == Formula::Kind::Equality);
    Formula ne = parse_formula("X != c");
    REQUIRE(ne.kind() == Formula::Kind::Not);
    CHECK(ne.operand().kind() == Formula::Kind::Equality);
    CHECK(print_tptp(ne) == "X != c");
  }

  TEST_CASE("comments, roles and several entries") {
    Problem p = parse_tptp("% leading comment\nfof(a, axiom, p(X)).\n/* block */ fof(b, conjecture, q).");
    REQUIRE(p.formulas.size() == 2);
    CHECK(p.formulas[1].role == Role::Conjecture);
    CHECK(p.formulas[1].formula == Formula::atom("q"));
  }

  TEST_CASE("syntax errors carry positions") {
    CHECK_THROWS_AS(parse_tptp("fof(a, axiom, p(X,Y"), ParseError);
    try {
      parse_formula("p & q | r");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
      CHECK(e.column() == 7);
    }
    try {
      parse_tptp("fof(a, axiom, p).\nfof(a, axiom, q).");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_formula("![x]: p(x)"), ParseError);
    CHECK_THROWS_AS(parse_formula("p(X) &"), ParseError);
    CHECK_THROWS_AS(parse_tptp("fof(a, axiom, p(X) & p(X,Y))."), ArityConflict);
  }

  TEST_CASE("precedence") {
    CHECK(print_tptp(parse_formula("~ p & q <=> r | s")) == "(~p & q) <=> (r | s)");
    Formula chain = parse_formula("p => q => r");
    REQUIRE(chain.kind() == Formula::Kind::Implies);
    CHECK(chain.right().kind() == Formula::Kind::Implies);
    CHECK(parse_formula("(p & q) | r").kind() == Formula::Kind::Or);
  }

  TEST_CASE("printing") {
    Formula phi = parse_formula("![X]: ?[Y]: (p(X) <=> q(Y))");
    CHECK(print_tptp(phi) == "![X]: ?[Y]: (p(X) <=> q(Y))");
    CHECK(print_fof("a", Role::Axiom, phi) == "fof(a, axiom, ![X]: ?[Y]: (p(X) <=> q(Y))).");
    CHECK(print_tptp(Formula::truth()) == "$true");
    CHECK(print_tptp(Formula::falsity()) == "$false");
  }

  TEST_CASE("round trip on random formulas") {
    std::mt19937 rng(11);
    Signature sig;
    sig.add_predicate("p", 1);
    sig.add_predicate("r", 2);
    sig.add_predicate("s", 0);
    sig.add_function("f", 1);
    sig.add_function("g", 2);
    sig.add_constant("c");
    for (int i = 0; i < 500; ++i) {
      Formula phi = sepfol::testing::random_formula(sig, {"A"}, 5, rng);
      std::string text = print_tptp(phi);
      CHECK_MESSAGE(parse_formula(text) == phi, text);
      CHECK(print_tptp(parse_formula(text)) == text);
    }
  }

  TEST_CASE("structures") {
    std::string text = R"({"universe":2,"predicates":{"p":[[0]],"q":[[0]]}})";
    Structure s = parse_structure(text);
    CHECK(s.universe_size == 2);
    CHECK(s.holds("p", {0}));
    CHECK_FALSE(s.holds("q", {1}));
    CHECK(print_structure(s) == text);

    std::string rich =
        R"({"universe":2,"constants":{"c":1},"functions":{"f":{"[0]":1,"[1]":0}},"predicates":{"p":[[0]],"r":[[0,1]]}})";
    Structure t = parse_structure(rich);
    CHECK(t.apply("f", {0}) == 1);
    CHECK(t.constants.at("c") == 1);
    CHECK(print_structure(t) == rich);
  }

  TEST_CASE("structure schema errors") {
    CHECK_THROWS_AS(parse_structure(R"({"universe":2,"predicates":{"p":[[2]]}})"), SchemaError);
    CHECK_THROWS_AS(parse_structure(R"({"universe":0})"), SchemaError);
    CHECK_THROWS_AS(parse_structure(R"({"universe":2,"colour":1})"), SchemaError);
    CHECK_THROWS_AS(parse_structure(R"({"universe":2,"functions":{"f":{"[0]":1}}})"), SchemaError);
    CHECK_THROWS_AS(parse_structure("not json"), SchemaError);
  }

  TEST_CASE("structure round trip on random interpretations") {
    std::mt19937 rng(5);
    Signature sig;
    sig.add_predicate("p", 1);
    sig.add_predicate("r", 2);
    sig.add_function("f", 1);
    sig.add_constant("c");
    for (int size = 1; size <= 3; ++size) {
      for (int i = 0; i < 20; ++i) {
        Structure s = sepfol::testing::random_structure(sig, size, rng);
        std::string text = print_structure(s);
        Structure back = parse_structure(text);
        CHECK(print_structure(back) == text);
        for (const auto& t : all_tuples(size, 2)) CHECK(back.holds("r", t) == s.holds("r", t));
        for (int e = 0; e < size; ++e) CHECK(back.apply("f", {e}) == s.apply("f", {e}));
      }
    }
  }
}
