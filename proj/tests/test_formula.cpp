#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "ll/formula.hpp"

using namespace ll;

TEST_CASE("parser round-trips the canonical grammar") {
  const char* samples[] = {
      "p1",
      "bot",
      "1",
      "!p7",
      "(p1 * p2)",
      "(p1 @ (p2 + p3))",
      "((p1 -o p2) & (bot * 1))",
      "!!(p1 -o (p2 * p2))",
      "((1 -o bot) + !(p4 @ bot))",
  };
  for (const char* s : samples) {
    FormulaPtr f = parse_formula(s);
    CHECK(print_formula(f) == s);
    CHECK(equal(parse_formula(print_formula(f)), f));
  }
}

TEST_CASE("parser accepts flexible whitespace but prints canonically") {
  FormulaPtr f = parse_formula("( p1*p2 )");
  CHECK(print_formula(f) == "(p1 * p2)");
  CHECK(equal(f, tensor(lit(1), lit(2))));
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_formula("(p1 * p2"), ParseError);
  CHECK_THROWS_AS(parse_formula("p"), ParseError);
  CHECK_THROWS_AS(parse_formula("(p1 % p2)"), ParseError);
  CHECK_THROWS_AS(parse_formula("p1 p2"), ParseError);
  CHECK_THROWS_AS(parse_sequent("p1 , |- p2"), ParseError);
  CHECK_THROWS_AS(parse_sequent("p1, p2"), ParseError);
}

TEST_CASE("sequent printing and parsing") {
  Sequent s = parse_sequent("p1, (p1 -o p2) |- p2");
  CHECK(s.lhs.size() == 2);
  CHECK(s.rhs.size() == 1);
  CHECK(parse_sequent(print_sequent(s)) == s);

  Sequent empty_rhs = parse_sequent("bot |-");
  CHECK(empty_rhs.rhs.empty());
  CHECK(parse_sequent(print_sequent(empty_rhs)) == empty_rhs);

  Sequent empty_lhs = parse_sequent("|- 1");
  CHECK(empty_lhs.lhs.empty());
}

TEST_CASE("structural equality is multiset-aware at the sequent level") {
  Sequent a = parse_sequent("p1, p2 |- p3");
  Sequent b = parse_sequent("p2, p1 |- p3");
  CHECK(a == b);
  CHECK(a.hash() == b.hash());
  Sequent c = parse_sequent("p1, p1 |- p3");
  CHECK(!(a == c));
}

TEST_CASE("multiset helpers") {
  FormulaMultiset ms;
  ms_insert(ms, lit(2));
  ms_insert(ms, lit(1));
  ms_insert(ms, lit(2));
  CHECK(ms.size() == 3);
  CHECK(ms_contains(ms, lit(2)));
  CHECK(ms_remove_one(ms, lit(2)));
  CHECK(ms.size() == 2);
  CHECK(ms_contains(ms, lit(2)));
  CHECK(!ms_remove_one(ms, lit(7)));

  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    FormulaMultiset a, b;
    for (int i = 0; i < 6; ++i) {
      ms_insert(a, lit(static_cast<int>(rng() % 4) + 1));
      ms_insert(b, lit(static_cast<int>(rng() % 4) + 1));
    }
    FormulaMultiset u = ms_union(a, b);
    CHECK(u.size() == a.size() + b.size());
    for (const auto& f : a) CHECK(ms_remove_one(u, f));
    CHECK(ms_equal(u, b));
  }
}

TEST_CASE("simple products") {
  SimpleProduct x = product_of_multiset({3, 1, 1});
  CHECK(x.lits == std::vector<int>{1, 1, 3});
  CHECK_THROWS(product_of_multiset({}));

  FormulaPtr f = product_formula(x);
  CHECK(print_formula(f) == "(p1 * (p1 * p3))");
  auto back = formula_to_product(f);
  REQUIRE(back.has_value());
  CHECK(*back == x);

  // Any association flattens to the same product.
  auto assoc = formula_to_product(tensor(tensor(lit(1), lit(3)), lit(1)));
  REQUIRE(assoc.has_value());
  CHECK(*assoc == x);

  CHECK(!formula_to_product(plus_f(lit(1), lit(2))).has_value());
  CHECK(!formula_to_product(tensor(lit(1), bottom())).has_value());

  CHECK(product_subseteq(product_of_multiset({1}), x));
  CHECK(!product_subseteq(product_of_multiset({1, 1, 1}), x));
}

TEST_CASE("power and nested-implication builders") {
  CHECK(print_formula(power_tensor(bottom(), 3)) == "(bot * (bot * bot))");
  CHECK(print_formula(power_tensor(bottom(), 1)) == "bot");
  CHECK(print_formula(power_tensor(bottom(), 0)) == "1");
  CHECK(print_formula(power_par(bottom(), 2)) == "(bot @ bot)");
  CHECK(print_formula(nested_impl(lit(1), 2, lit(2))) ==
        "(p1 -o (p1 -o p2))");
  CHECK(print_formula(nested_impl(lit(1), 0, lit(2))) == "p2");
}

TEST_CASE("normalized formula classification") {
  auto horn = try_classify(parse_formula("((p1 * p2) -o p3)"));
  REQUIRE(horn.has_value());
  CHECK(horn->kind == NormKind::Horn);
  CHECK(horn->a == product_of_multiset({1, 2}));
  CHECK(horn->b == product_of_multiset({3}));

  auto plus = try_classify(parse_formula("(p1 -o (p2 + (p3 * p3)))"));
  REQUIRE(plus.has_value());
  CHECK(plus->kind == NormKind::PlusHorn);
  CHECK(plus->c == product_of_multiset({3, 3}));

  auto with = try_classify(parse_formula("((p1 -o p2) & (p3 -o p4))"));
  REQUIRE(with.has_value());
  CHECK(with->kind == NormKind::WithHorn);

  auto emb = try_classify(parse_formula("((p1 -o p2) -o p3)"));
  REQUIRE(emb.has_value());
  CHECK(emb->kind == NormKind::Embedded);
  CHECK(emb->a == product_of_multiset({1}));
  CHECK(emb->b == product_of_multiset({2}));
  CHECK(emb->c == product_of_multiset({3}));

  CHECK(!try_classify(parse_formula("(p1 -o (p2 -o p3))")).has_value());
  CHECK(!try_classify(parse_formula("(bot -o p2)")).has_value());
  CHECK(!try_classify(parse_formula("!(p1 -o p2)")).has_value());

  for (const char* txt :
       {"((p1 * p2) -o p3)", "(p1 -o (p2 + p3))", "((p1 -o p2) & (p3 -o p4))",
        "((p1 -o p2) -o p3)"}) {
    auto nf = classify_normalized(parse_formula(txt));
    CHECK(equal(nf.to_formula(), parse_formula(txt)));
  }
}

TEST_CASE("sequent normalization") {
  Sequent s = parse_sequent(
      "p1, (p2 * p2), (p1 -o p3), !((p1 -o p2) & (p1 -o p3)) |- (p3 * p2)");
  auto n = sequent_to_normalized(s);
  REQUIRE(n.has_value());
  CHECK(n->W == product_of_multiset({1, 2, 2}));
  CHECK(n->delta.size() == 1);
  CHECK(n->gamma.size() == 1);
  CHECK(n->Z == product_of_multiset({2, 3}));
  CHECK(n->max_literal() == 3);
  CHECK(n->contains_literal(2));
  CHECK(!n->contains_literal(4));
  auto n2 = sequent_to_normalized(n->to_sequent());
  REQUIRE(n2.has_value());
  CHECK(n2->W == n->W);
  CHECK(n2->Z == n->Z);
  CHECK(n2->delta.size() == n->delta.size());
  CHECK(n2->gamma.size() == n->gamma.size());

  CHECK(!sequent_to_normalized(parse_sequent("p1 |- p2, p3")).has_value());
  CHECK(!sequent_to_normalized(parse_sequent("bot |- p1")).has_value());
  CHECK(!sequent_to_normalized(parse_sequent("|- p1")).has_value());
}
