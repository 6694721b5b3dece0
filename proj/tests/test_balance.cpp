#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "ll/balance.hpp"
#include "ll/tables.hpp"

using namespace ll;

namespace {

long long residue(const FormulaPtr& f, int N) {
  long long m = 9LL * N;
  return ((bot_count(f) % m) + m) % m;
}

SimpleProduct random_product(std::mt19937& rng, int max_lit, int max_len) {
  std::vector<int> lits;
  int len = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_len));
  for (int i = 0; i < len; ++i)
    lits.push_back(1 + static_cast<int>(rng() % static_cast<unsigned>(max_lit)));
  return product_of_multiset(std::move(lits));
}

}  // namespace

TEST_CASE("bot_count on hand formulas") {
  CHECK(bot_count(parse_formula("bot")) == 1);
  CHECK(bot_count(parse_formula("1")) == 0);
  CHECK(bot_count(parse_formula("p3")) == 0);
  CHECK(bot_count(parse_formula("(bot * bot)")) == 2);
  CHECK(bot_count(parse_formula("(bot @ bot)")) == 1);
  CHECK(bot_count(parse_formula("((bot * bot) @ bot)")) == 2);
  CHECK(bot_count(parse_formula("(bot -o (bot * bot))")) == 1);
  CHECK(bot_count(parse_formula("((bot * bot) -o bot)")) == -1);
  CHECK(bot_count(parse_formula("(bot & (bot * bot))")) == 1);   // min
  CHECK(bot_count(parse_formula("(bot + (bot * bot))")) == 2);   // max
  CHECK(bot_count(parse_formula("((p1 -o p2) -o bot)")) == 1);
  CHECK_THROWS_AS(bot_count(parse_formula("!bot")), BangUnsupported);
  CHECK_THROWS_AS(bot_count(parse_formula("(bot * !bot)")), BangUnsupported);
}

TEST_CASE("table arithmetic is exact for every supported scale") {
  for (int N = 9; N <= 16; ++N) {
    CAPTURE(N);
    EncodingParams params;
    params.N = N;
    params.p_index = 1;
    params.target = Target::BotOnly;
    BasicFormulaTable t = basic_formulas(params);
    CHECK(bot_count(t.h0) == -N);
    CHECK(bot_count(t.c0) == -2LL * N);
    CHECK(bot_count(t.h1) == 9LL * N);
    LcostReport rep = lcost_verify(N);
    for (const auto& line : rep.lines) CAPTURE(line);
    CHECK(rep.ok);
  }
}

TEST_CASE("component congruences hold on random samples") {
  std::mt19937 rng(20260826);
  for (int trial = 0; trial < 200; ++trial) {
    int N = 9 + static_cast<int>(rng() % 8);
    EncodingParams params;
    params.N = N;
    params.p_index = 1 + static_cast<int>(rng() % static_cast<unsigned>(N - 7));
    params.target = Target::BotOnly;
    int max_lit = N - 7;
    SimpleProduct x = random_product(rng, max_lit, 3);
    CHECK(residue(encode_product(x, params), N) == 0);
    CHECK(residue(encode_value(x, params), N) == 6LL * N % (9LL * N));

    NormalizedFormula a;
    switch (rng() % 4) {
      case 0:
        a.kind = NormKind::Horn;
        a.a = random_product(rng, max_lit, 2);
        a.b = random_product(rng, max_lit, 2);
        break;
      case 1:
        a.kind = NormKind::PlusHorn;
        a.a = random_product(rng, max_lit, 2);
        a.b = random_product(rng, max_lit, 2);
        a.c = random_product(rng, max_lit, 2);
        break;
      case 2:
        a.kind = NormKind::WithHorn;
        a.a = random_product(rng, max_lit, 2);
        a.b = random_product(rng, max_lit, 2);
        a.c = random_product(rng, max_lit, 2);
        a.d = random_product(rng, max_lit, 2);
        break;
      default:
        a.kind = NormKind::Embedded;
        a.a = random_product(rng, max_lit, 2);
        a.b = random_product(rng, max_lit, 2);
        a.c = random_product(rng, max_lit, 2);
        break;
    }
    CHECK(residue(encode_formula(a, params), N) == 0);
  }
}

TEST_CASE("balance check on constant sequents") {
  CHECK(balance_check(parse_sequent("bot |-"), 9) == BalanceStatus::Holds);
  CHECK(balance_check(parse_sequent("bot |- bot"), 9) == BalanceStatus::Holds);
  CHECK(balance_check(parse_sequent("|- bot"), 9) == BalanceStatus::Violated);
  CHECK(balance_check(parse_sequent("(bot * bot) |- bot"), 9) ==
        BalanceStatus::Violated);
  CHECK(balance_check(parse_sequent("bot, bot |- (bot * bot)"), 9) ==
        BalanceStatus::Holds);
  // anything outside the constant-only / encoded shape is not applicable
  CHECK(balance_check(parse_sequent("p1 |- p1"), 9) ==
        BalanceStatus::NotApplicable);
  CHECK(balance_check(parse_sequent("|- 1"), 9) ==
        BalanceStatus::NotApplicable);
}

TEST_CASE("balance check treats encoded formulas as zero-cost blocks") {
  EncodingParams params;  // N = 9, p = 1, bot-only
  NormalizedFormula horn;
  horn.kind = NormKind::Horn;
  horn.a = product_of_multiset({2});
  horn.b = product_of_multiset({2, 2});
  FormulaPtr f = encode_formula(horn, params);
  SimpleProduct w = product_of_multiset({1, 2});

  Sequent s;
  s.lhs = sorted_multiset({encode_value(w, params), f});
  s.rhs = sorted_multiset({encode_value(product_of_multiset({1, 2, 2}), params)});
  CHECK(balance_check(s, 9) == BalanceStatus::Holds);

  Sequent banged = s;
  banged.lhs = sorted_multiset({encode_value(w, params), bang(f)});
  CHECK(balance_check(banged, 9) == BalanceStatus::Holds);

  // an extra bot on the left breaks the congruence
  Sequent off = s;
  ms_insert(off.lhs, bottom());
  CHECK(balance_check(off, 9) == BalanceStatus::Violated);

  // a bang around a non-encoded formula is out of scope
  Sequent stray = s;
  ms_insert(stray.lhs, bang(bottom()));
  CHECK(balance_check(stray, 9) == BalanceStatus::NotApplicable);
}
