#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "ll/prover.hpp"

using namespace ll;

namespace {

SearchResult run(const std::string& text, int depth = 15) {
  SearchBudget b;
  b.max_depth = depth;
  return prove(parse_sequent(text), b);
}

}  // namespace

TEST_CASE("derivable sequents are proved with checked proofs") {
  clear_prover_cache();
  const char* derivable[] = {
      "p1 |- p1",
      "bot |-",
      "|- 1",
      "bot |- bot",
      "1 |- 1",
      "p1, (p1 -o p2) |- p2",
      "p1, (p1 -o p2), (p2 -o p3) |- p3",
      "|- (p1 -o p1)",
      "p1, p2 |- (p1 * p2)",
      "(p1 * p2) |- (p2 * p1)",
      "(p1 @ p2) |- p1, p2",
      "(p1 + p1) |- p1",
      "p1 |- (p1 + p2)",
      "(p1 & p2) |- p2",
      "p1 |- (p1 & p1)",
      "!p1 |- p1",
      "!p1 |- (p1 * p1)",
      "!p1 |- !p1",
      "p1, !p2 |- p1",
      "(p1 * p1), !(p1 -o p2) |- (p2 * p2)",
  };
  for (const char* s : derivable) {
    CAPTURE(s);
    SearchResult r = run(s);
    CHECK(r.status == SearchStatus::Proved);
    REQUIRE(r.proof);
    CheckResult chk = check_proof(r.proof);
    CAPTURE(chk.message);
    CHECK(chk.ok);
    CHECK(r.proof->conclusion == parse_sequent(s));
  }
}

TEST_CASE("non-derivable sequents are refuted") {
  const char* refutable[] = {
      "p1 |- p2",
      "|- bot",
      "|- p1",
      "p1 |-",
      "p1, p2 |- p1, p2",
      "p1 |- (p1 * p1)",
      "(p1 + p2) |- p1",
      "p1 |- (p1 & p2)",
      "p1 |- !p1",
  };
  for (const char* s : refutable) {
    CAPTURE(s);
    SearchResult r = run(s);
    CHECK(r.status == SearchStatus::Refuted);
    CHECK(!r.proof);
  }
}

TEST_CASE("shallow budgets degrade to exhaustion, not refutation") {
  SearchResult r = run("p1, (p1 -o p2), (p2 -o p3), (p3 -o p4) |- p4", 2);
  CHECK(r.status == SearchStatus::BudgetExhausted);
}

TEST_CASE("contraction budget is respected") {
  SearchBudget tight;
  tight.max_contractions_per_bang = 0;
  // needs one contraction: the banged step must fire twice
  SearchResult r =
      prove(parse_sequent("(p1 * p1), !(p1 -o p2) |- (p2 * p2)"), tight);
  CHECK(r.status != SearchStatus::Proved);
}

TEST_CASE("search is deterministic") {
  const char* s = "p1, (p1 -o p2), (p2 -o p3) |- p3";
  clear_prover_cache();
  SearchResult a = run(s);
  clear_prover_cache();
  SearchResult b = run(s);
  REQUIRE(a.proof);
  REQUIRE(b.proof);
  CHECK(proof_to_sexpr(a.proof) == proof_to_sexpr(b.proof));
}

TEST_CASE("balance pruning does not change verdicts on small sequents") {
  const char* samples[] = {
      "bot |-", "bot |- bot", "(bot * bot) |- bot", "bot, bot |- (bot * bot)",
      "|- bot", "p1 |- p1",   "p1 |- p2",
  };
  for (const char* s : samples) {
    CAPTURE(s);
    SearchBudget on;
    on.modulus_N = 9;
    SearchBudget off;
    off.balance_pruning = false;
    SearchResult a = prove(parse_sequent(s), on);
    SearchResult c = prove(parse_sequent(s), off);
    CHECK(a.status == c.status);
  }
}
