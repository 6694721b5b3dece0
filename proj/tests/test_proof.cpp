#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "doctest.h"
#include "golden.hpp"
#include "ll/proof.hpp"

using namespace ll;

TEST_CASE("golden corpus passes the checker and covers every rule") {
  std::set<RuleId> covered;
  auto corpus = golden::golden_proofs();
  CHECK(corpus.size() == 25);
  for (const auto& g : corpus) {
    CAPTURE(g.name);
    CheckResult r = check_proof(g.proof);
    CAPTURE(r.message);
    CHECK(r.ok);
    std::function<void(const ProofPtr&)> collect = [&](const ProofPtr& p) {
      covered.insert(p->rule);
      for (const auto& pr : p->premises) collect(pr);
    };
    collect(g.proof);
  }
  CHECK(covered.size() == 21);  // every inference rule appears
}

TEST_CASE("corrupted proofs fail with the offending rule named") {
  for (const auto& c : golden::corrupted_proofs()) {
    CAPTURE(c.name);
    CheckResult r = check_proof(c.proof);
    CHECK(!r.ok);
    CHECK(r.rule == c.broken_rule);
    CHECK(!r.message.empty());
  }
}

TEST_CASE("serialization round-trips every golden proof byte-for-byte") {
  for (const auto& g : golden::golden_proofs()) {
    CAPTURE(g.name);
    std::string text = proof_to_sexpr(g.proof);
    ProofPtr back = parse_proof_sexpr(text);
    CHECK(proof_to_sexpr(back) == text);
    CHECK(check_proof(back).ok);
    CHECK(back->conclusion == g.proof->conclusion);
  }
}

TEST_CASE("rule names round-trip") {
  for (int i = 0; i <= static_cast<int>(RuleId::ROne); ++i) {
    RuleId r = static_cast<RuleId>(i);
    auto back = rule_from_name(rule_name(r));
    REQUIRE(back.has_value());
    CHECK(*back == r);
  }
  CHECK(!rule_from_name("cut").has_value());
}

TEST_CASE("make_proof_f locates the principal occurrence") {
  FormulaPtr p1 = lit(1);
  Sequent s = golden::seq({bang(p1)}, {p1});
  ProofPtr pf = make_proof_f(s, RuleId::LBang, Side::Lhs, bang(p1),
                             {golden::ax(p1)});
  CHECK(pf->principal_index == 0);
  CHECK_THROWS(make_proof_f(s, RuleId::LBang, Side::Lhs, bang(lit(2)),
                            {golden::ax(p1)}));
}

TEST_CASE("checker reports the failing node path") {
  FormulaPtr p1 = lit(1), p2 = lit(2);
  ProofPtr bad_leaf =
      make_proof(golden::seq({p1}, {p2}), RuleId::I, Side::Lhs, 0, {});
  ProofPtr wrap = make_proof_f(golden::seq({p1, bang(p2)}, {p2}), RuleId::WBang,
                               Side::Lhs, bang(p2), {bad_leaf});
  CheckResult r = check_proof(wrap);
  CHECK(!r.ok);
  CHECK(r.rule == RuleId::I);
  CHECK(r.node_path == "0");
}

TEST_CASE("proof metrics") {
  auto corpus = golden::golden_proofs();
  for (const auto& g : corpus) {
    CHECK(proof_size(g.proof) >= 1);
    CHECK(proof_height(g.proof) >= 1);
    CHECK(proof_height(g.proof) <= proof_size(g.proof));
  }
}
