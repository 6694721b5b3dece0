// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Tolerances and bounds are pinned in code.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "golden.hpp"
#include "ll/balance.hpp"
#include "ll/enumerate.hpp"
#include "ll/program.hpp"
#include "ll/proof.hpp"
#include "ll/prover.hpp"
#include "ll/tables.hpp"
#include "ll/transform.hpp"

using namespace ll;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

struct Criterion {
  std::string label;
  double limit_seconds;
  std::function<bool(std::string&)> run;
};

SimpleProduct sp(std::vector<int> lits) {
  return product_of_multiset(std::move(lits));
}

// --------------------------------------------------------------- criterion 1
bool criterion_rule_table(std::string& detail) {
  auto corpus = golden::golden_proofs();
  if (corpus.size() != 25) {
    detail = "corpus size != 25";
    return false;
  }
  std::set<RuleId> covered;
  for (const auto& g : corpus) {
    CheckResult r = check_proof(g.proof);
    if (!r.ok) {
      detail = g.name + " rejected: " + r.message;
      return false;
    }
    std::function<void(const ProofPtr&)> collect = [&](const ProofPtr& p) {
      covered.insert(p->rule);
      for (const auto& pr : p->premises) collect(pr);
    };
    collect(g.proof);
  }
  if (covered.size() != 21) {
    detail = "rule coverage incomplete";
    return false;
  }
  auto corrupted = golden::corrupted_proofs();
  if (corrupted.size() != 10) {
    detail = "corrupted set size != 10";
    return false;
  }
  for (const auto& c : corrupted) {
    CheckResult r = check_proof(c.proof);
    if (r.ok) {
      detail = c.name + " accepted";
      return false;
    }
    if (r.rule != c.broken_rule) {
      detail = c.name + " blamed on " + rule_name(r.rule);
      return false;
    }
  }
  detail = "25 valid + 10 corrupted, 21 rules covered";
  return true;
}

// --------------------------------------------------------------- criterion 2
bool criterion_prover_ground_truth(std::string& detail) {
  struct Case {
    const char* text;
    SearchStatus expected;
  };
  const Case cases[] = {
      // derivable
      {"p1 |- p1", SearchStatus::Proved},
      {"(p1 * p2) |- (p1 * p2)", SearchStatus::Proved},
      {"bot |-", SearchStatus::Proved},
      {"bot |- bot", SearchStatus::Proved},
      {"|- 1", SearchStatus::Proved},
      {"1 |- 1", SearchStatus::Proved},
      {"1, p1 |- p1", SearchStatus::Proved},
      {"p1, (p1 -o p2) |- p2", SearchStatus::Proved},
      {"p1, (p1 -o p2), (p2 -o p3) |- p3", SearchStatus::Proved},
      {"p1, p1, ((p1 * p1) -o p2) |- p2", SearchStatus::Proved},
      {"|- (p1 -o p1)", SearchStatus::Proved},
      {"p1, p2 |- (p1 * p2)", SearchStatus::Proved},
      {"(p1 * p2) |- (p2 * p1)", SearchStatus::Proved},
      {"(p1 @ p2) |- p1, p2", SearchStatus::Proved},
      {"(p1 @ p2) |- (p1 @ p2)", SearchStatus::Proved},
      {"(p1 + p2) |- (p2 + p1)", SearchStatus::Proved},
      {"p1 |- (p1 + p2)", SearchStatus::Proved},
      {"(p1 & p2) |- p1", SearchStatus::Proved},
      {"p1 |- (p1 & p1)", SearchStatus::Proved},
      {"!p1 |- p1", SearchStatus::Proved},
      {"!p1 |- (p1 * p1)", SearchStatus::Proved},
      {"!p1 |- !p1", SearchStatus::Proved},
      {"p1, !p2 |- p1", SearchStatus::Proved},
      {"(p1 * p1), !(p1 -o p2) |- (p2 * p2)", SearchStatus::Proved},
      // non-derivable
      {"p1 |- p2", SearchStatus::Refuted},
      {"|- bot", SearchStatus::Refuted},
      {"p1, p2 |- p1, p2", SearchStatus::Refuted},
      {"p1 |- (p1 * p1)", SearchStatus::Refuted},
      {"(p1 + p2) |- p1", SearchStatus::Refuted},
      {"p1 |- !p1", SearchStatus::Refuted},
  };
  static_assert(std::size(cases) == 30);
  SearchBudget budget;  // depth 15
  for (const auto& c : cases) {
    SearchResult r = prove(parse_sequent(c.text), budget);
    if (r.status != c.expected) {
      detail = std::string(c.text) + " -> " + search_status_name(r.status);
      return false;
    }
    if (r.proof && !check_proof(r.proof).ok) {
      detail = std::string(c.text) + " proof rejected";
      return false;
    }
  }
  detail = "30/30 statuses match at depth 15";
  return true;
}

// --------------------------------------------------------------- criterion 3
bool criterion_table_arithmetic(std::string& detail) {
  for (int N = 9; N <= 16; ++N) {
    EncodingParams params;
    params.N = N;
    params.p_index = 1;
    BasicFormulaTable t = basic_formulas(params);
    if (bot_count(t.h0) != -N || bot_count(t.c0) != -2LL * N ||
        bot_count(t.h1) != 9LL * N) {
      detail = "closed forms differ at N=" + std::to_string(N);
      return false;
    }
    LcostReport rep = lcost_verify(N);
    if (!rep.ok) {
      detail = "self-check failed at N=" + std::to_string(N);
      return false;
    }
  }
  std::mt19937 rng(1009);
  auto rand_prod = [&](int max_lit, int max_len) {
    std::vector<int> lits;
    int len = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_len));
    for (int i = 0; i < len; ++i)
      lits.push_back(1 +
                     static_cast<int>(rng() % static_cast<unsigned>(max_lit)));
    return product_of_multiset(std::move(lits));
  };
  for (int trial = 0; trial < 1000; ++trial) {
    int N = 9 + static_cast<int>(rng() % 8);
    long long mod = 9LL * N;
    EncodingParams params;
    params.N = N;
    params.p_index = 1;
    int max_lit = N - 7;
    auto residue = [&](const FormulaPtr& f) {
      return ((bot_count(f) % mod) + mod) % mod;
    };
    SimpleProduct x = rand_prod(max_lit, 3);
    if (residue(encode_product(x, params)) != 0) {
      detail = "D residue nonzero";
      return false;
    }
    if (residue(encode_value(x, params)) != 6LL * N) {
      detail = "E residue != 6N";
      return false;
    }
    FormulaPtr e1 = encode_value(rand_prod(max_lit, 2), params);
    FormulaPtr e2 = encode_value(rand_prod(max_lit, 2), params);
    if (residue(plus_f(e1, e2)) != 6LL * N) {
      detail = "E + E residue != 6N";
      return false;
    }
    NormalizedFormula a;
    a.kind = static_cast<NormKind>(rng() % 4);
    a.a = rand_prod(max_lit, 2);
    a.b = rand_prod(max_lit, 2);
    a.c = rand_prod(max_lit, 2);
    a.d = rand_prod(max_lit, 2);
    if (residue(encode_formula(a, params)) != 0) {
      detail = "F residue nonzero";
      return false;
    }
    if (residue(encode_goal(rand_prod(max_lit, 2), params)) != 0) {
      detail = "goal residue nonzero";
      return false;
    }
  }
  detail = "N in 9..16 exact; 1000/1000 congruence samples";
  return true;
}

// --------------------------------------------------------------- criterion 4
bool criterion_balance_necessity(std::string& detail) {
  const int N = 9;
  // lhs: up to two bot-powers; optional single encoded formula; rhs: empty
  // or one bot-power.
  std::vector<FormulaPtr> powers;
  for (int n = 1; n <= 4; ++n) powers.push_back(power_tensor(bottom(), n));

  EncodingParams params;  // N = 9, p = 1, bot-only
  NormalizedFormula horn;
  horn.kind = NormKind::Horn;
  horn.a = sp({2});
  horn.b = sp({2});
  FormulaPtr sample_f = encode_formula(horn, params);

  std::vector<std::vector<FormulaPtr>> lhs_bases;
  lhs_bases.push_back({});
  for (std::size_t i = 0; i < powers.size(); ++i) {
    lhs_bases.push_back({powers[i]});
    for (std::size_t j = i; j < powers.size(); ++j)
      lhs_bases.push_back({powers[i], powers[j]});
  }

  SearchBudget budget;
  budget.max_depth = 12;
  budget.balance_pruning = false;

  int proved = 0, checked = 0;
  for (const auto& base : lhs_bases) {
    for (int with_f = 0; with_f < 2; ++with_f) {
      for (int rhs_pick = -1;
           rhs_pick < static_cast<int>(powers.size()); ++rhs_pick) {
        Sequent s;
        std::vector<FormulaPtr> lhs = base;
        if (with_f) lhs.push_back(sample_f);
        s.lhs = sorted_multiset(std::move(lhs));
        if (rhs_pick >= 0) s.rhs.push_back(powers[rhs_pick]);
        ++checked;
        SearchResult r = prove(s, budget);
        if (r.status == SearchStatus::Proved) {
          ++proved;
          if (balance_check(s, N) != BalanceStatus::Holds) {
            detail = "proved but unbalanced: " + print_sequent(s);
            return false;
          }
        }
      }
    }
  }
  std::ostringstream os;
  os << checked << " sequents enumerated, " << proved
     << " proved, zero balance violations";
  detail = os.str();
  return true;
}

// --------------------------------------------------------------- criterion 5
bool criterion_oracle_equivalence(std::string& detail) {
  std::vector<SimpleProduct> products;
  for (int a = 1; a <= 3; ++a) {
    products.push_back(sp({a}));
    for (int b = a; b <= 3; ++b) products.push_back(sp({a, b}));
  }
  std::vector<NormalizedFormula> pool;
  for (const auto& x : products)
    for (const auto& y : products) {
      NormalizedFormula h;
      h.kind = NormKind::Horn;
      h.a = x;
      h.b = y;
      pool.push_back(h);
    }
  std::mt19937 rng(5417);
  auto rand_formula = [&]() {
    NormalizedFormula f;
    auto rp = [&]() { return products[rng() % products.size()]; };
    switch (rng() % 8) {  // Horn-weighted mix of all four kinds
      case 0:
        f.kind = NormKind::PlusHorn;
        f.a = rp();
        f.b = rp();
        f.c = rp();
        break;
      case 1:
        f.kind = NormKind::WithHorn;
        f.a = rp();
        f.b = rp();
        f.c = rp();
        f.d = rp();
        break;
      case 2:
        f.kind = NormKind::Embedded;
        f.a = rp();
        f.b = rp();
        f.c = rp();
        break;
      default:
        f.kind = NormKind::Horn;
        f.a = rp();
        f.b = rp();
        break;
    }
    return f;
  };

  EnumBounds bounds;  // 6 edges, 1 push pair

  int cases = 0, with_programs = 0, undecided = 0;
  auto run_case = [&](const NormalizedSequent& s) -> bool {
    ++cases;
    auto prog = find_strong_solution(s, bounds);
    if (prog) {
      ++with_programs;
      ProofPtr back = program_to_proof(*prog, s);
      CheckResult chk = check_proof(back);
      if (!chk.ok || !(back->conclusion == s.to_sequent())) {
        detail = "rebuilt proof rejected for " + print_sequent(s.to_sequent());
        return false;
      }
      // The rebuilt proof bounds the depth a complete search needs, so the
      // prover must confirm derivability within it.
      SearchBudget budget;
      budget.max_depth = static_cast<int>(proof_height(back)) + 8;
      budget.max_contractions_per_bang = 8;
      SearchResult pr = prove(s.to_sequent(), budget);
      if (pr.status != SearchStatus::Proved) {
        detail = "program exists but prover says " +
                 std::string(search_status_name(pr.status)) + " for " +
                 print_sequent(s.to_sequent());
        return false;
      }
    } else {
      // No strong solution: the prover must not claim derivability.  A
      // depth-limited search may stay undecided; that is tallied, not failed.
      SearchBudget budget;
      budget.max_depth = 10;
      SearchResult pr = prove(s.to_sequent(), budget);
      if (pr.status == SearchStatus::Proved) {
        detail = "prover proved " + print_sequent(s.to_sequent()) +
                 " but no strong solution exists";
        return false;
      }
      if (pr.status == SearchStatus::BudgetExhausted) ++undecided;
    }
    return true;
  };

  // exhaustive slice: Horn-only, |delta| <= 1, |gamma| <= 1
  for (const auto& w : products)
    for (const auto& z : products) {
      for (int d = -1; d < static_cast<int>(pool.size()); d += 11)
        for (int g = -1; g < static_cast<int>(pool.size()); g += 17) {
          NormalizedSequent s;
          s.W = w;
          s.Z = z;
          if (d >= 0) s.delta.push_back(pool[static_cast<std::size_t>(d)]);
          if (g >= 0) s.gamma.push_back(pool[static_cast<std::size_t>(g)]);
          if (!run_case(s)) return false;
        }
    }
  // random slice over all four formula kinds, |delta| <= 2, |gamma| <= 1
  for (int trial = 0; trial < 800; ++trial) {
    NormalizedSequent s;
    s.W = products[rng() % products.size()];
    s.Z = products[rng() % products.size()];
    for (unsigned i = rng() % 3; i > 0; --i)
      s.delta.push_back(rand_formula());
    for (unsigned i = rng() % 2; i > 0; --i)
      s.gamma.push_back(rand_formula());
    // With the push budget pinned at one pair, sequents carrying two
    // suspension formulas have no conforming program even when derivable,
    // so they fall outside the comparison.
    int embedded = 0;
    for (const auto& f : s.delta)
      if (f.kind == NormKind::Embedded) ++embedded;
    for (const auto& f : s.gamma)
      if (f.kind == NormKind::Embedded) ++embedded;
    if (embedded >= 2) continue;
    if (!run_case(s)) return false;
  }
  std::ostringstream os;
  os << cases << " sequents, " << with_programs << " strong solutions, "
     << undecided << " negative-by-budget, zero disagreements";
  detail = os.str();
  return true;
}

// --------------------------------------------------------------- criterion 6
bool criterion_encoding_census(std::string& detail) {
  std::mt19937 rng(99);
  auto rand_prod = [&](int max_lit) {
    std::vector<int> lits;
    int len = 1 + static_cast<int>(rng() % 2u);
    for (int i = 0; i < len; ++i)
      lits.push_back(1 +
                     static_cast<int>(rng() % static_cast<unsigned>(max_lit)));
    return product_of_multiset(std::move(lits));
  };
  for (int trial = 0; trial < 200; ++trial) {
    NormalizedSequent s;
    s.W = rand_prod(2);
    s.Z = rand_prod(2);
    for (unsigned i = rng() % 3; i > 0; --i) {
      NormalizedFormula f;
      f.kind = static_cast<NormKind>(rng() % 4);
      f.a = rand_prod(2);
      f.b = rand_prod(2);
      f.c = rand_prod(2);
      f.d = rand_prod(2);
      (rng() % 2 ? s.delta : s.gamma).push_back(f);
    }
    for (Target t : {Target::BotOnly, Target::OneLiteral, Target::UnitOnly}) {
      Sequent enc = encode_sequent(s, default_params(s, t));
      std::set<int> lits;
      bool has_bot = false, has_one = false;
      std::function<void(const FormulaPtr&)> scan = [&](const FormulaPtr& f) {
        if (f->kind == Kind::Literal) lits.insert(f->literal);
        if (f->kind == Kind::Bottom) has_bot = true;
        if (f->kind == Kind::One) has_one = true;
        if (f->left) scan(f->left);
        if (f->right) scan(f->right);
      };
      for (const auto& f : enc.lhs) scan(f);
      for (const auto& f : enc.rhs) scan(f);
      bool ok = true;
      switch (t) {
        case Target::BotOnly:
          ok = lits.empty();
          break;
        case Target::OneLiteral:
          ok = lits.size() == 1 && !has_bot && !has_one;
          break;
        case Target::UnitOnly:
          ok = lits.empty() && !has_bot && has_one;
          break;
      }
      if (!ok) {
        detail = std::string("census failed for ") + target_name(t);
        return false;
      }
    }
  }
  detail = "200 sequents, all three censuses clean";
  return true;
}

// --------------------------------------------------------------- criterion 7
bool criterion_round_trip(std::string& detail) {
  // Minimum scale: N = 9, leading literal p2, source literal p1.
  EncodingParams params;
  params.N = 9;
  params.p_index = 2;
  params.target = Target::BotOnly;

  std::vector<std::pair<std::string, NormalizedSequent>> cases;
  {
    NormalizedSequent axiom;
    axiom.W = sp({1});
    axiom.Z = sp({1});
    cases.emplace_back("axiom", axiom);

    NormalizedSequent horn;
    horn.W = sp({1});
    horn.Z = sp({1, 1});
    NormalizedFormula h;
    h.kind = NormKind::Horn;
    h.a = sp({1});
    h.b = sp({1, 1});
    horn.delta.push_back(h);
    cases.emplace_back("horn", horn);

    NormalizedSequent fork;
    fork.W = sp({1});
    fork.Z = sp({1});
    NormalizedFormula ph;
    ph.kind = NormKind::PlusHorn;
    ph.a = sp({1});
    ph.b = sp({1});
    ph.c = sp({1});
    fork.delta.push_back(ph);
    cases.emplace_back("plus-fork", fork);
  }

  std::ostringstream os;
  for (const auto& [name, s] : cases) {
    SearchBudget budget;
    SearchResult src = prove(s.to_sequent(), budget);
    if (src.status != SearchStatus::Proved) {
      detail = name + ": source not proved";
      return false;
    }
    ProofPtr encoded;
    Program prog = Program::create(std::make_shared<ProgVertex>());
    try {
      encoded = ttobot_transform(src.proof, params);
      prog = extract_program(encoded, s, params);
    } catch (const RegularityViolation& ex) {
      detail = name + ": regularity violation: " + ex.what();
      return false;
    } catch (const std::exception& ex) {
      detail = name + ": " + ex.what();
      return false;
    }
    if (!check_proof(encoded).ok ||
        !(encoded->conclusion == encode_sequent(s, params))) {
      detail = name + ": encoded proof invalid";
      return false;
    }
    if (!check_strong_solution(prog, s)) {
      detail = name + ": extracted program is not a strong solution";
      return false;
    }
    ProofPtr back = program_to_proof(prog, s);
    CheckResult chk = check_proof(back);
    if (!chk.ok || !(back->conclusion == s.to_sequent())) {
      detail = name + ": source proof not re-derived";
      return false;
    }
    os << name << "=" << proof_size(encoded) << "n ";
  }
  detail = "encoded proof sizes: " + os.str();
  return true;
}

// --------------------------------------------------------------- criterion 8
bool criterion_fairness_smoke(std::string& detail) {
  SearchBudget budget;
  budget.max_depth = 8;

  {
    NormalizedSequent s;  // p2 |- p3: underivable
    s.W = sp({2});
    s.Z = sp({3});
    EncodingParams params = default_params(s, Target::BotOnly);
    FairnessReport r = fairness_check(s, params, budget);
    if (r.source.status != SearchStatus::Refuted) {
      detail = "p2 |- p3 source not refuted";
      return false;
    }
    if (r.one_literal.status == SearchStatus::Proved ||
        r.bot_only.status == SearchStatus::Proved ||
        r.unit_only.status == SearchStatus::Proved) {
      detail = "p2 |- p3: an encoded variant was proved";
      return false;
    }
    if (r.violation) {
      detail = "p2 |- p3 flagged as a violation";
      return false;
    }
  }
  {
    NormalizedSequent s;  // p2 |- p2: derivable
    s.W = sp({2});
    s.Z = sp({2});
    EncodingParams params = default_params(s, Target::BotOnly);
    FairnessReport r = fairness_check(s, params, budget);
    if (r.source.status != SearchStatus::Proved ||
        r.bot_only.status != SearchStatus::Proved) {
      detail = "p2 |- p2: (a)/(c) not both proved";
      return false;
    }
    if (r.violation) {
      detail = "p2 |- p2 flagged as a violation";
      return false;
    }
  }
  detail = "p2|-p3 all undecided-or-refuted; p2|-p2 agrees Proved/Proved";
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"1 rule-table fidelity", 1.0, criterion_rule_table},
      {"2 prover ground truth", 10.0, criterion_prover_ground_truth},
      {"3 translation-table arithmetic", 5.0, criterion_table_arithmetic},
      {"4 balance necessity", 120.0, criterion_balance_necessity},
      {"5 prover/program oracle equivalence", 600.0,
       criterion_oracle_equivalence},
      {"6 encoding census", 2.0, criterion_encoding_census},
      {"7 encoded round trip", 900.0, criterion_round_trip},
      {"8 fairness smoke", 300.0, criterion_fairness_smoke},
  };
  for (auto& c : criteria) {
    auto start = Clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& ex) {
      detail = std::string("exception: ") + ex.what();
    }
    double secs =
        std::chrono::duration<double>(Clock::now() - start).count();
    if (secs > c.limit_seconds) {
      ok = false;
      detail += " [time limit exceeded]";
    }
    std::printf("%s  criterion %s (%.2fs): %s\n", ok ? "PASS" : "FAIL",
                c.label.c_str(), secs, detail.c_str());
    if (!ok) ++g_failures;
  }
  return g_failures == 0 ? 0 : 1;
}
