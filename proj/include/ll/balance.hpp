// ============================================================================
// ll/balance.hpp — the bot-occurrence count, the mod-9N balance test on
// constant-only sequents, and the self-check over the translation tables.
// ============================================================================
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ll/formula.hpp"

namespace ll {

struct BangUnsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Signed count of bot occurrences:
//   literal, 1 -> 0;  bot -> 1;  A * B -> sum;  A @ B -> sum - 1;
//   B -o A -> count(A) - count(B);  A & B -> min;  A + B -> max.
// !A is rejected (throws BangUnsupported).
long long bot_count(const FormulaPtr& f);

enum class BalanceStatus { Holds, Violated, NotApplicable };

const char* balance_status_name(BalanceStatus s);

// Necessary derivability condition for sequents whose left side consists of
// {bot,*,-o} formulas, encoded formulas, !-prefixed encoded formulas, and
// value sums E + E, and whose right side is {bot,*,-o} only:
//   sum(lhs counts, bangs counting 0)  ==  1 - |rhs| + sum(rhs counts)
// modulo 9N.  Anything outside that shape is NotApplicable.
BalanceStatus balance_check(const Sequent& s, int N);

struct LcostReport {
  bool ok = true;
  std::vector<std::string> lines;  // one line per checked identity
};

// Recomputes the counts of the whole bot-only table at scale N and compares
// them with the closed forms (-N, -2N, 9N, and the mod-9N residues 0 / 6N).
LcostReport lcost_verify(int N);

}  // namespace ll
