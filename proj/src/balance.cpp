#include "ll/balance.hpp"

#include <algorithm>
#include <sstream>

#include "ll/tables.hpp"

namespace ll {

long long bot_count(const FormulaPtr& f) {
  switch (f->kind) {
    case Kind::Literal:
    case Kind::One:
      return 0;
    case Kind::Bottom:
      return 1;
    case Kind::Tensor:
      return bot_count(f->left) + bot_count(f->right);
    case Kind::Par:
      return bot_count(f->left) + bot_count(f->right) - 1;
    case Kind::Lollipop:
      return bot_count(f->right) - bot_count(f->left);
    case Kind::With:
      return std::min(bot_count(f->left), bot_count(f->right));
    case Kind::Plus:
      return std::max(bot_count(f->left), bot_count(f->right));
    case Kind::Bang:
      throw BangUnsupported("bot_count is undefined on !-formulas: " +
                            print_formula(f));
  }
  throw std::logic_error("unreachable");
}

const char* balance_status_name(BalanceStatus s) {
  switch (s) {
    case BalanceStatus::Holds:
      return "holds";
    case BalanceStatus::Violated:
      return "violated";
    case BalanceStatus::NotApplicable:
      return "not-applicable";
  }
  return "?";
}

BalanceStatus balance_check(const Sequent& s, int N) {
  if (N < 9) return BalanceStatus::NotApplicable;
  const long long mod = 9LL * N;
  long long left = 0;
  for (const auto& f : s.lhs) {
    if (f->kind == Kind::Bang) {
      if (!match_encoded_formula(f->left, N)) return BalanceStatus::NotApplicable;
      continue;  // counts as zero
    }
    if (is_bot_multiplicative(f)) {
      left += bot_count(f);
      continue;
    }
    if (match_encoded_formula(f, N)) {
      left += bot_count(f);
      continue;
    }
    if (f->kind == Kind::Plus && match_value(f->left, N) &&
        match_value(f->right, N)) {
      left += bot_count(f);
      continue;
    }
    return BalanceStatus::NotApplicable;
  }
  long long right = 1 - static_cast<long long>(s.rhs.size());
  for (const auto& f : s.rhs) {
    if (!is_bot_multiplicative(f)) return BalanceStatus::NotApplicable;
    right += bot_count(f);
  }
  long long diff = (left - right) % mod;
  return diff == 0 ? BalanceStatus::Holds : BalanceStatus::Violated;
}

LcostReport lcost_verify(int N) {
  LcostReport report;
  if (N < 9) {
    report.ok = false;
    report.lines.push_back("N must be at least 9");
    return report;
  }
  EncodingParams params{N, 1, Target::BotOnly};
  const long long mod = 9LL * N;
  auto residue = [mod](long long v) { return ((v % mod) + mod) % mod; };

  auto expect_exact = [&](const std::string& what, long long got,
                          long long want) {
    std::ostringstream line;
    bool ok = got == want;
    line << what << ": " << got << (ok ? " == " : " != ") << want;
    report.lines.push_back(line.str());
    report.ok = report.ok && ok;
  };
  auto expect_residue = [&](const std::string& what, long long got,
                            long long want) {
    std::ostringstream line;
    bool ok = residue(got) == residue(want);
    line << what << ": " << got << " mod " << mod
         << (ok ? " == " : " != ") << residue(want);
    report.lines.push_back(line.str());
    report.ok = report.ok && ok;
  };

  BasicFormulaTable basics = basic_formulas(params);
  expect_exact("count(H00)", bot_count(basics.h0), -N);
  expect_exact("count(C00)", bot_count(basics.c0), -2LL * N);
  expect_exact("count(H1)", bot_count(basics.h1), 9LL * N);

  for (int m = 1; m + 4 <= N - 3; ++m)
    expect_residue("count(D_p" + std::to_string(m) + ")",
                   bot_count(encode_literal(m, params)), 0);

  // Sample products over the admissible literal range.
  std::vector<SimpleProduct> samples;
  samples.push_back(SimpleProduct{{1}});
  if (N - 7 >= 2) {
    samples.push_back(SimpleProduct{{1, 2}});
    samples.push_back(SimpleProduct{{2, 2}});
  }
  if (N - 7 >= 3) samples.push_back(SimpleProduct{{1, 2, 3}});
  for (const auto& x : samples) {
    expect_residue("count(D_X)", bot_count(encode_product(x, params)), 0);
    expect_residue("count(E_X)", bot_count(encode_value(x, params)), 6LL * N);
  }
  expect_residue(
      "count(E+E)",
      bot_count(plus_f(encode_value(samples[0], params),
                       encode_value(samples.back(), params))),
      6LL * N);

  expect_residue("count(F_Y)", bot_count(encode_goal(samples[0], params)), 0);

  SimpleProduct x{{1}};
  SimpleProduct y = N - 7 >= 2 ? SimpleProduct{{2}} : SimpleProduct{{1, 1}};
  NormalizedFormula horn{NormKind::Horn, x, y, x, x};
  NormalizedFormula plus_horn{NormKind::PlusHorn, x, y, x, x};
  NormalizedFormula with_horn{NormKind::WithHorn, x, y, y, x};
  NormalizedFormula embedded{NormKind::Embedded, x, y, y, x};
  expect_residue("count(F_horn)", bot_count(encode_formula(horn, params)), 0);
  expect_residue("count(F_plus)", bot_count(encode_formula(plus_horn, params)),
                 0);
  expect_residue("count(F_with)", bot_count(encode_formula(with_horn, params)),
                 0);
  expect_residue("count(F_embedded)",
                 bot_count(encode_formula(embedded, params)), 0);
  return report;
}

}  // namespace ll
