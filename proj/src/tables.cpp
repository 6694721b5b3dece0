#include "ll/tables.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace ll {

const char* target_name(Target t) {
  switch (t) {
    case Target::OneLiteral:
      return "one-literal";
    case Target::BotOnly:
      return "bot-only";
    case Target::UnitOnly:
      return "unit-only";
  }
  return "?";
}

std::optional<Target> target_from_name(const std::string& name) {
  if (name == "one-literal") return Target::OneLiteral;
  if (name == "bot-only") return Target::BotOnly;
  if (name == "unit-only") return Target::UnitOnly;
  return std::nullopt;
}

EncodingParams default_params(const NormalizedSequent& s, Target target) {
  EncodingParams out;
  out.target = target;
  out.p_index = s.max_literal() + 1;
  out.N = std::max(9, out.p_index + 7);
  return out;
}

void validate_params(const EncodingParams& params, const NormalizedSequent& s) {
  if (params.N < 9) throw EncodingError("N must be at least 9");
  if (params.p_index < 1)
    throw EncodingError("leading literal index must be >= 1");
  if (params.p_index > params.N - 7)
    throw EncodingError("leading literal index exceeds N - 7");
  if (s.contains_literal(params.p_index))
    throw EncodingError("leading literal occurs in the source sequent");
  int mx = s.max_literal();
  if (mx > params.N - 7)
    throw EncodingError("source literal index " + std::to_string(mx) +
                        " exceeds N - 7 = " + std::to_string(params.N - 7));
}

// ---------------------------------------------------------------------------
// Basic families
// ---------------------------------------------------------------------------

namespace {

// Right-nested chain a * (a * ... * (a * tail)).
FormulaPtr tensor_chain(const FormulaPtr& a, int n, FormulaPtr tail) {
  for (int i = 0; i < n; ++i) tail = tensor(a, tail);
  return tail;
}

// A^<a> standing alone: the right-nested implication chain holding `a`
// occurrences of A (A -o (A -o ... -o A)).
FormulaPtr impl_power(const FormulaPtr& a, int n) {
  if (n < 1) throw EncodingError("implication power must be >= 1");
  return nested_impl(a, n - 1, a);
}

struct BotBasics {
  FormulaPtr h00, c00, h1;
};

const BotBasics& bot_basics(int N) {
  static std::mutex mu;
  static std::map<int, BotBasics> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  BotBasics b;
  b.h00 = lolli(power_tensor(bottom(), N + 2), power_tensor(bottom(), 2));
  b.c00 = lolli(lolli(power_tensor(b.h00, 2), power_tensor(bottom(), 3)),
                power_tensor(bottom(), 3));
  b.h1 = lolli(power_tensor(b.c00, 4), power_tensor(bottom(), N));
  return cache.emplace(N, std::move(b)).first->second;
}

struct OneBasics {
  FormulaPtr p, h0, c0, h1;
};

OneBasics one_basics(const EncodingParams& params) {
  OneBasics b;
  b.p = lit(params.p_index);
  int N = params.N;
  b.h0 = nested_impl(b.p, N + 2, impl_power(b.p, 2));
  b.c0 = lolli(nested_impl(b.h0, 2, impl_power(b.p, 3)), impl_power(b.p, 3));
  b.h1 = nested_impl(b.c0, 4, impl_power(b.p, N));
  return b;
}

struct UnitBasics {
  FormulaPtr h01, c01;
};

UnitBasics unit_basics(const EncodingParams& params) {
  UnitBasics b;
  int N = params.N;
  b.h01 = lolli(power_par(one(), 2), power_par(one(), N + 2));
  b.c01 = lolli(power_par(one(), 3),
                tensor(power_par(one(), 3), tensor(b.h01, b.h01)));
  return b;
}

void check_literal_range(int m, const EncodingParams& params) {
  if (m < 1 || m + 4 > params.N - 3)
    throw EncodingError("literal index " + std::to_string(m) +
                        " out of range for N = " + std::to_string(params.N));
}

}  // namespace

BasicFormulaTable basic_formulas(const EncodingParams& params) {
  BasicFormulaTable out;
  switch (params.target) {
    case Target::BotOnly: {
      const auto& b = bot_basics(params.N);
      out.h0 = b.h00;
      out.c0 = b.c00;
      out.h1 = b.h1;
      break;
    }
    case Target::OneLiteral: {
      auto b = one_basics(params);
      out.h0 = b.h0;
      out.c0 = b.c0;
      out.h1 = b.h1;
      break;
    }
    case Target::UnitOnly: {
      auto b = unit_basics(params);
      out.h0 = b.h01;
      out.c0 = b.c01;
      out.h1 = nullptr;
      break;
    }
  }
  return out;
}

FormulaPtr encode_literal(int m, const EncodingParams& params) {
  check_literal_range(m, params);
  switch (params.target) {
    case Target::BotOnly: {
      const auto& b = bot_basics(params.N);
      FormulaPtr pw = power_tensor(bottom(), m + 4);
      return lolli(lolli(b.h1, pw), pw);
    }
    case Target::OneLiteral: {
      auto b = one_basics(params);
      FormulaPtr pw = impl_power(b.p, m + 4);
      return lolli(lolli(b.h1, pw), pw);
    }
    case Target::UnitOnly: {
      auto b = unit_basics(params);
      FormulaPtr pw = power_par(one(), m + 4);
      return tensor(
          pw, lolli(pw, tensor(power_par(one(), params.N),
                               power_tensor(b.c01, 4))));
    }
  }
  throw std::logic_error("unreachable");
}

FormulaPtr encode_product(const SimpleProduct& x,
                          const EncodingParams& params) {
  switch (params.target) {
    case Target::BotOnly: {
      FormulaPtr out = encode_literal(x.lits.back(), params);
      for (std::size_t i = x.lits.size() - 1; i-- > 0;)
        out = tensor(encode_literal(x.lits[i], params), out);
      return out;
    }
    case Target::OneLiteral: {
      FormulaPtr out = lit(params.p_index);
      for (std::size_t i = x.lits.size(); i-- > 0;)
        out = lolli(encode_literal(x.lits[i], params), out);
      return out;
    }
    case Target::UnitOnly: {
      FormulaPtr out = encode_literal(x.lits.back(), params);
      for (std::size_t i = x.lits.size() - 1; i-- > 0;)
        out = par(encode_literal(x.lits[i], params), out);
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

FormulaPtr encode_value(const SimpleProduct& x_with_p,
                        const EncodingParams& params) {
  switch (params.target) {
    case Target::BotOnly: {
      const auto& b = bot_basics(params.N);
      return tensor_chain(b.c00, 6, encode_product(x_with_p, params));
    }
    case Target::OneLiteral: {
      auto b = one_basics(params);
      return nested_impl(b.c0, 6, encode_product(x_with_p, params));
    }
    case Target::UnitOnly: {
      auto b = unit_basics(params);
      return lolli(power_tensor(b.c01, 6), encode_product(x_with_p, params));
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

SimpleProduct with_leading(const SimpleProduct& x,
                           const EncodingParams& params) {
  return product_of_multiset(
      multiset_plus(x.lits, std::vector<int>{params.p_index}));
}

FormulaPtr value_of(const SimpleProduct& x, const EncodingParams& params) {
  return encode_value(with_leading(x, params), params);
}

FormulaPtr horn_encoding(const SimpleProduct& x, const SimpleProduct& y,
                         const EncodingParams& params) {
  switch (params.target) {
    case Target::BotOnly:
      return lolli(value_of(x, params), value_of(y, params));
    case Target::OneLiteral:
    case Target::UnitOnly:
      return lolli(value_of(y, params), value_of(x, params));
  }
  throw std::logic_error("unreachable");
}

}  // namespace

FormulaPtr encode_goal(const SimpleProduct& y, const EncodingParams& params) {
  FormulaPtr ep = encode_value(SimpleProduct{{params.p_index}}, params);
  switch (params.target) {
    case Target::BotOnly:
      return lolli(ep, value_of(y, params));
    case Target::OneLiteral:
    case Target::UnitOnly:
      return lolli(value_of(y, params), ep);
  }
  throw std::logic_error("unreachable");
}

FormulaPtr encode_empty_goal(const EncodingParams& params) {
  return encode_value(SimpleProduct{{params.p_index}}, params);
}

FormulaPtr encode_formula(const NormalizedFormula& a,
                          const EncodingParams& params) {
  switch (a.kind) {
    case NormKind::Horn:
      return horn_encoding(a.a, a.b, params);
    case NormKind::PlusHorn: {
      switch (params.target) {
        case Target::BotOnly:
          return lolli(value_of(a.a, params),
                       plus_f(value_of(a.b, params), value_of(a.c, params)));
        case Target::OneLiteral:
        case Target::UnitOnly:
          return lolli(with_f(value_of(a.b, params), value_of(a.c, params)),
                       value_of(a.a, params));
      }
      throw std::logic_error("unreachable");
    }
    case NormKind::WithHorn:
      return with_f(horn_encoding(a.a, a.b, params),
                    horn_encoding(a.c, a.d, params));
    case NormKind::Embedded: {
      FormulaPtr inner = horn_encoding(a.a, a.b, params);  // F of (U -o V)
      FormulaPtr goal = encode_goal(a.c, params);          // F of Y
      switch (params.target) {
        case Target::BotOnly:
          return lolli(inner, goal);
        case Target::OneLiteral: {
          FormulaPtr p = lit(params.p_index);
          return lolli(lolli(goal, p), lolli(inner, p));
        }
        case Target::UnitOnly:
          return lolli(inner, goal);
      }
      throw std::logic_error("unreachable");
    }
  }
  throw std::logic_error("unreachable");
}

Sequent encode_sequent(const NormalizedSequent& s,
                       const EncodingParams& params) {
  validate_params(params, s);
  FormulaPtr ew = value_of(s.W, params);
  FormulaPtr ez = value_of(s.Z, params);
  std::vector<FormulaPtr> lhs;
  if (params.target == Target::BotOnly)
    lhs.push_back(ew);
  else
    lhs.push_back(ez);
  for (const auto& f : s.delta) lhs.push_back(encode_formula(f, params));
  for (const auto& f : s.gamma)
    lhs.push_back(bang(encode_formula(f, params)));
  Sequent out;
  out.lhs = sorted_multiset(std::move(lhs));
  out.rhs.push_back(params.target == Target::BotOnly ? ez : ew);
  return out;
}

// ---------------------------------------------------------------------------
// Recognizers (bot-only)
// ---------------------------------------------------------------------------

bool is_bot_multiplicative(const FormulaPtr& f) {
  switch (f->kind) {
    case Kind::Bottom:
      return true;
    case Kind::Tensor:
    case Kind::Lollipop:
      return is_bot_multiplicative(f->left) && is_bot_multiplicative(f->right);
    default:
      return false;
  }
}

namespace {

// Right-nested bot power; returns the exponent.
std::optional<int> match_bot_power(const FormulaPtr& f) {
  int n = 0;
  const Formula* cur = f.get();
  while (cur->kind == Kind::Tensor && cur->left->kind == Kind::Bottom) {
    ++n;
    cur = cur->right.get();
  }
  if (cur->kind != Kind::Bottom) return std::nullopt;
  return n + 1;
}

}  // namespace

std::optional<int> match_encoded_literal(const FormulaPtr& f, int N) {
  if (f->kind != Kind::Lollipop || f->left->kind != Kind::Lollipop)
    return std::nullopt;
  const auto& b = bot_basics(N);
  if (!equal(f->left->left, b.h1)) return std::nullopt;
  auto k1 = match_bot_power(f->left->right);
  auto k2 = match_bot_power(f->right);
  if (!k1 || !k2 || *k1 != *k2) return std::nullopt;
  int m = *k1 - 4;
  if (m < 1 || *k1 > N - 3) return std::nullopt;
  return m;
}

std::optional<SimpleProduct> match_encoded_product(const FormulaPtr& f,
                                                   int N) {
  std::vector<int> lits;
  FormulaPtr cur = f;
  while (cur->kind == Kind::Tensor) {
    auto q = match_encoded_literal(cur->left, N);
    if (!q) return std::nullopt;
    lits.push_back(*q);
    cur = cur->right;
  }
  auto q = match_encoded_literal(cur, N);
  if (!q) return std::nullopt;
  lits.push_back(*q);
  return product_of_multiset(std::move(lits));
}

std::optional<SimpleProduct> match_value(const FormulaPtr& f, int N) {
  const auto& b = bot_basics(N);
  FormulaPtr cur = f;
  for (int i = 0; i < 6; ++i) {
    if (cur->kind != Kind::Tensor || !equal(cur->left, b.c00))
      return std::nullopt;
    cur = cur->right;
  }
  return match_encoded_product(cur, N);
}

std::optional<MatchedEncodedFormula> match_encoded_formula(const FormulaPtr& f,
                                                           int N) {
  auto match_horn = [N](const FormulaPtr& g)
      -> std::optional<std::pair<SimpleProduct, SimpleProduct>> {
    if (g->kind != Kind::Lollipop) return std::nullopt;
    auto x = match_value(g->left, N);
    if (!x) return std::nullopt;
    auto y = match_value(g->right, N);
    if (!y) return std::nullopt;
    return std::make_pair(*x, *y);
  };

  if (f->kind == Kind::Lollipop) {
    if (auto x = match_value(f->left, N)) {
      if (auto y = match_value(f->right, N))
        return MatchedEncodedFormula{NormKind::Horn, *x, *y, *x, *x};
      if (f->right->kind == Kind::Plus) {
        auto y = match_value(f->right->left, N);
        auto z = match_value(f->right->right, N);
        if (y && z)
          return MatchedEncodedFormula{NormKind::PlusHorn, *x, *y, *z, *x};
      }
      return std::nullopt;
    }
    auto inner = match_horn(f->left);
    auto outer = match_horn(f->right);
    if (inner && outer)
      return MatchedEncodedFormula{NormKind::Embedded, inner->first,
                                   inner->second, outer->first, outer->second};
    return std::nullopt;
  }
  if (f->kind == Kind::With) {
    auto l = match_horn(f->left);
    auto r = match_horn(f->right);
    if (l && r)
      return MatchedEncodedFormula{NormKind::WithHorn, l->first, l->second,
                                   r->first, r->second};
  }
  return std::nullopt;
}

}  // namespace ll
