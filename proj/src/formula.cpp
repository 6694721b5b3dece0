#include "ll/formula.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ll {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  // boost::hash_combine flavor
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

}  // namespace

Formula::Formula(Kind k, int l, FormulaPtr lf, FormulaPtr rf)
    : kind(k), literal(l), left(std::move(lf)), right(std::move(rf)) {
  hash = mix(static_cast<std::size_t>(kind) + 101, literal);
  size = 1;
  if (left) {
    hash = mix(hash, left->hash);
    size += left->size;
  }
  if (right) {
    hash = mix(hash, right->hash);
    size += right->size;
  }
}

FormulaPtr lit(int index) {
  if (index < 1) throw std::invalid_argument("literal index must be >= 1");
  return std::make_shared<const Formula>(Kind::Literal, index, nullptr,
                                         nullptr);
}

FormulaPtr bottom() {
  static const FormulaPtr b =
      std::make_shared<const Formula>(Kind::Bottom, 0, nullptr, nullptr);
  return b;
}

FormulaPtr one() {
  static const FormulaPtr o =
      std::make_shared<const Formula>(Kind::One, 0, nullptr, nullptr);
  return o;
}

static FormulaPtr binary(Kind k, FormulaPtr a, FormulaPtr b) {
  if (!a || !b) throw std::invalid_argument("null formula operand");
  return std::make_shared<const Formula>(k, 0, std::move(a), std::move(b));
}

FormulaPtr tensor(FormulaPtr a, FormulaPtr b) {
  return binary(Kind::Tensor, std::move(a), std::move(b));
}
FormulaPtr par(FormulaPtr a, FormulaPtr b) {
  return binary(Kind::Par, std::move(a), std::move(b));
}
FormulaPtr lolli(FormulaPtr a, FormulaPtr b) {
  return binary(Kind::Lollipop, std::move(a), std::move(b));
}
FormulaPtr with_f(FormulaPtr a, FormulaPtr b) {
  return binary(Kind::With, std::move(a), std::move(b));
}
FormulaPtr plus_f(FormulaPtr a, FormulaPtr b) {
  return binary(Kind::Plus, std::move(a), std::move(b));
}
FormulaPtr bang(FormulaPtr body) {
  if (!body) throw std::invalid_argument("null formula operand");
  return std::make_shared<const Formula>(Kind::Bang, 0, std::move(body),
                                         nullptr);
}

static int compare_structural(const Formula* a, const Formula* b) {
  if (a == b) return 0;
  if (a->kind != b->kind)
    return static_cast<int>(a->kind) < static_cast<int>(b->kind) ? -1 : 1;
  if (a->kind == Kind::Literal)
    return a->literal < b->literal ? -1 : (a->literal > b->literal ? 1 : 0);
  if (a->left) {
    int c = compare_structural(a->left.get(), b->left.get());
    if (c != 0) return c;
  }
  if (a->right) return compare_structural(a->right.get(), b->right.get());
  return 0;
}

int compare(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->hash != b->hash) return a->hash < b->hash ? -1 : 1;
  if (a->size != b->size) return a->size < b->size ? -1 : 1;
  return compare_structural(a.get(), b.get());
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  return compare(a, b) == 0;
}

std::string print_formula(const FormulaPtr& f) {
  switch (f->kind) {
    case Kind::Literal:
      return "p" + std::to_string(f->literal);
    case Kind::Bottom:
      return "bot";
    case Kind::One:
      return "1";
    case Kind::Bang:
      return "!" + print_formula(f->left);
    default:
      break;
  }
  const char* op = nullptr;
  switch (f->kind) {
    case Kind::Tensor:
      op = " * ";
      break;
    case Kind::Par:
      op = " @ ";
      break;
    case Kind::Lollipop:
      op = " -o ";
      break;
    case Kind::With:
      op = " & ";
      break;
    case Kind::Plus:
      op = " + ";
      break;
    default:
      throw std::logic_error("unreachable formula kind");
  }
  return "(" + print_formula(f->left) + op + print_formula(f->right) + ")";
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

struct Parser {
  const std::string& text;
  std::size_t pos = 0;

  explicit Parser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  bool peek_str(const char* s) {
    skip_ws();
    std::size_t n = std::string_view(s).size();
    return text.compare(pos, n, s) == 0;
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

  FormulaPtr formula() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    char c = text[pos];
    if (c == '!') {
      ++pos;
      return bang(formula());
    }
    if (c == '(') {
      ++pos;
      FormulaPtr a = formula();
      skip_ws();
      Kind k;
      if (eat('*'))
        k = Kind::Tensor;
      else if (eat('@'))
        k = Kind::Par;
      else if (eat('&'))
        k = Kind::With;
      else if (eat('+'))
        k = Kind::Plus;
      else if (peek_str("-o")) {
        pos += 2;
        k = Kind::Lollipop;
      } else
        fail("expected binary operator");
      FormulaPtr b = formula();
      if (!eat(')')) fail("expected ')'");
      return std::make_shared<const Formula>(k, 0, std::move(a), std::move(b));
    }
    if (c == 'p') {
      ++pos;
      if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
        fail("expected literal index after 'p'");
      long idx = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        idx = idx * 10 + (text[pos] - '0');
        if (idx > 1000000) fail("literal index too large");
        ++pos;
      }
      if (idx < 1) fail("literal index must be >= 1");
      return lit(static_cast<int>(idx));
    }
    if (c == 'b') {
      if (text.compare(pos, 3, "bot") == 0) {
        pos += 3;
        return bottom();
      }
      fail("expected 'bot'");
    }
    if (c == '1') {
      ++pos;
      return one();
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  FormulaMultiset formula_list(const char* stop) {
    FormulaMultiset out;
    skip_ws();
    if ((stop && peek_str(stop)) || pos >= text.size()) return out;
    out.push_back(formula());
    while (true) {
      skip_ws();
      if (eat(','))
        out.push_back(formula());
      else
        break;
    }
    return out;
  }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
  Parser p(text);
  FormulaPtr f = p.formula();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input after formula");
  return f;
}

Sequent parse_sequent(const std::string& text) {
  Parser p(text);
  Sequent s;
  s.lhs = sorted_multiset(p.formula_list("|-"));
  p.skip_ws();
  if (!p.peek_str("|-")) p.fail("expected '|-'");
  p.pos += 2;
  s.rhs = sorted_multiset(p.formula_list(nullptr));
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input after sequent");
  return s;
}

// ---------------------------------------------------------------------------
// Multisets and sequents
// ---------------------------------------------------------------------------

FormulaMultiset sorted_multiset(std::vector<FormulaPtr> fs) {
  std::sort(fs.begin(), fs.end(), formula_less);
  return fs;
}

void ms_insert(FormulaMultiset& ms, const FormulaPtr& f) {
  ms.insert(std::lower_bound(ms.begin(), ms.end(), f, formula_less), f);
}

bool ms_remove_one(FormulaMultiset& ms, const FormulaPtr& f) {
  auto it = std::lower_bound(ms.begin(), ms.end(), f, formula_less);
  if (it == ms.end() || !equal(*it, f)) return false;
  ms.erase(it);
  return true;
}

bool ms_contains(FormulaMultiset const& ms, const FormulaPtr& f) {
  auto it = std::lower_bound(ms.begin(), ms.end(), f, formula_less);
  return it != ms.end() && equal(*it, f);
}

bool ms_equal(const FormulaMultiset& a, const FormulaMultiset& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!equal(a[i], b[i])) return false;
  return true;
}

FormulaMultiset ms_union(const FormulaMultiset& a, const FormulaMultiset& b) {
  FormulaMultiset out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out),
             formula_less);
  return out;
}

std::size_t Sequent::hash() const {
  std::size_t h = 0x1234;
  for (const auto& f : lhs) h = mix(h, f->hash);
  h = mix(h, 0xfeed);
  for (const auto& f : rhs) h = mix(h, f->hash);
  return h;
}

std::string print_sequent(const Sequent& s) {
  std::ostringstream out;
  for (std::size_t i = 0; i < s.lhs.size(); ++i) {
    if (i) out << ", ";
    out << print_formula(s.lhs[i]);
  }
  out << " |- ";
  for (std::size_t i = 0; i < s.rhs.size(); ++i) {
    if (i) out << ", ";
    out << print_formula(s.rhs[i]);
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Simple products
// ---------------------------------------------------------------------------

SimpleProduct product_of_multiset(std::vector<int> lits) {
  if (lits.empty())
    throw std::invalid_argument("simple product must be non-empty");
  for (int m : lits)
    if (m < 1) throw std::invalid_argument("literal index must be >= 1");
  std::sort(lits.begin(), lits.end());
  return SimpleProduct{std::move(lits)};
}

FormulaPtr product_formula(const SimpleProduct& p) {
  FormulaPtr out = lit(p.lits.back());
  for (std::size_t i = p.lits.size() - 1; i-- > 0;)
    out = tensor(lit(p.lits[i]), out);
  return out;
}

bool product_equiv(const SimpleProduct& a, const SimpleProduct& b) {
  return a.lits == b.lits;
}

std::optional<SimpleProduct> formula_to_product(const FormulaPtr& f) {
  std::vector<int> lits;
  // Iterative flatten of the tensor tree.
  std::vector<const Formula*> stack{f.get()};
  while (!stack.empty()) {
    const Formula* cur = stack.back();
    stack.pop_back();
    if (cur->kind == Kind::Tensor) {
      stack.push_back(cur->left.get());
      stack.push_back(cur->right.get());
    } else if (cur->kind == Kind::Literal) {
      lits.push_back(cur->literal);
    } else {
      return std::nullopt;
    }
  }
  return product_of_multiset(std::move(lits));
}

bool product_subseteq(const SimpleProduct& sub, const SimpleProduct& super) {
  return std::includes(super.lits.begin(), super.lits.end(), sub.lits.begin(),
                       sub.lits.end());
}

std::vector<int> multiset_minus(const std::vector<int>& a,
                                const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

std::vector<int> multiset_plus(const std::vector<int>& a,
                               const std::vector<int>& b) {
  std::vector<int> out;
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

FormulaPtr power_tensor(const FormulaPtr& a, int n) {
  if (n < 0) throw std::invalid_argument("negative power");
  if (n == 0) return one();
  FormulaPtr out = a;
  for (int i = 1; i < n; ++i) out = tensor(a, out);
  return out;
}

FormulaPtr power_par(const FormulaPtr& a, int n) {
  if (n < 0) throw std::invalid_argument("negative power");
  if (n == 0) return bottom();
  FormulaPtr out = a;
  for (int i = 1; i < n; ++i) out = par(a, out);
  return out;
}

FormulaPtr nested_impl(const FormulaPtr& a, int n, const FormulaPtr& b) {
  if (n < 0) throw std::invalid_argument("negative nesting depth");
  FormulaPtr out = b;
  for (int i = 0; i < n; ++i) out = lolli(a, out);
  return out;
}

// ---------------------------------------------------------------------------
// Normalized formulas
// ---------------------------------------------------------------------------

FormulaPtr NormalizedFormula::to_formula() const {
  switch (kind) {
    case NormKind::Horn:
      return lolli(product_formula(a), product_formula(b));
    case NormKind::PlusHorn:
      return lolli(product_formula(a),
                   plus_f(product_formula(b), product_formula(c)));
    case NormKind::WithHorn:
      return with_f(lolli(product_formula(a), product_formula(b)),
                    lolli(product_formula(c), product_formula(d)));
    case NormKind::Embedded:
      return lolli(lolli(product_formula(a), product_formula(b)),
                   product_formula(c));
  }
  throw std::logic_error("unreachable");
}

bool NormalizedFormula::operator==(const NormalizedFormula& other) const {
  if (kind != other.kind) return false;
  auto used = [](NormKind k) {
    return k == NormKind::WithHorn ? 4 : (k == NormKind::PlusHorn ? 3 : (k == NormKind::Embedded ? 3 : 2));
  };
  int n = used(kind);
  const SimpleProduct* mine[4] = {&a, &b, &c, &d};
  const SimpleProduct* theirs[4] = {&other.a, &other.b, &other.c, &other.d};
  for (int i = 0; i < n; ++i)
    if (!(*mine[i] == *theirs[i])) return false;
  return true;
}

std::optional<NormalizedFormula> try_classify(const FormulaPtr& f) {
  if (f->kind == Kind::Lollipop) {
    auto ant = f->left;
    auto con = f->right;
    if (ant->kind == Kind::Lollipop) {
      // (a -o b) -o c
      auto a = formula_to_product(ant->left);
      auto b = formula_to_product(ant->right);
      auto c = formula_to_product(con);
      if (a && b && c)
        return NormalizedFormula{NormKind::Embedded, *a, *b, *c, *a};
      return std::nullopt;
    }
    auto a = formula_to_product(ant);
    if (!a) return std::nullopt;
    if (con->kind == Kind::Plus) {
      auto b = formula_to_product(con->left);
      auto c = formula_to_product(con->right);
      if (b && c) return NormalizedFormula{NormKind::PlusHorn, *a, *b, *c, *a};
      return std::nullopt;
    }
    auto b = formula_to_product(con);
    if (b) return NormalizedFormula{NormKind::Horn, *a, *b, *a, *a};
    return std::nullopt;
  }
  if (f->kind == Kind::With && f->left->kind == Kind::Lollipop &&
      f->right->kind == Kind::Lollipop) {
    auto a = formula_to_product(f->left->left);
    auto b = formula_to_product(f->left->right);
    auto c = formula_to_product(f->right->left);
    auto d = formula_to_product(f->right->right);
    if (a && b && c && d)
      return NormalizedFormula{NormKind::WithHorn, *a, *b, *c, *d};
  }
  return std::nullopt;
}

NormalizedFormula classify_normalized(const FormulaPtr& f) {
  auto n = try_classify(f);
  if (!n) throw NotNormalized("not a normalized formula: " + print_formula(f));
  return *n;
}

Sequent NormalizedSequent::to_sequent() const {
  Sequent s;
  std::vector<FormulaPtr> lhs;
  lhs.push_back(product_formula(W));
  for (const auto& f : delta) lhs.push_back(f.to_formula());
  for (const auto& f : gamma) lhs.push_back(bang(f.to_formula()));
  s.lhs = sorted_multiset(std::move(lhs));
  s.rhs.push_back(product_formula(Z));
  return s;
}

int NormalizedSequent::max_literal() const {
  int mx = 0;
  auto scan = [&mx](const SimpleProduct& p) {
    for (int m : p.lits) mx = std::max(mx, m);
  };
  scan(W);
  scan(Z);
  for (auto lists : {&delta, &gamma})
    for (const auto& f : *lists) {
      scan(f.a);
      scan(f.b);
      scan(f.c);
      scan(f.d);
    }
  return mx;
}

bool NormalizedSequent::contains_literal(int index) const {
  auto in = [index](const SimpleProduct& p) {
    return std::binary_search(p.lits.begin(), p.lits.end(), index);
  };
  if (in(W) || in(Z)) return true;
  for (auto lists : {&delta, &gamma})
    for (const auto& f : *lists) {
      int n = f.kind == NormKind::WithHorn ? 4 : (f.kind == NormKind::Horn ? 2 : 3);
      const SimpleProduct* ps[4] = {&f.a, &f.b, &f.c, &f.d};
      for (int i = 0; i < n; ++i)
        if (in(*ps[i])) return true;
    }
  return false;
}

std::optional<NormalizedSequent> sequent_to_normalized(const Sequent& s) {
  if (s.rhs.size() != 1) return std::nullopt;
  auto z = formula_to_product(s.rhs[0]);
  if (!z) return std::nullopt;
  std::vector<int> w_lits;
  NormalizedSequent out;
  out.Z = *z;
  for (const auto& f : s.lhs) {
    if (auto p = formula_to_product(f)) {
      w_lits.insert(w_lits.end(), p->lits.begin(), p->lits.end());
      continue;
    }
    if (f->kind == Kind::Bang) {
      auto n = try_classify(f->left);
      if (!n) return std::nullopt;
      out.gamma.push_back(*n);
      continue;
    }
    auto n = try_classify(f);
    if (!n) return std::nullopt;
    out.delta.push_back(*n);
  }
  if (w_lits.empty()) return std::nullopt;
  out.W = product_of_multiset(std::move(w_lits));
  return out;
}

}  // namespace ll
