// ============================================================================
// ll/formula.hpp — Formula and sequent data model for propositional
// Linear Logic, plus the product/multiset view used everywhere else.
// ============================================================================
//
// Formulas are immutable shared trees.  Connectives:
//   * tensor, @ par, -o lollipop, & with, + plus, ! bang, constants bot / 1.
// Multisets of formulas are kept as vectors sorted under a fixed total
// order, so multiset equality is plain vector equality and printing is
// canonical.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ll {

enum class Kind : uint8_t {
  Literal,
  Bottom,
  One,
  Tensor,
  Par,
  Lollipop,
  With,
  Plus,
  Bang,
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

class Formula {
public:
  Kind kind;
  int literal = 0;          // Literal only, index >= 1
  FormulaPtr left, right;   // binary nodes; Bang stores its body in left
  std::size_t hash = 0;     // structural hash, precomputed
  uint32_t size = 1;        // node count

  Formula(Kind k, int lit, FormulaPtr l, FormulaPtr r);
};

FormulaPtr lit(int index);
FormulaPtr bottom();
FormulaPtr one();
FormulaPtr tensor(FormulaPtr a, FormulaPtr b);
FormulaPtr par(FormulaPtr a, FormulaPtr b);
FormulaPtr lolli(FormulaPtr antecedent, FormulaPtr consequent);
FormulaPtr with_f(FormulaPtr a, FormulaPtr b);
FormulaPtr plus_f(FormulaPtr a, FormulaPtr b);
FormulaPtr bang(FormulaPtr body);

// Total order: hash first, structural tie-break.  equal() is exact
// structural equality.
int compare(const FormulaPtr& a, const FormulaPtr& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);
inline bool formula_less(const FormulaPtr& a, const FormulaPtr& b) {
  return compare(a, b) < 0;
}

std::string print_formula(const FormulaPtr& f);

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)),
        position(pos) {}
};

FormulaPtr parse_formula(const std::string& text);

// ---------------------------------------------------------------------------
// Sorted formula multisets and sequents
// ---------------------------------------------------------------------------

using FormulaMultiset = std::vector<FormulaPtr>;  // sorted by formula_less

void ms_insert(FormulaMultiset& ms, const FormulaPtr& f);
bool ms_remove_one(FormulaMultiset& ms, const FormulaPtr& f);
bool ms_contains(FormulaMultiset const& ms, const FormulaPtr& f);
bool ms_equal(const FormulaMultiset& a, const FormulaMultiset& b);
FormulaMultiset ms_union(const FormulaMultiset& a, const FormulaMultiset& b);
FormulaMultiset sorted_multiset(std::vector<FormulaPtr> fs);

struct Sequent {
  FormulaMultiset lhs, rhs;  // either side may be empty

  bool operator==(const Sequent& other) const {
    return ms_equal(lhs, other.lhs) && ms_equal(rhs, other.rhs);
  }
  std::size_t hash() const;
};

struct SequentHash {
  std::size_t operator()(const Sequent& s) const { return s.hash(); }
};

std::string print_sequent(const Sequent& s);
Sequent parse_sequent(const std::string& text);

// ---------------------------------------------------------------------------
// Simple products: non-empty multisets of positive literals
// ---------------------------------------------------------------------------

struct SimpleProduct {
  std::vector<int> lits;  // sorted ascending, never empty

  bool operator==(const SimpleProduct& other) const {
    return lits == other.lits;
  }
  bool operator<(const SimpleProduct& other) const {
    return lits < other.lits;
  }
  std::size_t size() const { return lits.size(); }
};

// Throws std::invalid_argument on an empty multiset.
SimpleProduct product_of_multiset(std::vector<int> lits);
// Canonical image: sorted, right-nested tensor chain (single literal for
// size one).
FormulaPtr product_formula(const SimpleProduct& p);
bool product_equiv(const SimpleProduct& a, const SimpleProduct& b);
// Flattens nested tensors of literals; nullopt if any leaf is not a literal.
std::optional<SimpleProduct> formula_to_product(const FormulaPtr& f);

// Multiset arithmetic on products viewed as literal multisets.
bool product_subseteq(const SimpleProduct& sub, const SimpleProduct& super);
std::vector<int> multiset_minus(const std::vector<int>& a,
                                const std::vector<int>& b);
std::vector<int> multiset_plus(const std::vector<int>& a,
                               const std::vector<int>& b);

// A^n (n=0 gives 1), A^[n] (n=0 gives bot), and A -o (A -o ... -o B).
FormulaPtr power_tensor(const FormulaPtr& a, int n);
FormulaPtr power_par(const FormulaPtr& a, int n);
FormulaPtr nested_impl(const FormulaPtr& a, int n, const FormulaPtr& b);

// ---------------------------------------------------------------------------
// Normalized formulas and sequents
// ---------------------------------------------------------------------------

enum class NormKind : uint8_t { Horn, PlusHorn, WithHorn, Embedded };

// Field use by kind:
//   Horn      a -o b
//   PlusHorn  a -o (b + c)
//   WithHorn  (a -o b) & (c -o d)
//   Embedded  (a -o b) -o c
struct NormalizedFormula {
  NormKind kind;
  SimpleProduct a, b, c, d;

  FormulaPtr to_formula() const;
  bool operator==(const NormalizedFormula& other) const;
};

struct NotNormalized : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<NormalizedFormula> try_classify(const FormulaPtr& f);
NormalizedFormula classify_normalized(const FormulaPtr& f);  // throws

// W, Delta, !Gamma |- Z
struct NormalizedSequent {
  SimpleProduct W;
  std::vector<NormalizedFormula> delta;
  std::vector<NormalizedFormula> gamma;
  SimpleProduct Z;

  Sequent to_sequent() const;
  int max_literal() const;
  bool contains_literal(int index) const;
};

// Classifies a generic sequent: lhs products join W (tensored together),
// normalized formulas go to delta, !-prefixed normalized formulas to gamma;
// rhs must be a single product.
std::optional<NormalizedSequent> sequent_to_normalized(const Sequent& s);

}  // namespace ll
