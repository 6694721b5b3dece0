// ============================================================================
// ll/tables.hpp — constant-only translation tables: parameters, the basic
// formula family, per-product and per-formula encoders, encoded-sequent
// assembly, and syntactic recognizers for the bot-only shapes.
// ============================================================================
#pragma once

#include <optional>
#include <stdexcept>

#include "ll/formula.hpp"

namespace ll {

enum class Target : uint8_t { OneLiteral, BotOnly, UnitOnly };

const char* target_name(Target t);
std::optional<Target> target_from_name(const std::string& name);

struct EncodingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// N is the global exponent scale; p_index the leading literal threaded
// through every encoded value.  Every literal m used in the encoding
// (source literals and p_index) must satisfy m + 4 <= N - 3.
struct EncodingParams {
  int N = 9;
  int p_index = 1;
  Target target = Target::BotOnly;
};

EncodingParams default_params(const NormalizedSequent& s, Target target);
void validate_params(const EncodingParams& params, const NormalizedSequent& s);

// The scale-setting formulas.  h1 is null for the unit-only target, which
// only has the two-member family.
struct BasicFormulaTable {
  FormulaPtr h0;  // H00 / tilde-H0(p) / H01
  FormulaPtr c0;  // C00 / tilde-C0(p) / C01
  FormulaPtr h1;  // H1  / tilde-H1(p) / (null)
};

BasicFormulaTable basic_formulas(const EncodingParams& params);

// Product encoder: D_X (bot-only), the nested implication chain ending in p
// (one-literal), or the par chain of unit gadgets (unit-only).
FormulaPtr encode_product(const SimpleProduct& x, const EncodingParams& params);
// Single-literal building block (D_q and its analogues).
FormulaPtr encode_literal(int m, const EncodingParams& params);

// Value formulas E_X / tilde-E_X(p) / E1_X for a product X given with the
// leading literal already included (callers usually pass p (*) X).
FormulaPtr encode_value(const SimpleProduct& x_with_p,
                        const EncodingParams& params);

// F_A for a normalized formula A.
FormulaPtr encode_formula(const NormalizedFormula& a,
                          const EncodingParams& params);
// F_Y for a bare target product Y (the goal-product form).
FormulaPtr encode_goal(const SimpleProduct& y, const EncodingParams& params);
// The empty-target value: E of the bare leading literal.
FormulaPtr encode_empty_goal(const EncodingParams& params);

// Whole-sequent encoding.  Bot-only is the auxiliary (covariant) form
//   E_{p*W}, F_Delta, !F_Gamma |- E_{p*Z};
// the one-literal and unit-only forms are contravariant:
//   E_{p*Z}, F_Delta, !F_Gamma |- E_{p*W}.
Sequent encode_sequent(const NormalizedSequent& s,
                       const EncodingParams& params);

// ---------------------------------------------------------------------------
// Recognizers for the bot-only shapes (syntactic, exact against the
// canonical builders above).  Products are reported as they occur inside
// the value formulas, i.e. including the leading literal's slot.
// ---------------------------------------------------------------------------

// True when f contains only {bot, *, -o}.
bool is_bot_multiplicative(const FormulaPtr& f);

// D_q for some literal q (exponent within range for N): returns q.
std::optional<int> match_encoded_literal(const FormulaPtr& f, int N);
// D_X: returns the full product X.
std::optional<SimpleProduct> match_encoded_product(const FormulaPtr& f, int N);
// E_X: returns the full product (including the leading literal slot).
std::optional<SimpleProduct> match_value(const FormulaPtr& f, int N);

// F_A at the value level.  Products are E-level (leading literal included).
// Horn:      E_x -o E_y
// PlusHorn:  E_x -o (E_y + E_z)          (y in b, z in c)
// WithHorn:  (E_a -o E_b) & (E_c -o E_d)
// Embedded:  (E_a -o E_b) -o (E_c -o E_d)
struct MatchedEncodedFormula {
  NormKind kind;
  SimpleProduct a, b, c, d;
};
std::optional<MatchedEncodedFormula> match_encoded_formula(const FormulaPtr& f,
                                                           int N);

}  // namespace ll
