#pragma once

#include <functional>

#include "ll/program.hpp"

namespace ll::detail {

// Image of a literal product on the proof side (plain tensor product for
// source-level proofs, composed value formula for encoded proofs).
using ProductImage = std::function<FormulaPtr(const SimpleProduct&)>;
// Image of a covering formula (identity for source-level proofs, the
// encoded counterpart for encoded proofs).
using FormulaImage = std::function<FormulaPtr(const NormalizedFormula&)>;
// Rewrites the continuation proof of an embedded step so that its lhs shows
// the consequent image of the covering formula, returning the rewritten
// proof and that consequent.  The source-level closer is the identity
// paired with the plain product; the encoded closer inserts the extra
// implication-elimination step demanded by the goal form.
using GoalCloser =
    std::function<std::pair<ProofPtr, FormulaPtr>(ProofPtr, const SimpleProduct&)>;

// Rebuilds a proof from a strong solution, mapping products and covering
// formulas through the given images.  Throws NotAStrongSolution when the
// program is not a strong solution of `s` (including non-uniform push
// continuations).
ProofPtr build_proof_from_program(const Program& p, const NormalizedSequent& s,
                                  const ProductImage& prod,
                                  const FormulaImage& form,
                                  const GoalCloser& close_goal);

// Pure R*/I derivation of `f` from its tensor leaves.
ProofPtr assemble_atoms(const FormulaPtr& f);

// Composes scattered lhs pieces into `target` with L* steps.
ProofPtr compose_into(ProofPtr proof, const FormulaPtr& target);

}  // namespace ll::detail
