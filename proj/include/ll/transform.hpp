// ============================================================================
// ll/transform.hpp — derivation-level translations: source proof to encoded
// proof, encoded proof back to a program, and the four-way fairness check.
// ============================================================================
#pragma once

#include "ll/enumerate.hpp"
#include "ll/program.hpp"
#include "ll/prover.hpp"
#include "ll/tables.hpp"

namespace ll {

// A structural invariant of well-formed encoded proofs failed; carries the
// failed assertion and the offending node's conclusion.
struct RegularityViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Turns a checked proof of a normalized sequent into a checked proof of its
// bot-only encoding.  The construction routes through a strong-solution
// program found within `bounds`; it fails loudly (EncodingError) when the
// search bounds are too small or the target is not BotOnly.
ProofPtr ttobot_transform(const ProofPtr& d, const EncodingParams& params,
                          const EnumBounds& bounds = {});

// Reads a program back out of a checked proof of encode_sequent(s, BotOnly).
// The returned program satisfies check_strong_solution(P, s).  Throws
// RegularityViolation when the proof breaks the structural assumptions the
// extraction relies on (balance congruence at branch points, trivial axiom
// situations, pure-assembly antecedents).
Program extract_program(const ProofPtr& d, const NormalizedSequent& s,
                        const EncodingParams& params);

struct FairnessEntry {
  SearchStatus status = SearchStatus::BudgetExhausted;
  bool via_witness = false;  // proved by a constructed derivation
};

// One entry per variant: the source sequent and its three encodings.
struct FairnessReport {
  FairnessEntry source;       // (a)
  FairnessEntry one_literal;  // (b)
  FairnessEntry bot_only;     // (c), witness-backed when (a) is Proved
  FairnessEntry unit_only;    // (d)
  bool violation = false;     // two decided entries disagree
  std::vector<std::string> notes;
};

FairnessReport fairness_check(const NormalizedSequent& s,
                              const EncodingParams& base,
                              const SearchBudget& budget,
                              const EnumBounds& bounds = {});

}  // namespace ll
