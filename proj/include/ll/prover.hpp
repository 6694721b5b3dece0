// ============================================================================
// ll/prover.hpp — bounded, deterministic, cut-free backward proof search.
// ============================================================================
#pragma once

#include "ll/proof.hpp"

namespace ll {

struct SearchBudget {
  int max_depth = 15;                 // proof tree height
  int max_contractions_per_bang = 4;  // C! uses per distinct !-formula, per branch
  bool balance_pruning = true;        // needs modulus_N > 0 to take effect
  int modulus_N = 0;                  // scale for the balance test; 0 = off
};

enum class SearchStatus { Proved, Refuted, BudgetExhausted };

const char* search_status_name(SearchStatus s);

struct SearchResult {
  SearchStatus status = SearchStatus::Refuted;
  ProofPtr proof;  // set iff status == Proved
};

// Deterministic: identical inputs yield identical proof trees.  Refuted is
// only reported when the whole space was exhausted without hitting any
// budget; otherwise failure degrades to BudgetExhausted.
SearchResult prove(const Sequent& goal, const SearchBudget& budget);

// Drops the cross-call caches of absolute refutations / found proofs.
void clear_prover_cache();

}  // namespace ll
