#pragma once

#include <optional>

#include "ll/program.hpp"

namespace ll {

// Bounds for the exhaustive program search: `max_edges` caps the total
// number of edges in the candidate tree, `max_push_pairs` caps the number
// of push edges.
struct EnumBounds {
  int max_edges = 6;
  int max_push_pairs = 1;
};

// Exhaustively searches for a program that is a strong solution of the
// given normalized sequent within the bounds.  The returned program always
// passes check_strong_solution; nullopt means no program exists within the
// bounds (not merely that the search gave up).
std::optional<Program> find_strong_solution(const NormalizedSequent& s,
                                            const EnumBounds& bounds = {});

}  // namespace ll
