// ============================================================================
// ll/proof.hpp — proof trees over the 20 cut-free two-sided rules, the
// proof checker, and the s-expression serialization.
// ============================================================================
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ll/formula.hpp"

namespace ll {

enum class RuleId : uint8_t {
  I,        // A |- A
  LImp,     // Sigma1 |- A, Phi1   B, Sigma2 |- Phi2   =>  ..., A -o B, ...
  RImp,
  LTensor,
  RTensor,
  LPar,
  RPar,
  LPlus,
  RPlus1,
  RPlus2,
  LWith1,
  LWith2,
  RWith,
  LBang,
  RBang,
  WBang,
  CBang,
  LBot,
  RBot,
  LOne,
  ROne,
};

enum class Side : uint8_t { Lhs, Rhs };

const char* rule_name(RuleId r);
std::optional<RuleId> rule_from_name(const std::string& name);

struct Proof;
using ProofPtr = std::shared_ptr<const Proof>;

struct Proof {
  Sequent conclusion;
  RuleId rule;
  Side principal_side = Side::Lhs;
  int principal_index = 0;  // index into the sorted side of `conclusion`
  std::vector<ProofPtr> premises;
};

ProofPtr make_proof(Sequent conclusion, RuleId rule, Side side, int index,
                    std::vector<ProofPtr> premises);

// Convenience: principal given as a formula; the index of its first
// occurrence on the chosen side is computed (throws if absent).
ProofPtr make_proof_f(Sequent conclusion, RuleId rule, Side side,
                      const FormulaPtr& principal,
                      std::vector<ProofPtr> premises);

struct CheckResult {
  bool ok = true;
  std::string message;    // mismatch description
  std::string node_path;  // e.g. "0.1" — premise indices from the root
  RuleId rule = RuleId::I;
};

// Validates every node bottom-up: rule shape, principal formula, exact
// multiset bookkeeping of the contexts.
CheckResult check_proof(const ProofPtr& proof);

std::string proof_to_sexpr(const ProofPtr& proof);
ProofPtr parse_proof_sexpr(const std::string& text);  // throws ParseError

// Number of nodes / height, used for budgets and reporting.
std::size_t proof_size(const ProofPtr& proof);
std::size_t proof_height(const ProofPtr& proof);

}  // namespace ll
