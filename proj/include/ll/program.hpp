// ============================================================================
// ll/program.hpp — acyclic token programs with a stack: rooted binary
// trees of labeled edges, their strong execution semantics, usage
// assignments against a normalized sequent, and conversion to proofs.
// ============================================================================
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ll/formula.hpp"
#include "ll/proof.hpp"

namespace ll {

struct ProgramError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotAStrongSolution : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EdgeLabel {
  enum class Op : uint8_t { Horn, Push, Pop } op;
  // Horn: a -o b.  Push(a; b, c): suspend (rest (*) a), continue with
  // (b (*) c).  Pop: a is the value required before restoring the top.
  SimpleProduct a, b, c;
};

struct ProgVertex;
using VertexPtr = std::shared_ptr<ProgVertex>;

struct ProgEdge {
  EdgeLabel label;
  VertexPtr child;
};

struct ProgVertex {
  int id = 0;
  std::vector<ProgEdge> edges;  // 0, 1, or 2 (2 only for divergent vertices)
};

// Validated on construction: out-degree <= 2; divergent vertices carry two
// Horn edges with the same antecedent; along every root-to-leaf path the
// push/pop sequence is bracket-balanced and fully closed.  Vertex ids are
// renumbered in preorder.
class Program {
 public:
  static Program create(VertexPtr root);  // throws ProgramError
  const VertexPtr& root() const { return root_; }
  std::size_t edge_count() const;
  std::vector<VertexPtr> vertices() const;  // preorder

 private:
  VertexPtr root_;
};

Program deep_copy(const Program& p);
VertexPtr copy_tree(const VertexPtr& v);

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

struct VertexState {
  bool defined = false;
  SimpleProduct out{{1}};                // meaningful iff defined
  std::vector<SimpleProduct> stack;      // top at the back
};

struct ExecutionTrace {
  std::map<int, VertexState> states;  // by vertex id
  bool all_defined = false;
};

ExecutionTrace run_strong(const Program& p, const SimpleProduct& w);

// True iff every leaf ends with an empty stack and output multiset-equal
// to z (and every vertex is defined).
bool evaluate(const Program& p, const SimpleProduct& w, const SimpleProduct& z);

// ---------------------------------------------------------------------------
// Usage assignments
// ---------------------------------------------------------------------------

struct UsedFormula {
  enum class Origin : uint8_t { Delta, Gamma } origin;
  int index = 0;       // into the delta / gamma vector
  int projection = 0;  // 0 = whole formula, 1/2 = with-branch
};

struct UsageAssignment {
  // Keyed by (vertex id, edge position); pop edges carry no entry.
  std::map<std::pair<int, int>, UsedFormula> by_edge;
};

// Finds a deterministic assignment satisfying: every non-pop edge is covered
// by a formula from delta/gamma (Horn edges by a matching Horn or a
// with-branch; a divergent pair jointly by one plus-branching formula; a
// push edge by an embedded implication consistent with all its partner
// pops), and every delta formula is used exactly once on every root-to-leaf
// path.
std::optional<UsageAssignment> assign_usage(
    const Program& p, const std::vector<NormalizedFormula>& delta,
    const std::vector<NormalizedFormula>& gamma);

bool check_strong_solution(const Program& p, const NormalizedSequent& s);

// Builds a checked proof of s.to_sequent() from a strong solution.
// Throws NotAStrongSolution when p is not one (or is not usage-uniform
// around its push edges).
ProofPtr program_to_proof(const Program& p, const NormalizedSequent& s);

std::string program_to_sexpr(const Program& p);
Program parse_program_sexpr(const std::string& text);  // throws ParseError

}  // namespace ll
