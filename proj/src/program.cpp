#include "ll/program.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "program_builder.hpp"
#include "sexpr.hpp"

namespace ll {

// ---------------------------------------------------------------------------
// Construction and validation
// ---------------------------------------------------------------------------

namespace {

void validate_tree(const VertexPtr& v, int bracket_depth) {
  if (!v) throw ProgramError("null vertex");
  if (v->edges.size() > 2)
    throw ProgramError("vertex out-degree exceeds two");
  if (v->edges.size() == 2) {
    const EdgeLabel& a = v->edges[0].label;
    const EdgeLabel& b = v->edges[1].label;
    if (a.op != EdgeLabel::Op::Horn || b.op != EdgeLabel::Op::Horn)
      throw ProgramError("divergent vertex edges must both be rewriting edges");
    if (!product_equiv(a.a, b.a))
      throw ProgramError("divergent vertex edges must share their antecedent");
  }
  if (v->edges.empty() && bracket_depth != 0)
    throw ProgramError("unclosed push on a root-to-leaf path");
  for (const auto& e : v->edges) {
    int d = bracket_depth;
    switch (e.label.op) {
      case EdgeLabel::Op::Horn:
        break;
      case EdgeLabel::Op::Push:
        ++d;
        break;
      case EdgeLabel::Op::Pop:
        if (d == 0) throw ProgramError("pop without a matching push");
        --d;
        break;
    }
    validate_tree(e.child, d);
  }
}

void renumber(const VertexPtr& v, int& next) {
  v->id = next++;
  for (const auto& e : v->edges) renumber(e.child, next);
}

}  // namespace

Program Program::create(VertexPtr root) {
  validate_tree(root, 0);
  int next = 0;
  renumber(root, next);
  Program p;
  p.root_ = std::move(root);
  return p;
}

std::size_t Program::edge_count() const {
  std::size_t n = 0;
  std::function<void(const VertexPtr&)> walk = [&](const VertexPtr& v) {
    n += v->edges.size();
    for (const auto& e : v->edges) walk(e.child);
  };
  walk(root_);
  return n;
}

std::vector<VertexPtr> Program::vertices() const {
  std::vector<VertexPtr> out;
  std::function<void(const VertexPtr&)> walk = [&](const VertexPtr& v) {
    out.push_back(v);
    for (const auto& e : v->edges) walk(e.child);
  };
  walk(root_);
  return out;
}

VertexPtr copy_tree(const VertexPtr& v) {
  auto out = std::make_shared<ProgVertex>();
  out->id = v->id;
  for (const auto& e : v->edges)
    out->edges.push_back(ProgEdge{e.label, copy_tree(e.child)});
  return out;
}

Program deep_copy(const Program& p) { return Program::create(copy_tree(p.root())); }

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

namespace {

struct RunState {
  std::vector<int> out;                     // sorted literal multiset
  std::vector<SimpleProduct> stack;
};

std::optional<RunState> step(const RunState& st, const EdgeLabel& label) {
  switch (label.op) {
    case EdgeLabel::Op::Horn: {
      if (!std::includes(st.out.begin(), st.out.end(), label.a.lits.begin(),
                         label.a.lits.end()))
        return std::nullopt;
      RunState next = st;
      next.out = multiset_plus(multiset_minus(st.out, label.a.lits),
                               label.b.lits);
      return next;
    }
    case EdgeLabel::Op::Push: {
      // out must be X1 (*) X2 with X1 non-empty; suspend X1 (*) a.
      if (!std::includes(st.out.begin(), st.out.end(), label.b.lits.begin(),
                         label.b.lits.end()))
        return std::nullopt;
      std::vector<int> x1 = multiset_minus(st.out, label.b.lits);
      if (x1.empty()) return std::nullopt;
      RunState next;
      next.out = multiset_plus(label.b.lits, label.c.lits);
      next.stack = st.stack;
      next.stack.push_back(
          product_of_multiset(multiset_plus(x1, label.a.lits)));
      return next;
    }
    case EdgeLabel::Op::Pop: {
      if (st.stack.empty()) return std::nullopt;
      if (st.out != label.a.lits) return std::nullopt;
      RunState next;
      next.out = st.stack.back().lits;
      next.stack = st.stack;
      next.stack.pop_back();
      return next;
    }
  }
  return std::nullopt;
}

void exec(const VertexPtr& v, const std::optional<RunState>& st,
          ExecutionTrace& trace) {
  VertexState& rec = trace.states[v->id];
  if (st) {
    rec.defined = true;
    rec.out = product_of_multiset(st->out);
    rec.stack = st->stack;
  } else {
    rec.defined = false;
    trace.all_defined = false;
  }
  for (const auto& e : v->edges) {
    std::optional<RunState> next;
    if (st) next = step(*st, e.label);
    exec(e.child, next, trace);
  }
}

}  // namespace

ExecutionTrace run_strong(const Program& p, const SimpleProduct& w) {
  ExecutionTrace trace;
  trace.all_defined = true;
  RunState init;
  init.out = w.lits;
  exec(p.root(), init, trace);
  return trace;
}

bool evaluate(const Program& p, const SimpleProduct& w,
              const SimpleProduct& z) {
  ExecutionTrace trace = run_strong(p, w);
  if (!trace.all_defined) return false;
  bool ok = true;
  std::function<void(const VertexPtr&)> walk = [&](const VertexPtr& v) {
    if (v->edges.empty()) {
      const VertexState& st = trace.states.at(v->id);
      if (!st.stack.empty() || !product_equiv(st.out, z)) ok = false;
    }
    for (const auto& e : v->edges) walk(e.child);
  };
  walk(p.root());
  return ok;
}

// ---------------------------------------------------------------------------
// Usage assignment
// ---------------------------------------------------------------------------

namespace {

// The pop value shared by every partner pop of a push edge whose target is
// `start`; nullopt when the partners disagree.
std::optional<SimpleProduct> partner_pop_value(const VertexPtr& start) {
  std::optional<SimpleProduct> value;
  bool consistent = true;
  std::function<void(const VertexPtr&, int)> walk = [&](const VertexPtr& v,
                                                        int depth) {
    for (const auto& e : v->edges) {
      if (e.label.op == EdgeLabel::Op::Pop) {
        if (depth == 0) {
          if (value && !product_equiv(*value, e.label.a)) consistent = false;
          value = e.label.a;
          continue;  // partners belong to the outer push; don't descend
        }
        walk(e.child, depth - 1);
      } else if (e.label.op == EdgeLabel::Op::Push) {
        walk(e.child, depth + 1);
      } else {
        walk(e.child, depth);
      }
    }
  };
  walk(start, 0);
  if (!consistent) return std::nullopt;
  return value;
}

struct UsageSearch {
  const std::vector<NormalizedFormula>& delta;
  const std::vector<NormalizedFormula>& gamma;
  UsageAssignment ua;

  struct Candidate {
    UsedFormula uf;
  };

  // All formulas (delta-first, then gamma) covering a Horn step X -o Y.
  std::vector<UsedFormula> horn_candidates(const SimpleProduct& x,
                                           const SimpleProduct& y,
                                           const std::vector<char>& used) {
    std::vector<UsedFormula> out;
    auto scan = [&](const std::vector<NormalizedFormula>& fs,
                    UsedFormula::Origin origin) {
      for (int i = 0; i < static_cast<int>(fs.size()); ++i) {
        if (origin == UsedFormula::Origin::Delta && used[i]) continue;
        const NormalizedFormula& f = fs[i];
        if (f.kind == NormKind::Horn && product_equiv(f.a, x) &&
            product_equiv(f.b, y))
          out.push_back({origin, i, 0});
        if (f.kind == NormKind::WithHorn) {
          if (product_equiv(f.a, x) && product_equiv(f.b, y))
            out.push_back({origin, i, 1});
          if (product_equiv(f.c, x) && product_equiv(f.d, y))
            out.push_back({origin, i, 2});
        }
      }
    };
    scan(delta, UsedFormula::Origin::Delta);
    scan(gamma, UsedFormula::Origin::Gamma);
    return out;
  }

  std::vector<UsedFormula> fork_candidates(const SimpleProduct& x,
                                           const SimpleProduct& y1,
                                           const SimpleProduct& y2,
                                           const std::vector<char>& used) {
    std::vector<UsedFormula> out;
    auto scan = [&](const std::vector<NormalizedFormula>& fs,
                    UsedFormula::Origin origin) {
      for (int i = 0; i < static_cast<int>(fs.size()); ++i) {
        if (origin == UsedFormula::Origin::Delta && used[i]) continue;
        const NormalizedFormula& f = fs[i];
        if (f.kind != NormKind::PlusHorn || !product_equiv(f.a, x)) continue;
        bool direct = product_equiv(f.b, y1) && product_equiv(f.c, y2);
        bool swapped = product_equiv(f.b, y2) && product_equiv(f.c, y1);
        if (direct || swapped) out.push_back({origin, i, 0});
      }
    };
    scan(delta, UsedFormula::Origin::Delta);
    scan(gamma, UsedFormula::Origin::Gamma);
    return out;
  }

  std::vector<UsedFormula> push_candidates(const EdgeLabel& label,
                                           const SimpleProduct& pop_value,
                                           const std::vector<char>& used) {
    std::vector<UsedFormula> out;
    auto scan = [&](const std::vector<NormalizedFormula>& fs,
                    UsedFormula::Origin origin) {
      for (int i = 0; i < static_cast<int>(fs.size()); ++i) {
        if (origin == UsedFormula::Origin::Delta && used[i]) continue;
        const NormalizedFormula& f = fs[i];
        if (f.kind == NormKind::Embedded && product_equiv(f.a, label.c) &&
            product_equiv(f.b, pop_value) && product_equiv(f.c, label.a))
          out.push_back({origin, i, 0});
      }
    };
    scan(delta, UsedFormula::Origin::Delta);
    scan(gamma, UsedFormula::Origin::Gamma);
    return out;
  }

  bool rec(const VertexPtr& v, std::vector<char> used) {
    if (v->edges.empty()) {
      for (char u : used)
        if (!u) return false;
      return true;
    }
    if (v->edges.size() == 2) {
      const EdgeLabel& e0 = v->edges[0].label;
      const EdgeLabel& e1 = v->edges[1].label;
      auto cands = fork_candidates(e0.a, e0.b, e1.b, used);
      for (const auto& uf : cands) {
        std::vector<char> next = used;
        if (uf.origin == UsedFormula::Origin::Delta) next[uf.index] = 1;
        ua.by_edge[{v->id, 0}] = uf;
        ua.by_edge[{v->id, 1}] = uf;
        if (rec(v->edges[0].child, next) && rec(v->edges[1].child, next))
          return true;
        ua.by_edge.erase({v->id, 0});
        ua.by_edge.erase({v->id, 1});
      }
      return false;
    }
    const ProgEdge& e = v->edges[0];
    switch (e.label.op) {
      case EdgeLabel::Op::Pop:
        return rec(e.child, std::move(used));
      case EdgeLabel::Op::Horn: {
        auto cands = horn_candidates(e.label.a, e.label.b, used);
        for (const auto& uf : cands) {
          std::vector<char> next = used;
          if (uf.origin == UsedFormula::Origin::Delta) next[uf.index] = 1;
          ua.by_edge[{v->id, 0}] = uf;
          if (rec(e.child, std::move(next))) return true;
          ua.by_edge.erase({v->id, 0});
        }
        return false;
      }
      case EdgeLabel::Op::Push: {
        auto pop_value = partner_pop_value(e.child);
        if (!pop_value) return false;
        auto cands = push_candidates(e.label, *pop_value, used);
        for (const auto& uf : cands) {
          std::vector<char> next = used;
          if (uf.origin == UsedFormula::Origin::Delta) next[uf.index] = 1;
          ua.by_edge[{v->id, 0}] = uf;
          if (rec(e.child, std::move(next))) return true;
          ua.by_edge.erase({v->id, 0});
        }
        return false;
      }
    }
    return false;
  }
};

}  // namespace

std::optional<UsageAssignment> assign_usage(
    const Program& p, const std::vector<NormalizedFormula>& delta,
    const std::vector<NormalizedFormula>& gamma) {
  UsageSearch search{delta, gamma, {}};
  if (!search.rec(p.root(), std::vector<char>(delta.size(), 0)))
    return std::nullopt;
  return search.ua;
}

bool check_strong_solution(const Program& p, const NormalizedSequent& s) {
  return evaluate(p, s.W, s.Z) && assign_usage(p, s.delta, s.gamma).has_value();
}

// ---------------------------------------------------------------------------
// Program -> proof
// ---------------------------------------------------------------------------

namespace detail {

// Each tensor leaf of `f` as its own lhs member, proved against the
// composed formula on the right: a pure R*/I assembly.
ProofPtr assemble_atoms(const FormulaPtr& f) {
  if (f->kind != Kind::Tensor) {
    Sequent s;
    s.lhs.push_back(f);
    s.rhs.push_back(f);
    return make_proof(s, RuleId::I, Side::Lhs, 0, {});
  }
  ProofPtr p1 = assemble_atoms(f->left);
  ProofPtr p2 = assemble_atoms(f->right);
  Sequent s;
  s.lhs = ms_union(p1->conclusion.lhs, p2->conclusion.lhs);
  s.rhs.push_back(f);
  return make_proof(s, RuleId::RTensor, Side::Rhs, 0, {p1, p2});
}

// Composes scattered lhs pieces into `target` with L* steps (no-op when the
// formula is already present).
ProofPtr compose_into(ProofPtr proof, const FormulaPtr& target) {
  if (ms_contains(proof->conclusion.lhs, target)) return proof;
  if (target->kind != Kind::Tensor)
    throw NotAStrongSolution("cannot compose missing formula " +
                             print_formula(target));
  proof = compose_into(std::move(proof), target->left);
  proof = compose_into(std::move(proof), target->right);
  Sequent s = proof->conclusion;
  if (!ms_remove_one(s.lhs, target->left) ||
      !ms_remove_one(s.lhs, target->right))
    throw NotAStrongSolution("composition pieces missing");
  ms_insert(s.lhs, target);
  return make_proof_f(std::move(s), RuleId::LTensor, Side::Lhs, target,
                      {std::move(proof)});
}

}  // namespace detail

namespace {

using detail::assemble_atoms;
using detail::compose_into;

struct PushSplit {
  VertexPtr segment;
  std::vector<VertexPtr> continuations;
  SimpleProduct pop_value{{1}};
};

std::optional<PushSplit> split_push(const VertexPtr& push_target) {
  PushSplit out;
  bool ok = true;
  bool have_value = false;
  std::function<VertexPtr(const VertexPtr&, int)> walk =
      [&](const VertexPtr& v, int depth) -> VertexPtr {
    auto copy = std::make_shared<ProgVertex>();
    copy->id = v->id;
    for (const auto& e : v->edges) {
      if (e.label.op == EdgeLabel::Op::Pop && depth == 0) {
        if (have_value && !product_equiv(out.pop_value, e.label.a)) ok = false;
        out.pop_value = e.label.a;
        have_value = true;
        out.continuations.push_back(e.child);
        continue;  // partner pop: segment ends here
      }
      int d = depth;
      if (e.label.op == EdgeLabel::Op::Push) ++d;
      if (e.label.op == EdgeLabel::Op::Pop) --d;
      copy->edges.push_back(ProgEdge{e.label, walk(e.child, d)});
    }
    return copy;
  };
  out.segment = walk(push_target, 0);
  if (!ok || !have_value) return std::nullopt;
  return out;
}

// Delta indices assigned to edges of the given (sub)tree.
std::set<int> delta_used_in(const VertexPtr& v, const UsageAssignment& ua) {
  std::set<int> out;
  std::function<void(const VertexPtr&)> walk = [&](const VertexPtr& u) {
    for (int i = 0; i < static_cast<int>(u->edges.size()); ++i) {
      auto it = ua.by_edge.find({u->id, i});
      if (it != ua.by_edge.end() &&
          it->second.origin == UsedFormula::Origin::Delta)
        out.insert(it->second.index);
      walk(u->edges[i].child);
    }
  };
  walk(v);
  return out;
}

struct ProofBuilder {
  const NormalizedSequent& s;
  const UsageAssignment& ua;
  const detail::ProductImage& prod;
  const detail::FormulaImage& form;
  const detail::GoalCloser& close_goal;

  [[noreturn]] void fail(const std::string& msg) {
    throw NotAStrongSolution(msg);
  }

  // Wraps `proof` (whose conclusion contains `opened` once, plus the full
  // !-context including !opened) with L! then C!, restoring the ambient
  // multiset.
  ProofPtr close_gamma_use(ProofPtr proof, const FormulaPtr& opened) {
    FormulaPtr banged = bang(opened);
    Sequent after_open = proof->conclusion;
    if (!ms_remove_one(after_open.lhs, opened)) fail("opened formula missing");
    ms_insert(after_open.lhs, banged);
    proof = make_proof_f(std::move(after_open), RuleId::LBang, Side::Lhs,
                         banged, {std::move(proof)});
    Sequent contracted = proof->conclusion;
    if (!ms_remove_one(contracted.lhs, banged)) fail("bang copy missing");
    proof = make_proof_f(std::move(contracted), RuleId::CBang, Side::Lhs,
                         banged, {std::move(proof)});
    return proof;
  }

  // Wraps a with-branch selection: the conclusion's horn projection is
  // replaced by the full alternative formula.
  ProofPtr close_projection(ProofPtr proof, const NormalizedFormula& nf,
                            int projection) {
    FormulaPtr whole = form(nf);
    FormulaPtr horn = projection == 1 ? whole->left : whole->right;
    Sequent sq = proof->conclusion;
    if (!ms_remove_one(sq.lhs, horn)) fail("projected branch missing");
    ms_insert(sq.lhs, whole);
    return make_proof_f(std::move(sq),
                        projection == 1 ? RuleId::LWith1 : RuleId::LWith2,
                        Side::Lhs, whole, {std::move(proof)});
  }

  // Contracts the doubled !-context left behind by a two-premise split in
  // which both children carried the full gamma multiset.
  ProofPtr contract_gamma(ProofPtr proof) {
    for (const auto& g : s.gamma) {
      FormulaPtr banged = bang(form(g));
      Sequent sq = proof->conclusion;
      if (!ms_remove_one(sq.lhs, banged)) fail("gamma copy missing");
      proof = make_proof_f(std::move(sq), RuleId::CBang, Side::Lhs, banged,
                           {std::move(proof)});
    }
    return proof;
  }

  ProofPtr build(const VertexPtr& v, const std::vector<int>& out_lits,
                 const std::set<int>& delta_rem, const SimpleProduct& goal) {
    if (v->edges.empty()) {
      if (out_lits != goal.lits) fail("leaf output differs from the target");
      if (!delta_rem.empty()) fail("unused linear formulas at a leaf");
      ProofPtr proof = assemble_atoms(prod(goal));
      for (const auto& g : s.gamma) {
        FormulaPtr banged = bang(form(g));
        Sequent sq = proof->conclusion;
        ms_insert(sq.lhs, banged);
        proof = make_proof_f(std::move(sq), RuleId::WBang, Side::Lhs, banged,
                             {std::move(proof)});
      }
      return proof;
    }

    if (v->edges.size() == 2) {
      auto it = ua.by_edge.find({v->id, 0});
      if (it == ua.by_edge.end()) fail("divergent vertex lacks a usage entry");
      UsedFormula uf = it->second;
      const NormalizedFormula& nf = uf.origin == UsedFormula::Origin::Delta
                                        ? s.delta[uf.index]
                                        : s.gamma[uf.index];
      const SimpleProduct& x = nf.a;
      if (!std::includes(out_lits.begin(), out_lits.end(), x.lits.begin(),
                         x.lits.end()))
        fail("fork antecedent not available");
      std::vector<int> rest = multiset_minus(out_lits, x.lits);
      std::set<int> delta_next = delta_rem;
      if (uf.origin == UsedFormula::Origin::Delta) delta_next.erase(uf.index);

      // Map edge order onto the formula's (b, c) order.
      int first = product_equiv(v->edges[0].label.b, nf.b) ? 0 : 1;
      int second = 1 - first;
      ProofPtr pb = build(v->edges[first].child,
                          multiset_plus(rest, v->edges[first].label.b.lits),
                          delta_next, goal);
      ProofPtr pc = build(v->edges[second].child,
                          multiset_plus(rest, v->edges[second].label.b.lits),
                          delta_next, goal);
      FormulaPtr fb = prod(nf.b);
      FormulaPtr fc = prod(nf.c);
      pb = compose_into(std::move(pb), fb);
      pc = compose_into(std::move(pc), fc);
      FormulaPtr plus = plus_f(fb, fc);
      Sequent sq = pb->conclusion;
      if (!ms_remove_one(sq.lhs, fb)) fail("fork branch product missing");
      ms_insert(sq.lhs, plus);
      ProofPtr fork = make_proof_f(std::move(sq), RuleId::LPlus, Side::Lhs,
                                   plus, {std::move(pb), std::move(pc)});

      ProofPtr left = assemble_atoms(prod(x));
      FormulaPtr nf_formula = form(nf);
      Sequent concl;
      concl.lhs = ms_union(left->conclusion.lhs, fork->conclusion.lhs);
      if (!ms_remove_one(concl.lhs, plus)) fail("fork sum missing");
      ms_insert(concl.lhs, nf_formula);
      concl.rhs = fork->conclusion.rhs;
      ProofPtr proof =
          make_proof_f(std::move(concl), RuleId::LImp, Side::Lhs, nf_formula,
                       {std::move(left), std::move(fork)});
      if (uf.origin == UsedFormula::Origin::Gamma)
        proof = close_gamma_use(std::move(proof), nf_formula);
      return proof;
    }

    const ProgEdge& e = v->edges[0];
    if (e.label.op == EdgeLabel::Op::Pop)
      fail("unexpected pop edge during proof construction");

    auto it = ua.by_edge.find({v->id, 0});
    if (it == ua.by_edge.end()) fail("edge lacks a usage entry");
    UsedFormula uf = it->second;
    const NormalizedFormula& nf = uf.origin == UsedFormula::Origin::Delta
                                      ? s.delta[uf.index]
                                      : s.gamma[uf.index];
    std::set<int> delta_next = delta_rem;
    if (uf.origin == UsedFormula::Origin::Delta) delta_next.erase(uf.index);

    if (e.label.op == EdgeLabel::Op::Horn) {
      const SimpleProduct& x = e.label.a;
      const SimpleProduct& y = e.label.b;
      if (!std::includes(out_lits.begin(), out_lits.end(), x.lits.begin(),
                         x.lits.end()))
        fail("step antecedent not available");
      std::vector<int> rest = multiset_minus(out_lits, x.lits);
      ProofPtr child =
          build(e.child, multiset_plus(rest, y.lits), delta_next, goal);
      FormulaPtr fy = prod(y);
      child = compose_into(std::move(child), fy);
      ProofPtr left = assemble_atoms(prod(x));
      FormulaPtr horn = lolli(prod(x), fy);
      Sequent concl;
      concl.lhs = ms_union(left->conclusion.lhs, child->conclusion.lhs);
      if (!ms_remove_one(concl.lhs, fy)) fail("step product missing");
      ms_insert(concl.lhs, horn);
      concl.rhs = child->conclusion.rhs;
      ProofPtr proof = make_proof_f(std::move(concl), RuleId::LImp, Side::Lhs,
                                    horn, {std::move(left), std::move(child)});
      if (uf.projection != 0)
        proof = close_projection(std::move(proof), nf, uf.projection);
      if (uf.origin == UsedFormula::Origin::Gamma)
        proof = close_gamma_use(std::move(proof), form(nf));
      return proof;
    }

    // Push edge: factor into segment and continuation.
    auto split = split_push(e.child);
    if (!split) fail("inconsistent partner pops under a push edge");
    if (!product_equiv(split->pop_value, nf.b))
      fail("pop value differs from the covering formula");
    const SimpleProduct& x2 = e.label.b;
    const SimpleProduct& u = nf.a;   // pushed continuation trigger
    const SimpleProduct& y = nf.c;   // restored consequent
    if (!std::includes(out_lits.begin(), out_lits.end(), x2.lits.begin(),
                       x2.lits.end()))
      fail("push residue not available");
    std::vector<int> x1 = multiset_minus(out_lits, x2.lits);
    if (x1.empty()) fail("push must suspend a non-empty part");

    std::set<int> delta2 = delta_used_in(split->segment, ua);
    for (int i : delta2)
      if (!delta_next.count(i)) fail("segment reuses a consumed formula");
    std::set<int> delta1;
    for (int i : delta_next)
      if (!delta2.count(i)) delta1.insert(i);
    for (const auto& cont : split->continuations)
      if (delta_used_in(cont, ua) != delta1)
        fail("push continuations are not usage-uniform");

    ProofPtr seg = build(split->segment, multiset_plus(x2.lits, u.lits),
                         delta2, nf.b);
    FormulaPtr fu = prod(u);
    seg = compose_into(std::move(seg), fu);
    FormulaPtr inner = lolli(fu, prod(nf.b));
    Sequent rseq = seg->conclusion;
    if (!ms_remove_one(rseq.lhs, fu)) fail("push trigger missing");
    rseq.rhs.clear();
    rseq.rhs.push_back(inner);
    ProofPtr left = make_proof_f(std::move(rseq), RuleId::RImp, Side::Rhs,
                                 inner, {std::move(seg)});

    ProofPtr cont = build(split->continuations[0],
                          multiset_plus(x1, y.lits), delta1, goal);
    cont = compose_into(std::move(cont), prod(y));
    auto [closed, consequent] = close_goal(std::move(cont), y);
    cont = std::move(closed);
    FormulaPtr nf_formula = form(nf);
    Sequent concl;
    concl.lhs = ms_union(left->conclusion.lhs, cont->conclusion.lhs);
    if (!ms_remove_one(concl.lhs, consequent))
      fail("restored consequent missing");
    ms_insert(concl.lhs, nf_formula);
    concl.rhs = cont->conclusion.rhs;
    ProofPtr proof = make_proof_f(std::move(concl), RuleId::LImp, Side::Lhs,
                                  nf_formula, {std::move(left), std::move(cont)});
    proof = contract_gamma(std::move(proof));
    if (uf.origin == UsedFormula::Origin::Gamma)
      proof = close_gamma_use(std::move(proof), nf_formula);
    return proof;
  }
};

}  // namespace

namespace detail {

ProofPtr build_proof_from_program(const Program& p, const NormalizedSequent& s,
                                  const ProductImage& prod,
                                  const FormulaImage& form,
                                  const GoalCloser& close_goal) {
  if (!evaluate(p, s.W, s.Z))
    throw NotAStrongSolution("program does not compute the target");
  auto ua = assign_usage(p, s.delta, s.gamma);
  if (!ua) throw NotAStrongSolution("no usage assignment exists");
  ProofBuilder builder{s, *ua, prod, form, close_goal};
  std::set<int> all;
  for (int i = 0; i < static_cast<int>(s.delta.size()); ++i) all.insert(i);
  ProofPtr proof = builder.build(p.root(), s.W.lits, all, s.Z);
  proof = compose_into(std::move(proof), prod(s.W));
  return proof;
}

}  // namespace detail

ProofPtr program_to_proof(const Program& p, const NormalizedSequent& s) {
  return detail::build_proof_from_program(
      p, s, [](const SimpleProduct& x) { return product_formula(x); },
      [](const NormalizedFormula& f) { return f.to_formula(); },
      [](ProofPtr cont, const SimpleProduct& y) {
        return std::make_pair(std::move(cont), product_formula(y));
      });
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

void emit_lits(const SimpleProduct& p, std::ostringstream& out) {
  out << "(";
  for (std::size_t i = 0; i < p.lits.size(); ++i) {
    if (i) out << " ";
    out << p.lits[i];
  }
  out << ")";
}

void emit_vertex(const VertexPtr& v, std::ostringstream& out, int indent) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  out << pad << "(vertex " << v->id;
  for (const auto& e : v->edges) {
    out << "\n" << pad << "  (edge ";
    switch (e.label.op) {
      case EdgeLabel::Op::Horn:
        out << "(horn ";
        emit_lits(e.label.a, out);
        out << " ";
        emit_lits(e.label.b, out);
        out << ")";
        break;
      case EdgeLabel::Op::Push:
        out << "(push ";
        emit_lits(e.label.a, out);
        out << " ";
        emit_lits(e.label.b, out);
        out << " ";
        emit_lits(e.label.c, out);
        out << ")";
        break;
      case EdgeLabel::Op::Pop:
        out << "(pop ";
        emit_lits(e.label.a, out);
        out << ")";
        break;
    }
    out << "\n";
    emit_vertex(e.child, out, indent + 2);
    out << ")";
  }
  out << ")";
}

SimpleProduct lits_from(const sexpr::Node& n) {
  if (n.is_atom) throw ParseError("expected a literal list", 0);
  std::vector<int> lits;
  for (const auto& item : n.items) {
    if (!item.is_atom || item.atom.empty() ||
        item.atom.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("expected a literal index", 0);
    lits.push_back(std::stoi(item.atom));
  }
  return product_of_multiset(std::move(lits));
}

VertexPtr vertex_from(const sexpr::Node& n) {
  if (n.is_atom || n.items.size() < 2 || !n.items[0].is_atom ||
      n.items[0].atom != "vertex" || !n.items[1].is_atom)
    throw ParseError("expected (vertex <id> ...)", 0);
  auto v = std::make_shared<ProgVertex>();
  v->id = std::stoi(n.items[1].atom);
  for (std::size_t i = 2; i < n.items.size(); ++i) {
    const auto& en = n.items[i];
    if (en.is_atom || en.items.size() != 3 || !en.items[0].is_atom ||
        en.items[0].atom != "edge" || en.items[1].is_atom)
      throw ParseError("expected (edge (<label>) (vertex ...))", 0);
    const auto& ln = en.items[1];
    if (ln.items.empty() || !ln.items[0].is_atom)
      throw ParseError("expected an edge label", 0);
    EdgeLabel label;
    const std::string& op = ln.items[0].atom;
    if (op == "horn" && ln.items.size() == 3) {
      label.op = EdgeLabel::Op::Horn;
      label.a = lits_from(ln.items[1]);
      label.b = lits_from(ln.items[2]);
      label.c = label.a;
    } else if (op == "push" && ln.items.size() == 4) {
      label.op = EdgeLabel::Op::Push;
      label.a = lits_from(ln.items[1]);
      label.b = lits_from(ln.items[2]);
      label.c = lits_from(ln.items[3]);
    } else if (op == "pop" && ln.items.size() == 2) {
      label.op = EdgeLabel::Op::Pop;
      label.a = lits_from(ln.items[1]);
      label.b = label.a;
      label.c = label.a;
    } else {
      throw ParseError("unknown edge label '" + op + "'", 0);
    }
    v->edges.push_back(ProgEdge{std::move(label), vertex_from(en.items[2])});
  }
  return v;
}

}  // namespace

std::string program_to_sexpr(const Program& p) {
  std::ostringstream out;
  emit_vertex(p.root(), out, 0);
  out << "\n";
  return out.str();
}

Program parse_program_sexpr(const std::string& text) {
  return Program::create(vertex_from(sexpr::parse(text)));
}

}  // namespace ll
