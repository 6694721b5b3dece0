#include "ll/transform.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "ll/balance.hpp"
#include "program_builder.hpp"

namespace ll {

// ---------------------------------------------------------------------------
// Source derivation -> encoded derivation
// ---------------------------------------------------------------------------

ProofPtr ttobot_transform(const ProofPtr& d, const EncodingParams& params,
                          const EnumBounds& bounds) {
  CheckResult res = check_proof(d);
  if (!res.ok)
    throw EncodingError("input derivation fails checking: " + res.message);
  if (params.target != Target::BotOnly)
    throw EncodingError(
        "the derivation transform is only implemented for the bot-only "
        "target; use the bounded prover for the other encodings");
  auto normalized = sequent_to_normalized(d->conclusion);
  if (!normalized)
    throw EncodingError("the derivation does not conclude a normalized sequent");
  const NormalizedSequent& s = *normalized;
  validate_params(params, s);

  auto program = find_strong_solution(s, bounds);
  if (!program)
    throw EncodingError(
        "gadget synthesis failed: no strong solution within the search "
        "bounds, although the source derivation is valid");

  auto prod = [&params](const SimpleProduct& x) {
    return encode_value(product_of_multiset(multiset_plus(
                            x.lits, std::vector<int>{params.p_index})),
                        params);
  };
  auto form = [&params](const NormalizedFormula& f) {
    return encode_formula(f, params);
  };
  auto close_goal = [&params, &prod](ProofPtr cont, const SimpleProduct& y) {
    FormulaPtr ep = encode_empty_goal(params);
    FormulaPtr fy = prod(y);
    FormulaPtr goal_form = encode_goal(y, params);  // ep -o fy
    ProofPtr assembly = detail::assemble_atoms(ep);
    Sequent concl;
    concl.lhs = ms_union(assembly->conclusion.lhs, cont->conclusion.lhs);
    if (!ms_remove_one(concl.lhs, fy))
      throw EncodingError("internal: continuation lacks the restored value");
    ms_insert(concl.lhs, goal_form);
    concl.rhs = cont->conclusion.rhs;
    ProofPtr closed =
        make_proof_f(std::move(concl), RuleId::LImp, Side::Lhs, goal_form,
                     {std::move(assembly), std::move(cont)});
    return std::make_pair(std::move(closed), goal_form);
  };

  ProofPtr proof =
      detail::build_proof_from_program(*program, s, prod, form, close_goal);
  Sequent expected = encode_sequent(s, params);
  if (!(proof->conclusion == expected))
    throw EncodingError("internal: transformed conclusion mismatch");
  CheckResult chk = check_proof(proof);
  if (!chk.ok)
    throw EncodingError("internal: transformed proof fails checking: " +
                        chk.message);
  return proof;
}

// ---------------------------------------------------------------------------
// Encoded derivation -> program
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void violate(const std::string& what, const ProofPtr& node) {
  throw RegularityViolation(what + " at: " + print_sequent(node->conclusion));
}

bool is_skip_rule(RuleId r) {
  return r == RuleId::LTensor || r == RuleId::WBang || r == RuleId::CBang ||
         r == RuleId::LBang || r == RuleId::LWith1 || r == RuleId::LWith2;
}

struct Extractor {
  const EncodingParams& params;

  const ProofPtr& skip_unary(const ProofPtr& node) const {
    const ProofPtr* cur = &node;
    while (is_skip_rule((*cur)->rule)) cur = &(*cur)->premises[0];
    return *cur;
  }

  // Removes one leading-literal occurrence; the remainder may be empty.
  std::vector<int> strip_leading(const SimpleProduct& with_p,
                                 const ProofPtr& node) const {
    std::vector<int> lits = with_p.lits;
    auto it = std::find(lits.begin(), lits.end(), params.p_index);
    if (it == lits.end())
      violate("encoded product lacks the leading literal", node);
    lits.erase(it);
    return lits;
  }

  void assert_balance(const ProofPtr& node) const {
    if (balance_check(node->conclusion, params.N) != BalanceStatus::Holds)
      violate("balance congruence fails at a branching point", node);
  }

  // Validates that `node` is a pure assembly (R*/I with the banged context
  // touched only by W!/C!) and returns the product of the value it proves.
  SimpleProduct decode_assembly(const ProofPtr& node) const {
    if (node->conclusion.rhs.size() != 1)
      violate("assembly with a non-singleton right-hand side", node);
    auto value = match_value(node->conclusion.rhs[0], params.N);
    if (!value) violate("assembly target is not a value formula", node);
    for (const auto& f : node->conclusion.lhs)
      if (match_encoded_formula(f, params.N))
        violate("unconsumed linear formula in an axiom situation", node);
    std::function<void(const ProofPtr&)> walk = [&](const ProofPtr& n) {
      switch (n->rule) {
        case RuleId::I:
        case RuleId::RTensor:
        case RuleId::WBang:
        case RuleId::CBang:
          break;
        default:
          violate("non-assembly rule in an axiom situation", n);
      }
      for (const auto& pr : n->premises) walk(pr);
    };
    walk(node);
    return *value;
  }

  VertexPtr leaf(const ProofPtr& node, const SimpleProduct& goal) const {
    SimpleProduct value = decode_assembly(node);
    if (strip_leading(value, node) != goal.lits)
      violate("axiom output differs from the expected target", node);
    return std::make_shared<ProgVertex>();
  }

  void attach_pops(const VertexPtr& v, const SimpleProduct& pop_value,
                   const VertexPtr& continuation) const {
    if (v->edges.empty()) {
      EdgeLabel label;
      label.op = EdgeLabel::Op::Pop;
      label.a = pop_value;
      label.b = pop_value;
      label.c = pop_value;
      v->edges.push_back(ProgEdge{std::move(label), copy_tree(continuation)});
      return;
    }
    for (const auto& e : v->edges) attach_pops(e.child, pop_value, continuation);
  }

  VertexPtr rec(const ProofPtr& node, const SimpleProduct& goal) const {
    const ProofPtr& n = skip_unary(node);
    if (n->rule == RuleId::I || n->rule == RuleId::RTensor)
      return leaf(n, goal);
    if (n->rule != RuleId::LImp)
      violate("unexpected rule during extraction", n);
    assert_balance(n);
    if (n->principal_side != Side::Lhs)
      violate("implication principal on the wrong side", n);
    FormulaPtr f = n->conclusion.lhs[static_cast<std::size_t>(n->principal_index)];
    auto m = match_encoded_formula(f, params.N);
    if (!m) violate("left implication on an unrecognized formula", n);

    switch (m->kind) {
      case NormKind::Horn: {
        std::vector<int> x = strip_leading(m->a, n);
        std::vector<int> y = strip_leading(m->b, n);
        if (x.empty())
          violate("goal-form implication outside an embedded step", n);
        if (!product_equiv(decode_assembly(skip_unary(n->premises[0])), m->a))
          violate("antecedent assembly proves the wrong value", n);
        auto v = std::make_shared<ProgVertex>();
        EdgeLabel label;
        label.op = EdgeLabel::Op::Horn;
        label.a = product_of_multiset(x);
        label.b = product_of_multiset(y);
        label.c = label.a;
        v->edges.push_back(ProgEdge{std::move(label), rec(n->premises[1], goal)});
        return v;
      }
      case NormKind::WithHorn:
        violate("alternative formula used without branch selection", n);
      case NormKind::PlusHorn: {
        std::vector<int> x = strip_leading(m->a, n);
        std::vector<int> y1 = strip_leading(m->b, n);
        std::vector<int> y2 = strip_leading(m->c, n);
        if (x.empty() || y1.empty() || y2.empty())
          violate("degenerate plus-branching formula", n);
        if (!product_equiv(decode_assembly(skip_unary(n->premises[0])), m->a))
          violate("antecedent assembly proves the wrong value", n);
        const ProofPtr& fork = skip_unary(n->premises[1]);
        if (fork->rule != RuleId::LPlus)
          violate("plus-branching step without a sum elimination", fork);
        assert_balance(fork);
        auto v = std::make_shared<ProgVertex>();
        EdgeLabel l1;
        l1.op = EdgeLabel::Op::Horn;
        l1.a = product_of_multiset(x);
        l1.b = product_of_multiset(y1);
        l1.c = l1.a;
        EdgeLabel l2;
        l2.op = EdgeLabel::Op::Horn;
        l2.a = l1.a;
        l2.b = product_of_multiset(y2);
        l2.c = l1.a;
        v->edges.push_back(
            ProgEdge{std::move(l1), rec(fork->premises[0], goal)});
        v->edges.push_back(
            ProgEdge{std::move(l2), rec(fork->premises[1], goal)});
        return v;
      }
      case NormKind::Embedded: {
        std::vector<int> u = strip_leading(m->a, n);
        std::vector<int> vlits = strip_leading(m->b, n);
        std::vector<int> y = strip_leading(m->d, n);
        if (!strip_leading(m->c, n).empty())
          violate("goal form with a non-trivial trigger", n);
        if (u.empty() || vlits.empty() || y.empty())
          violate("degenerate embedded implication", n);
        SimpleProduct pop_value = product_of_multiset(vlits);

        const ProofPtr& r = skip_unary(n->premises[0]);
        if (r->rule != RuleId::RImp)
          violate("embedded step without a right implication", r);
        // The suspended residue: the single-literal blocks in the segment
        // context, with the leading literal removed once.
        std::vector<int> x2_with_p;
        for (const auto& g : r->conclusion.lhs)
          if (auto q = match_encoded_literal(g, params.N))
            x2_with_p.push_back(*q);
        std::sort(x2_with_p.begin(), x2_with_p.end());
        std::vector<int> x2 =
            strip_leading(product_of_multiset(x2_with_p), r);
        if (x2.empty()) violate("empty residue under a push step", r);
        VertexPtr segment = rec(r->premises[0], pop_value);

        const ProofPtr& inner = skip_unary(n->premises[1]);
        if (inner->rule != RuleId::LImp || inner->principal_side != Side::Lhs)
          violate("embedded step without a goal-form elimination", inner);
        assert_balance(inner);
        FormulaPtr gf = inner->conclusion.lhs[static_cast<std::size_t>(
            inner->principal_index)];
        auto gm = match_encoded_formula(gf, params.N);
        if (!gm || gm->kind != NormKind::Horn ||
            !strip_leading(gm->a, inner).empty() ||
            strip_leading(gm->b, inner) != y)
          violate("goal-form elimination on the wrong formula", inner);
        if (!product_equiv(decode_assembly(skip_unary(inner->premises[0])),
                           gm->a))
          violate("trigger assembly proves the wrong value", inner);
        VertexPtr continuation = rec(inner->premises[1], goal);

        attach_pops(segment, pop_value, continuation);
        auto v = std::make_shared<ProgVertex>();
        EdgeLabel label;
        label.op = EdgeLabel::Op::Push;
        label.a = product_of_multiset(y);
        label.b = product_of_multiset(x2);
        label.c = product_of_multiset(u);
        v->edges.push_back(ProgEdge{std::move(label), std::move(segment)});
        return v;
      }
    }
    violate("unreachable extraction case", n);
  }
};

}  // namespace

Program extract_program(const ProofPtr& d, const NormalizedSequent& s,
                        const EncodingParams& params) {
  CheckResult res = check_proof(d);
  if (!res.ok)
    throw std::invalid_argument("input proof fails checking: " + res.message);
  if (params.target != Target::BotOnly)
    throw std::invalid_argument(
        "program extraction operates on the bot-only encoding");
  Sequent expected = encode_sequent(s, params);
  if (!(d->conclusion == expected))
    throw std::invalid_argument(
        "proof does not conclude the encoded form of the given sequent");
  Extractor ex{params};
  Program p = Program::create(ex.rec(d, s.Z));
  if (!check_strong_solution(p, s))
    throw RegularityViolation(
        "extracted program is not a strong solution of the source sequent");
  return p;
}

// ---------------------------------------------------------------------------
// Fairness
// ---------------------------------------------------------------------------

FairnessReport fairness_check(const NormalizedSequent& s,
                              const EncodingParams& base,
                              const SearchBudget& budget,
                              const EnumBounds& bounds) {
  FairnessReport report;
  SearchResult ra = prove(s.to_sequent(), budget);
  report.source.status = ra.status;

  auto run_encoded = [&](Target t) {
    FairnessEntry entry;
    EncodingParams p = base;
    p.target = t;
    try {
      Sequent enc = encode_sequent(s, p);
      SearchBudget b = budget;
      if (t == Target::BotOnly) b.modulus_N = p.N;
      entry.status = prove(enc, b).status;
    } catch (const EncodingError& ex) {
      entry.status = SearchStatus::BudgetExhausted;
      report.notes.push_back(std::string(target_name(t)) +
                             " encoding failed: " + ex.what());
    }
    return entry;
  };

  report.one_literal = run_encoded(Target::OneLiteral);
  report.bot_only = run_encoded(Target::BotOnly);
  report.unit_only = run_encoded(Target::UnitOnly);

  if (report.bot_only.status != SearchStatus::Proved &&
      ra.status == SearchStatus::Proved && ra.proof) {
    EncodingParams p = base;
    p.target = Target::BotOnly;
    try {
      ProofPtr witness = ttobot_transform(ra.proof, p, bounds);
      (void)witness;
      report.bot_only.status = SearchStatus::Proved;
      report.bot_only.via_witness = true;
      report.notes.push_back(
          "bot-only entry proved via a constructed derivation");
    } catch (const std::exception& ex) {
      report.notes.push_back(std::string("witness construction failed: ") +
                             ex.what());
    }
  }

  bool proved = false;
  bool refuted = false;
  for (const FairnessEntry* e :
       {&report.source, &report.one_literal, &report.bot_only,
        &report.unit_only}) {
    if (e->status == SearchStatus::Proved) proved = true;
    if (e->status == SearchStatus::Refuted) refuted = true;
  }
  report.violation = proved && refuted;
  if (report.violation)
    report.notes.push_back(
        "FAIRNESS VIOLATION: decided entries disagree across variants");
  return report;
}

}  // namespace ll
