#include "ll/proof.hpp"

#include <sstream>

#include "sexpr.hpp"

namespace ll {

namespace {

struct RuleNameEntry {
  RuleId id;
  const char* name;
};

constexpr RuleNameEntry kRuleNames[] = {
    {RuleId::I, "I"},          {RuleId::LImp, "L-o"},
    {RuleId::RImp, "R-o"},     {RuleId::LTensor, "L*"},
    {RuleId::RTensor, "R*"},   {RuleId::LPar, "L@"},
    {RuleId::RPar, "R@"},      {RuleId::LPlus, "L+"},
    {RuleId::RPlus1, "R+1"},   {RuleId::RPlus2, "R+2"},
    {RuleId::LWith1, "L&1"},   {RuleId::LWith2, "L&2"},
    {RuleId::RWith, "R&"},     {RuleId::LBang, "L!"},
    {RuleId::RBang, "R!"},     {RuleId::WBang, "W!"},
    {RuleId::CBang, "C!"},     {RuleId::LBot, "Lbot"},
    {RuleId::RBot, "Rbot"},    {RuleId::LOne, "L1"},
    {RuleId::ROne, "R1"},
};

}  // namespace

const char* rule_name(RuleId r) {
  for (const auto& e : kRuleNames)
    if (e.id == r) return e.name;
  return "?";
}

std::optional<RuleId> rule_from_name(const std::string& name) {
  for (const auto& e : kRuleNames)
    if (name == e.name) return e.id;
  return std::nullopt;
}

ProofPtr make_proof(Sequent conclusion, RuleId rule, Side side, int index,
                    std::vector<ProofPtr> premises) {
  auto p = std::make_shared<Proof>();
  p->conclusion = std::move(conclusion);
  p->rule = rule;
  p->principal_side = side;
  p->principal_index = index;
  p->premises = std::move(premises);
  return p;
}

ProofPtr make_proof_f(Sequent conclusion, RuleId rule, Side side,
                      const FormulaPtr& principal,
                      std::vector<ProofPtr> premises) {
  const FormulaMultiset& ms =
      side == Side::Lhs ? conclusion.lhs : conclusion.rhs;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (equal(ms[i], principal))
      return make_proof(std::move(conclusion), rule, side, static_cast<int>(i),
                        std::move(premises));
  }
  throw std::logic_error("principal formula not present in conclusion: " +
                         print_formula(principal));
}

namespace {

struct Checker {
  CheckResult result;

  void fail(const Proof& node, const std::string& path,
            const std::string& msg) {
    result.ok = false;
    result.message = msg + " [rule " + rule_name(node.rule) + ", sequent '" +
                     print_sequent(node.conclusion) + "']";
    result.node_path = path;
    result.rule = node.rule;
  }

  // Retrieves the principal formula, or reports failure.
  const FormulaPtr* principal(const Proof& node, const std::string& path) {
    const FormulaMultiset& ms = node.principal_side == Side::Lhs
                                    ? node.conclusion.lhs
                                    : node.conclusion.rhs;
    if (node.principal_index < 0 ||
        static_cast<std::size_t>(node.principal_index) >= ms.size()) {
      fail(node, path, "principal index out of range");
      return nullptr;
    }
    return &ms[node.principal_index];
  }

  bool expect_premises(const Proof& node, const std::string& path,
                       std::size_t n) {
    if (node.premises.size() != n) {
      fail(node, path,
           "expected " + std::to_string(n) + " premises, found " +
               std::to_string(node.premises.size()));
      return false;
    }
    for (const auto& p : node.premises)
      if (!p) {
        fail(node, path, "null premise");
        return false;
      }
    return true;
  }

  bool expect_kind(const Proof& node, const std::string& path,
                   const FormulaPtr& f, Kind k, const char* what) {
    if (f->kind != k) {
      fail(node, path,
           std::string("principal formula is not ") + what + ": " +
               print_formula(f));
      return false;
    }
    return true;
  }

  bool same(const Proof& node, const std::string& path, const Sequent& want,
            const Sequent& got, const char* which) {
    if (!(want == got)) {
      fail(node, path,
           std::string(which) + " premise mismatch: expected '" +
               print_sequent(want) + "', found '" + print_sequent(got) + "'");
      return false;
    }
    return true;
  }

  void check(const Proof& node, const std::string& path) {
    if (!result.ok) return;
    const Sequent& c = node.conclusion;
    switch (node.rule) {
      case RuleId::I: {
        if (!expect_premises(node, path, 0)) return;
        if (c.lhs.size() != 1 || c.rhs.size() != 1 ||
            !equal(c.lhs[0], c.rhs[0]))
          fail(node, path, "axiom requires A |- A");
        return;
      }
      case RuleId::LBot: {
        if (!expect_premises(node, path, 0)) return;
        if (c.lhs.size() != 1 || c.lhs[0]->kind != Kind::Bottom ||
            !c.rhs.empty())
          fail(node, path, "axiom requires bot |-");
        return;
      }
      case RuleId::ROne: {
        if (!expect_premises(node, path, 0)) return;
        if (!c.lhs.empty() || c.rhs.size() != 1 || c.rhs[0]->kind != Kind::One)
          fail(node, path, "axiom requires |- 1");
        return;
      }
      default:
        break;
    }

    const FormulaPtr* pf = principal(node, path);
    if (!pf) return;
    const FormulaPtr& f = *pf;

    auto without_principal = [&](Side s) {
      Sequent out = c;
      FormulaMultiset& ms = s == Side::Lhs ? out.lhs : out.rhs;
      ms.erase(ms.begin() + node.principal_index);
      return out;
    };

    switch (node.rule) {
      case RuleId::RImp: {
        if (node.principal_side != Side::Rhs)
          return fail(node, path, "R-o principal must be on the right");
        if (!expect_kind(node, path, f, Kind::Lollipop, "an implication"))
          return;
        if (!expect_premises(node, path, 1)) return;
        Sequent want = without_principal(Side::Rhs);
        ms_insert(want.lhs, f->left);
        ms_insert(want.rhs, f->right);
        same(node, path, want, node.premises[0]->conclusion, "R-o");
        return;
      }
      case RuleId::LTensor: {
        if (node.principal_side != Side::Lhs)
          return fail(node, path, "L* principal must be on the left");
        if (!expect_kind(node, path, f, Kind::Tensor, "a tensor")) return;
        if (!expect_premises(node, path, 1)) return;
        Sequent want = without_principal(Side::Lhs);
        ms_insert(want.lhs, f->left);
        ms_insert(want.lhs, f->right);
        same(node, path, want, node.premises[0]->conclusion, "L*");
        return;
      }
      case RuleId::RPar: {
        if (node.principal_side != Side::Rhs)
          return fail(node, path, "R@ principal must be on the right");
        if (!expect_kind(node, path, f, Kind::Par, "a par")) return;
        if (!expect_premises(node, path, 1)) return;
        Sequent want = without_principal(Side::Rhs);
        ms_insert(want.rhs, f->left);
        ms_insert(want.rhs, f->right);
        same(node, path, want, node.premises[0]->conclusion, "R@");
        return;
      }
      case RuleId::RPlus1:
      case RuleId::RPlus2: {
        if (node.principal_side != Side::Rhs)
          return fail(node, path, "R+ principal must be on the right");
        if (!expect_kind(node, path, f, Kind::Plus, "a plus")) return;
        if (!expect_premises(node, path, 1)) return;
        Sequent want = without_principal(Side::Rhs);
        ms_insert(want.rhs, node.rule == RuleId::RPlus1 ? f->left : f->right);
        same(node, path, want, node.premises[0]->conclusion, "R+");
        return;
      }
      case RuleId::LWith1:
      case RuleId::LWith2: {
        if (node.principal_side != Side::Lhs)
          return fail(node, path, "L& principal must be on the left");
        if (!expect_kind(node, path, f, Kind::With, "a with")) return;
        if (!expect_premises(node, path, 1)) return;
        Sequent want = without_principal(Side::Lhs);
        ms_insert(want.lhs, node.rule == RuleId::LWith1 ? f->left : f->right);
        same(node, path, want, node.premises[0]->conclusion, "L&");
        return;
      }
      case RuleId::LBang: {
        if (node.principal_side != Side::Lhs)
          return fail(node, path, "L! principal must be on the left");
        if (!expect_kind(node, path, f, Kind::Bang, "a bang")) return;
        if (!expect_premises(node, path, 1)) return;
        Sequent want = without_principal(Side::Lhs);
        ms_insert(want.lhs, f->left);
        same(node, path, want, node.premises[0]->conclusion, "L!");
        return;
      }
      case RuleId::WBang: {
        if (node.principal_side != Side::Lhs)
          return fail(node, path, "W! principal must be on the left");
        if (!expect_kind(node, path, f, Kind::Bang, "a bang")) return;
        if (!expect_premises(node, path, 1)) return;
        Sequent want = without_principal(Side::Lhs);
        same(node, path, want, node.premises[0]->conclusion, "W!");
        return;
      }
      case RuleId::CBang: {
        if (node.principal_side != Side::Lhs)
          return fail(node, path, "C! principal must be on the left");
        if (!expect_kind(node, path, f, Kind::Bang, "a bang")) return;
        if (!expect_premises(node, path, 1)) return;
        Sequent want = c;
        ms_insert(want.lhs, f);
        same(node, path, want, node.premises[0]->conclusion, "C!");
        return;
      }
      case RuleId::RBang: {
        if (node.principal_side != Side::Rhs)
          return fail(node, path, "R! principal must be on the right");
        if (!expect_kind(node, path, f, Kind::Bang, "a bang")) return;
        if (c.rhs.size() != 1)
          return fail(node, path, "R! requires a single right formula");
        for (const auto& g : c.lhs)
          if (g->kind != Kind::Bang)
            return fail(node, path,
                        "R! requires every left formula to be !-prefixed");
        if (!expect_premises(node, path, 1)) return;
        Sequent want;
        want.lhs = c.lhs;
        want.rhs.push_back(f->left);
        same(node, path, want, node.premises[0]->conclusion, "R!");
        return;
      }
      case RuleId::LOne: {
        if (node.principal_side != Side::Lhs)
          return fail(node, path, "L1 principal must be on the left");
        if (!expect_kind(node, path, f, Kind::One, "the constant 1")) return;
        if (!expect_premises(node, path, 1)) return;
        Sequent want = without_principal(Side::Lhs);
        same(node, path, want, node.premises[0]->conclusion, "L1");
        return;
      }
      case RuleId::RBot: {
        if (node.principal_side != Side::Rhs)
          return fail(node, path, "Rbot principal must be on the right");
        if (!expect_kind(node, path, f, Kind::Bottom, "the constant bot"))
          return;
        if (!expect_premises(node, path, 1)) return;
        Sequent want = without_principal(Side::Rhs);
        same(node, path, want, node.premises[0]->conclusion, "Rbot");
        return;
      }
      case RuleId::LImp: {
        if (node.principal_side != Side::Lhs)
          return fail(node, path, "L-o principal must be on the left");
        if (!expect_kind(node, path, f, Kind::Lollipop, "an implication"))
          return;
        if (!expect_premises(node, path, 2)) return;
        const Sequent& p1 = node.premises[0]->conclusion;
        const Sequent& p2 = node.premises[1]->conclusion;
        FormulaMultiset p1rhs = p1.rhs;
        if (!ms_remove_one(p1rhs, f->left))
          return fail(node, path,
                      "L-o: antecedent missing from first premise rhs");
        FormulaMultiset p2lhs = p2.lhs;
        if (!ms_remove_one(p2lhs, f->right))
          return fail(node, path,
                      "L-o: consequent missing from second premise lhs");
        Sequent combined;
        combined.lhs = ms_union(p1.lhs, p2lhs);
        ms_insert(combined.lhs, f);
        combined.rhs = ms_union(p1rhs, p2.rhs);
        same(node, path, c, combined, "L-o context");
        return;
      }
      case RuleId::RTensor: {
        if (node.principal_side != Side::Rhs)
          return fail(node, path, "R* principal must be on the right");
        if (!expect_kind(node, path, f, Kind::Tensor, "a tensor")) return;
        if (!expect_premises(node, path, 2)) return;
        const Sequent& p1 = node.premises[0]->conclusion;
        const Sequent& p2 = node.premises[1]->conclusion;
        FormulaMultiset p1rhs = p1.rhs;
        if (!ms_remove_one(p1rhs, f->left))
          return fail(node, path,
                      "R*: left factor missing from first premise rhs");
        FormulaMultiset p2rhs = p2.rhs;
        if (!ms_remove_one(p2rhs, f->right))
          return fail(node, path,
                      "R*: right factor missing from second premise rhs");
        Sequent combined;
        combined.lhs = ms_union(p1.lhs, p2.lhs);
        combined.rhs = ms_union(p1rhs, p2rhs);
        ms_insert(combined.rhs, f);
        same(node, path, c, combined, "R* context");
        return;
      }
      case RuleId::LPar: {
        if (node.principal_side != Side::Lhs)
          return fail(node, path, "L@ principal must be on the left");
        if (!expect_kind(node, path, f, Kind::Par, "a par")) return;
        if (!expect_premises(node, path, 2)) return;
        const Sequent& p1 = node.premises[0]->conclusion;
        const Sequent& p2 = node.premises[1]->conclusion;
        FormulaMultiset p1lhs = p1.lhs;
        if (!ms_remove_one(p1lhs, f->left))
          return fail(node, path,
                      "L@: left factor missing from first premise lhs");
        FormulaMultiset p2lhs = p2.lhs;
        if (!ms_remove_one(p2lhs, f->right))
          return fail(node, path,
                      "L@: right factor missing from second premise lhs");
        Sequent combined;
        combined.lhs = ms_union(p1lhs, p2lhs);
        ms_insert(combined.lhs, f);
        combined.rhs = ms_union(p1.rhs, p2.rhs);
        same(node, path, c, combined, "L@ context");
        return;
      }
      case RuleId::LPlus: {
        if (node.principal_side != Side::Lhs)
          return fail(node, path, "L+ principal must be on the left");
        if (!expect_kind(node, path, f, Kind::Plus, "a plus")) return;
        if (!expect_premises(node, path, 2)) return;
        Sequent base = without_principal(Side::Lhs);
        Sequent want1 = base;
        ms_insert(want1.lhs, f->left);
        if (!same(node, path, want1, node.premises[0]->conclusion, "L+ first"))
          return;
        Sequent want2 = base;
        ms_insert(want2.lhs, f->right);
        same(node, path, want2, node.premises[1]->conclusion, "L+ second");
        return;
      }
      case RuleId::RWith: {
        if (node.principal_side != Side::Rhs)
          return fail(node, path, "R& principal must be on the right");
        if (!expect_kind(node, path, f, Kind::With, "a with")) return;
        if (!expect_premises(node, path, 2)) return;
        Sequent base = without_principal(Side::Rhs);
        Sequent want1 = base;
        ms_insert(want1.rhs, f->left);
        if (!same(node, path, want1, node.premises[0]->conclusion, "R& first"))
          return;
        Sequent want2 = base;
        ms_insert(want2.rhs, f->right);
        same(node, path, want2, node.premises[1]->conclusion, "R& second");
        return;
      }
      default:
        fail(node, path, "unknown rule");
        return;
    }
  }

  void walk(const ProofPtr& node, const std::string& path) {
    if (!result.ok) return;
    check(*node, path);
    if (!result.ok) return;
    for (std::size_t i = 0; i < node->premises.size(); ++i)
      walk(node->premises[i],
           path.empty() ? std::to_string(i) : path + "." + std::to_string(i));
  }
};

}  // namespace

CheckResult check_proof(const ProofPtr& proof) {
  Checker ck;
  if (!proof) {
    ck.result.ok = false;
    ck.result.message = "null proof";
    return ck.result;
  }
  ck.walk(proof, "");
  return ck.result;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

void emit(const ProofPtr& node, std::ostringstream& out, int indent) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  out << pad << "(rule " << rule_name(node->rule) << " (seq "
      << sexpr::quote(print_sequent(node->conclusion)) << ") (principal "
      << (node->principal_side == Side::Lhs ? "lhs" : "rhs") << " "
      << node->principal_index << ")";
  for (const auto& p : node->premises) {
    out << "\n";
    emit(p, out, indent + 1);
  }
  out << ")";
}

ProofPtr from_sexpr(const sexpr::Node& n) {
  if (n.is_atom || n.items.size() < 4 || !n.items[0].is_atom ||
      n.items[0].atom != "rule")
    throw ParseError("expected (rule ...)", 0);
  if (!n.items[1].is_atom) throw ParseError("expected rule name", 0);
  auto rule = rule_from_name(n.items[1].atom);
  if (!rule) throw ParseError("unknown rule name '" + n.items[1].atom + "'", 0);
  const auto& seq = n.items[2];
  if (seq.is_atom || seq.items.size() != 2 || seq.items[0].atom != "seq" ||
      !seq.items[1].is_atom)
    throw ParseError("expected (seq \"...\")", 0);
  Sequent conclusion = parse_sequent(seq.items[1].atom);
  const auto& prin = n.items[3];
  if (prin.is_atom || prin.items.size() != 3 || prin.items[0].atom != "principal" ||
      !prin.items[1].is_atom || !prin.items[2].is_atom)
    throw ParseError("expected (principal <side> <index>)", 0);
  Side side;
  if (prin.items[1].atom == "lhs")
    side = Side::Lhs;
  else if (prin.items[1].atom == "rhs")
    side = Side::Rhs;
  else
    throw ParseError("principal side must be lhs or rhs", 0);
  int index = std::stoi(prin.items[2].atom);
  std::vector<ProofPtr> premises;
  for (std::size_t i = 4; i < n.items.size(); ++i)
    premises.push_back(from_sexpr(n.items[i]));
  return make_proof(std::move(conclusion), *rule, side, index,
                    std::move(premises));
}

}  // namespace

std::string proof_to_sexpr(const ProofPtr& proof) {
  std::ostringstream out;
  emit(proof, out, 0);
  out << "\n";
  return out.str();
}

ProofPtr parse_proof_sexpr(const std::string& text) {
  return from_sexpr(sexpr::parse(text));
}

std::size_t proof_size(const ProofPtr& proof) {
  std::size_t n = 1;
  for (const auto& p : proof->premises) n += proof_size(p);
  return n;
}

std::size_t proof_height(const ProofPtr& proof) {
  std::size_t h = 0;
  for (const auto& p : proof->premises) h = std::max(h, proof_height(p));
  return h + 1;
}

}  // namespace ll
