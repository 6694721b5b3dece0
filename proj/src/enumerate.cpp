#include "ll/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_set>

namespace ll {

namespace {

struct Suspended {
  std::vector<int> product;  // restored when the matching pop fires
  SimpleProduct required;    // value the pop must observe
};

struct Searcher {
  const NormalizedSequent& s;
  EnumBounds bounds;
  std::unordered_set<std::string> failed;

  std::string key(const std::vector<int>& out,
                  const std::vector<Suspended>& stack,
                  const std::vector<char>& used, int edges_left,
                  int pushes_left) const {
    std::ostringstream k;
    for (int q : out) k << q << ",";
    k << "|";
    for (const auto& su : stack) {
      for (int q : su.product) k << q << ",";
      k << ";";
      for (int q : su.required.lits) k << q << ",";
      k << "|";
    }
    for (char u : used) k << int(u);
    k << "|" << edges_left << "|" << pushes_left;
    return k.str();
  }

  // Distinct non-empty proper sub-multisets of `out`.
  std::vector<std::vector<int>> proper_subsets(
      const std::vector<int>& out) const {
    std::set<std::vector<int>> seen;
    std::size_t n = out.size();
    if (n == 0 || n > 16) return {};
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
      std::vector<int> sub;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) sub.push_back(out[i]);
      seen.insert(std::move(sub));
    }
    return {seen.begin(), seen.end()};
  }

  std::optional<VertexPtr> rec(const std::vector<int>& out,
                               const std::vector<Suspended>& stack,
                               const std::vector<char>& used, int edges_left,
                               int pushes_left) {
    if (stack.empty() && out == s.Z.lits &&
        std::all_of(used.begin(), used.end(), [](char u) { return u != 0; }))
      return std::make_shared<ProgVertex>();
    if (edges_left <= 0) return std::nullopt;
    std::string k = key(out, stack, used, edges_left, pushes_left);
    if (failed.count(k)) return std::nullopt;

    auto leaf_edge = [&](EdgeLabel label, const std::vector<int>& next_out,
                         const std::vector<Suspended>& next_stack,
                         const std::vector<char>& next_used)
        -> std::optional<VertexPtr> {
      auto child = rec(next_out, next_stack, next_used, edges_left - 1,
                       label.op == EdgeLabel::Op::Push ? pushes_left - 1
                                                       : pushes_left);
      if (!child) return std::nullopt;
      auto v = std::make_shared<ProgVertex>();
      v->edges.push_back(ProgEdge{std::move(label), std::move(*child)});
      return v;
    };

    auto try_horn = [&](const SimpleProduct& x, const SimpleProduct& y,
                        const std::vector<char>& next_used)
        -> std::optional<VertexPtr> {
      if (!std::includes(out.begin(), out.end(), x.lits.begin(),
                         x.lits.end()))
        return std::nullopt;
      std::vector<int> next =
          multiset_plus(multiset_minus(out, x.lits), y.lits);
      EdgeLabel label;
      label.op = EdgeLabel::Op::Horn;
      label.a = x;
      label.b = y;
      label.c = x;
      return leaf_edge(std::move(label), next, stack, next_used);
    };

    auto try_formula = [&](const NormalizedFormula& f,
                           const std::vector<char>& next_used)
        -> std::optional<VertexPtr> {
      switch (f.kind) {
        case NormKind::Horn:
          return try_horn(f.a, f.b, next_used);
        case NormKind::WithHorn: {
          if (auto v = try_horn(f.a, f.b, next_used)) return v;
          return try_horn(f.c, f.d, next_used);
        }
        case NormKind::PlusHorn: {
          if (!std::includes(out.begin(), out.end(), f.a.lits.begin(),
                             f.a.lits.end()))
            return std::nullopt;
          std::vector<int> rest = multiset_minus(out, f.a.lits);
          std::vector<int> out1 = multiset_plus(rest, f.b.lits);
          std::vector<int> out2 = multiset_plus(rest, f.c.lits);
          for (int b0 = 0; b0 <= edges_left - 2; ++b0) {
            auto c1 = rec(out1, stack, next_used, b0, pushes_left);
            if (!c1) continue;
            auto c2 = rec(out2, stack, next_used, edges_left - 2 - b0,
                          pushes_left);
            if (!c2) continue;
            auto v = std::make_shared<ProgVertex>();
            EdgeLabel l1{EdgeLabel::Op::Horn, f.a, f.b, f.a};
            EdgeLabel l2{EdgeLabel::Op::Horn, f.a, f.c, f.a};
            v->edges.push_back(ProgEdge{std::move(l1), std::move(*c1)});
            v->edges.push_back(ProgEdge{std::move(l2), std::move(*c2)});
            return v;
          }
          return std::nullopt;
        }
        case NormKind::Embedded: {
          if (pushes_left <= 0) return std::nullopt;
          // f = (U -o V) -o Y: suspend (rest (*) Y), continue with
          // (X2 (*) U), pop when the output reaches V.
          for (const auto& x2 : proper_subsets(out)) {
            std::vector<int> x1 = multiset_minus(out, x2);
            std::vector<Suspended> next_stack = stack;
            next_stack.push_back(
                Suspended{multiset_plus(x1, f.c.lits), f.b});
            EdgeLabel label;
            label.op = EdgeLabel::Op::Push;
            label.a = f.c;
            label.b = product_of_multiset(x2);
            label.c = f.a;
            if (auto v = leaf_edge(std::move(label),
                                   multiset_plus(x2, f.a.lits), next_stack,
                                   next_used))
              return v;
          }
          return std::nullopt;
        }
      }
      return std::nullopt;
    };

    // Pop: allowed whenever the output matches the suspended requirement.
    if (!stack.empty() && out == stack.back().required.lits) {
      std::vector<Suspended> next_stack = stack;
      std::vector<int> next_out = next_stack.back().product;
      next_stack.pop_back();
      EdgeLabel label;
      label.op = EdgeLabel::Op::Pop;
      label.a = product_of_multiset(out);
      label.b = label.a;
      label.c = label.a;
      if (auto v = leaf_edge(std::move(label), next_out, next_stack, used))
        return v;
    }

    for (int i = 0; i < static_cast<int>(s.delta.size()); ++i) {
      if (used[i]) continue;
      std::vector<char> next_used = used;
      next_used[i] = 1;
      if (auto v = try_formula(s.delta[i], next_used)) return v;
    }
    for (const auto& g : s.gamma)
      if (auto v = try_formula(g, used)) return v;

    failed.insert(std::move(k));
    return std::nullopt;
  }
};

}  // namespace

std::optional<Program> find_strong_solution(const NormalizedSequent& s,
                                            const EnumBounds& bounds) {
  Searcher search{s, bounds, {}};
  auto root = search.rec(s.W.lits, {}, std::vector<char>(s.delta.size(), 0),
                         bounds.max_edges, bounds.max_push_pairs);
  if (!root) return std::nullopt;
  Program p = Program::create(std::move(*root));
  if (!check_strong_solution(p, s))
    throw ProgramError("internal error: searched program fails validation");
  return p;
}

}  // namespace ll
