#include "ll/prover.hpp"

#include <climits>
#include <map>
#include <mutex>
#include <unordered_map>

#include "ll/balance.hpp"

namespace ll {

const char* search_status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Proved:
      return "Proved";
    case SearchStatus::Refuted:
      return "Refuted";
    case SearchStatus::BudgetExhausted:
      return "BudgetExhausted";
  }
  return "?";
}

namespace {

struct ProvedEntry {
  ProofPtr proof;
  int height;
};

// A search state is a sequent plus the contraction ledger: how many times
// each banged formula has been duplicated on the current branch.  Every move
// either strictly shrinks the sequent or strictly increases the (bounded)
// ledger, so the state graph is acyclic and failures can be memoized without
// any loop-dependency bookkeeping.
struct StateKey {
  Sequent s;
  std::string ledger;
  bool operator==(const StateKey& other) const {
    return ledger == other.ledger && s == other.s;
  }
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const {
    return k.s.hash() * 1315423911u ^ std::hash<std::string>()(k.ledger);
  }
};

// Absolute results survive across calls.  Entries are only reusable within
// the same pruning configuration and contraction allowance, so caches are
// keyed by (pruning, N, contraction budget).
struct Cache {
  std::unordered_map<Sequent, ProvedEntry, SequentHash> proved;
  // Sequents killed by invariant pruning are refuted in any state.
  std::unordered_map<Sequent, char, SequentHash> pruned;
  // Exhaustive failures under the contraction ledger at hand.
  std::unordered_map<StateKey, char, StateKeyHash> refuted;
  // "no proof found with this much depth left" for depth-limited failures.
  std::unordered_map<StateKey, int, StateKeyHash> failed_at;
};

std::mutex g_cache_mu;
std::map<std::tuple<bool, int, int>, Cache>& caches() {
  static std::map<std::tuple<bool, int, int>, Cache> c;
  return c;
}

struct Outcome {
  ProofPtr proof;
  bool budget_hit = false;
};

bool contains_bang(const FormulaPtr& f) {
  if (f->kind == Kind::Bang) return true;
  if (f->left && contains_bang(f->left)) return true;
  return f->right && contains_bang(f->right);
}

using Grouped = std::vector<std::pair<FormulaPtr, int>>;

Grouped group(const FormulaMultiset& ms, int skip_index) {
  Grouped out;
  for (int i = 0; i < static_cast<int>(ms.size()); ++i) {
    if (i == skip_index) continue;
    if (!out.empty() && equal(out.back().first, ms[i]))
      ++out.back().second;
    else
      out.emplace_back(ms[i], 1);
  }
  return out;
}

bool odometer_next(std::vector<int>& counts, const Grouped& g) {
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < g[i].second) {
      ++counts[i];
      for (std::size_t j = 0; j < i; ++j) counts[j] = 0;
      return true;
    }
  }
  return false;
}

FormulaMultiset take(const Grouped& g, const std::vector<int>& counts,
                     bool complement) {
  FormulaMultiset out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    int n = complement ? g[i].second - counts[i] : counts[i];
    for (int k = 0; k < n; ++k) out.push_back(g[i].first);
  }
  return out;  // already sorted: groups preserve order
}

struct Searcher {
  SearchBudget budget;
  bool pruning;
  Cache& cache;
  // Contractions spent on the current branch, per banged formula.
  std::map<FormulaPtr, int, bool (*)(const FormulaPtr&, const FormulaPtr&)>
      contractions{formula_less};

  Searcher(const SearchBudget& b, Cache& c)
      : budget(b),
        pruning(b.balance_pruning && b.modulus_N > 0),
        cache(c) {}

  std::string ledger_sig() const {
    std::string sig;
    for (const auto& [f, n] : contractions) {
      if (n == 0) continue;
      sig += print_formula(f);
      sig += ':';
      sig += static_cast<char>('0' + n);
      sig += ';';
    }
    return sig;
  }

  Outcome search(const Sequent& s, int remaining) {
    if (pruning &&
        balance_check(s, budget.modulus_N) == BalanceStatus::Violated) {
      cache.pruned.emplace(s, 1);
      return {};
    }
    if (auto it = cache.proved.find(s); it != cache.proved.end()) {
      if (it->second.height <= remaining) return {it->second.proof};
    }
    if (cache.pruned.count(s)) return {};
    StateKey key{s, ledger_sig()};
    if (cache.refuted.count(key)) return {};
    if (auto it = cache.failed_at.find(key);
        it != cache.failed_at.end() && it->second >= remaining) {
      Outcome o;
      o.budget_hit = true;
      return o;
    }
    if (remaining <= 0) {
      Outcome o;
      o.budget_hit = true;
      return o;
    }

    Outcome result;
    ProofPtr found = expand(s, remaining, result);
    if (found) {
      Outcome o;
      o.proof = found;
      cache.proved[s] = {found, static_cast<int>(proof_height(found))};
      return o;
    }
    if (!result.budget_hit) {
      cache.refuted.emplace(std::move(key), 1);
    } else {
      int& best = cache.failed_at[std::move(key)];
      best = std::max(best, remaining);
    }
    return result;
  }

  // Tries every move in canonical order; returns the first proof found and
  // accumulates budget bookkeeping into `acc`.
  ProofPtr expand(const Sequent& s, int remaining, Outcome& acc) {
    // -- class 1: axioms ----------------------------------------------------
    if (s.lhs.size() == 1 && s.rhs.size() == 1 && equal(s.lhs[0], s.rhs[0]))
      return make_proof(s, RuleId::I, Side::Lhs, 0, {});
    if (s.lhs.size() == 1 && s.lhs[0]->kind == Kind::Bottom && s.rhs.empty())
      return make_proof(s, RuleId::LBot, Side::Lhs, 0, {});
    if (s.lhs.empty() && s.rhs.size() == 1 && s.rhs[0]->kind == Kind::One)
      return make_proof(s, RuleId::ROne, Side::Rhs, 0, {});

    auto attempt = [&](RuleId rule, Side side, int idx,
                       std::vector<Sequent> premises) -> ProofPtr {
      std::vector<ProofPtr> sub;
      sub.reserve(premises.size());
      for (const auto& prem : premises) {
        Outcome o = search(prem, remaining - 1);
        acc.budget_hit |= o.budget_hit;
        if (!o.proof) return nullptr;
        sub.push_back(o.proof);
      }
      return make_proof(s, rule, side, idx, std::move(sub));
    };

    // -- class 2: single-premise, non-branching -----------------------------
    for (int i = 0; i < static_cast<int>(s.lhs.size()); ++i) {
      if (i > 0 && equal(s.lhs[i], s.lhs[i - 1])) continue;
      const FormulaPtr& f = s.lhs[i];
      Sequent base = s;
      base.lhs.erase(base.lhs.begin() + i);
      switch (f->kind) {
        case Kind::Tensor: {
          Sequent prem = base;
          ms_insert(prem.lhs, f->left);
          ms_insert(prem.lhs, f->right);
          if (auto p = attempt(RuleId::LTensor, Side::Lhs, i, {prem})) return p;
          break;
        }
        case Kind::With: {
          Sequent prem1 = base;
          ms_insert(prem1.lhs, f->left);
          if (auto p = attempt(RuleId::LWith1, Side::Lhs, i, {prem1})) return p;
          Sequent prem2 = base;
          ms_insert(prem2.lhs, f->right);
          if (auto p = attempt(RuleId::LWith2, Side::Lhs, i, {prem2})) return p;
          break;
        }
        case Kind::Bang: {
          Sequent open = base;
          ms_insert(open.lhs, f->left);
          if (auto p = attempt(RuleId::LBang, Side::Lhs, i, {open})) return p;
          if (auto p = attempt(RuleId::WBang, Side::Lhs, i, {base})) return p;
          int& used = contractions[f];
          if (used < budget.max_contractions_per_bang) {
            // Copy-and-open: contract and immediately dereliction one copy.
            // Emitting the two rules together keeps every move either
            // shrinking the sequent or spending contraction budget, which is
            // what makes the search graph acyclic.
            Sequent opened = s;
            ms_insert(opened.lhs, f->left);
            ++used;
            Outcome o = search(opened, remaining - 2);
            --used;
            acc.budget_hit |= o.budget_hit;
            if (o.proof) {
              Sequent dup = s;
              ms_insert(dup.lhs, f);
              auto at = std::lower_bound(dup.lhs.begin(), dup.lhs.end(), f,
                                         formula_less);
              int bang_idx = static_cast<int>(at - dup.lhs.begin());
              ProofPtr opened_step = make_proof(dup, RuleId::LBang, Side::Lhs,
                                                bang_idx, {o.proof});
              return make_proof(s, RuleId::CBang, Side::Lhs, i, {opened_step});
            }
            // A bare contraction is only ever needed to ferry extra banged
            // copies across a promotion, so it is offered just when the goal
            // side still mentions a bang.
            bool rhs_bang = false;
            for (const auto& g : s.rhs)
              if (contains_bang(g)) {
                rhs_bang = true;
                break;
              }
            if (rhs_bang) {
              Sequent dup = s;
              ms_insert(dup.lhs, f);
              ++used;
              ProofPtr p = attempt(RuleId::CBang, Side::Lhs, i, {dup});
              --used;
              if (p) return p;
            }
          } else {
            acc.budget_hit = true;
          }
          break;
        }
        case Kind::One: {
          if (auto p = attempt(RuleId::LOne, Side::Lhs, i, {base})) return p;
          break;
        }
        default:
          break;
      }
    }
    for (int i = 0; i < static_cast<int>(s.rhs.size()); ++i) {
      if (i > 0 && equal(s.rhs[i], s.rhs[i - 1])) continue;
      const FormulaPtr& f = s.rhs[i];
      Sequent base = s;
      base.rhs.erase(base.rhs.begin() + i);
      switch (f->kind) {
        case Kind::Lollipop: {
          Sequent prem = base;
          ms_insert(prem.lhs, f->left);
          ms_insert(prem.rhs, f->right);
          if (auto p = attempt(RuleId::RImp, Side::Rhs, i, {prem})) return p;
          break;
        }
        case Kind::Par: {
          Sequent prem = base;
          ms_insert(prem.rhs, f->left);
          ms_insert(prem.rhs, f->right);
          if (auto p = attempt(RuleId::RPar, Side::Rhs, i, {prem})) return p;
          break;
        }
        case Kind::Plus: {
          Sequent prem1 = base;
          ms_insert(prem1.rhs, f->left);
          if (auto p = attempt(RuleId::RPlus1, Side::Rhs, i, {prem1})) return p;
          Sequent prem2 = base;
          ms_insert(prem2.rhs, f->right);
          if (auto p = attempt(RuleId::RPlus2, Side::Rhs, i, {prem2})) return p;
          break;
        }
        case Kind::Bottom: {
          if (auto p = attempt(RuleId::RBot, Side::Rhs, i, {base})) return p;
          break;
        }
        case Kind::Bang: {
          if (s.rhs.size() != 1) break;
          bool all_banged = true;
          for (const auto& g : s.lhs)
            if (g->kind != Kind::Bang) {
              all_banged = false;
              break;
            }
          if (!all_banged) break;
          Sequent prem;
          prem.lhs = s.lhs;
          prem.rhs.push_back(f->left);
          if (auto p = attempt(RuleId::RBang, Side::Rhs, i, {prem})) return p;
          break;
        }
        default:
          break;
      }
    }

    // -- class 3: branching / context-splitting -----------------------------
    for (int i = 0; i < static_cast<int>(s.lhs.size()); ++i) {
      if (i > 0 && equal(s.lhs[i], s.lhs[i - 1])) continue;
      const FormulaPtr& f = s.lhs[i];
      if (f->kind == Kind::Lollipop || f->kind == Kind::Par) {
        Grouped gl = group(s.lhs, i);
        Grouped gr = group(s.rhs, -1);
        std::vector<int> cl(gl.size(), 0);
        do {
          std::vector<int> cr(gr.size(), 0);
          do {
            Sequent prem1, prem2;
            prem1.lhs = take(gl, cl, false);
            prem2.lhs = take(gl, cl, true);
            prem1.rhs = take(gr, cr, false);
            prem2.rhs = take(gr, cr, true);
            RuleId rule;
            if (f->kind == Kind::Lollipop) {
              rule = RuleId::LImp;
              ms_insert(prem1.rhs, f->left);
              ms_insert(prem2.lhs, f->right);
            } else {
              rule = RuleId::LPar;
              ms_insert(prem1.lhs, f->left);
              ms_insert(prem2.lhs, f->right);
            }
            if (auto p = attempt(rule, Side::Lhs, i, {prem1, prem2})) return p;
          } while (odometer_next(cr, gr));
        } while (odometer_next(cl, gl));
      } else if (f->kind == Kind::Plus) {
        Sequent base = s;
        base.lhs.erase(base.lhs.begin() + i);
        Sequent prem1 = base, prem2 = base;
        ms_insert(prem1.lhs, f->left);
        ms_insert(prem2.lhs, f->right);
        if (auto p = attempt(RuleId::LPlus, Side::Lhs, i, {prem1, prem2}))
          return p;
      }
    }
    for (int i = 0; i < static_cast<int>(s.rhs.size()); ++i) {
      if (i > 0 && equal(s.rhs[i], s.rhs[i - 1])) continue;
      const FormulaPtr& f = s.rhs[i];
      if (f->kind == Kind::Tensor) {
        Grouped gl = group(s.lhs, -1);
        Grouped gr = group(s.rhs, i);
        std::vector<int> cl(gl.size(), 0);
        do {
          std::vector<int> cr(gr.size(), 0);
          do {
            Sequent prem1, prem2;
            prem1.lhs = take(gl, cl, false);
            prem2.lhs = take(gl, cl, true);
            prem1.rhs = take(gr, cr, false);
            prem2.rhs = take(gr, cr, true);
            ms_insert(prem1.rhs, f->left);
            ms_insert(prem2.rhs, f->right);
            if (auto p = attempt(RuleId::RTensor, Side::Rhs, i, {prem1, prem2}))
              return p;
          } while (odometer_next(cr, gr));
        } while (odometer_next(cl, gl));
      } else if (f->kind == Kind::With) {
        Sequent base = s;
        base.rhs.erase(base.rhs.begin() + i);
        Sequent prem1 = base, prem2 = base;
        ms_insert(prem1.rhs, f->left);
        ms_insert(prem2.rhs, f->right);
        if (auto p = attempt(RuleId::RWith, Side::Rhs, i, {prem1, prem2}))
          return p;
      }
    }
    return nullptr;
  }
};

}  // namespace

SearchResult prove(const Sequent& goal, const SearchBudget& budget) {
  std::lock_guard<std::mutex> lock(g_cache_mu);
  bool pruning = budget.balance_pruning && budget.modulus_N > 0;
  Cache& cache = caches()[{pruning, pruning ? budget.modulus_N : 0,
                           budget.max_contractions_per_bang}];
  Searcher searcher(budget, cache);
  Outcome o = searcher.search(goal, budget.max_depth);
  SearchResult result;
  if (o.proof) {
    result.status = SearchStatus::Proved;
    result.proof = o.proof;
  } else if (o.budget_hit) {
    result.status = SearchStatus::BudgetExhausted;
  } else {
    result.status = SearchStatus::Refuted;
  }
  return result;
}

void clear_prover_cache() {
  std::lock_guard<std::mutex> lock(g_cache_mu);
  caches().clear();
}

}  // namespace ll
