// llwb — batch front end for the linear-logic workbench.
//
// Exit codes: 0 success/holds/Proved; 1 Refuted/violated/false;
// 2 BudgetExhausted/not-applicable; 3 parse error; 4 usage/internal error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ll/balance.hpp"
#include "ll/enumerate.hpp"
#include "ll/formula.hpp"
#include "ll/program.hpp"
#include "ll/proof.hpp"
#include "ll/prover.hpp"
#include "ll/tables.hpp"
#include "ll/transform.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kRefuted = 1;
constexpr int kExhausted = 2;
constexpr int kParseError = 3;
constexpr int kUsageError = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// One sequent per line; '#' begins a comment line.
std::vector<std::string> sequent_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos || line[i] == '#') continue;
    out.push_back(line);
  }
  return out;
}

struct Output {
  std::string path;  // empty = stdout
  std::ostringstream buf;

  ~Output() {
    if (path.empty()) {
      std::cout << buf.str();
    } else {
      std::ofstream f(path, std::ios::binary);
      f << buf.str();
    }
  }
};

ll::SimpleProduct parse_product_list(const std::string& text) {
  std::vector<int> lits;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t b = tok.find_first_not_of(" \t");
    std::size_t e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) throw ll::ParseError("empty literal", 0);
    tok = tok.substr(b, e - b + 1);
    if (tok.size() < 2 || tok[0] != 'p')
      throw ll::ParseError("expected a literal pN, got '" + tok + "'", 0);
    lits.push_back(std::stoi(tok.substr(1)));
  }
  return ll::product_of_multiset(std::move(lits));
}

ll::EncodingParams make_params(const ll::NormalizedSequent& s,
                               const std::string& target, int N, int p) {
  auto t = ll::target_from_name(target);
  if (!t) throw std::runtime_error("unknown target '" + target + "'");
  ll::EncodingParams params = ll::default_params(s, *t);
  if (N > 0) params.N = N;
  if (p > 0) params.p_index = p;
  ll::validate_params(params, s);
  return params;
}

ll::NormalizedSequent normalized_from_line(const std::string& line) {
  auto n = ll::sequent_to_normalized(ll::parse_sequent(line));
  if (!n) throw std::runtime_error("sequent is not in normalized form: " + line);
  return *n;
}

int worst(int a, int b) {
  // violated/refuted dominates exhausted/not-applicable dominates ok
  if (a == kRefuted || b == kRefuted) return kRefuted;
  return std::max(a, b);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"llwb: linear-logic workbench batch front end"};
  app.require_subcommand(1);

  int budget_depth = 15;
  int budget_contractions = 4;
  bool no_pruning = false;
  std::string target = "bot-only";
  int N = 0;
  int p = 0;
  std::string out_path;
  std::string input_product;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--budget-depth", budget_depth, "proof search depth");
    sub->add_option("--budget-contractions", budget_contractions,
                    "contraction uses per !-formula");
    sub->add_flag("--no-balance-pruning", no_pruning,
                  "disable the congruence pruning");
    sub->add_option("--target", target,
                    "encoding target: one-literal|bot-only|unit-only");
    sub->add_option("--N", N, "encoding exponent scale");
    sub->add_option("--p", p, "leading literal index");
    sub->add_option("--out", out_path, "write artifacts to this path");
  };

  std::string file1, file2;
  auto* c_parse = app.add_subcommand("parse", "reprint sequents canonically");
  c_parse->add_option("file", file1)->required();
  add_common(c_parse);

  auto* c_prove = app.add_subcommand("prove", "bounded proof search");
  c_prove->add_option("file", file1)->required();
  add_common(c_prove);

  auto* c_check = app.add_subcommand("check-proof", "validate a proof tree");
  c_check->add_option("file", file1)->required();
  add_common(c_check);

  auto* c_encode = app.add_subcommand("encode", "encode normalized sequents");
  c_encode->add_option("file", file1)->required();
  add_common(c_encode);

  auto* c_run = app.add_subcommand("run-program", "execute a program");
  c_run->add_option("program", file1)->required();
  c_run->add_option("--input", input_product, "input product, e.g. p1,p2")
      ->required();
  add_common(c_run);

  auto* c_sol = app.add_subcommand("check-solution",
                                   "check a program against a sequent");
  c_sol->add_option("program", file1)->required();
  c_sol->add_option("sequent", file2)->required();
  add_common(c_sol);

  auto* c_toproof =
      app.add_subcommand("to-proof", "rebuild a proof from a program");
  c_toproof->add_option("program", file1)->required();
  c_toproof->add_option("sequent", file2)->required();
  add_common(c_toproof);

  auto* c_toprog =
      app.add_subcommand("to-program", "extract a program from an encoded proof");
  c_toprog->add_option("proof", file1)->required();
  c_toprog->add_option("sequent", file2)->required();
  add_common(c_toprog);

  auto* c_bal = app.add_subcommand("balance", "congruence analysis");
  c_bal->add_option("file", file1)->required();
  add_common(c_bal);

  auto* c_round = app.add_subcommand(
      "roundtrip", "source proof -> encoded proof -> program -> proof");
  c_round->add_option("file", file1)->required();
  add_common(c_round);

  auto* c_fair = app.add_subcommand("fairness", "four-variant agreement check");
  c_fair->add_option("file", file1)->required();
  add_common(c_fair);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  ll::SearchBudget budget;
  budget.max_depth = budget_depth;
  budget.max_contractions_per_bang = budget_contractions;
  budget.balance_pruning = !no_pruning;

  Output out;
  out.path = out_path;

  try {
    if (c_parse->parsed()) {
      for (const auto& line : sequent_lines(file1))
        out.buf << ll::print_sequent(ll::parse_sequent(line)) << "\n";
      return kOk;
    }

    if (c_prove->parsed()) {
      int code = kOk;
      for (const auto& line : sequent_lines(file1)) {
        ll::Sequent s = ll::parse_sequent(line);
        if (N > 0) budget.modulus_N = N;
        ll::SearchResult r = ll::prove(s, budget);
        out.buf << ll::search_status_name(r.status) << " " << line << "\n";
        if (r.proof) out.buf << ll::proof_to_sexpr(r.proof);
        switch (r.status) {
          case ll::SearchStatus::Proved:
            break;
          case ll::SearchStatus::Refuted:
            code = worst(code, kRefuted);
            break;
          case ll::SearchStatus::BudgetExhausted:
            code = worst(code, kExhausted);
            break;
        }
      }
      return code;
    }

    if (c_check->parsed()) {
      ll::ProofPtr proof = ll::parse_proof_sexpr(read_file(file1));
      ll::CheckResult r = ll::check_proof(proof);
      if (r.ok) {
        out.buf << "ok " << ll::print_sequent(proof->conclusion) << "\n";
        return kOk;
      }
      out.buf << "invalid (" << ll::rule_name(r.rule) << "): " << r.message
              << "\n";
      return kRefuted;
    }

    if (c_encode->parsed()) {
      for (const auto& line : sequent_lines(file1)) {
        ll::NormalizedSequent s = normalized_from_line(line);
        ll::EncodingParams params = make_params(s, target, N, p);
        out.buf << ll::print_sequent(ll::encode_sequent(s, params)) << "\n";
      }
      return kOk;
    }

    if (c_run->parsed()) {
      ll::Program prog = ll::parse_program_sexpr(read_file(file1));
      ll::SimpleProduct w = parse_product_list(input_product);
      ll::ExecutionTrace trace = ll::run_strong(prog, w);
      for (const auto& [id, st] : trace.states) {
        out.buf << "vertex " << id << ": ";
        if (!st.defined) {
          out.buf << "undefined\n";
          continue;
        }
        for (std::size_t i = 0; i < st.out.lits.size(); ++i)
          out.buf << (i ? "," : "") << "p" << st.out.lits[i];
        out.buf << " stack-depth " << st.stack.size() << "\n";
      }
      return trace.all_defined ? kOk : kRefuted;
    }

    if (c_sol->parsed()) {
      ll::Program prog = ll::parse_program_sexpr(read_file(file1));
      auto lines = sequent_lines(file2);
      if (lines.empty()) throw std::runtime_error("no sequent in " + file2);
      ll::NormalizedSequent s = normalized_from_line(lines[0]);
      bool ok = ll::check_strong_solution(prog, s);
      out.buf << (ok ? "strong-solution" : "not-a-strong-solution") << "\n";
      return ok ? kOk : kRefuted;
    }

    if (c_toproof->parsed()) {
      ll::Program prog = ll::parse_program_sexpr(read_file(file1));
      auto lines = sequent_lines(file2);
      if (lines.empty()) throw std::runtime_error("no sequent in " + file2);
      ll::NormalizedSequent s = normalized_from_line(lines[0]);
      try {
        ll::ProofPtr proof = ll::program_to_proof(prog, s);
        out.buf << ll::proof_to_sexpr(proof);
        return kOk;
      } catch (const ll::NotAStrongSolution& ex) {
        std::cerr << "not a strong solution: " << ex.what() << "\n";
        return kRefuted;
      }
    }

    if (c_toprog->parsed()) {
      ll::ProofPtr proof = ll::parse_proof_sexpr(read_file(file1));
      auto lines = sequent_lines(file2);
      if (lines.empty()) throw std::runtime_error("no sequent in " + file2);
      ll::NormalizedSequent s = normalized_from_line(lines[0]);
      ll::EncodingParams params = make_params(s, target, N, p);
      ll::Program prog = ll::extract_program(proof, s, params);
      out.buf << ll::program_to_sexpr(prog);
      return kOk;
    }

    if (c_bal->parsed()) {
      int modulus = N > 0 ? N : 9;
      int code = kOk;
      for (const auto& line : sequent_lines(file1)) {
        ll::Sequent s = ll::parse_sequent(line);
        ll::BalanceStatus st = ll::balance_check(s, modulus);
        out.buf << ll::balance_status_name(st) << " " << line << "\n";
        auto describe = [&](const ll::FormulaPtr& f) {
          out.buf << "  " << ll::print_formula(f) << " : ";
          try {
            long long c = ll::bot_count(f);
            out.buf << c << " (mod " << 9 * modulus << ": "
                    << ((c % (9 * modulus)) + 9 * modulus) % (9 * modulus)
                    << ")\n";
          } catch (const ll::BangUnsupported&) {
            out.buf << "banged block\n";
          }
        };
        for (const auto& f : s.lhs) describe(f);
        for (const auto& f : s.rhs) describe(f);
        if (st == ll::BalanceStatus::Violated) code = worst(code, kRefuted);
        if (st == ll::BalanceStatus::NotApplicable)
          code = worst(code, kExhausted);
      }
      return code;
    }

    if (c_round->parsed()) {
      for (const auto& line : sequent_lines(file1)) {
        ll::NormalizedSequent s = normalized_from_line(line);
        ll::EncodingParams params = make_params(s, target, N, p);
        if (params.target != ll::Target::BotOnly)
          throw std::runtime_error("roundtrip requires the bot-only target");
        ll::SearchResult src = ll::prove(s.to_sequent(), budget);
        if (src.status != ll::SearchStatus::Proved) {
          out.buf << "source " << ll::search_status_name(src.status) << ": "
                  << line << "\n";
          return src.status == ll::SearchStatus::Refuted ? kRefuted
                                                         : kExhausted;
        }
        out.buf << "source proved: " << line << "\n";
        ll::ProofPtr encoded = ll::ttobot_transform(src.proof, params);
        out.buf << "encoded proof checked (" << ll::proof_size(encoded)
                << " nodes)\n";
        ll::Program prog = ll::extract_program(encoded, s, params);
        out.buf << "program extracted (" << prog.edge_count() << " edges)\n";
        if (!ll::check_strong_solution(prog, s))
          throw std::runtime_error("extracted program fails validation");
        ll::ProofPtr back = ll::program_to_proof(prog, s);
        ll::CheckResult chk = ll::check_proof(back);
        if (!chk.ok)
          throw std::runtime_error("rebuilt proof fails checking: " +
                                   chk.message);
        out.buf << "roundtrip ok\n";
      }
      return kOk;
    }

    if (c_fair->parsed()) {
      int code = kOk;
      for (const auto& line : sequent_lines(file1)) {
        ll::NormalizedSequent s = normalized_from_line(line);
        ll::EncodingParams params = make_params(s, "bot-only", N, p);
        ll::FairnessReport r = ll::fairness_check(s, params, budget);
        auto show = [&](const char* name, const ll::FairnessEntry& e) {
          out.buf << "  " << name << ": " << ll::search_status_name(e.status)
                  << (e.via_witness ? " (via witness)" : "") << "\n";
        };
        out.buf << line << "\n";
        show("source    ", r.source);
        show("one-literal", r.one_literal);
        show("bot-only  ", r.bot_only);
        show("unit-only ", r.unit_only);
        for (const auto& note : r.notes) out.buf << "  note: " << note << "\n";
        if (r.violation) code = worst(code, kRefuted);
      }
      return code;
    }
  } catch (const ll::ParseError& ex) {
    std::cerr << "parse error: " << ex.what() << "\n";
    return kParseError;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
