#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "ll/enumerate.hpp"
#include "ll/program.hpp"

using namespace ll;

namespace {

SimpleProduct sp(std::vector<int> lits) {
  return product_of_multiset(std::move(lits));
}

EdgeLabel horn(std::vector<int> a, std::vector<int> b) {
  EdgeLabel l;
  l.op = EdgeLabel::Op::Horn;
  l.a = sp(std::move(a));
  l.b = sp(std::move(b));
  l.c = l.a;
  return l;
}

VertexPtr leaf() { return std::make_shared<ProgVertex>(); }

VertexPtr node(std::vector<ProgEdge> edges) {
  auto v = std::make_shared<ProgVertex>();
  v->edges = std::move(edges);
  return v;
}

NormalizedFormula nf_horn(std::vector<int> a, std::vector<int> b) {
  NormalizedFormula f;
  f.kind = NormKind::Horn;
  f.a = sp(std::move(a));
  f.b = sp(std::move(b));
  return f;
}

}  // namespace

TEST_CASE("construction validates the invariants") {
  // single Horn edge: fine
  CHECK_NOTHROW(Program::create(node({{horn({1}, {2}), leaf()}})));

  // divergent vertex with different antecedents: rejected
  CHECK_THROWS_AS(
      Program::create(node({{horn({1}, {2}), leaf()},
                            {horn({2}, {3}), leaf()}})),
      ProgramError);

  // pop without a push: rejected
  {
    EdgeLabel pop;
    pop.op = EdgeLabel::Op::Pop;
    pop.a = sp({1});
    pop.b = pop.a;
    pop.c = pop.a;
    CHECK_THROWS_AS(Program::create(node({{pop, leaf()}})), ProgramError);
  }

  // push never closed: rejected
  {
    EdgeLabel push;
    push.op = EdgeLabel::Op::Push;
    push.a = sp({3});
    push.b = sp({2});
    push.c = sp({4});
    CHECK_THROWS_AS(Program::create(node({{push, leaf()}})), ProgramError);
  }
}

TEST_CASE("strong execution of a Horn chain") {
  Program p = Program::create(
      node({{horn({1}, {2}), node({{horn({2}, {3}), leaf()}})}}));
  CHECK(p.edge_count() == 2);
  CHECK(evaluate(p, sp({1}), sp({3})));
  CHECK(!evaluate(p, sp({1}), sp({2})));
  // wrong input: the first step is undefined
  ExecutionTrace t = run_strong(p, sp({2}));
  CHECK(t.all_defined == false);
}

TEST_CASE("program serialization round-trips") {
  Program p = Program::create(node(
      {{horn({1, 1}, {2}), node({{horn({2}, {1, 3}), leaf()}})}}));
  std::string text = program_to_sexpr(p);
  Program back = parse_program_sexpr(text);
  CHECK(program_to_sexpr(back) == text);
  CHECK(back.edge_count() == 2);
  CHECK(evaluate(back, sp({1, 1}), sp({1, 3})));
}

TEST_CASE("single Horn step: search, usage, and proof reconstruction") {
  NormalizedSequent s;
  s.W = sp({1});
  s.Z = sp({2});
  s.delta.push_back(nf_horn({1}, {2}));

  auto prog = find_strong_solution(s);
  REQUIRE(prog.has_value());
  CHECK(prog->edge_count() == 1);
  CHECK(check_strong_solution(*prog, s));

  auto ua = assign_usage(*prog, s.delta, s.gamma);
  REQUIRE(ua.has_value());
  CHECK(ua->by_edge.at({0, 0}).origin == UsedFormula::Origin::Delta);

  ProofPtr proof = program_to_proof(*prog, s);
  CheckResult r = check_proof(proof);
  CAPTURE(r.message);
  CHECK(r.ok);
  CHECK(proof->conclusion == s.to_sequent());
}

TEST_CASE("unused linear formula means no strong solution") {
  NormalizedSequent s;
  s.W = sp({1});
  s.Z = sp({1});
  s.delta.push_back(nf_horn({2}, {2}));  // can never fire
  CHECK(!find_strong_solution(s).has_value());

  Program idle = Program::create(leaf());
  CHECK(evaluate(idle, s.W, s.Z));
  CHECK(!check_strong_solution(idle, s));  // delta not used
  CHECK_THROWS_AS(program_to_proof(idle, s), NotAStrongSolution);
}

TEST_CASE("with-branch projection") {
  NormalizedSequent s;
  s.W = sp({1});
  s.Z = sp({3});
  NormalizedFormula f;
  f.kind = NormKind::WithHorn;
  f.a = sp({1});
  f.b = sp({2});
  f.c = sp({1});
  f.d = sp({3});
  s.delta.push_back(f);

  auto prog = find_strong_solution(s);
  REQUIRE(prog.has_value());
  auto ua = assign_usage(*prog, s.delta, s.gamma);
  REQUIRE(ua.has_value());
  CHECK(ua->by_edge.at({0, 0}).projection == 2);
  ProofPtr proof = program_to_proof(*prog, s);
  CHECK(check_proof(proof).ok);
  CHECK(proof->conclusion == s.to_sequent());
}

TEST_CASE("divergent fork covered by a plus-branching formula") {
  NormalizedSequent s;
  s.W = sp({1});
  s.Z = sp({4});
  NormalizedFormula fork;
  fork.kind = NormKind::PlusHorn;
  fork.a = sp({1});
  fork.b = sp({2});
  fork.c = sp({3});
  s.delta.push_back(fork);
  s.gamma.push_back(nf_horn({2}, {4}));
  s.gamma.push_back(nf_horn({3}, {4}));

  auto prog = find_strong_solution(s);
  REQUIRE(prog.has_value());
  CHECK(prog->root()->edges.size() == 2);
  CHECK(check_strong_solution(*prog, s));
  ProofPtr proof = program_to_proof(*prog, s);
  CheckResult r = check_proof(proof);
  CAPTURE(r.message);
  CHECK(r.ok);
  CHECK(proof->conclusion == s.to_sequent());
}

TEST_CASE("push/pop bracket for an embedded implication") {
  // W = p1 * p2; an embedded implication (p3 -o p4) -o p5 suspends p1 * p5,
  // the reusable steps take p2 * p3 to p4 and p1 * p5 to p6.
  NormalizedSequent s;
  s.W = sp({1, 2});
  s.Z = sp({6});
  NormalizedFormula emb;
  emb.kind = NormKind::Embedded;
  emb.a = sp({3});
  emb.b = sp({4});
  emb.c = sp({5});
  s.delta.push_back(emb);
  s.gamma.push_back(nf_horn({2, 3}, {4}));
  s.gamma.push_back(nf_horn({1, 5}, {6}));

  EnumBounds bounds;
  bounds.max_edges = 4;
  bounds.max_push_pairs = 1;
  auto prog = find_strong_solution(s, bounds);
  REQUIRE(prog.has_value());
  CHECK(check_strong_solution(*prog, s));
  CHECK(prog->root()->edges[0].label.op == EdgeLabel::Op::Push);

  ExecutionTrace t = run_strong(*prog, s.W);
  CHECK(t.all_defined);

  ProofPtr proof = program_to_proof(*prog, s);
  CheckResult r = check_proof(proof);
  CAPTURE(r.message);
  CHECK(r.ok);
  CHECK(proof->conclusion == s.to_sequent());

  // serialization keeps the bracket structure
  Program back = parse_program_sexpr(program_to_sexpr(*prog));
  CHECK(check_strong_solution(back, s));
}

TEST_CASE("stack discipline: pop on the wrong value is undefined") {
  EdgeLabel push;
  push.op = EdgeLabel::Op::Push;
  push.a = sp({5});
  push.b = sp({2});
  push.c = sp({3});
  EdgeLabel pop;
  pop.op = EdgeLabel::Op::Pop;
  pop.a = sp({9});  // never reached
  pop.b = pop.a;
  pop.c = pop.a;
  Program p = Program::create(node({{push, node({{pop, leaf()}})}}));
  ExecutionTrace t = run_strong(p, sp({1, 2}));
  CHECK(!t.all_defined);
}
