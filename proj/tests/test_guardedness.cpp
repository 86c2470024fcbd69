#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "coalp/guardedness.hpp"
#include "coalp/unify.hpp"
#include "support.hpp"

namespace coalp {
namespace {

using testing::atom;
using testing::corpus_program;
using testing::program;

Clause clause(const std::string& src) { return program(src).clauses.front(); }

TEST(Gc1Test, ClauseExamples) {
  CheckOutcome o = gc1_clause(clause("stream([X|Y]) :- bit(X), stream(Y)."));
  EXPECT_TRUE(o.pass);
  EXPECT_EQ(o.detail, "'.'/2 reduced 1 -> 0");

  o = gc1_clause(clause("bit(0)."));
  EXPECT_TRUE(o.pass);
  EXPECT_EQ(o.detail, "no recursive call");

  o = gc1_clause(clause("connected(X,Y) :- edge(X,Z), connected(Z,Y)."));
  EXPECT_FALSE(o.pass);
  EXPECT_EQ(o.detail, "no function symbol in head arguments");

  o = gc1_clause(clause("badstream([X|Y]) :- badstream([X|Y])."));
  EXPECT_FALSE(o.pass);
  EXPECT_EQ(o.detail, "no function symbol reduced from head to badstream([X|Y])");
}

TEST(Gc1Test, OneSymbolMustShrinkInEveryRecursiveCall) {
  EXPECT_TRUE(gc1_clause(clause("p(s(X),f(Y)) :- p(X,f(Y)), p(X,Y).")).pass);
  EXPECT_FALSE(gc1_clause(clause("p(s(X),f(Y)) :- p(X,f(f(Y))), p(s(s(X)),Y).")).pass);
  EXPECT_TRUE(gc1_clause(clause("p(s(s(X))) :- p(s(X)).")).pass);
  // A symbol may also shrink while another grows.
  EXPECT_TRUE(gc1_clause(clause("p(s(X),Y) :- p(X,g(Y)).")).pass);
}

TEST(Gc1Test, PairExamples) {
  EXPECT_TRUE(gc1_pair(atom("from(0,[X|Y])"), atom("from(s(0),Y)")).pass);
  EXPECT_FALSE(gc1_pair(atom("connected(Z1,Z)"), atom("connected(Z2,Z)")).pass);
}

TEST(LoopTest, FindsFirstUnguardedPair) {
  const Program p = corpus_program("gc.lp");
  const Expansion e = expand_to_budget(p, CoTree(atom("connected(0,Z)")), Budget{40, 100});
  const auto loop = find_unguarded_loop(e.tree);
  ASSERT_TRUE(loop);
  // The constant 0 shrinks between the first two calls.
  EXPECT_EQ(to_string(loop->ancestor), "connected(Z_1,Z)");
  EXPECT_EQ(to_string(loop->descendant), "connected(Z_2,Z)");
  EXPECT_FALSE(loop->guarded);

  const Program bits = corpus_program("bitlist.lp");
  const Expansion ok = expand_to_budget(bits, CoTree(atom("bitlist([0,1|T])")), Budget{});
  EXPECT_FALSE(find_unguarded_loop(ok.tree));
}

TEST(GuardTest, CorpusVerdicts) {
  struct Case {
    const char* file;
    Verdict verdict;
    Check failing;
  };
  const Case cases[] = {
      {"bitstream.lp", Verdict::kGuarded, Check::kGC1},
      {"bitlist.lp", Verdict::kGuarded, Check::kGC1},
      {"takefirstn.lp", Verdict::kGuarded, Check::kGC1},
      {"guardedgc.lp", Verdict::kGuarded, Check::kGC1},
      {"gcomember.lp", Verdict::kGuarded, Check::kGC1},
      {"automaton.lp", Verdict::kGuarded, Check::kGC1},
      {"badstream.lp", Verdict::kUnguarded, Check::kGC1},
      {"gc.lp", Verdict::kUnguarded, Check::kGC1},
      {"comember.lp", Verdict::kUnguarded, Check::kGC1},
      {"stream2p.lp", Verdict::kUnguarded, Check::kGC3},
  };
  for (const Case& c : cases) {
    SCOPED_TRACE(c.file);
    const GuardReport r = check_program(corpus_program(c.file), Budget{});
    EXPECT_EQ(r.verdict, c.verdict);
    if (c.verdict == Verdict::kGuarded) {
      EXPECT_TRUE(r.failures.empty());
    } else {
      ASSERT_FALSE(r.failures.empty());
      EXPECT_EQ(r.failures.front().check, c.failing);
    }
  }
}

TEST(GuardTest, Stream2pFailsOnlyAtGc3) {
  const Program p = corpus_program("stream2p.lp");
  EXPECT_TRUE(gc1_program(p).pass);
  EXPECT_TRUE(gc2_program(p, Budget{}).pass);
  const StageResult gc3 = gc3_program(p, Budget{});
  EXPECT_FALSE(gc3.pass);
  const auto failed = std::find_if(gc3.heads.begin(), gc3.heads.end(),
                                   [](const HeadCheck& h) { return !h.pass; });
  ASSERT_NE(failed, gc3.heads.end());
  ASSERT_TRUE(failed->evidence);
  EXPECT_EQ(failed->evidence->predicate, (Signature{"stream2p", 2}));
}

TEST(GuardTest, Gc2FailsOnTermMatchingLoop) {
  const Program p = program("p(f(X)) :- q(X).\nq(Y) :- p(f(Y)).\n");
  EXPECT_TRUE(gc1_program(p).pass);
  const StageResult gc2 = gc2_program(p, Budget{});
  EXPECT_FALSE(gc2.pass);
  EXPECT_EQ(check_program(p, Budget{}).failures.front().check, Check::kGC2);
}

TEST(GuardTest, ReportLines) {
  const GuardReport r = check_program(corpus_program("badstream.lp"), Budget{});
  const std::string text = render_report(r);
  EXPECT_NE(text.find("GC1 badstream([X|Y]): fail — no function symbol reduced from head to "
                      "badstream([X|Y])\n"),
            std::string::npos)
      << text;
  EXPECT_NE(text.find("verdict: unguarded\n"), std::string::npos);
  EXPECT_NE(text.find("gc-time: "), std::string::npos);
}

TEST(GuardTest, Gc3StepLimitIsInconclusive) {
  const Program p = corpus_program("takefirstn.lp");
  Gc3Options tight;
  tight.step_limit = 1;
  const StageResult r = gc3_program(p, Budget{}, tight);
  EXPECT_FALSE(r.pass);
  bool inconclusive = false;
  for (const HeadCheck& h : r.heads) {
    inconclusive = inconclusive || h.detail.rfind("inconclusive", 0) == 0;
  }
  EXPECT_TRUE(inconclusive);
}

Program renamed(const Program& p, std::uint32_t index) {
  Program q = p;
  for (Clause& c : q.clauses) c = rename_apart(c, index);
  return q;
}

TEST(GuardTest, VerdictIgnoresClauseOrderAndVariableNames) {
  std::mt19937 rng(23);
  for (const char* file : {"bitstream.lp", "bitlist.lp", "takefirstn.lp", "guardedgc.lp",
                           "gcomember.lp", "automaton.lp", "badstream.lp", "gc.lp",
                           "comember.lp", "stream2p.lp"}) {
    SCOPED_TRACE(file);
    const Program p = corpus_program(file);
    const Verdict expected = check_program(p, Budget{}).verdict;
    for (int round = 0; round < 4; ++round) {
      Program q = renamed(p, 40 + round);
      std::shuffle(q.clauses.begin(), q.clauses.end(), rng);
      for (std::size_t i = 0; i < q.clauses.size(); ++i) q.clauses[i].source_index = i + 1;
      EXPECT_EQ(check_program(q, Budget{}).verdict, expected);
    }
  }
}

}  // namespace
}  // namespace coalp
