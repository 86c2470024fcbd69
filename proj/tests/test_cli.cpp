#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "coalp/cli.hpp"
#include "support.hpp"

namespace coalp::cli {
namespace {

namespace fs = std::filesystem;
using testing::corpus_path;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "coalp");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("coalp_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

TEST(CliTest, CheckExitCodes) {
  Outcome o = run_cli({"check", corpus_path("bitstream.lp")});
  EXPECT_EQ(o.code, kOk);
  EXPECT_NE(o.out.find("verdict: guarded"), std::string::npos);
  o = run_cli({"check", corpus_path("badstream.lp")});
  EXPECT_EQ(o.code, kUnguarded);
  EXPECT_NE(o.out.find("verdict: unguarded"), std::string::npos);
}

TEST(CliTest, RunExitCodes) {
  EXPECT_EQ(run_cli({"run", corpus_path("takefirstn.lp"), "taken(s(s(0)),X)"}).code, kOk);
  EXPECT_EQ(run_cli({"run", corpus_path("bitstream.lp"), "stream(X)", "--observe-depth", "3"})
                .code,
            kNoSuccess);
  EXPECT_EQ(run_cli({"run", corpus_path("badstream.lp"), "badstream(X)"}).code, kUnguarded);
  EXPECT_EQ(run_cli({"run", corpus_path("badstream.lp"), "badstream(X)", "--force"}).code,
            kBudget);
  EXPECT_EQ(run_cli({"run", corpus_path("automaton.lp"), "accept(q0,[b])"}).code, kNoSuccess);
}

TEST(CliTest, RunPrintsAnswer) {
  const Outcome o = run_cli({"run", corpus_path("bitstream.lp"), "stream(X)",
                             "--observe-depth", "3"});
  EXPECT_NE(o.out.find("X = [0, X_5|Y_5]"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("status: observation-limit"), std::string::npos) << o.out;
}

TEST(CliTest, SldEngine) {
  const Outcome o = run_cli({"run", corpus_path("bitlist.lp"), "bitlist(X)", "--engine", "sld",
                             "--max-solutions", "2"});
  EXPECT_EQ(o.code, kOk);
  EXPECT_NE(o.out.find("X = []"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("X = [0]"), std::string::npos) << o.out;
}

TEST(CliTest, UsageAndInputErrors) {
  EXPECT_EQ(run_cli({}).code, kError);
  EXPECT_EQ(run_cli({"check"}).code, kError);
  EXPECT_EQ(run_cli({"check", "/nonexistent/file.lp"}).code, kError);
  EXPECT_EQ(run_cli({"run", corpus_path("bitlist.lp"), "bitlist(X), bit(Y)"}).code, kError);
  EXPECT_EQ(run_cli({"run", corpus_path("bitlist.lp"), "bitlist(X)", "--engine", "prolog"}).code,
            kError);
  EXPECT_EQ(run_cli({"run", corpus_path("bitlist.lp"), "bitlist(X)", "--max-nodes", "0"}).code,
            kError);
}

TEST(CliTest, ParseErrorsAreReported) {
  TempDir dir;
  const fs::path bad = dir.path() / "bad.lp";
  std::ofstream(bad) << "p(a).\nq(X :- r.\n";
  const Outcome o = run_cli({"check", bad.string()});
  EXPECT_EQ(o.code, kError);
  EXPECT_NE(o.err.find("2:"), std::string::npos) << o.err;
}

TEST(CliTest, DumpEmitsValidDotForCorpusQueries) {
  for (const auto& entry : fs::directory_iterator(COALP_CORPUS_DIR)) {
    if (entry.path().extension() != ".lp") continue;
    const Sidecar sc = read_sidecar(testing::read_text(entry.path().string()));
    ASSERT_TRUE(sc.query) << entry.path();
    const Outcome o = run_cli({"dump", entry.path().string(), *sc.query, "--format", "dot",
                               "--max-nodes", "200"});
    EXPECT_TRUE(o.code == kOk || o.code == kBudget) << entry.path();
    std::string why;
    EXPECT_TRUE(testing::valid_dot(o.out, &why)) << entry.path() << ": " << why;
  }
}

TEST(CliTest, DumpText) {
  const Outcome o = run_cli({"dump", corpus_path("bitlist.lp"), "bitlist([0])"});
  EXPECT_EQ(o.code, kOk);
  EXPECT_EQ(o.out.substr(0, o.out.find('\n')), "bitlist([0])");
  EXPECT_EQ(run_cli({"dump", corpus_path("gc.lp"), "connected(0,Z)", "--max-nodes", "30"}).code,
            kBudget);
}

TEST(CliTest, SidecarHeaders) {
  const Sidecar sc = read_sidecar(
      "% expect: guarded, observation-limit\n"
      "% query: gcomember_nats(0)\n"
      "% observe-depth: 20\n"
      "p(a).\n");
  EXPECT_EQ(sc.verdict, Verdict::kGuarded);
  EXPECT_EQ(sc.status, RunStatus::kObservationLimit);
  EXPECT_EQ(sc.query, "gcomember_nats(0)");
  EXPECT_EQ(sc.observe_depth, 20u);
  EXPECT_EQ(parse_status("budget-exceeded"), RunStatus::kBudgetExceeded);
  EXPECT_FALSE(parse_status("fine"));
}

TEST(CliTest, CorpusPasses) {
  const Outcome o = run_cli({"corpus", COALP_CORPUS_DIR});
  EXPECT_EQ(o.code, kOk) << o.out << o.err;
  EXPECT_EQ(o.out.find("MISMATCH"), std::string::npos);
}

TEST(CliTest, TamperedCorpusIsAMismatch) {
  TempDir dir;
  fs::copy_file(corpus_path("bitlist.lp"), dir.path() / "bitlist.lp");
  std::string src = testing::read_text(corpus_path("bitstream.lp"));
  const std::string from = "% expect: guarded, observation-limit";
  const auto at = src.find(from);
  ASSERT_NE(at, std::string::npos);
  src.replace(at, from.size(), "% expect: unguarded, observation-limit");
  std::ofstream(dir.path() / "bitstream.lp") << src;
  const Outcome o = run_cli({"corpus", dir.path().string()});
  EXPECT_EQ(o.code, kMismatch);
  EXPECT_NE(o.out.find("MISMATCH"), std::string::npos) << o.out;
}

TEST(CliTest, EmptyOrMissingCorpus) {
  TempDir dir;
  EXPECT_EQ(run_cli({"corpus", dir.path().string()}).code, kError);
  EXPECT_EQ(run_cli({"corpus", (dir.path() / "missing").string()}).code, kError);
}

}  // namespace
}  // namespace coalp::cli
