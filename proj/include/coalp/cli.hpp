#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "coalp/derivation.hpp"
#include "coalp/guardedness.hpp"

namespace coalp::cli {

enum ExitCode : int {
  kOk = 0,
  kError = 1,       // parse, IO or usage error; empty corpus
  kUnguarded = 2,   // check verdict, or run refused without --force
  kBudget = 3,      // budget-exceeded
  kNoSuccess = 4,   // exhausted or observation-limit without a success
  kMismatch = 5,    // corpus expectation not met
};

enum class Engine { kCoalp, kSld };
enum class Format { kText, kDot };

struct Options {
  RunConfig run;
  Gc3Options gc3;
  Engine engine = Engine::kCoalp;
  Format format = Format::kText;
  bool force = false;
  bool trace = false;
};

int exit_code(RunStatus s);

/// Header lines of a corpus file:
///   % expect: guarded|unguarded, <status>
///   % query: <atom>
///   % observe-depth: <n>      (optional)
struct Sidecar {
  std::optional<Verdict> verdict;
  std::optional<RunStatus> status;
  std::optional<std::string> query;
  std::optional<std::size_t> observe_depth;
};
Sidecar read_sidecar(std::string_view src);

std::optional<RunStatus> parse_status(std::string_view s);

int cmd_check(const std::string& path, const Options& opts, std::ostream& out,
              std::ostream& err);
int cmd_run(const std::string& path, const std::string& query,
            const Options& opts, std::ostream& out, std::ostream& err);
int cmd_dump(const std::string& path, const std::string& query,
             const Options& opts, std::ostream& out, std::ostream& err);
int cmd_corpus(const std::string& dir, const Options& opts, std::ostream& out,
               std::ostream& err);

/// Full command line, argv[0] included.
int main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace coalp::cli
