#include "coalp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <sstream>

#include "coalp/parser.hpp"
#include "coalp/render.hpp"
#include "coalp/sld.hpp"

namespace coalp::cli {

namespace {

namespace fs = std::filesystem;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<Program> load(const std::string& path, std::ostream& err) {
  auto src = read_file(path);
  if (!src) {
    err << path << ": cannot read file\n";
    return std::nullopt;
  }
  ParseResult r = parse_program(*src);
  for (const Diagnostic& d : r.diagnostics) {
    err << path << ':' << to_string(d) << '\n';
  }
  return std::move(r.program);
}

std::optional<Atom> load_query(const std::string& query, std::ostream& err) {
  QueryResult q = parse_query(query);
  if (!q.ok()) {
    err << "query:" << to_string(*q.error) << '\n';
    return std::nullopt;
  }
  return std::move(q.atom);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

// Runs the query and reports answers to `out`. Returns the overall status.
RunStatus execute(const Program& p, const Atom& query, const Options& opts,
                  std::ostream& out) {
  if (opts.engine == Engine::kSld) {
    SldResult r = sld_solve(p, query, opts.run.budget.max_depth,
                            opts.run.max_solutions);
    for (const Substitution& a : r.answers) out << render_answer(query, a) << '\n';
    RunStatus s = !r.answers.empty() ? RunStatus::kSuccess
                  : r.depth_exceeded ? RunStatus::kBudgetExceeded
                                     : RunStatus::kExhausted;
    out << "status: " << to_string(s) << '\n';
    return s;
  }
  if (p.is_coinductive(query)) {
    DerivationTrace t = run_query(p, query, opts.run);
    out << render_trace(t);
    out << render_answer(query, t.answer) << '\n';
    out << "status: " << to_string(t.status) << '\n';
    return t.status;
  }
  Enumeration e = enumerate_solutions(p, query, opts.run);
  for (const DerivationTrace& t : e.solutions) {
    if (opts.trace) out << render_trace(t);
    out << render_answer(query, t.answer) << '\n';
  }
  if (opts.trace) {
    for (const DerivationTrace& t : e.incomplete) out << render_trace(t);
  }
  out << "status: " << to_string(e.status) << '\n';
  return e.status;
}

struct CorpusRow {
  std::string program;
  std::string verdict = "-";
  std::string elapsed = "-";
  std::string status = "-";
  std::vector<std::string> mismatches;
};

CorpusRow corpus_entry(const fs::path& file, const Options& base) {
  CorpusRow row;
  row.program = file.filename().string();
  auto src = read_file(file.string());
  if (!src) {
    row.mismatches.push_back("cannot read file");
    return row;
  }
  const Sidecar sc = read_sidecar(*src);
  if (!sc.verdict || !sc.status || !sc.query) {
    row.mismatches.push_back("missing '% expect:' or '% query:' header");
    return row;
  }
  ParseResult parsed = parse_program(*src);
  if (!parsed.ok()) {
    row.mismatches.push_back("parse error: " + to_string(parsed.errors().front()));
    return row;
  }
  QueryResult q = parse_query(*sc.query);
  if (!q.ok()) {
    row.mismatches.push_back("query: " + to_string(*q.error));
    return row;
  }
  Options opts = base;
  if (sc.observe_depth) opts.run.observe_depth = *sc.observe_depth;

  const GuardReport report =
      check_program(*parsed.program, opts.run.budget, opts.gc3);
  row.verdict = std::string(to_string(report.verdict));
  std::ostringstream elapsed;
  elapsed << std::fixed << std::setprecision(6) << report.elapsed_seconds << 's';
  row.elapsed = elapsed.str();
  if (report.verdict != *sc.verdict) {
    row.mismatches.push_back("expected " + std::string(to_string(*sc.verdict)) +
                             ", checker says " + row.verdict);
  }

  std::ostringstream sink;
  const RunStatus s = execute(*parsed.program, *q.atom, opts, sink);
  row.status = std::string(to_string(s));
  if (s != *sc.status) {
    row.mismatches.push_back("expected " + std::string(to_string(*sc.status)) +
                             ", run gives " + row.status);
  }
  return row;
}

}  // namespace

int exit_code(RunStatus s) {
  switch (s) {
    case RunStatus::kSuccess: return kOk;
    case RunStatus::kBudgetExceeded: return kBudget;
    case RunStatus::kExhausted:
    case RunStatus::kObservationLimit: return kNoSuccess;
  }
  return kError;
}

std::optional<RunStatus> parse_status(std::string_view s) {
  for (RunStatus r : {RunStatus::kSuccess, RunStatus::kExhausted,
                      RunStatus::kBudgetExceeded, RunStatus::kObservationLimit}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

Sidecar read_sidecar(std::string_view src) {
  Sidecar sc;
  std::istringstream in{std::string(src)};
  std::string line;
  while (std::getline(in, line)) {
    std::string_view l = trim(line);
    if (l.empty() || l.front() != '%') continue;
    l = trim(l.substr(1));
    auto value_of = [&](std::string_view key) -> std::optional<std::string_view> {
      if (l.substr(0, key.size()) != key) return std::nullopt;
      return trim(l.substr(key.size()));
    };
    if (auto v = value_of("expect:")) {
      const auto comma = v->find(',');
      const std::string_view verdict = trim(v->substr(0, comma));
      if (verdict == "guarded") sc.verdict = Verdict::kGuarded;
      if (verdict == "unguarded") sc.verdict = Verdict::kUnguarded;
      if (comma != std::string_view::npos) {
        sc.status = parse_status(trim(v->substr(comma + 1)));
      }
    } else if (auto q = value_of("query:")) {
      sc.query = std::string(*q);
    } else if (auto d = value_of("observe-depth:")) {
      try {
        sc.observe_depth = std::stoul(std::string(*d));
      } catch (const std::exception&) {
      }
    }
  }
  return sc;
}

int cmd_check(const std::string& path, const Options& opts, std::ostream& out,
              std::ostream& err) {
  auto p = load(path, err);
  if (!p) return kError;
  const GuardReport r = check_program(*p, opts.run.budget, opts.gc3);
  out << render_report(r);
  return r.verdict == Verdict::kGuarded ? kOk : kUnguarded;
}

int cmd_run(const std::string& path, const std::string& query,
            const Options& opts, std::ostream& out, std::ostream& err) {
  auto p = load(path, err);
  if (!p) return kError;
  auto q = load_query(query, err);
  if (!q) return kError;
  if (opts.engine == Engine::kCoalp && !opts.force) {
    const GuardReport r = check_program(*p, opts.run.budget, opts.gc3);
    if (r.verdict == Verdict::kUnguarded) {
      err << render_report(r);
      err << path << ": program is not guarded; pass --force to run it anyway\n";
      return kUnguarded;
    }
  }
  return exit_code(execute(*p, *q, opts, out));
}

int cmd_dump(const std::string& path, const std::string& query,
             const Options& opts, std::ostream& out, std::ostream& err) {
  auto p = load(path, err);
  if (!p) return kError;
  auto q = load_query(query, err);
  if (!q) return kError;
  ExpansionOutcome outcome = ExpansionOutcome::kComplete;
  Goal g = start_goal(*p, *q, opts.run.budget, &outcome);
  out << (opts.format == Format::kDot ? render_dot(g.tree) : render_text(g.tree));
  if (outcome == ExpansionOutcome::kBudgetExceeded) {
    err << "budget-exceeded after " << g.tree.node_count() << " nodes\n";
    return kBudget;
  }
  return kOk;
}

int cmd_corpus(const std::string& dir, const Options& opts, std::ostream& out,
               std::ostream& err) {
  std::error_code ec;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".lp") {
      files.push_back(entry.path());
    }
  }
  if (ec) {
    err << dir << ": " << ec.message() << '\n';
    return kError;
  }
  if (files.empty()) {
    err << dir << ": no .lp files\n";
    return kError;
  }
  std::sort(files.begin(), files.end());

  std::vector<std::future<CorpusRow>> jobs;
  jobs.reserve(files.size());
  for (const fs::path& f : files) {
    jobs.push_back(std::async(std::launch::async, corpus_entry, f, opts));
  }
  std::vector<CorpusRow> rows;
  for (auto& j : jobs) rows.push_back(j.get());

  std::size_t width = std::string_view("program").size();
  for (const CorpusRow& r : rows) width = std::max(width, r.program.size());
  auto line = [&](std::string_view a, std::string_view b, std::string_view c,
                  std::string_view d, std::string_view e) {
    out << std::left << std::setw(static_cast<int>(width) + 2) << a
        << std::setw(11) << b << std::setw(12) << c << std::setw(19) << d << e
        << '\n';
  };
  line("program", "gc", "gc-time", "run", "");
  bool ok = true;
  for (const CorpusRow& r : rows) {
    line(r.program, r.verdict, r.elapsed, r.status,
         r.mismatches.empty() ? "ok" : "MISMATCH");
  }
  for (const CorpusRow& r : rows) {
    for (const std::string& m : r.mismatches) {
      ok = false;
      err << "mismatch: " << r.program << ": " << m << '\n';
    }
  }
  return ok ? kOk : kMismatch;
}

int main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"Guarded corecursive logic-programming engine", "coalp"};
  app.require_subcommand(1);

  Options opts;
  std::string engine = "coalp";
  std::string format = "text";
  std::string path;
  std::string query;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--max-nodes", opts.run.budget.max_nodes,
                    "Tree node budget")->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-depth", opts.run.budget.max_depth,
                    "Tree depth budget (also the SLD depth limit)")
        ->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--observe-depth", opts.run.observe_depth,
                    "Derivation steps for coinductive queries")
        ->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--max-solutions", opts.run.max_solutions,
                    "Number of answers to enumerate")
        ->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--max-steps", opts.run.max_steps,
                    "Derivation steps for inductive queries")
        ->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--gc3-steps", opts.gc3.step_limit,
                    "Derivation steps explored per clause head by GC3")
        ->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--engine", engine, "coalp or sld")
        ->capture_default_str()->check(CLI::IsMember({"coalp", "sld"}));
    sub->add_flag("--force", opts.force, "Run programs that fail the checks");
    sub->add_flag("--trace", opts.trace, "Print derivation traces");
    sub->add_option("--format", format, "text or dot")
        ->capture_default_str()->check(CLI::IsMember({"text", "dot"}));
  };

  CLI::App* check = app.add_subcommand("check", "Run guardedness checks GC1-GC3");
  check->add_option("file", path, "Program file")->required();
  common(check);
  CLI::App* run = app.add_subcommand("run", "Run a query");
  run->add_option("file", path, "Program file")->required();
  run->add_option("query", query, "Atomic goal")->required();
  common(run);
  CLI::App* dump = app.add_subcommand("dump", "Print the coinductive tree of a query");
  dump->add_option("file", path, "Program file")->required();
  dump->add_option("query", query, "Atomic goal")->required();
  common(dump);
  CLI::App* corpus = app.add_subcommand("corpus", "Check and run every .lp file in a directory");
  corpus->add_option("dir", path, "Corpus directory")->required();
  common(corpus);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kError;
  }
  opts.engine = engine == "sld" ? Engine::kSld : Engine::kCoalp;
  opts.format = format == "dot" ? Format::kDot : Format::kText;

  if (check->parsed()) return cmd_check(path, opts, out, err);
  if (run->parsed()) return cmd_run(path, query, opts, out, err);
  if (dump->parsed()) return cmd_dump(path, query, opts, out, err);
  return cmd_corpus(path, opts, out, err);
}

}  // namespace coalp::cli
