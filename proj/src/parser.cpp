#include "coalp/parser.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace coalp {

namespace {

enum class Tok {
  kName,
  kVariable,
  kInteger,
  kLParen,
  kRParen,
  kLBracket,
  kRBracket,
  kComma,
  kBar,
  kSlash,
  kNeck,  // :-
  kDot,
  kEnd,
  kInvalid,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::kEnd:
      return "end of input";
    case Tok::kInvalid:
      return "invalid character '" + t.text + "'";
    default:
      return "'" + t.text + "'";
  }
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_layout();
    Token t;
    t.line = line_;
    t.column = column_;
    if (pos_ >= src_.size()) return t;
    const char c = src_[pos_];
    const auto uc = static_cast<unsigned char>(c);
    if (std::islower(uc)) {
      t.kind = Tok::kName;
      t.text = take_while(is_ident_char);
    } else if (std::isupper(uc) || c == '_') {
      t.kind = Tok::kVariable;
      t.text = take_while(is_ident_char);
    } else if (std::isdigit(uc)) {
      t.kind = Tok::kInteger;
      t.text = take_while(
          [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
    } else if (c == ':' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
      t.kind = Tok::kNeck;
      t.text = ":-";
      advance(2);
    } else {
      t.text = std::string(1, c);
      switch (c) {
        case '(': t.kind = Tok::kLParen; break;
        case ')': t.kind = Tok::kRParen; break;
        case '[': t.kind = Tok::kLBracket; break;
        case ']': t.kind = Tok::kRBracket; break;
        case ',': t.kind = Tok::kComma; break;
        case '|': t.kind = Tok::kBar; break;
        case '/': t.kind = Tok::kSlash; break;
        case '.': t.kind = Tok::kDot; break;
        default: t.kind = Tok::kInvalid; break;
      }
      advance(1);
    }
    return t;
  }

 private:
  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
      ++pos_;
    }
  }

  void skip_layout() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
      } else {
        break;
      }
    }
  }

  template <typename Pred>
  std::string take_while(Pred pred) {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && pred(src_[pos_])) advance(1);
    return std::string(src_.substr(start, pos_ - start));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

struct SyntaxError {
  Diagnostic diagnostic;
};

constexpr std::size_t kMaxNesting = 256;

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { look_ = lexer_.next(); }

  const Token& peek() const { return look_; }
  bool at_end() const { return look_.kind == Tok::kEnd; }

  Token take() {
    Token t = std::move(look_);
    look_ = lexer_.next();
    return t;
  }

  [[noreturn]] void fail(const Token& at, std::string message) {
    throw SyntaxError{Diagnostic{Severity::kError, at.line, at.column,
                                 std::move(message)}};
  }

  Token expect(Tok kind, const char* what) {
    if (look_.kind != kind) {
      fail(look_, std::string("expected ") + what + " but found " +
                      describe(look_));
    }
    return take();
  }

  // Skips to just past the next '.' so later clauses are still checked.
  void recover() {
    while (look_.kind != Tok::kEnd && look_.kind != Tok::kDot) take();
    if (look_.kind == Tok::kDot) take();
  }

  void reset_clause_scope() { anonymous_ = 0; }

  Atom atom() {
    if (look_.kind != Tok::kName) {
      fail(look_, "expected predicate name but found " + describe(look_));
    }
    Token name = take();
    Atom a{name.text, {}};
    if (look_.kind == Tok::kLParen) {
      Token open = take();
      a.args = arguments(open, 0);
    }
    return a;
  }

  Term term(std::size_t depth) {
    if (depth > kMaxNesting) fail(look_, "term nesting too deep");
    switch (look_.kind) {
      case Tok::kVariable: {
        Token v = take();
        if (v.text == "_") {
          return Term::variable("_G" + std::to_string(++anonymous_));
        }
        return Term::variable(v.text);
      }
      case Tok::kInteger:
        return Term::constant(take().text);
      case Tok::kName: {
        Token name = take();
        if (look_.kind == Tok::kLParen) {
          Token open = take();
          return Term::compound(name.text, arguments(open, depth + 1));
        }
        return Term::constant(name.text);
      }
      case Tok::kLBracket:
        return list(depth + 1);
      default:
        fail(look_, "expected term but found " + describe(look_));
    }
  }

 private:
  std::vector<Term> arguments(const Token& open, std::size_t depth) {
    std::vector<Term> args;
    args.push_back(term(depth));
    while (look_.kind == Tok::kComma) {
      take();
      args.push_back(term(depth));
    }
    if (look_.kind != Tok::kRParen) {
      fail(look_, "unbalanced parenthesis: '(' opened at " +
                      std::to_string(open.line) + ":" +
                      std::to_string(open.column) + " is not closed before " +
                      describe(look_));
    }
    take();
    return args;
  }

  Term list(std::size_t depth) {
    if (depth > kMaxNesting) fail(look_, "term nesting too deep");
    Token open = take();
    if (look_.kind == Tok::kRBracket) {
      take();
      return Term::nil();
    }
    std::vector<Term> elems;
    elems.push_back(term(depth));
    while (look_.kind == Tok::kComma) {
      take();
      elems.push_back(term(depth));
    }
    Term tail = Term::nil();
    if (look_.kind == Tok::kBar) {
      take();
      tail = term(depth);
    }
    if (look_.kind != Tok::kRBracket) {
      fail(look_, "unbalanced bracket: '[' opened at " +
                      std::to_string(open.line) + ":" +
                      std::to_string(open.column) + " is not closed before " +
                      describe(look_));
    }
    take();
    return Term::list(std::move(elems), std::move(tail));
  }

  Lexer lexer_;
  Token look_;
  std::size_t anonymous_ = 0;
};

struct Declaration {
  Signature signature;
  std::size_t line = 0;
  std::size_t column = 0;
};

}  // namespace

std::string to_string(const Diagnostic& d) {
  std::ostringstream os;
  os << d.line << ':' << d.column << ": "
     << (d.severity == Severity::kError ? "error" : "warning") << ": "
     << d.message;
  return os.str();
}

std::vector<Diagnostic> ParseResult::errors() const {
  std::vector<Diagnostic> out;
  for (const Diagnostic& d : diagnostics) {
    if (d.severity == Severity::kError) out.push_back(d);
  }
  return out;
}

ParseResult parse_program(std::string_view src) {
  ParseResult result;
  Program program;
  std::vector<Declaration> declarations;
  // First clause line mentioning each predicate, head or body.
  std::map<Signature, std::size_t> first_use;
  std::map<std::string, std::set<std::size_t>> arities;
  std::set<Signature> heads;
  bool failed = false;

  Parser p(src);
  while (!p.at_end()) {
    const Token start = p.peek();
    try {
      p.reset_clause_scope();
      if (start.kind == Tok::kNeck) {
        p.take();
        const Token kw = p.peek();
        if (kw.kind != Tok::kName || kw.text != "coinductive") {
          p.fail(kw, "unknown directive " + describe(kw));
        }
        p.take();
        do {
          if (p.peek().kind == Tok::kComma) p.take();
          Token name = p.expect(Tok::kName, "predicate name");
          p.expect(Tok::kSlash, "'/'");
          Token arity = p.expect(Tok::kInteger, "arity");
          if (arity.text.size() > 6) p.fail(arity, "arity out of range");
          declarations.push_back(
              {{name.text, std::stoul(arity.text)}, name.line, name.column});
        } while (p.peek().kind == Tok::kComma);
        p.expect(Tok::kDot, "'.' after directive");
        continue;
      }
      Clause clause;
      clause.head = p.atom();
      if (p.peek().kind == Tok::kNeck) {
        p.take();
        clause.body.push_back(p.atom());
        while (p.peek().kind == Tok::kComma) {
          p.take();
          clause.body.push_back(p.atom());
        }
      }
      p.expect(Tok::kDot, "'.' at end of clause");
      clause.source_index = program.clauses.size() + 1;
      auto note_use = [&](const Atom& a) {
        first_use.emplace(signature(a), start.line);
        arities[a.predicate].insert(a.arity());
      };
      note_use(clause.head);
      for (const Atom& b : clause.body) note_use(b);
      heads.insert(signature(clause.head));
      program.clauses.push_back(std::move(clause));
    } catch (const SyntaxError& e) {
      result.diagnostics.push_back(e.diagnostic);
      failed = true;
      p.recover();
    }
  }

  for (const Declaration& d : declarations) {
    auto warn = [&](std::string message) {
      result.diagnostics.push_back(
          {Severity::kWarning, d.line, d.column, std::move(message)});
    };
    const std::string shown =
        d.signature.name + "/" + std::to_string(d.signature.arity);
    if (!heads.contains(d.signature)) {
      auto it = arities.find(d.signature.name);
      if (it != arities.end() && !it->second.contains(d.signature.arity)) {
        warn("coinductive declaration " + shown +
             " does not match the arity used in clauses");
      } else {
        warn("coinductive declaration " + shown +
             " names no predicate defined by a clause head; ignored");
      }
      continue;
    }
    if (auto it = first_use.find(d.signature);
        it != first_use.end() && it->second < d.line) {
      warn("coinductive declaration " + shown + " follows its first use");
    }
    program.coinductive.insert(d.signature);
  }

  if (!failed) result.program = std::move(program);
  return result;
}

QueryResult parse_query(std::string_view src) {
  QueryResult result;
  Parser p(src);
  try {
    Atom a = p.atom();
    if (p.peek().kind == Tok::kComma) {
      p.fail(p.peek(), "atomic goal required; conjunctions are not supported");
    }
    if (p.peek().kind == Tok::kDot) p.take();
    if (!p.at_end()) {
      p.fail(p.peek(), "unexpected " + describe(p.peek()) + " after query");
    }
    result.atom = std::move(a);
  } catch (const SyntaxError& e) {
    result.error = e.diagnostic;
  }
  return result;
}

}  // namespace coalp
