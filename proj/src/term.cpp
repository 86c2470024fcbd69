#include "coalp/term.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <variant>

namespace coalp {

struct Term::Node {
  struct Compound {
    std::string functor;
    std::vector<Term> args;
  };
  std::variant<Var, Compound> data;
};

Term Term::variable(std::string name, std::uint32_t index) {
  return variable(Var{std::move(name), index});
}

Term Term::variable(Var v) {
  return Term(std::make_shared<const Node>(Node{std::move(v)}));
}

Term Term::compound(std::string functor, std::vector<Term> args) {
  if (functor.empty()) {
    throw std::invalid_argument("empty functor name");
  }
  return Term(std::make_shared<const Node>(
      Node{Node::Compound{std::move(functor), std::move(args)}}));
}

Term Term::cons(Term head, Term tail) {
  return compound(kConsFunctor, {std::move(head), std::move(tail)});
}

Term Term::nil() {
  static const Term kNil = compound(kNilFunctor);
  return kNil;
}

Term Term::list(std::vector<Term> elems, Term tail) {
  Term out = std::move(tail);
  for (auto it = elems.rbegin(); it != elems.rend(); ++it) {
    out = cons(*it, out);
  }
  return out;
}

bool Term::is_variable() const {
  return std::holds_alternative<Var>(node_->data);
}

const Var& Term::var() const { return std::get<Var>(node_->data); }

const std::string& Term::functor() const {
  return std::get<Node::Compound>(node_->data).functor;
}

std::span<const Term> Term::args() const {
  if (is_variable()) return {};
  return std::get<Node::Compound>(node_->data).args;
}

bool Term::is_cons() const {
  return is_compound() && arity() == 2 && functor() == kConsFunctor;
}

bool Term::is_nil() const {
  return is_compound() && arity() == 0 && functor() == kNilFunctor;
}

bool Term::is_ground() const {
  if (is_variable()) return false;
  return std::all_of(args().begin(), args().end(),
                     [](const Term& a) { return a.is_ground(); });
}

std::size_t Term::depth() const {
  std::size_t d = 0;
  for (const Term& a : args()) d = std::max(d, a.depth());
  return is_variable() || arity() == 0 ? 1 : d + 1;
}

std::size_t Term::size() const {
  std::size_t n = 1;
  for (const Term& a : args()) n += a.size();
  return n;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_variable() != b.is_variable()) return false;
  if (a.is_variable()) return a.var() == b.var();
  if (a.functor() != b.functor() || a.arity() != b.arity()) return false;
  auto as = a.args();
  auto bs = b.args();
  return std::equal(as.begin(), as.end(), bs.begin());
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  // Variables sort before compounds.
  if (a.is_variable() != b.is_variable()) {
    return a.is_variable() ? std::strong_ordering::less
                           : std::strong_ordering::greater;
  }
  if (a.is_variable()) return a.var() <=> b.var();
  if (auto c = a.arity() <=> b.arity(); c != 0) return c;
  if (auto c = a.functor().compare(b.functor()); c != 0) {
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  auto as = a.args();
  auto bs = b.args();
  for (std::size_t i = 0; i < as.size(); ++i) {
    if (auto c = as[i] <=> bs[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
  if (auto c = a.predicate.compare(b.predicate); c != 0) {
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (auto c = a.args.size() <=> b.args.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (auto c = a.args[i] <=> b.args[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

void collect_vars(const Term& t, std::vector<Var>& out) {
  if (t.is_variable()) {
    if (std::find(out.begin(), out.end(), t.var()) == out.end()) {
      out.push_back(t.var());
    }
    return;
  }
  for (const Term& a : t.args()) collect_vars(a, out);
}

void collect_vars(const Atom& a, std::vector<Var>& out) {
  for (const Term& t : a.args) collect_vars(t, out);
}

std::vector<Var> vars_of(const Term& t) {
  std::vector<Var> out;
  collect_vars(t, out);
  return out;
}

std::vector<Var> vars_of(const Atom& a) {
  std::vector<Var> out;
  collect_vars(a, out);
  return out;
}

std::vector<Var> vars_of(std::span<const Atom> atoms) {
  std::vector<Var> out;
  for (const Atom& a : atoms) collect_vars(a, out);
  return out;
}

bool occurs(const Var& v, const Term& t) {
  if (t.is_variable()) return t.var() == v;
  return std::any_of(t.args().begin(), t.args().end(),
                     [&](const Term& a) { return occurs(v, a); });
}

bool occurs(const Var& v, const Atom& a) {
  return std::any_of(a.args.begin(), a.args.end(),
                     [&](const Term& t) { return occurs(v, t); });
}

namespace {

std::size_t count_symbol(const Term& t, const Signature& f) {
  if (t.is_variable()) return 0;
  std::size_t n = (t.functor() == f.name && t.arity() == f.arity) ? 1 : 0;
  for (const Term& a : t.args()) n += count_symbol(a, f);
  return n;
}

void collect_symbols(const Term& t, std::set<Signature>& out) {
  if (t.is_variable()) return;
  out.insert({t.functor(), t.arity()});
  for (const Term& a : t.args()) collect_symbols(a, out);
}

void write_term(std::ostream& os, const Term& t);

void write_args(std::ostream& os, std::span<const Term> args) {
  os << '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) os << ',';
    write_term(os, args[i]);
  }
  os << ')';
}

void write_term(std::ostream& os, const Term& t) {
  if (t.is_variable()) {
    os << t.var();
    return;
  }
  if (t.is_cons()) {
    os << '[';
    write_term(os, t.args()[0]);
    Term rest = t.args()[1];
    while (rest.is_cons()) {
      os << ", ";
      write_term(os, rest.args()[0]);
      rest = rest.args()[1];
    }
    if (!rest.is_nil()) {
      os << '|';
      write_term(os, rest);
    }
    os << ']';
    return;
  }
  os << t.functor();
  if (t.arity() > 0) write_args(os, t.args());
}

}  // namespace

std::size_t count_symbol(const Atom& a, const Signature& f) {
  std::size_t n = 0;
  for (const Term& t : a.args) n += count_symbol(t, f);
  return n;
}

std::set<Signature> symbols_of(const Atom& a) {
  std::set<Signature> out;
  for (const Term& t : a.args) collect_symbols(t, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Var& v) {
  os << v.name;
  if (v.index != 0) os << '_' << v.index;
  return os;
}

std::ostream& operator<<(std::ostream& os, const Term& t) {
  write_term(os, t);
  return os;
}

std::ostream& operator<<(std::ostream& os, const Atom& a) {
  os << a.predicate;
  if (!a.args.empty()) write_args(os, a.args);
  return os;
}

std::ostream& operator<<(std::ostream& os, const Clause& c) {
  os << c.head;
  if (!c.body.empty()) {
    os << " :- ";
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      if (i) os << ", ";
      os << c.body[i];
    }
  }
  return os << '.';
}

template <typename T>
static std::string stringify(const T& value) {
  std::ostringstream os;
  os << value;
  return os.str();
}

std::string to_string(const Var& v) { return stringify(v); }
std::string to_string(const Term& t) { return stringify(t); }
std::string to_string(const Atom& a) { return stringify(a); }
std::string to_string(const Clause& c) { return stringify(c); }

std::string to_string(const Program& p) {
  std::ostringstream os;
  for (const Signature& s : p.coinductive) {
    os << ":- coinductive " << s.name << '/' << s.arity << ".\n";
  }
  for (const Clause& c : p.clauses) os << c << '\n';
  return os.str();
}

}  // namespace coalp
