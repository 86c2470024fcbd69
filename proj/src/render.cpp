#include "coalp/render.hpp"

#include <sstream>

namespace coalp {

namespace {

void text_node(const AndNode& n, std::size_t depth, std::ostringstream& os) {
  const std::string indent(2 * depth, ' ');
  os << indent << n.label;
  if (n.status != NodeStatus::kExpanded) os << " (" << to_string(n.status) << ')';
  os << '\n';
  for (const OrNode& o : n.or_children) {
    os << indent << "  • clause " << o.clause_index << '\n';
    if (o.is_box()) os << indent << "    []box\n";
    for (const AndNode& c : o.and_children) text_node(c, depth + 2, os);
  }
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

class DotWriter {
 public:
  explicit DotWriter(std::ostringstream& os) : os_(os) {}

  std::size_t and_node(const AndNode& n) {
    const std::size_t id = next_++;
    os_ << "  n" << id << " [shape=ellipse, label=\"" << dot_escape(to_string(n.label));
    if (n.status != NodeStatus::kExpanded) os_ << "\\n(" << to_string(n.status) << ')';
    os_ << "\"];\n";
    for (const OrNode& o : n.or_children) {
      const std::size_t oid = next_++;
      os_ << "  n" << oid << " [shape=point, xlabel=\"" << o.clause_index << "\"];\n";
      os_ << "  n" << id << " -> n" << oid << ";\n";
      if (o.is_box()) {
        const std::size_t bid = next_++;
        os_ << "  n" << bid << " [shape=box, label=\"□\"];\n";
        os_ << "  n" << oid << " -> n" << bid << ";\n";
      }
      for (const AndNode& c : o.and_children) {
        const std::size_t cid = and_node(c);
        os_ << "  n" << oid << " -> n" << cid << ";\n";
      }
    }
    return id;
  }

 private:
  std::ostringstream& os_;
  std::size_t next_ = 0;
};

}  // namespace

std::string render_text(const CoTree& t) {
  std::ostringstream os;
  text_node(t.root(), 0, os);
  return os.str();
}

std::string render_dot(const CoTree& t) {
  std::ostringstream os;
  os << "digraph cotree {\n  node [fontname=\"monospace\"];\n";
  DotWriter(os).and_node(t.root());
  os << "}\n";
  return os.str();
}

}  // namespace coalp
