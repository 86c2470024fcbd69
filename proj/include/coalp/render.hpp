#pragma once

#include <string>

#include "coalp/cotree.hpp"

namespace coalp {

/// One node per line, two spaces of indent per level. Or-nodes print as
/// `• clause k`, fact leaves as `[]box`, and open and-nodes carry a
/// `(frontier)` or `(dead-end)` suffix.
std::string render_text(const CoTree& t);

/// DOT digraph: and-nodes are ellipses, or-nodes points, fact leaves boxes
/// labelled □.
std::string render_dot(const CoTree& t);

}  // namespace coalp
