// Minimal s-expression reader shared by the proof and program serializers.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ll/formula.hpp"  // ParseError

namespace ll::sexpr {

struct Node {
  bool is_atom = false;
  std::string atom;          // atoms and quoted strings (unescaped)
  bool quoted = false;       // true when the atom came from a "..." string
  std::vector<Node> items;   // list contents
};

Node parse(const std::string& text);  // throws ll::ParseError

std::string quote(const std::string& raw);

}  // namespace ll::sexpr
