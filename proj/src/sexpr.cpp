#include "sexpr.hpp"

#include <cctype>

namespace ll::sexpr {

namespace {

struct Reader {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size()) {
      char c = text[pos];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
      } else if (c == ';') {  // comment to end of line
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ll::ParseError(msg, pos);
  }

  Node node() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of s-expression");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      Node n;
      while (true) {
        skip_ws();
        if (pos >= text.size()) fail("unterminated list");
        if (text[pos] == ')') {
          ++pos;
          return n;
        }
        n.items.push_back(node());
      }
    }
    if (c == ')') fail("unexpected ')'");
    if (c == '"') {
      ++pos;
      Node n;
      n.is_atom = true;
      n.quoted = true;
      while (pos < text.size() && text[pos] != '"') {
        if (text[pos] == '\\' && pos + 1 < text.size()) ++pos;
        n.atom += text[pos++];
      }
      if (pos >= text.size()) fail("unterminated string");
      ++pos;
      return n;
    }
    Node n;
    n.is_atom = true;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')' && text[pos] != '"')
      n.atom += text[pos++];
    if (n.atom.empty()) fail("empty atom");
    return n;
  }
};

}  // namespace

Node parse(const std::string& text) {
  Reader r{text};
  Node n = r.node();
  r.skip_ws();
  if (r.pos != text.size()) r.fail("trailing input after s-expression");
  return n;
}

std::string quote(const std::string& raw) {
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace ll::sexpr
