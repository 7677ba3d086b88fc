// S-expression reader used by the PDDL frontend and the canonical-domain
// format. Atoms are lower-cased on read (PDDL identifiers are
// case-insensitive); source positions are kept for diagnostics.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tempinv {

struct SourcePos {
  int line = 1;
  int col = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string file, SourcePos pos, const std::string& msg)
      : std::runtime_error(file + ":" + std::to_string(pos.line) + ":" +
                           std::to_string(pos.col) + ": " + msg),
        file_(std::move(file)),
        pos_(pos) {}

  const std::string& file() const { return file_; }
  SourcePos pos() const { return pos_; }

 private:
  std::string file_;
  SourcePos pos_;
};

struct Sexpr {
  bool is_list = false;
  std::string atom;          // valid when !is_list
  std::vector<Sexpr> items;  // valid when is_list
  SourcePos pos;

  bool is_sym(const std::string& s) const { return !is_list && atom == s; }
  // Head symbol of a list, or "" for empty lists / atoms.
  const std::string& head() const {
    static const std::string empty;
    if (!is_list || items.empty() || items[0].is_list) return empty;
    return items[0].atom;
  }
};

// Parses all top-level forms. Throws ParseError on malformed input.
std::vector<Sexpr> parse_sexprs(const std::string& text,
                                const std::string& filename);

std::string print_sexpr(const Sexpr& e);

}  // namespace tempinv
