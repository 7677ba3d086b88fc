#include "tempinv/sexpr.hpp"

#include <cctype>

namespace tempinv {

namespace {

class Lexer {
 public:
  Lexer(const std::string& text, std::string file)
      : text_(text), file_(std::move(file)) {}

  bool eof() {
    skip_space();
    return i_ >= text_.size();
  }

  bool at_end() const { return i_ >= text_.size(); }
  char peek() const { return text_[i_]; }
  SourcePos pos() const { return pos_; }

  char advance() {
    char c = text_[i_++];
    if (c == '\n') {
      pos_.line++;
      pos_.col = 1;
    } else {
      pos_.col++;
    }
    return c;
  }

  void skip_space() {
    while (i_ < text_.size()) {
      char c = text_[i_];
      if (c == ';') {  // comment to end of line
        while (i_ < text_.size() && text_[i_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(SourcePos p, const std::string& msg) const {
    throw ParseError(file_, p, msg);
  }

 private:
  const std::string& text_;
  std::string file_;
  size_t i_ = 0;
  SourcePos pos_;
};

Sexpr parse_one(Lexer& lx) {
  if (lx.eof()) lx.fail(lx.pos(), "unexpected end of input");
  SourcePos start = lx.pos();
  char c = lx.peek();
  if (c == ')') lx.fail(start, "unexpected ')'");
  if (c == '(') {
    lx.advance();
    Sexpr list;
    list.is_list = true;
    list.pos = start;
    while (true) {
      if (lx.eof()) lx.fail(start, "unterminated '('");
      if (lx.peek() == ')') {
        lx.advance();
        return list;
      }
      list.items.push_back(parse_one(lx));
    }
  }
  Sexpr atom;
  atom.pos = start;
  std::string s;
  while (!lx.at_end()) {
    char d = lx.peek();
    if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' ||
        d == ';')
      break;
    s.push_back(static_cast<char>(
        std::tolower(static_cast<unsigned char>(lx.advance()))));
  }
  if (s.empty()) lx.fail(start, "empty token");
  atom.atom = s;
  return atom;
}

}  // namespace

std::vector<Sexpr> parse_sexprs(const std::string& text,
                                const std::string& filename) {
  Lexer lx(text, filename);
  std::vector<Sexpr> forms;
  while (!lx.eof()) forms.push_back(parse_one(lx));
  return forms;
}

std::string print_sexpr(const Sexpr& e) {
  if (!e.is_list) return e.atom;
  std::string out = "(";
  for (size_t i = 0; i < e.items.size(); ++i) {
    if (i) out += ' ';
    out += print_sexpr(e.items[i]);
  }
  out += ')';
  return out;
}

}  // namespace tempinv
