#include <string>
#include <vector>

#include "fel/error.hpp"
#include "fel/expr.hpp"

namespace fel {

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found)
    : Error([&] {
        std::string msg = "syntax error at offset " + std::to_string(offset) + ": expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? ", " : "") + expected[i];
        return msg + "; found " + found;
      }()),
      offset_(offset),
      expected_(std::move(expected)) {}

namespace {

const std::vector<std::string> kOperand = {"'!'", "'('", "'T'", "'F'", "'U'", "atom"};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr run() {
    Expr e = parse_or();
    skip_ws();
    if (pos_ != text_.size()) fail({"'&'", "'|'", "end of input"});
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r'))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
    throw ParseError(pos_, std::move(expected), found);
  }

  Expr parse_or() {
    Expr e = parse_and();
    while (accept('|')) e = e | parse_and();
    return e;
  }

  Expr parse_and() {
    Expr e = parse_unary();
    while (accept('&')) e = e & parse_unary();
    return e;
  }

  Expr parse_unary() {
    if (accept('!')) return !parse_unary();
    return parse_primary();
  }

  Expr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail(kOperand);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = parse_or();
      if (!accept(')')) fail({"'&'", "'|'", "')'"});
      return e;
    }
    if (c == 'T' || c == 'F' || c == 'U') {
      ++pos_;
      return c == 'T' ? Expr::top() : c == 'F' ? Expr::bottom() : Expr::undefined();
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && ((text_[pos_] >= 'a' && text_[pos_] <= 'z') ||
                                     (text_[pos_] >= '0' && text_[pos_] <= '9') || text_[pos_] == '_'))
        ++pos_;
      return Expr::atom(text_.substr(start, pos_ - start));
    }
    fail(kOperand);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

}  // namespace fel
