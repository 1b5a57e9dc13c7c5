#pragma once

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>

#include "pinch4/errors.hpp"

namespace pinch4 {

// Arithmetic on decimal literals with + - * /, unary minus, parentheses and sqrt(...).
class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : s_(text) {}

  double parse() {
    const double v = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  double sum() {
    double v = product();
    for (;;) {
      skip();
      if (eat('+'))
        v += product();
      else if (eat('-'))
        v -= product();
      else
        return v;
    }
  }

  double product() {
    double v = unary();
    for (;;) {
      skip();
      if (eat('*'))
        v *= unary();
      else if (eat('/'))
        v /= unary();
      else
        return v;
    }
  }

  double unary() {
    skip();
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return atom();
  }

  double atom() {
    skip();
    if (eat('(')) {
      const double v = sum();
      skip();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (s_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      skip();
      if (!eat('(')) fail("expected '(' after sqrt");
      const double v = sum();
      skip();
      if (!eat(')')) fail("expected ')'");
      if (v < 0) fail("sqrt of a negative number");
      return std::sqrt(v);
    }
    const std::string rest(s_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str() || !(std::isdigit(static_cast<unsigned char>(rest[0])) || rest[0] == '.'))
      fail("expected a number");
    pos_ += static_cast<size_t>(end - rest.c_str());
    return v;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::ParseError, what + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  std::string_view s_;
  size_t pos_ = 0;
};

inline double parse_expr(std::string_view text) { return ExprParser(text).parse(); }

}  // namespace pinch4
