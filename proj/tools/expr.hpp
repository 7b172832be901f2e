#pragma once
// Schedule expressions for experiment sizes: integer and real arithmetic
// over the single variable n, with + - * / ^ (right associative),
// parentheses, and floor/ceil/log. "n^(5/4)/log(n)" and friends.

#include <cctype>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace triflip_cli {

class ExprParser {
 public:
  ExprParser(const std::string& s, double n) : s_(s), n_(n) {}

  double parse() {
    const double v = expr();
    skip_ws();
    if (pos_ != s_.size()) throw std::invalid_argument("expression: trailing input at '" + rest() + "'");
    return v;
  }

 private:
  double expr() {
    double v = term();
    for (;;) {
      skip_ws();
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }

  double term() {
    double v = factor();
    for (;;) {
      skip_ws();
      if (eat('*'))
        v *= factor();
      else if (eat('/'))
        v /= factor();
      else
        return v;
    }
  }

  double factor() {
    double base = atom();
    skip_ws();
    if (eat('^')) return std::pow(base, factor());
    return base;
  }

  double atom() {
    skip_ws();
    if (eat('-')) return -atom();
    if (eat('(')) {
      const double v = expr();
      expect(')');
      return v;
    }
    if (std::isdigit(peek()) || peek() == '.') {
      std::size_t used = 0;
      const double v = std::stod(s_.substr(pos_), &used);
      pos_ += used;
      return v;
    }
    if (std::isalpha(peek())) {
      std::string name;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) name += s_[pos_++];
      if (name == "n") return n_;
      skip_ws();
      expect('(');
      const double v = expr();
      expect(')');
      if (name == "floor") return std::floor(v);
      if (name == "ceil") return std::ceil(v);
      if (name == "log") return std::log(v);
      if (name == "sqrt") return std::sqrt(v);
      throw std::invalid_argument("expression: unknown function '" + name + "'");
    }
    throw std::invalid_argument("expression: unexpected input at '" + rest() + "'");
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  bool eat(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw std::invalid_argument(std::string("expression: expected '") + c + "'");
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  std::string rest() const { return s_.substr(pos_); }

  std::string s_;
  double n_;
  std::size_t pos_ = 0;
};

// Evaluates and floors to an integer; rejects negative or non-finite results.
inline std::int64_t eval_schedule(const std::string& expr, std::int64_t n) {
  const double v = ExprParser(expr, static_cast<double>(n)).parse();
  if (!std::isfinite(v) || v < 0)
    throw std::invalid_argument("expression '" + expr + "' did not evaluate to a nonnegative number");
  return static_cast<std::int64_t>(std::floor(v));
}

}  // namespace triflip_cli
