#include "mixsum/number_expr.hpp"

#include <cctype>
#include <string>

namespace mixsum {

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  BigInt parse() {
    BigInt v = sum();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return v;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  BigInt sum() {
    BigInt v = product();
    for (;;) {
      if (accept('+')) {
        v += product();
      } else if (accept('-')) {
        v -= product();
      } else {
        return v;
      }
    }
  }

  BigInt product() {
    BigInt v = power();
    while (accept('*')) v *= power();
    return v;
  }

  BigInt power() {
    BigInt base = atom();
    skip_ws();
    const std::size_t at = pos_;
    if (!accept('^')) return base;
    const BigInt e = power();
    if (sgn(e) < 0 || e > 1'000'000) throw ParseError("exponent out of range", at);
    return pow_ui(base, e.get_ui());
  }

  BigInt atom() {
    skip_ws();
    if (accept('(')) {
      BigInt v = sum();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return v;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected a number", pos_);
    return BigInt(std::string(text_.substr(start, pos_ - start)), 10);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

BigInt parse_number_expr(std::string_view text) { return ExprParser(text).parse(); }

std::uint64_t parse_u64_expr(std::string_view text) {
  const BigInt v = parse_number_expr(text);
  if (!fits_u64(v)) throw Error("'" + std::string(text) + "' is not in [0, 2^64)");
  return to_u64(v);
}

}  // namespace mixsum
