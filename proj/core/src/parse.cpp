#include "qfsplit/polynomial.hpp"

#include <cctype>
#include <limits>

namespace qfsplit {

ParseError::ParseError(const std::string& message, std::size_t position)
    : InputError("parse error at position " + std::to_string(position) + ": " + message),
      position_(position) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

  Polynomial parse() {
    Polynomial result = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

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

  Polynomial expr() {
    skip_ws();
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Polynomial acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  std::uint64_t exponent() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '-') fail("negative exponent");
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail("expected exponent after '^'");
    }
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > static_cast<std::uint64_t>(std::numeric_limits<Monomial::Exponent>::max())) {
        fail("exponent too large");
      }
      ++pos_;
    }
    return v;
  }

  Polynomial factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::uint64_t p = ring_->characteristic();
      std::uint64_t v = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = (v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0')) % p;
        ++pos_;
      }
      return Polynomial::constant(ring_, static_cast<Coeff>(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = text_.substr(start, pos_ - start);
      const auto index = ring_->index_of(name);
      if (!index) {
        pos_ = start;
        fail("unknown variable '" + std::string(name) + "'");
      }
      Monomial m(ring_->nvars());
      std::uint64_t e = 1;
      if (accept('^')) e = exponent();
      m.set(*index, static_cast<Monomial::Exponent>(e));
      return Polynomial::monomial(ring_, std::move(m), 1);
    }
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      if (accept('^')) inner = power(inner, exponent());
      return inner;
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) {
  return Parser(text, ring).parse();
}

}  // namespace qfsplit
