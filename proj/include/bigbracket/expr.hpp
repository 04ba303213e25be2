#ifndef BIGBRACKET_EXPR_HPP
#define BIGBRACKET_EXPR_HPP

// Text form of elements of B.
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := RATIONAL | wedge | '[' expr ',' expr ']' | '(' expr ')'
//   wedge  := atom ('^' atom)*
//   atom   := IDENT | IDENT '\''
//
// '*' and '^' both multiply in B; '[,]' is the big bracket.

#include <cctype>

#include "bigbracket/bracket.hpp"

namespace bigbracket {

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view src, SpacePtr space) : src_(src), space_(std::move(space)) {}

  Element parse() {
    Element e = expr();
    skip();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("syntax error at position " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  char peek() {
    skip();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  Element expr() {
    Scalar sign = 1;
    if (accept('-')) sign = -1;
    else accept('+');
    Element out = term() * sign;
    for (;;) {
      if (accept('+')) out += term();
      else if (accept('-')) out -= term();
      else return out;
    }
  }

  Element term() {
    Element out = factor();
    while (accept('*')) out = wedge(out, factor());
    return out;
  }

  Element factor() {
    char c = peek();
    if (c == '[') {
      ++pos_;
      Element a = expr();
      expect(',');
      Element b = expr();
      expect(']');
      return big_bracket(a, b);
    }
    if (c == '(') {
      ++pos_;
      Element a = expr();
      expect(')');
      return a;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Element::scalar(space_, rational());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      Element out = atom();
      while (accept('^')) out = wedge(out, atom());
      return out;
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return std::string(src_.substr(start, pos_ - start));
  }

  Scalar rational() {
    skip();
    std::string num = digits();
    if (!accept('/')) return Scalar(mpz_class(num));
    skip();
    std::size_t at = pos_;
    mpz_class den(digits());
    if (den == 0) {
      pos_ = at;
      fail("zero denominator");
    }
    Scalar q(mpz_class(num), den);
    q.canonicalize();
    return q;
  }

  Element atom() {
    skip();
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    std::string name(src_.substr(start, pos_ - start));
    if (name.empty() || std::isdigit(static_cast<unsigned char>(name[0]))) {
      pos_ = start;
      fail("expected a generator name");
    }
    bool is_dual = pos_ < src_.size() && src_[pos_] == '\'';
    if (is_dual) ++pos_;
    auto idx = space_->find(name);
    if (!idx) {
      pos_ = start;
      throw InputError("unknown generator '" + name + "' at position " + std::to_string(start));
    }
    return Element::generator(space_, is_dual ? dual(*idx) : primal(*idx));
  }

  std::string_view src_;
  SpacePtr space_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Element parse_expr(std::string_view src, const SpacePtr& space) {
  return detail::ExprParser(src, space).parse();
}

/// Canonical text: terms in monomial order, explicit signs, coefficient
/// "p/q*" omitted when 1, atoms joined by '^', duals marked with '.
inline std::string print_element(const Element& a) {
  if (a.is_zero()) return "0";
  const GradedSpace& s = a.graded_space();
  std::string out;
  bool first = true;
  for (const auto& [m, c] : a.terms()) {
    Scalar mag = abs(c);
    if (first) out += c < 0 ? "-" : "";
    else out += c < 0 ? " - " : " + ";
    first = false;
    if (m.empty()) {
      out += format_scalar(mag);
      continue;
    }
    if (mag != 1) out += format_scalar(mag) + "*";
    bool first_atom = true;
    for (auto g : factors(s, m)) {
      if (!first_atom) out += "^";
      first_atom = false;
      out += s.name(g);
    }
  }
  return out;
}

}  // namespace bigbracket

#endif  // BIGBRACKET_EXPR_HPP
