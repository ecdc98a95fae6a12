#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <utility>

#include "polyroots/cli.hpp"

namespace polyroots::cli {

namespace {

enum class Tok { number, ident, plus, minus, star, caret, lparen, rparen, lbracket, rbracket, comma, end };

struct Token {
  Token(Tok k, std::size_t c) : kind(k), column(c) {}
  Tok kind;
  std::size_t column; // 1-based, in code points
  double value = 0.0;
  char ident = 0;
  std::string text;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0, column = 1;
  while (i < s.size()) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    const std::size_t here = column;
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      ++column;
      continue;
    }
    // U+2212 MINUS SIGN
    if (c == 0xE2 && i + 2 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0x88 &&
        static_cast<unsigned char>(s[i + 2]) == 0x92) {
      out.push_back({Tok::minus, here});
      i += 3;
      ++column;
      continue;
    }
    if (std::isdigit(c) || c == '.') {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
        ++j;
      if (j < s.size() && s[j] == '.') {
        ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
          ++j;
      }
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-'))
          ++k;
        if (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
          while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k])))
            ++k;
          j = k;
        }
      }
      if (j < s.size() && s[j] == '.')
        throw ParseError("malformed number", here);
      Token t{Tok::number, here};
      t.text = std::string(s.substr(i, j - i));
      const auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + j, t.value);
      if (ec != std::errc() || ptr != s.data() + j)
        throw ParseError("malformed number '" + t.text + "'", here);
      out.push_back(std::move(t));
      column += j - i;
      i = j;
      continue;
    }
    if (std::isalpha(c)) {
      if (c != 'x' && c != 'y' && c != 'i')
        throw ParseError(std::string("unknown symbol '") + static_cast<char>(c) + "'", here);
      Token t{Tok::ident, here};
      t.ident = static_cast<char>(c);
      out.push_back(t);
      ++i;
      ++column;
      continue;
    }
    Tok kind;
    switch (c) {
    case '+': kind = Tok::plus; break;
    case '-': kind = Tok::minus; break;
    case '*': kind = Tok::star; break;
    case '^': kind = Tok::caret; break;
    case '(': kind = Tok::lparen; break;
    case ')': kind = Tok::rparen; break;
    case '[': kind = Tok::lbracket; break;
    case ']': kind = Tok::rbracket; break;
    case ',': kind = Tok::comma; break;
    default:
      throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "'", here);
    }
    out.push_back({kind, here});
    ++i;
    ++column;
  }
  out.push_back({Tok::end, column});
  return out;
}

class Parser {
public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  ParsedPoly parse() {
    if (peek().kind == Tok::end)
      throw ParseError("empty input", peek().column);
    ParsedPoly result = peek().kind == Tok::lbracket ? parse_list() : ParsedPoly(parse_expression());
    expect(Tok::end, "unexpected trailing input");
    return result;
  }

  std::complex<double> parse_literal() {
    bool imaginary = false;
    const std::complex<double> v = complex_literal(imaginary);
    expect(Tok::end, "unexpected trailing input");
    return v;
  }

private:
  const Token &peek() const { return tokens_[pos_]; }
  const Token &take() { return tokens_[pos_++]; }

  void expect(Tok kind, const char *message) {
    if (peek().kind != kind)
      throw ParseError(message, peek().column);
    ++pos_;
  }

  // [sign] number [i] | [sign] i
  std::complex<double> signed_part(bool &is_imaginary) {
    double sign = 1.0;
    if (peek().kind == Tok::plus || peek().kind == Tok::minus)
      sign = take().kind == Tok::minus ? -1.0 : 1.0;
    double magnitude = 1.0;
    bool has_number = false;
    if (peek().kind == Tok::number) {
      magnitude = take().value;
      has_number = true;
    }
    is_imaginary = false;
    if (peek().kind == Tok::ident && peek().ident == 'i') {
      take();
      is_imaginary = true;
    } else if (!has_number) {
      throw ParseError("expected a number", peek().column);
    }
    return is_imaginary ? std::complex<double>(0, sign * magnitude)
                        : std::complex<double>(sign * magnitude, 0);
  }

  std::complex<double> complex_literal(bool &any_imaginary) {
    bool imaginary = false;
    std::complex<double> v = signed_part(imaginary);
    any_imaginary = any_imaginary || imaginary;
    if (!imaginary && (peek().kind == Tok::plus || peek().kind == Tok::minus)) {
      const std::size_t column = peek().column;
      bool second = false;
      v += signed_part(second);
      if (!second)
        throw ParseError("expected an imaginary part", column);
      any_imaginary = true;
    }
    return v;
  }

  ParsedPoly parse_list() {
    expect(Tok::lbracket, "expected '['");
    std::vector<std::complex<double>> values;
    bool any_imaginary = false;
    if (peek().kind != Tok::rbracket) {
      for (;;) {
        values.push_back(complex_literal(any_imaginary));
        if (peek().kind == Tok::comma) {
          take();
          continue;
        }
        break;
      }
    }
    expect(Tok::rbracket, "expected ',' or ']'");
    const Eigen::Index n = static_cast<Eigen::Index>(values.size());
    if (any_imaginary) {
      ComplexPoly::Coefficients c(n);
      for (Eigen::Index k = 0; k < n; ++k)
        c(k) = values[k];
      return ComplexPoly(std::move(c));
    }
    RealPoly::Coefficients c(n);
    for (Eigen::Index k = 0; k < n; ++k)
      c(k) = values[k].real();
    return RealPoly(std::move(c));
  }

  // expr := [+|-] term ((+|-) term)*
  BivarPoly parse_expression() {
    BivarPoly acc;
    bool negate = false;
    if (peek().kind == Tok::plus || peek().kind == Tok::minus)
      negate = take().kind == Tok::minus;
    acc = parse_term();
    if (negate)
      acc = -acc;
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      const bool minus = take().kind == Tok::minus;
      const BivarPoly t = parse_term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  bool starts_factor() const {
    const Token &t = peek();
    return t.kind == Tok::number || t.kind == Tok::lparen ||
           (t.kind == Tok::ident && t.ident != 'i');
  }

  // term := factor ([*] factor)*
  BivarPoly parse_term() {
    BivarPoly acc = parse_factor();
    for (;;) {
      if (peek().kind == Tok::star) {
        take();
        acc = acc * parse_factor();
      } else if (starts_factor()) {
        acc = acc * parse_factor();
      } else {
        return acc;
      }
    }
  }

  // factor := primary [^ integer]
  BivarPoly parse_factor() {
    BivarPoly base = parse_primary();
    if (peek().kind != Tok::caret)
      return base;
    take();
    const Token &e = peek();
    if (e.kind != Tok::number || e.text.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("exponent must be a non-negative integer", e.column);
    take();
    const long power = std::lround(e.value);
    if (power > 64)
      throw ParseError("exponent too large", e.column);
    BivarPoly result = BivarPoly::term(1.0, 0, 0);
    for (long k = 0; k < power; ++k)
      result = result * base;
    return result;
  }

  BivarPoly parse_primary() {
    const Token &t = peek();
    switch (t.kind) {
    case Tok::number:
      take();
      return BivarPoly::term(t.value, 0, 0);
    case Tok::ident:
      if (t.ident == 'x' || t.ident == 'y') {
        take();
        return t.ident == 'x' ? BivarPoly::term(1.0, 1, 0) : BivarPoly::term(1.0, 0, 1);
      }
      throw ParseError("'i' is only allowed in coefficient lists", t.column);
    case Tok::lparen: {
      take();
      BivarPoly inner = parse_expression();
      expect(Tok::rparen, "expected ')'");
      return inner;
    }
    default:
      throw ParseError("expected a number, variable or '('", t.column);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

ParsedPoly parse_poly(std::string_view text) { return Parser(text).parse(); }

std::complex<double> parse_number(std::string_view text) { return Parser(text).parse_literal(); }

std::string render(const BivarPoly &p) {
  std::string out;
  for (int i = p.deg_x(); i >= 0; --i) {
    for (int j = p.deg_y(); j >= 0; --j) {
      const double c = p.grid()(i, j);
      if (c == 0.0)
        continue;
      const bool negative = std::signbit(c);
      if (out.empty())
        out += negative ? "-" : "";
      else
        out += negative ? " - " : " + ";
      const double magnitude = std::abs(c);
      const bool constant = i == 0 && j == 0;
      if (magnitude != 1.0 || constant)
        out += number(magnitude);
      if (i >= 1)
        out += i == 1 ? "x" : "x^" + std::to_string(i);
      if (j >= 1)
        out += j == 1 ? "y" : "y^" + std::to_string(j);
    }
  }
  return out.empty() ? "0" : out;
}

std::string render(const RealPoly &p) {
  std::string out = "[";
  for (int k = 0; k <= p.degree(); ++k)
    out += (k ? ", " : "") + number(p[k]);
  return out + "]";
}

std::string render(const ComplexPoly &p) {
  std::string out = "[";
  for (int k = 0; k <= p.degree(); ++k) {
    const std::complex<double> c = p[k];
    out += (k ? ", " : "") + number(c.real());
    out += std::signbit(c.imag()) ? "-" : "+";
    out += number(std::abs(c.imag())) + "i";
  }
  return out + "]";
}

RealPoly as_real(const ParsedPoly &p) {
  if (const auto *r = std::get_if<RealPoly>(&p))
    return *r;
  if (const auto *c = std::get_if<ComplexPoly>(&p)) {
    if (!c->coeffs().imag().isZero(0.0))
      throw InvalidInput("expected real coefficients");
    return RealPoly(RealPoly::Coefficients(c->coeffs().real()));
  }
  const BivarPoly &b = std::get<BivarPoly>(p);
  if (b.deg_y() > 0)
    throw InvalidInput("expected a polynomial in x only");
  return b.y_coefficient(0);
}

ComplexPoly as_complex(const ParsedPoly &p) {
  if (const auto *c = std::get_if<ComplexPoly>(&p))
    return *c;
  return to_complex(as_real(p));
}

BivarPoly as_bivar(const ParsedPoly &p) {
  if (const auto *b = std::get_if<BivarPoly>(&p))
    return *b;
  return BivarPoly::in_x(as_real(p));
}

} // namespace polyroots::cli
