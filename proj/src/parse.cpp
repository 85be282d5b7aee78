#include "germdyn/parse.hpp"

namespace germdyn {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  BiSeries parse_expr() {
    BiSeries acc = parse_term();
    while (true) {
      skip_ws();
      if (eat('+')) {
        acc = acc + parse_term();
      } else if (eat('-')) {
        acc = acc - parse_term();
      } else {
        return acc;
      }
    }
  }

  std::pair<BiSeries, BiSeries> parse_pair() {
    expect('(');
    BiSeries a = parse_expr();
    expect(',');
    BiSeries b = parse_expr();
    expect(')');
    return {a, b};
  }

  void expect_end() {
    skip_ws();
    if (pos_ < s_.size()) fail("trailing input");
  }

  bool try_keyword(const std::string& kw) {
    skip_ws();
    if (s_.compare(pos_, kw.size(), kw) == 0) {
      pos_ += kw.size();
      return true;
    }
    return false;
  }

  Rat parse_rational() {
    skip_ws();
    bool neg = eat('-');
    size_t start = pos_;
    while (pos_ < s_.size() && isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected a number");
    Int num(s_.substr(start, pos_ - start));
    Int den = 1;
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      size_t dstart = pos_;
      while (pos_ < s_.size() && isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ == dstart) fail("expected a denominator");
      den = Int(s_.substr(dstart, pos_ - dstart));
      if (den == 0) fail("zero denominator");
    }
    Rat r(num, den);
    return neg ? Rat(-r) : r;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg + " at position " + std::to_string(pos_) + " in \"" + s_ + "\"", pos_); }

  size_t position() const { return pos_; }

 private:
  const std::string& s_;
  size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() && isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  unsigned parse_uint() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() && isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected an integer");
    unsigned long v = std::stoul(s_.substr(start, pos_ - start));
    if (v > 1000000) fail("exponent too large");
    return static_cast<unsigned>(v);
  }

  BiSeries parse_term() {
    BiSeries acc = parse_unary();
    while (true) {
      skip_ws();
      if (eat('*'))
        acc = acc * parse_unary();
      else
        return acc;
    }
  }

  BiSeries parse_unary() {
    skip_ws();
    if (eat('-')) return -parse_unary();
    return parse_power();
  }

  BiSeries parse_power() {
    BiSeries base = parse_atom();
    skip_ws();
    if (eat('^')) {
      unsigned e = parse_uint();
      return base.pow_trunc(e, std::nullopt);
    }
    return base;
  }

  BiSeries parse_atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      BiSeries e = parse_expr();
      expect(')');
      return e;
    }
    if (c == 'x') {
      ++pos_;
      return BiSeries::var_x();
    }
    if (c == 'y') {
      ++pos_;
      return BiSeries::var_y();
    }
    if (c == 't') {  // accepted as an alias of x for theta polynomials
      ++pos_;
      return BiSeries::var_x();
    }
    if (s_.compare(pos_, 4, "zeta") == 0) {
      pos_ += 4;
      expect('(');
      unsigned m = parse_uint();
      expect(')');
      if (m == 0) fail("zeta conductor must be positive");
      return BiSeries::constant(Cyclo::zeta(m));
    }
    if (isdigit(static_cast<unsigned char>(c))) {
      return BiSeries::constant(Cyclo(parse_rational()));
    }
    fail("unexpected character");
  }
};

}  // namespace

BiSeries parse_poly(const std::string& text) {
  Parser p(text);
  BiSeries e = p.parse_expr();
  p.expect_end();
  return e;
}

Germ parse_germ(const std::string& text) {
  Parser p(text);
  auto [a, b] = p.parse_pair();
  p.expect_end();
  if (!a.constant_term().is_zero() || !b.constant_term().is_zero())
    throw ParseError("germ components must have no constant term", 0);
  return Germ(std::move(a), std::move(b));
}

Rat parse_rat(const std::string& text) {
  Parser p(text);
  Rat r = p.parse_rational();
  p.expect_end();
  return r;
}

UPoly parse_theta_poly(const std::string& text) {
  BiSeries e = parse_poly(text);
  std::vector<Cyclo> coeffs;
  for (auto& t : e.terms()) {
    if (t.j != 0)
      throw ParseError("theta polynomial must be univariate", 0);
    if (coeffs.size() <= t.i) coeffs.resize(t.i + 1, Cyclo());
    coeffs[t.i] = t.c;
  }
  return UPoly::from_coeffs(std::move(coeffs));
}

Valuation parse_valuation(const std::string& text) {
  Parser p(text);
  if (p.try_keyword("ord0")) {
    p.expect_end();
    return Valuation::ord0();
  }
  if (p.try_keyword("mono")) {
    p.expect('(');
    Rat s = p.parse_rational();
    p.expect(',');
    Rat t = p.parse_rational();
    p.expect(')');
    p.expect_end();
    return Valuation::monomial(std::move(s), std::move(t));
  }
  if (p.try_keyword("qm")) {
    p.expect('(');
    BiSeries curve = p.parse_expr();
    p.expect(',');
    Rat skew = p.parse_rational();
    p.expect(')');
    p.expect_end();
    unsigned d = std::max(2u, curve.total_degree());
    PuiseuxBranch b = branch_from_curve(curve, Rat(2 * d + 2));
    return Valuation::quasimonomial(std::move(b), std::move(skew));
  }
  if (p.try_keyword("curve")) {
    p.expect('(');
    BiSeries curve = p.parse_expr();
    p.expect(')');
    p.expect_end();
    unsigned d = std::max(2u, curve.total_degree());
    PuiseuxBranch b = branch_from_curve(curve, Rat(2 * d + 2));
    return Valuation::curve(std::move(b));
  }
  p.fail("expected ord0, mono(...), qm(...), or curve(...)");
}

}  // namespace germdyn
