#include "germdyn/ratfunc.hpp"

namespace germdyn {

RatFunc::RatFunc(UPoly num, UPoly den) {
  if (den.is_zero()) throw std::domain_error("RatFunc: zero denominator");
  UPoly g = upoly_gcd(num, den);
  if (g.degree() > 0) {
    num = num.divmod(g).first;
    den = den.divmod(g).first;
  }
  Cyclo inv = den.lead().inverse();
  num_ = num * inv;
  den_ = den * inv;
}

bool RatFunc::is_identity() const {
  return den_.degree() == 0 && num_ == UPoly::variable();
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
  return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
  return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) throw std::domain_error("RatFunc: division by zero");
  return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::compose(const RatFunc& o) const {
  // num(p/q) and den(p/q), cleared by q^N with N = max degree.
  int n = std::max(num_.degree(), den_.degree());
  if (n < 0) return *this;  // zero function
  auto clear = [&](const UPoly& f) {
    UPoly acc;
    UPoly qpow(Cyclo(Rat(1)));
    std::vector<UPoly> ppow(n + 1);
    ppow[0] = UPoly(Cyclo(Rat(1)));
    for (int i = 1; i <= n; ++i) ppow[i] = ppow[i - 1] * o.num_;
    std::vector<UPoly> qpows(n + 1);
    qpows[0] = UPoly(Cyclo(Rat(1)));
    for (int i = 1; i <= n; ++i) qpows[i] = qpows[i - 1] * o.den_;
    for (int i = 0; i <= n; ++i) {
      Cyclo c = f.coeff(i);
      if (c.is_zero()) continue;
      acc = acc + ppow[i] * qpows[n - i] * c;
    }
    return acc;
  };
  UPoly top = clear(num_), bot = clear(den_);
  if (bot.is_zero()) throw std::domain_error("RatFunc: composition has identically zero denominator");
  return RatFunc(std::move(top), std::move(bot));
}

RatFunc RatFunc::iterate(unsigned n) const {
  RatFunc acc = RatFunc::theta();
  for (unsigned i = 0; i < n; ++i) acc = compose(acc);
  return acc;
}

ProjPoint RatFunc::eval(const ProjPoint& p) const {
  if (p.infinite) {
    int dn = num_.degree(), dd = den_.degree();
    if (dn > dd) return ProjPoint::infinity();
    if (dn < dd) return ProjPoint::finite(Cyclo());
    if (dn < 0) throw std::domain_error("RatFunc: evaluating 0/0");
    return ProjPoint::finite(num_.lead() / den_.lead());
  }
  Cyclo top = num_.eval(p.value), bot = den_.eval(p.value);
  if (bot.is_zero()) {
    if (top.is_zero())
      throw std::logic_error("RatFunc: 0/0 at a point (non-canonical input)");
    return ProjPoint::infinity();
  }
  return ProjPoint::finite(top / bot);
}

std::string RatFunc::str(const std::string& var) const {
  if (den_.degree() == 0) return num_.str(var);
  return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

}  // namespace germdyn
