#include "germdyn/quadratic.hpp"

#include <sstream>

namespace germdyn {

QuadExt::QuadExt(Rat x, Rat y, Int u, Int v)
    : x_(std::move(x)), y_(std::move(y)), u_(std::move(u)), v_(std::move(v)) {
  if (u_ * u_ - 4 * v_ < 0)
    throw std::invalid_argument("QuadExt: negative discriminant");
}

void QuadExt::check_compatible(const QuadExt& o) const {
  if (y_ != 0 && o.y_ != 0 && (u_ != o.u_ || v_ != o.v_))
    throw std::invalid_argument("QuadExt: mixed quadratic fields");
}

QuadExt QuadExt::operator+(const QuadExt& o) const {
  check_compatible(o);
  Int u = y_ != 0 ? u_ : o.u_, v = y_ != 0 ? v_ : o.v_;
  return QuadExt(x_ + o.x_, y_ + o.y_, u, v);
}

QuadExt QuadExt::operator-(const QuadExt& o) const { return *this + (-o); }

QuadExt QuadExt::operator*(const QuadExt& o) const {
  check_compatible(o);
  Int u = y_ != 0 ? u_ : o.u_, v = y_ != 0 ? v_ : o.v_;
  // (x1 + y1 L)(x2 + y2 L), L^2 = u L - v
  Rat xx = x_ * o.x_ - Rat(v) * y_ * o.y_;
  Rat yy = x_ * o.y_ + y_ * o.x_ + Rat(u) * y_ * o.y_;
  return QuadExt(xx, yy, u, v);
}

int QuadExt::sign() const {
  if (y_ == 0) return x_ == 0 ? 0 : (x_ > 0 ? 1 : -1);
  // zero iff lambda = -x/y is the dominant root (rational case)
  Rat cand = -x_ / y_;
  if (cand * cand - Rat(u_) * cand + Rat(v_) == 0) {
    // cand is a root; dominant root is the larger one: cand >= u/2
    if (2 * cand >= Rat(u_)) return 0;
  }
  // bisect the dominant root: p(lo) <= 0 < p(hi)
  auto p = [&](const Rat& t) { return t * t - Rat(u_) * t + Rat(v_); };
  Rat lo = Rat(u_, 2);
  Rat hi = Rat(boost::multiprecision::abs(u_) + boost::multiprecision::abs(v_) + 1);
  auto val_sign = [&](const Rat& t) {
    Rat w = x_ + y_ * t;
    return w == 0 ? 0 : (w > 0 ? 1 : -1);
  };
  for (int iter = 0; iter < 20000; ++iter) {
    int slo = val_sign(lo), shi = val_sign(hi);
    if (slo == shi && slo != 0) return slo;
    Rat mid = (lo + hi) / 2;
    if (p(mid) <= 0)
      lo = mid;
    else
      hi = mid;
  }
  throw std::logic_error("QuadExt::sign: did not converge (root on boundary?)");
}

std::pair<Rat, Rat> QuadExt::bracket(const Rat& width) const {
  if (y_ == 0) return {x_, x_};
  auto p = [&](const Rat& t) { return t * t - Rat(u_) * t + Rat(v_); };
  Rat lo = Rat(u_, 2);
  Rat hi = Rat(boost::multiprecision::abs(u_) + boost::multiprecision::abs(v_) + 1);
  while (Rat(hi - lo) * boost::multiprecision::abs(y_) > width) {
    Rat mid = (lo + hi) / 2;
    if (p(mid) <= 0)
      lo = mid;
    else
      hi = mid;
  }
  Rat a = x_ + y_ * lo, b = x_ + y_ * hi;
  if (a > b) std::swap(a, b);
  return {a, b};
}

std::string QuadExt::str() const {
  std::ostringstream os;
  os << rat_str(x_);
  if (y_ != 0)
    os << " + " << rat_str(y_) << "*root(t^2 - " << u_ << "t + " << v_ << ")";
  return os.str();
}

QuadraticInteger QuadraticInteger::from_quadratic(Int u, Int v) {
  Int disc = u * u - 4 * v;
  if (disc < 0)
    throw std::invalid_argument("QuadraticInteger: negative discriminant");
  // rational (hence integral) when the discriminant is a perfect square
  Int s = boost::multiprecision::sqrt(disc);
  if (s * s == disc) {
    Rat root((u + s), 2);
    return {true, root, 0, 0};
  }
  return {false, Rat(0), std::move(u), std::move(v)};
}

QuadExt QuadraticInteger::as_ext() const {
  if (rational) return QuadExt(value, Rat(0), 0, 0);
  return QuadExt(Rat(0), Rat(1), trace, norm);
}

bool QuadraticInteger::is_integral() const {
  if (rational) return is_integer(value);
  return true;  // monic integer quadratic
}

std::string QuadraticInteger::str() const {
  if (rational) return rat_str(value);
  std::ostringstream os;
  os << "root(" << minimal_polynomial_str() << ")";
  return os.str();
}

std::string QuadraticInteger::minimal_polynomial_str() const {
  std::ostringstream os;
  if (rational) {
    os << "t - " << rat_str(value);
    return os.str();
  }
  os << "t^2";
  if (trace != 0) os << (trace > 0 ? " - " : " + ") << boost::multiprecision::abs(trace) << "*t";
  if (norm != 0) os << (norm > 0 ? " + " : " - ") << boost::multiprecision::abs(norm);
  return os.str();
}

bool QuadraticInteger::operator==(const QuadraticInteger& o) const {
  if (rational != o.rational) return false;
  if (rational) return value == o.value;
  return trace == o.trace && norm == o.norm;
}

}  // namespace germdyn
