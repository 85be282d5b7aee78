#include "germdyn/upoly.hpp"

#include <sstream>

namespace germdyn {

UPoly::UPoly(Cyclo constant) {
  if (!constant.is_zero()) c_.push_back(std::move(constant));
}

UPoly UPoly::variable() { return monomial(1, Cyclo(Rat(1))); }

UPoly UPoly::monomial(size_t k, Cyclo c) {
  UPoly p;
  if (!c.is_zero()) {
    p.c_.assign(k + 1, Cyclo());
    p.c_[k] = std::move(c);
  }
  return p;
}

UPoly UPoly::from_coeffs(std::vector<Cyclo> c) {
  UPoly p;
  p.c_ = std::move(c);
  p.normalize();
  return p;
}

void UPoly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const Cyclo& UPoly::lead() const {
  if (c_.empty()) throw std::logic_error("UPoly: lead of zero");
  return c_.back();
}

Cyclo UPoly::coeff(size_t k) const { return k < c_.size() ? c_[k] : Cyclo(); }

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

UPoly UPoly::operator+(const UPoly& o) const {
  std::vector<Cyclo> r(std::max(c_.size(), o.c_.size()), Cyclo());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return from_coeffs(std::move(r));
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + (-o); }

UPoly UPoly::operator*(const UPoly& o) const {
  if (c_.empty() || o.c_.empty()) return UPoly();
  std::vector<Cyclo> r(c_.size() + o.c_.size() - 1, Cyclo());
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j)
      if (!o.c_[j].is_zero()) r[i + j] += c_[i] * o.c_[j];
  }
  return from_coeffs(std::move(r));
}

UPoly UPoly::operator*(const Cyclo& s) const {
  if (s.is_zero()) return UPoly();
  UPoly r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& d) const {
  if (d.is_zero()) throw std::domain_error("UPoly: division by zero");
  UPoly q, r = *this;
  Cyclo inv_lead = d.lead().inverse();
  if (r.c_.size() >= d.c_.size()) q.c_.assign(r.c_.size() - d.c_.size() + 1, Cyclo());
  while (!r.c_.empty() && r.c_.size() >= d.c_.size()) {
    Cyclo f = r.c_.back() * inv_lead;
    size_t shift = r.c_.size() - d.c_.size();
    q.c_[shift] = f;
    for (size_t i = 0; i < d.c_.size(); ++i) r.c_[shift + i] -= f * d.c_[i];
    r.normalize();
  }
  q.normalize();
  return {q, r};
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return *this * lead().inverse();
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return UPoly();
  std::vector<Cyclo> r(c_.size() - 1, Cyclo());
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Cyclo(Rat(static_cast<long>(i)));
  return from_coeffs(std::move(r));
}

UPoly UPoly::pow(unsigned e) const {
  UPoly acc(Cyclo(Rat(1))), base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

Cyclo UPoly::eval(const Cyclo& x) const {
  Cyclo acc;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

UPoly UPoly::compose(const UPoly& inner) const {
  UPoly acc;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * inner + UPoly(c_[i]);
  return acc;
}

std::string UPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t k = c_.size(); k-- > 0;) {
    if (c_[k].is_zero()) continue;
    if (!first) os << " + ";
    bool need_paren = !c_[k].is_rational() ||
                      (k > 0 && !c_[k].is_one() && c_[k].rational_value() < 0);
    if (k == 0) {
      os << (need_paren && !c_[k].is_rational() ? "(" + c_[k].str() + ")" : c_[k].str());
    } else {
      if (!c_[k].is_one()) {
        os << (need_paren ? "(" + c_[k].str() + ")" : c_[k].str()) << "*";
      }
      os << var;
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  return os.str();
}

UPoly upoly_gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

}  // namespace germdyn
