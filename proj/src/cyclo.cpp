#include "germdyn/cyclo.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace germdyn {

std::string rat_str(const Rat& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

Rat rat_parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int n(s.substr(0, slash)), d(s.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("zero denominator");
    return Rat(n, d);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal: " + s);
  }
}

unsigned euler_phi(unsigned m) {
  unsigned result = m;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

// Exact division a / b in Q[t]; remainder must vanish.
std::vector<Rat> upoly_exact_div(std::vector<Rat> a, const std::vector<Rat>& b) {
  std::vector<Rat> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
  while (a.size() >= b.size()) {
    Rat lead = a.back() / b.back();
    size_t shift = a.size() - b.size();
    q[shift] = lead;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= lead * b[i];
    while (!a.empty() && a.back() == 0) a.pop_back();
    if (a.empty()) break;
  }
  if (!a.empty()) throw std::logic_error("upoly_exact_div: nonzero remainder");
  return q;
}

}  // namespace

const std::vector<Rat>& cyclotomic_polynomial(unsigned m) {
  static std::map<unsigned, std::vector<Rat>> cache;
  static std::recursive_mutex mu;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  if (m == 0) throw std::invalid_argument("cyclotomic conductor must be positive");
  // t^m - 1 divided by the product of Phi_d over proper divisors d of m.
  std::vector<Rat> num(m + 1, Rat(0));
  num[0] = -1;
  num[m] = 1;
  for (unsigned d = 1; d < m; ++d) {
    if (m % d) continue;
    num = upoly_exact_div(std::move(num), cyclotomic_polynomial(d));
  }
  return cache.emplace(m, std::move(num)).first->second;
}

Cyclo Cyclo::zeta(unsigned m) {
  if (m == 0) throw std::invalid_argument("zeta conductor must be positive");
  if (m == 1) return Cyclo(Rat(1));
  unsigned deg = euler_phi(m);
  std::vector<Rat> c(deg, Rat(0));
  if (deg == 1) {
    // Phi_m linear (m = 2): z == -Phi[0].
    c[0] = -cyclotomic_polynomial(m)[0];
  } else {
    c[1] = 1;
  }
  Cyclo z;
  z.m_ = m;
  z.c_ = std::move(c);
  return z;
}

Cyclo Cyclo::from_coeffs(unsigned m, std::vector<Rat> coeffs) {
  if (m == 0) throw std::invalid_argument("conductor must be positive");
  Cyclo z;
  z.m_ = m;
  z.reduce_tail(coeffs);
  coeffs.resize(euler_phi(m), Rat(0));
  z.c_ = std::move(coeffs);
  return z;
}

void Cyclo::reduce_tail(std::vector<Rat>& raw) const {
  const auto& phi = cyclotomic_polynomial(m_);
  size_t deg = phi.size() - 1;
  while (raw.size() > deg) {
    Rat lead = raw.back();
    size_t shift = raw.size() - 1 - deg;
    if (lead != 0)
      for (size_t i = 0; i < deg; ++i) raw[shift + i] -= lead * phi[i];
    raw.pop_back();
  }
}

bool Cyclo::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool Cyclo::is_one() const {
  if (c_[0] != 1) return false;
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool Cyclo::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rat Cyclo::rational_value() const {
  if (!is_rational()) throw std::logic_error("Cyclo: not a rational value");
  return c_[0];
}

Cyclo Cyclo::promoted(unsigned n) const {
  if (m_ == n) return *this;
  if (is_rational()) {
    Cyclo r;
    r.m_ = n;
    r.c_ = std::vector<Rat>(euler_phi(n), Rat(0));
    r.c_[0] = c_[0];
    return r;
  }
  if (n % m_ != 0) throw ConductorMismatch("cannot embed conductor " + std::to_string(m_) +
                                           " into " + std::to_string(n));
  // zeta_m -> zeta_n^{n/m}
  unsigned step = n / m_;
  std::vector<Rat> raw(1, Rat(0));
  // Horner in zeta_m over Q, expressed in powers of zeta_n.
  std::vector<Rat> acc((c_.size() - 1) * step + 1, Rat(0));
  for (size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) acc[k * step] += c_[k];
  return from_coeffs(n, std::move(acc));
}

void Cyclo::align(Cyclo& a, Cyclo& b) {
  if (a.m_ == b.m_) return;
  if (a.is_rational()) {
    a = a.promoted(b.m_);
    return;
  }
  if (b.is_rational()) {
    b = b.promoted(a.m_);
    return;
  }
  throw ConductorMismatch("mixed conductors " + std::to_string(a.m_) + " and " +
                          std::to_string(b.m_));
}

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
  Cyclo a = *this, b = o;
  align(a, b);
  for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
  return a;
}

Cyclo Cyclo::operator-(const Cyclo& o) const { return *this + (-o); }

Cyclo Cyclo::operator*(const Cyclo& o) const {
  Cyclo a = *this, b = o;
  align(a, b);
  std::vector<Rat> raw(a.c_.size() + b.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j)
      if (b.c_[j] != 0) raw[i + j] += a.c_[i] * b.c_[j];
  }
  return from_coeffs(a.m_, std::move(raw));
}

Cyclo Cyclo::inverse() const {
  if (is_zero()) throw std::domain_error("Cyclo: division by zero");
  if (is_rational()) {
    Cyclo r = *this;
    r.c_[0] = Rat(1) / c_[0];
    for (size_t i = 1; i < r.c_.size(); ++i) r.c_[i] = 0;
    return r;
  }
  // Extended Euclid in Q[t] against Phi_m.
  const auto& phi = cyclotomic_polynomial(m_);
  std::vector<Rat> r0 = phi, r1 = c_;
  while (!r1.empty() && r1.back() == 0) r1.pop_back();
  std::vector<Rat> s0{}, s1{Rat(1)};  // coefficients of *this in the Bezout identity
  auto polmul = [](const std::vector<Rat>& a, const std::vector<Rat>& b) {
    if (a.empty() || b.empty()) return std::vector<Rat>{};
    std::vector<Rat> r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
  };
  auto polsub = [](std::vector<Rat> a, const std::vector<Rat>& b) {
    if (b.size() > a.size()) a.resize(b.size(), Rat(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
  };
  while (r1.size() > 1) {
    std::vector<Rat> q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, Rat(0));
    std::vector<Rat> rem = r0;
    while (rem.size() >= r1.size() && !rem.empty()) {
      Rat lead = rem.back() / r1.back();
      size_t shift = rem.size() - r1.size();
      q[shift] = lead;
      for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= lead * r1[i];
      while (!rem.empty() && rem.back() == 0) rem.pop_back();
    }
    std::vector<Rat> s2 = polsub(s0, polmul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // Phi_m is irreducible over Q, so the remainder sequence ends in a nonzero
  // constant for any nonzero element.
  if (r1.size() != 1 || r1[0] == 0)
    throw std::logic_error("Cyclo: inverse of a zero divisor");
  for (auto& x : s1) x /= r1[0];
  return from_coeffs(m_, std::move(s1));
}

Cyclo Cyclo::operator/(const Cyclo& o) const { return *this * o.inverse(); }

Cyclo Cyclo::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Cyclo base = *this, acc = Cyclo(Rat(1));
  unsigned long k = static_cast<unsigned long>(e);
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  if (acc.m_ == 1 && m_ != 1) acc = acc.promoted(m_);
  return acc;
}

bool Cyclo::operator==(const Cyclo& o) const {
  if (m_ == o.m_) return c_ == o.c_;
  if (is_rational() && o.is_rational()) return c_[0] == o.c_[0];
  if (is_rational() || o.is_rational()) return false;
  throw ConductorMismatch("comparing mixed conductors");
}

std::string Cyclo::str() const {
  if (is_rational()) return rat_str(c_[0]);
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    if (!first) os << (c_[k] > 0 ? " + " : " - ");
    Rat a = (!first && c_[k] < 0) ? Rat(-c_[k]) : c_[k];
    if (first && a < 0) {
      os << "-";
      a = -a;
    }
    if (k == 0) {
      os << rat_str(a);
    } else {
      if (a != 1) os << rat_str(a) << "*";
      os << "zeta(" << m_ << ")";
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace germdyn
