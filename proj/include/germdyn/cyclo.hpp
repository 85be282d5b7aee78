#pragma once

#include <optional>
#include <vector>

#include "germdyn/rat.hpp"

namespace germdyn {

struct ConductorMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Monic cyclotomic polynomial Phi_m, coefficients ascending.
const std::vector<Rat>& cyclotomic_polynomial(unsigned m);
unsigned euler_phi(unsigned m);

// Element of the cyclotomic field Q(zeta_m), stored on the power basis
// 1, z, ..., z^{phi(m)-1} reduced modulo Phi_m.  Conductor 1 is plain Q.
// Rational values embed into any conductor; two elements with distinct
// nontrivial conductors cannot be combined.
class Cyclo {
 public:
  Cyclo() : m_(1), c_(1, Rat(0)) {}
  Cyclo(const Rat& r) : m_(1), c_(1, r) {}
  Cyclo(long n) : m_(1), c_(1, Rat(n)) {}

  static Cyclo zeta(unsigned m);
  static Cyclo from_coeffs(unsigned m, std::vector<Rat> coeffs);

  unsigned conductor() const { return m_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  // Throws unless is_rational().
  Rat rational_value() const;

  Cyclo operator-() const;
  Cyclo operator+(const Cyclo& o) const;
  Cyclo operator-(const Cyclo& o) const;
  Cyclo operator*(const Cyclo& o) const;
  Cyclo operator/(const Cyclo& o) const;
  Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
  Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
  Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }
  Cyclo& operator/=(const Cyclo& o) { return *this = *this / o; }

  Cyclo inverse() const;
  Cyclo pow(long e) const;

  bool operator==(const Cyclo& o) const;
  bool operator!=(const Cyclo& o) const { return !(*this == o); }

  // Embed into Q(zeta_n); requires conductor() | n, or is_rational().
  Cyclo promoted(unsigned n) const;

  std::string str() const;

 private:
  unsigned m_;
  std::vector<Rat> c_;  // size euler_phi(m_)

  void reduce_tail(std::vector<Rat>& raw) const;
  static void align(Cyclo& a, Cyclo& b);
};

inline Cyclo operator*(const Rat& r, const Cyclo& c) { return Cyclo(r) * c; }

}  // namespace germdyn
