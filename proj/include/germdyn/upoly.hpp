#pragma once

#include <vector>

#include "germdyn/cyclo.hpp"

namespace germdyn {

// Dense univariate polynomial over Q(zeta_m), coefficients ascending.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(Cyclo constant);
  static UPoly variable();                 // the monomial t
  static UPoly monomial(size_t k, Cyclo c);
  static UPoly from_coeffs(std::vector<Cyclo> c);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const Cyclo& lead() const;
  Cyclo coeff(size_t k) const;
  const std::vector<Cyclo>& coeffs() const { return c_; }

  UPoly operator-() const;
  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly operator*(const Cyclo& s) const;
  bool operator==(const UPoly& o) const { return c_ == o.c_; }

  // Quotient and remainder; divisor must be nonzero.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const;
  UPoly monic() const;
  UPoly derivative() const;
  UPoly pow(unsigned e) const;
  Cyclo eval(const Cyclo& x) const;
  UPoly compose(const UPoly& inner) const;

  std::string str(const std::string& var = "t") const;

 private:
  std::vector<Cyclo> c_;
  void normalize();
};

UPoly upoly_gcd(UPoly a, UPoly b);  // monic gcd, 0 for two zeros

}  // namespace germdyn
