#pragma once

#include "germdyn/upoly.hpp"

namespace germdyn {

// Point of P^1 over the working cyclotomic field.
struct ProjPoint {
  bool infinite = false;
  Cyclo value;  // meaningful when !infinite

  static ProjPoint infinity() { return {true, Cyclo()}; }
  static ProjPoint finite(Cyclo v) { return {false, std::move(v)}; }
  bool operator==(const ProjPoint& o) const {
    if (infinite != o.infinite) return false;
    return infinite || value == o.value;
  }
  std::string str() const { return infinite ? "inf" : value.str(); }
};

// Rational function in one symbol over Q(zeta_m), kept in canonical form:
// gcd(num, den) = 1 and den monic.
class RatFunc {
 public:
  RatFunc() : num_(), den_(Cyclo(Rat(1))) {}
  RatFunc(UPoly num, UPoly den);
  explicit RatFunc(Cyclo constant) : num_(std::move(constant)), den_(Cyclo(Rat(1))) {}

  static RatFunc theta() { return RatFunc(UPoly::variable(), UPoly(Cyclo(Rat(1)))); }

  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_identity() const;
  int degree() const { return std::max(num_.degree(), den_.degree()); }

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

  // this(o(theta)); throws std::domain_error if the denominator vanishes
  // identically after substitution.
  RatFunc compose(const RatFunc& o) const;
  RatFunc iterate(unsigned n) const;

  // Projective evaluation; degree comparison at infinity, poles map to infinity.
  ProjPoint eval(const ProjPoint& p) const;

  std::string str(const std::string& var = "theta") const;

 private:
  UPoly num_, den_;
};

}  // namespace germdyn
