#pragma once

#include "germdyn/rat.hpp"

namespace germdyn {

// Exact element x + y*lambda of the real quadratic ring generated by the
// dominant root lambda of t^2 - u t + v (discriminant >= 0).
class QuadExt {
 public:
  QuadExt(Rat x, Rat y, Int u, Int v);

  const Rat& x() const { return x_; }
  const Rat& y() const { return y_; }
  const Int& trace() const { return u_; }
  const Int& norm() const { return v_; }

  QuadExt operator+(const QuadExt& o) const;
  QuadExt operator-(const QuadExt& o) const;
  QuadExt operator*(const QuadExt& o) const;
  QuadExt operator-() const { return QuadExt(-x_, -y_, u_, v_); }

  int sign() const;  // exact sign as a real number
  bool operator<(const QuadExt& o) const { return (*this - o).sign() < 0; }
  bool operator==(const QuadExt& o) const { return (*this - o).sign() == 0; }

  // exact rational bracket [lo, hi] of the value with hi - lo <= width
  std::pair<Rat, Rat> bracket(const Rat& width) const;

  std::string str() const;

 private:
  Rat x_, y_;
  Int u_, v_;
  void check_compatible(const QuadExt& o) const;
};

// Dominant root of the monic quadratic t^2 - u t + v as a quadratic integer,
// or a plain rational.
struct QuadraticInteger {
  bool rational = true;
  Rat value;      // when rational
  Int trace = 0;  // t^2 - trace*t + norm otherwise (dominant real root)
  Int norm = 0;

  static QuadraticInteger from_rational(Rat v) { return {true, std::move(v), 0, 0}; }
  static QuadraticInteger from_quadratic(Int u, Int v);

  QuadExt as_ext() const;
  bool is_integral() const;
  std::string str() const;
  std::string minimal_polynomial_str() const;
  bool operator==(const QuadraticInteger& o) const;
};

}  // namespace germdyn
