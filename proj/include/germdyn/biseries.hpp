#pragma once

#include <map>
#include <optional>

#include "germdyn/cyclo.hpp"
#include "germdyn/piecewise.hpp"

namespace germdyn {

enum class Axis { X, Y };

// Order of vanishing; Infinite for the exact zero series, Indeterminate when a
// truncated series has empty support (the order exceeds the truncation).
struct OrderVal {
  enum Kind { Finite, Infinite, Indeterminate } kind;
  unsigned value = 0;  // meaningful for Finite

  static OrderVal finite(unsigned v) { return {Finite, v}; }
  static OrderVal infinite() { return {Infinite, 0}; }
  static OrderVal indeterminate() { return {Indeterminate, 0}; }
  bool is_finite() const { return kind == Finite; }
  bool operator==(const OrderVal& o) const {
    return kind == o.kind && (kind != Finite || value == o.value);
  }
};

// Sparse exact bivariate polynomial / truncated power series over a cyclotomic
// field.  Terms are kept sorted by (total degree, x-exponent); a TruncatedAt(D)
// series stores exactly the terms of total degree <= D of the true series.
class BiSeries {
 public:
  struct Term {
    unsigned i, j;  // x^i y^j
    Cyclo c;
  };

  BiSeries() = default;  // exact zero

  static BiSeries zero(std::optional<unsigned> trunc = std::nullopt);
  static BiSeries constant(Cyclo c);
  static BiSeries monomial(unsigned i, unsigned j, Cyclo c);
  static BiSeries var_x() { return monomial(1, 0, Cyclo(Rat(1))); }
  static BiSeries var_y() { return monomial(0, 1, Cyclo(Rat(1))); }
  static BiSeries from_terms(std::vector<Term> terms,
                             std::optional<unsigned> trunc = std::nullopt);

  const std::vector<Term>& terms() const { return t_; }
  bool is_exact() const { return !trunc_.has_value(); }
  std::optional<unsigned> truncation() const { return trunc_; }
  bool is_zero() const { return t_.empty(); }  // zero up to truncation
  unsigned total_degree() const;               // of the stored support
  Cyclo coeff(unsigned i, unsigned j) const;
  Cyclo constant_term() const { return coeff(0, 0); }

  BiSeries operator-() const;
  BiSeries operator+(const BiSeries& o) const;
  BiSeries operator-(const BiSeries& o) const;
  BiSeries operator*(const BiSeries& o) const;
  BiSeries operator*(const Cyclo& s) const;
  bool operator==(const BiSeries& o) const { return eq(o); }

  // Product with all terms of total degree > cap dropped; the result is marked
  // TruncatedAt(cap) unless both inputs are exact and nothing was dropped.
  BiSeries mul_trunc(const BiSeries& o, unsigned cap) const;
  BiSeries pow_trunc(unsigned e, std::optional<unsigned> cap) const;

  // Truncate to total degree <= cap (marks the result).
  BiSeries truncated(unsigned cap) const;

  // Raise the declared exactness bound.  Only for callers that can prove the
  // stored terms are exact to the new degree (the composition engine tracks
  // sharper bounds than the conservative operand rule).
  BiSeries with_certified_truncation(unsigned cap) const;

  OrderVal order() const;
  // min over stored support of s*i + t*j; certified iff exact or value <= D.
  struct Weighted {
    Rat value;
    bool certified;
    bool infinite;  // exact zero series
  };
  Weighted weighted_order(const Rat& s, const Rat& t) const;

  // Lower envelope of i + j*t (Axis::Y, weights (1,t)) or i*t + j (Axis::X)
  // over the stored support, on t in [1, oo).
  PiecewiseAffine newton_envelope(Axis axis) const;

  BiSeries derivative(Axis axis) const;

  // this(fx, fy), truncated at cap when given.  Exactness is propagated
  // conservatively.
  BiSeries substitute(const BiSeries& fx, const BiSeries& fy,
                      std::optional<unsigned> cap = std::nullopt) const;

  // y |-> y + p(x) (Axis::Y) or x |-> x + p(y) (Axis::X); p is univariate with
  // p(0) = 0, given as a BiSeries in the complementary variable.
  BiSeries shift(Axis axis, const BiSeries& p,
                 std::optional<unsigned> cap = std::nullopt) const;

  BiSeries mirrored() const;  // swap the roles of x and y

  std::string str() const;

 private:
  std::vector<Term> t_;
  std::optional<unsigned> trunc_;

  bool eq(const BiSeries& o) const;
  static std::optional<unsigned> combine_trunc(const std::optional<unsigned>& a,
                                               const std::optional<unsigned>& b);
};

// Exact-polynomial utilities (throw if an operand is truncated).
BiSeries biseries_gcd(const BiSeries& a, const BiSeries& b);
BiSeries biseries_exact_div(const BiSeries& a, const BiSeries& b);
// Squarefree decomposition of the primitive, unit-free part together with the
// x/y axis multiplicities: a = unit * x^ax * y^ay * prod parts[k].first^{parts[k].second}.
struct SquarefreeDecomposition {
  unsigned ax = 0, ay = 0;
  std::vector<std::pair<BiSeries, unsigned>> parts;
};
SquarefreeDecomposition biseries_squarefree(const BiSeries& a);

}  // namespace germdyn
