#pragma once

#include <vector>

#include "germdyn/cyclo.hpp"

namespace germdyn {

// Element of a tower of ring extensions over the working cyclotomic field.
// Level 0 is the field itself; an element of level k > 0 is a polynomial of
// degree < deg(minpoly_k) in the k-th generator with level-(k-1) coefficients.
// Representations are always kept reduced, so is_zero is a plain structural
// test.  A nonzero element may still be a zero divisor when a minimal
// polynomial is reducible; operations that must decide invertibility throw
// SplitRequest, and the computation is forked over the two factor towers.
struct AlgNum {
  int lvl = 0;
  Cyclo base;              // lvl == 0
  std::vector<AlgNum> p;   // lvl > 0: ascending coefficients over level lvl-1

  static AlgNum from_cyclo(Cyclo c) { return AlgNum{0, std::move(c), {}}; }
};

using TPoly = std::vector<AlgNum>;  // dense univariate, ascending

struct SplitRequest {
  int level;   // 1-based extension index whose minimal polynomial factors
  TPoly f, g;  // monic factors (over level-1 coefficients)
};

class Tower {
 public:
  Tower() = default;

  int levels() const { return static_cast<int>(mp_.size()); }
  int ext_degree(int k) const;  // degree of extension k (1-based)
  long long total_degree() const;
  const TPoly& minpoly(int k) const { return mp_[k - 1]; }

  AlgNum zero(int lvl) const;
  AlgNum one(int lvl) const;
  AlgNum from_rat(const Rat& r, int lvl) const;
  AlgNum from_cyclo(const Cyclo& c, int lvl) const;
  AlgNum gen(int lvl) const;             // generator of extension lvl, at level lvl
  AlgNum lift(const AlgNum& a, int lvl) const;

  bool is_zero(const AlgNum& a) const;
  bool is_cyclo(const AlgNum& a) const;
  Cyclo to_cyclo(const AlgNum& a) const;  // throws unless is_cyclo

  AlgNum neg(const AlgNum& a) const;
  AlgNum add(const AlgNum& a, const AlgNum& b) const;
  AlgNum sub(const AlgNum& a, const AlgNum& b) const;
  AlgNum mul(const AlgNum& a, const AlgNum& b) const;
  AlgNum pow(const AlgNum& a, long long e) const;  // negative e inverts

  // Throws SplitRequest if a is a zero divisor, std::domain_error if zero.
  AlgNum inv(const AlgNum& a) const;
  // false for zero, true for units; zero divisors raise SplitRequest.
  bool decide_nonzero(const AlgNum& a) const;

  // Extend by a (not necessarily monic) squarefree polynomial over the top
  // level; returns the new level.  Degree must be >= 2.
  Tower extended(TPoly minpoly) const;

  // Tower with minpoly k replaced by a monic factor; higher minpolys reduced.
  Tower replaced(int k, TPoly factor) const;
  // Re-reduce an element of the pre-split tower in this tower.
  AlgNum renorm(const AlgNum& a) const;

  std::string str(const AlgNum& a) const;

 private:
  std::vector<TPoly> mp_;  // mp_[k-1]: monic minpoly of generator k, level k-1 coeffs

  AlgNum reduce(AlgNum a) const;  // reduce at level a.lvl against minpoly
};

// Dense polynomial helpers over a tower level (used by Newton-Puiseux).
void tpoly_normalize(const Tower& tw, TPoly& p);
TPoly tpoly_add(const Tower& tw, const TPoly& a, const TPoly& b);
TPoly tpoly_sub(const Tower& tw, const TPoly& a, const TPoly& b);
TPoly tpoly_mul(const Tower& tw, const TPoly& a, const TPoly& b);
TPoly tpoly_scale(const Tower& tw, const TPoly& a, const AlgNum& s);
TPoly tpoly_derivative(const Tower& tw, const TPoly& a);
// Make monic; may split on the leading coefficient.
TPoly tpoly_monic(const Tower& tw, const TPoly& a);
// Remainder of a modulo monic m.
TPoly tpoly_rem_monic(const Tower& tw, TPoly a, const TPoly& m);
// Quotient a / b with invertible leading coefficient (may split).
std::pair<TPoly, TPoly> tpoly_divmod(const Tower& tw, TPoly a, const TPoly& b);
// Monic gcd (may split).
TPoly tpoly_gcd(const Tower& tw, TPoly a, TPoly b);
// Squarefree part (may split).
TPoly tpoly_squarefree_part(const Tower& tw, const TPoly& a);

}  // namespace germdyn
