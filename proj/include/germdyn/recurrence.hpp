#pragma once

#include <vector>

#include "germdyn/quadratic.hpp"

namespace germdyn {

struct InsufficientData : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotQuadratic : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// c_{n+r} = sum_{i=1}^{r} coeffs[i-1] * c_{n+r-i}, asserted for n > preperiod
// (indices are 1-based; the relation is checked at positions
// preperiod + r + 1 .. window).
struct LinearRecurrence {
  unsigned order = 0;
  std::vector<Rat> coeffs;
  unsigned preperiod = 0;
  bool integral = false;
  unsigned window = 0;  // length of the detection window

  // monic characteristic polynomial t^r - a_1 t^{r-1} - ... - a_r, ascending
  std::vector<Rat> characteristic_polynomial() const;
  bool fits(const std::vector<Rat>& seq) const;
  std::string str() const;
};

// Minimal-order recurrence fitting the whole sequence (preperiod 0).
LinearRecurrence minimal_recurrence(const std::vector<Rat>& seq);

// Minimizes the order first, then the preperiod.
LinearRecurrence eventual_recurrence(const std::vector<Rat>& seq);

// Does some recurrence of order exactly r (a_r != 0) fit the sequence with
// preperiod 0?  Optionally restricted to integral coefficients.  Exact linear
// algebra; "maybe" is never returned for the windows used here.
enum class FitAnswer { No, RationalOnly, Integral };
FitAnswer fits_order_exactly(const std::vector<Rat>& seq, unsigned r);

// Rational generating function sum_{n>=1} c_n t^n = num(t)/den(t).
struct GeneratingFunction {
  std::vector<Rat> num;  // ascending, num[0] = coefficient of t^0
  std::vector<Rat> den;

  std::vector<Rat> taylor(unsigned nterms) const;  // c_1..c_n
  bool equals(const GeneratingFunction& o) const;  // as rational functions
  std::string str() const;
};
GeneratingFunction generating_function(const std::vector<Rat>& prefix,
                                       const LinearRecurrence& rec);

// Dominant root of the characteristic polynomial as an exact quadratic
// integer; factors over Q by rational-root and integer-quadratic search and
// throws NotQuadratic when the dominant root lives in a factor of degree > 2.
QuadraticInteger asymptotic_rate(const LinearRecurrence& rec,
                                 const std::vector<Rat>& prefix);

// Order-2 recurrence c_{n+2} = tr(M) c_{n+1} - det(M) c_n from an invariant
// segment weight matrix.
LinearRecurrence recurrence_from_matrix(const std::array<Int, 4>& m);

// Exact check that |c_{n+1}/c_n - lambda| is eventually strictly decreasing
// over the window (used to confirm dominant-root convergence).
bool ratio_converges_to(const std::vector<Rat>& seq, const QuadraticInteger& lambda,
                        unsigned tail);

}  // namespace germdyn
