#pragma once

#include "germdyn/germ.hpp"
#include "germdyn/quadratic.hpp"
#include "germdyn/valuation.hpp"

namespace germdyn {

// c(f, nu) = min(nu(f1), nu(f2)); infinite exactly at contracted curve
// semivaluations.
struct RateValue {
  bool infinite = false;
  Rat value;
  bool certified = true;
};
RateValue attraction_rate(const Germ& f, const Valuation& nu);

struct RateEntry {
  Rat value;
  bool certified;
};
struct RateSequenceResult {
  std::vector<RateEntry> entries;  // c(f^k, nu), k = 1..n
  unsigned degree_used = 0;
  bool capped = false;  // degree cap exhausted before certifying everything
  size_t certified_prefix() const;
  std::vector<Rat> certified_values() const;
};
// Certified attraction-rate sequence along nu via truncated compositions with
// adaptive working degree (doubling up to degree_cap on uncertified entries).
RateSequenceResult rate_sequence(const Germ& f, const Valuation& nu,
                                 unsigned n_max, unsigned degree_cap);

// f(x, y) = (x^a y^b, x^c y^d)
struct MonomialMap {
  std::array<Int, 4> m;  // a, b, c, d
  Int det() const { return m[0] * m[3] - m[1] * m[2]; }
  Int trace() const { return m[0] + m[3]; }
  Germ germ() const;
};
std::optional<MonomialMap> as_monomial(const Germ& f);

// Pushforward of a monomial valuation with the normalized image and the rate.
std::pair<Valuation, Rat> monomial_pushforward(const MonomialMap& M,
                                               const Valuation& nu);

struct ClassificationReport {
  int situation = 0;  // 1, 2, or 3
  enum class Eigen { CurveEnd, Divisorial, Irrational, Segment } eigen_kind;
  // situation 1: which axis end
  Axis end_axis = Axis::X;
  // situation 2 rational: exact monomial weights
  Rat weight_s, weight_t;
  // situation 2 irrational: weights (1, tau) or (tau, 1) with
  // tau^2 = tau_u * tau + tau_v
  bool weights_swapped = false;
  Int tau_u = 0, tau_v = 0;
  QuadraticInteger c_infinity;
  unsigned iterate = 1;  // m with the fixed set fixed by f^m (2 for swaps)
  std::string notes;
  std::string describe() const;
};
ClassificationReport classify_monomial(const MonomialMap& M);

// Exact piecewise data of f on a segment adapted to graph/axis branches:
// rates c(f, nu_alpha) as a piecewise affine function and the skewness action
// as Moebius pieces, computed from newton envelopes in adapted coordinates.
struct MobiusPiece {
  Rat lo, hi;
  Rat a, b, c, d;  // alpha' = (a alpha + b) / (c alpha + d)
  Rat apply(const Rat& alpha) const { return (a * alpha + b) / (c * alpha + d); }
};
struct SegmentAction {
  PiecewiseAffine rate;
  std::vector<MobiusPiece> alpha_map;
};
struct UnsupportedSegment : std::runtime_error {
  using std::runtime_error::runtime_error;
};
SegmentAction segment_action(const Germ& f, const PuiseuxBranch& src,
                             const Rat& alpha_lo, const Rat& alpha_hi,
                             const PuiseuxBranch& tgt);

struct JacobianCheck {
  Rat lhs;  // c(f, nu) * A(f_. nu)
  Rat rhs;  // A(nu) + nu(J_f)
  bool holds;
};
// Monomial maps compute the image thinness internally; otherwise the caller
// supplies A(f_. nu).
JacobianCheck check_jacobian_formula(const Germ& f, const Valuation& nu,
                                     std::optional<Rat> image_thinness = std::nullopt);

struct EquicontinuityCheck {
  Rat lhs;  // d_{1/A}(f_. nu, f_. mu)
  Rat rhs;  // (1/2) d_A(nu, mu)
  bool holds;
};
// Monomial maps push the pair forward internally; otherwise the caller
// supplies the images.
EquicontinuityCheck check_equicontinuity(
    const Germ& f, const Valuation& nu, const Valuation& mu,
    std::optional<std::pair<Valuation, Valuation>> images = std::nullopt);

}  // namespace germdyn
