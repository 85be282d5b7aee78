#pragma once

#include "germdyn/puiseux.hpp"

namespace germdyn {

// Extended nonnegative rational (value or +infinity).
struct ExtRat {
  bool infinite = false;
  Rat value;

  static ExtRat inf() { return {true, Rat(0)}; }
  static ExtRat fin(Rat v) { return {false, std::move(v)}; }
  bool operator==(const ExtRat& o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }
  std::string str() const { return infinite ? "inf" : rat_str(value); }
};

struct EvalResult {
  bool infinite = false;
  Rat value;
  bool certified = true;  // false when a truncated input cannot certify
};

enum class TreeParam { Thinness, InvThinness };

// A normalized semivaluation nu with nu(m) = 1: monomial with weights
// (s, t), quasimonomial of given skewness on the segment toward a branch, or
// the normalized curve semivaluation at its end.
class Valuation {
 public:
  enum class Kind { Monomial, Quasimonomial, Curve };

  static Valuation ord0() { return monomial(Rat(1), Rat(1)); }
  static Valuation monomial(Rat s, Rat t);
  // canonicalizes: skew below the first contact with the axis reduces to a
  // monomial valuation
  static Valuation quasimonomial(PuiseuxBranch branch, Rat skew);
  static Valuation curve(PuiseuxBranch branch);

  Kind kind() const { return kind_; }
  const Rat& mono_s() const { return s_; }
  const Rat& mono_t() const { return t_; }
  const PuiseuxBranch& branch() const;
  const Rat& quasi_skew() const { return t_; }

  EvalResult evaluate(const BiSeries& phi) const;
  // Forces the branch-decomposition/contact formula (the definitional route);
  // evaluate() prefers an exact change of coordinates where available.
  EvalResult evaluate_via_contacts(const BiSeries& phi) const;
  ExtRat skewness() const;
  ExtRat thinness() const;

  static Valuation meet(const Valuation& a, const Valuation& b);
  static Rat distance(const Valuation& a, const Valuation& b, TreeParam param);

  bool operator==(const Valuation& o) const;
  bool operator!=(const Valuation& o) const { return !(*this == o); }

  bool is_ord0() const {
    return kind_ == Kind::Monomial && s_ == 1 && t_ == 1;
  }

  std::string str() const;

 private:
  Kind kind_ = Kind::Monomial;
  Rat s_, t_;  // monomial weights; quasimonomial stores skewness in t_
  std::optional<PuiseuxBranch> branch_;

  // branch-like view used by meet/equality: axes become axis branches
  PuiseuxBranch as_branch() const;
  ExtRat skew_on_branch() const;  // skewness along as_branch()
};

// Thinness multiplicity profile of a branch: contact-skewness levels where the
// generic multiplicity jumps, with the multiplicity after each jump.
struct ContactProfile {
  std::vector<std::pair<Rat, unsigned>> jumps;  // (skewness level, new mult)
  bool complete = false;  // no further jumps beyond the represented ones
};
ContactProfile contact_profile(const PuiseuxBranch& b);

// Skewness of the point on the segment [ord0, nu_B] at divergence exponent
// beta along the branch expansion.
Rat branch_divergence_skewness(const PuiseuxBranch& b, const Rat& beta);

}  // namespace germdyn
