#pragma once

#include <optional>
#include <vector>

#include "germdyn/rat.hpp"

namespace germdyn {

// Continuous piecewise affine function of the skewness variable on [lo, hi]
// (hi may be +infinity).  Pieces are stored with their left endpoints.
class PiecewiseAffine {
 public:
  struct Piece {
    Rat lo;         // left endpoint of the piece
    Rat slope;
    Rat intercept;  // value = slope * t + intercept
  };

  PiecewiseAffine() = default;
  PiecewiseAffine(std::vector<Piece> pieces, std::optional<Rat> hi);

  // Lower envelope of the affine forms (slope, intercept) on [lo, hi].
  static PiecewiseAffine lower_envelope(std::vector<std::pair<Rat, Rat>> lines,
                                        const Rat& lo, std::optional<Rat> hi);

  PiecewiseAffine pointwise_min(const PiecewiseAffine& o) const;

  Rat eval(const Rat& t) const;
  const std::vector<Piece>& pieces() const { return pieces_; }
  Rat domain_lo() const { return pieces_.front().lo; }
  const std::optional<Rat>& domain_hi() const { return hi_; }
  std::vector<Rat> breakpoints() const;  // interior breakpoints

  bool is_concave() const;     // slopes non-increasing
  bool is_increasing() const;  // slopes all >= 0

 private:
  std::vector<Piece> pieces_;  // ascending lo, first lo = domain start
  std::optional<Rat> hi_;
  void merge_collinear();
};

}  // namespace germdyn
