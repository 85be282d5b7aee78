#pragma once

#include "germdyn/dynamics.hpp"

namespace germdyn {

// Finite invariant tree skeleton: edges with skewness ranges, per-edge Moebius
// skewness action and affine attraction rate, and the edge map.
struct ModelEdge {
  std::string id;
  std::string maps_to;
  Valuation from, to;     // endpoint valuations; skewness(from) = alo etc.
  Rat alo, ahi;
  std::array<Rat, 4> mobius;  // alpha' = (a alpha + b) / (c alpha + d)
  Rat rate_slope, rate_intercept;

  Rat apply_mobius(const Rat& alpha) const;
  Rat rate_at(const Rat& alpha) const { return rate_slope * alpha + rate_intercept; }
};

struct ModelIncomplete : std::runtime_error {
  ModelIncomplete(const std::string& w, unsigned step_) : std::runtime_error(w), step(step_) {}
  unsigned step;
};

class FiniteTreeModel {
 public:
  std::string name;
  std::vector<ModelEdge> edges;

  // Structural checks: range alignment with endpoint skewness, positive rates,
  // Moebius images inside target ranges, and increasing/concave assembled
  // rates along every root path from ord0.
  void validate() const;

  struct Position {
    size_t edge;
    Rat alpha;
  };
  Position locate(const Valuation& v) const;

  struct Orbit {
    std::vector<Position> positions;  // after each step
    std::vector<Rat> rates;           // cumulative c(f^k, nu0), k = 1..N
  };
  Orbit iterate(Position start, unsigned N) const;

  size_t edge_index(const std::string& id) const;

  // plain text serialization
  static FiniteTreeModel parse(const std::string& text);
  std::string serialize() const;
};

}  // namespace germdyn
