#pragma once

#include "germdyn/germ.hpp"
#include "germdyn/ratfunc.hpp"

namespace germdyn {

// Tangent map of f_. at a monomial valuation mono(1,k) (dep = Y: directions
// identified with curves y = theta x^k) or mono(k,1) (dep = X, swapped roles).
struct TangentMapResult {
  RatFunc map;        // theta' = R(theta)
  Axis dep_src;       // orientation of the source chart
  Axis dep_img;       // orientation of the image chart
  unsigned k_src;     // source weight
  unsigned k_img;     // image weight: the base maps to mono(1, k_img) family
};

struct TangentUnsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Substitutes the guarded family (x, y) = (t, theta t^k + u t^{k+1}) into f,
// reads off the image direction parameter, and verifies independence of the
// guard term u to the computed order.
TangentMapResult tangent_map(const Germ& f, Axis dep, unsigned k);

}  // namespace germdyn
