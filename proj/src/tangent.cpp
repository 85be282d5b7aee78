#include "germdyn/tangent.hpp"

#include <map>

namespace germdyn {

namespace {

// coefficient of t^e: a0(theta) + u * a1(theta), guard truncated at u^2 = 0
struct GuardedCoeff {
  UPoly a0, a1;
  bool zero() const { return a0.is_zero() && a1.is_zero(); }
};

// expand phi(t, theta t^k + u t^{k+1}) (dep = Y) as a series in t
std::map<long long, GuardedCoeff> substitute_family(const BiSeries& phi,
                                                    unsigned k) {
  std::map<long long, GuardedCoeff> out;
  UPoly theta = UPoly::variable();
  for (auto& term : phi.terms()) {
    // y^j = (theta t^k + u t^{k+1})^j = theta^j t^{kj} + j theta^{j-1} u t^{kj+1}
    // x^i = t^i
    long long e0 = static_cast<long long>(term.i) + static_cast<long long>(k) * term.j;
    UPoly c0 = theta.pow(term.j) * term.c;
    auto& slot0 = out[e0];
    slot0.a0 = slot0.a0 + c0;
    if (term.j >= 1) {
      UPoly c1 = theta.pow(term.j - 1) * (term.c * Cyclo(Rat(term.j)));
      auto& slot1 = out[e0 + 1];
      slot1.a1 = slot1.a1 + c1;
    }
  }
  return out;
}

std::pair<long long, GuardedCoeff> leading(const std::map<long long, GuardedCoeff>& s) {
  for (auto& [e, c] : s)
    if (!c.zero()) return {e, c};
  throw TangentUnsupported("tangent_map: component vanishes along the family");
}

}  // namespace

TangentMapResult tangent_map(const Germ& f, Axis dep, unsigned k) {
  if (k < 1) throw std::invalid_argument("tangent_map: k >= 1 required");
  // dep = X swaps the coordinate roles on both sides
  BiSeries c1 = dep == Axis::Y ? f.f1() : f.f2().mirrored();
  BiSeries c2 = dep == Axis::Y ? f.f2() : f.f1().mirrored();
  auto X = substitute_family(c1, k);  // image independent coordinate
  auto Y = substitute_family(c2, k);  // image dependent coordinate
  auto [p, lx] = leading(X);
  auto [q, ly] = leading(Y);
  // the image family must be of graph type in the same orientation
  if (q < p || q % p != 0)
    throw TangentUnsupported("tangent_map: image direction not a graph family");
  long long kimg = q / p;
  if (!lx.a1.is_zero() || !ly.a1.is_zero())
    throw TangentUnsupported(
        "tangent_map: guard term reaches the leading order (expansion too short)");
  if (lx.a0.is_zero())
    throw TangentUnsupported("tangent_map: degenerate image parameterization");
  // theta' = lead(Y) / lead(X)^{k'}
  RatFunc R(ly.a0, lx.a0.pow(static_cast<unsigned>(kimg)));
  TangentMapResult res;
  res.map = std::move(R);
  res.dep_src = dep;
  res.dep_img = dep;
  res.k_src = k;
  res.k_img = static_cast<unsigned>(kimg);
  return res;
}

}  // namespace germdyn
