#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "germdyn/puiseux.hpp"

using namespace germdyn;

namespace {

BiSeries mono(unsigned i, unsigned j, long c = 1) {
  return BiSeries::monomial(i, j, Cyclo(Rat(c)));
}

BiSeries X() { return BiSeries::var_x(); }
BiSeries Y() { return BiSeries::var_y(); }

}  // namespace

TEST_CASE("cusp y^2 - x^3: one branch, ramification 2") {
  auto dec = branches(mono(0, 2) - mono(3, 0), Rat(8));
  REQUIRE(dec.groups.size() == 1);
  const auto& g = dec.groups[0];
  CHECK(g.ram == 2);
  CHECK(g.residue_degree() == 1);
  CHECK(g.exact_tail);
  REQUIRE(g.dep_terms.size() == 1);
  CHECK(g.dep_terms[0].first == 3);  // y = s^3, x = s^2
  CHECK(g.branch_mult0() == 2);
  CHECK(dec.mult0_sum() == 2);
}

TEST_CASE("y^4 - x^5: one branch, ramification 4") {
  auto dec = branches(mono(0, 4) - mono(5, 0), Rat(8));
  REQUIRE(dec.groups.size() == 1);
  CHECK(dec.groups[0].ram == 4);
  CHECK(dec.groups[0].residue_degree() == 1);
  REQUIRE(dec.groups[0].dep_terms.size() == 1);
  CHECK(dec.groups[0].dep_terms[0].first == 5);
  CHECK(dec.mult0_sum() == 4);
}

TEST_CASE("(y - x^2)(y - 2x^2): two graph branches") {
  BiSeries phi = (Y() - mono(2, 0)) * (Y() - mono(2, 0, 2));
  auto dec = branches(phi, Rat(8));
  REQUIRE(dec.groups.size() == 2);
  for (auto& g : dec.groups) {
    CHECK(g.ram == 1);
    CHECK(g.exact_tail);
    CHECK(g.mult == 1);
    REQUIRE(g.dep_terms.size() == 1);
    CHECK(g.dep_terms[0].first == 2);
  }
  CHECK(dec.mult0_sum() == 2);
}

TEST_CASE("y^2 - 2x^2: grouped conjugate branches over Q") {
  BiSeries phi = mono(0, 2) - mono(2, 0, 2);
  auto dec = branches(phi, Rat(8));
  REQUIRE(dec.groups.size() == 1);
  CHECK(dec.groups[0].residue_degree() == 2);
  CHECK(dec.groups[0].ram == 1);
  CHECK(dec.unsplit);
  CHECK(dec.mult0_sum() == 2);
}

TEST_CASE("axis factors and multiplicities") {
  BiSeries phi = mono(1, 0) * mono(0, 2) * (Y() - mono(2, 0)) * (Y() - mono(2, 0));
  // x * y^2 * (y - x^2)^2
  auto dec = branches(phi, Rat(8));
  long long expect = 0;
  for (auto& g : dec.groups) {
    if (g.dep_terms.empty())
      expect += g.mult;  // axes
    else
      CHECK(g.mult == 2);
  }
  CHECK(dec.mult0_sum() == 1 + 2 + 2);
  CHECK(expect == 3);
}

TEST_CASE("x - y^2 is mirrored to the x-in-y orientation") {
  BiSeries phi = X() - mono(0, 2);
  auto dec = branches(phi, Rat(8));
  REQUIRE(dec.groups.size() == 1);
  CHECK(dec.groups[0].dep == Axis::X);
  CHECK(dec.groups[0].ram == 1);
  CHECK(dec.mult0_sum() == 1);
}

TEST_CASE("two-term expansion: (y - x^2 - x^3)") {
  BiSeries phi = Y() - mono(2, 0) - mono(3, 0);
  auto dec = branches(phi, Rat(10));
  REQUIRE(dec.groups.size() == 1);
  const auto& g = dec.groups[0];
  CHECK(g.exact_tail);
  REQUIRE(g.dep_terms.size() == 2);
  CHECK(g.dep_terms[0].first == 2);
  CHECK(g.dep_terms[1].first == 3);
}

TEST_CASE("tangential pair separates: (y - x^2)(y - x^2 - x^5)") {
  BiSeries phi = (Y() - mono(2, 0)) * (Y() - mono(2, 0) - mono(5, 0));
  auto dec = branches(phi, Rat(12));
  REQUIRE(dec.groups.size() == 2);
  CHECK(dec.mult0_sum() == 2);
}

TEST_CASE("intersection multiplicities") {
  SUBCASE("I(y, x) = 1") {
    auto iv = intersection_multiplicity(Y(), X());
    CHECK(!iv.infinite);
    CHECK(iv.value == Rat(1));
  }
  SUBCASE("I(y - x^2, y + x^2) = 2") {
    auto iv = intersection_multiplicity(Y() - mono(2, 0), Y() + mono(2, 0));
    CHECK(iv.value == Rat(2));
  }
  SUBCASE("I(y^2 - x^3, y^2 + x^3) = 6") {
    auto iv = intersection_multiplicity(mono(0, 2) - mono(3, 0),
                                        mono(0, 2) + mono(3, 0));
    CHECK(iv.value == Rat(6));
  }
  SUBCASE("common branch is infinite") {
    BiSeries phi = (Y() - mono(2, 0)) * X();
    BiSeries psi = (Y() - mono(2, 0)) * Y();
    CHECK(intersection_multiplicity(phi, psi).infinite);
  }
  SUBCASE("grouped branches: I(y^2 - 2x^2, y - x^3) = 2") {
    auto iv = intersection_multiplicity(mono(0, 2) - mono(2, 0, 2), Y() - mono(3, 0));
    CHECK(iv.value == Rat(2));
  }
}

TEST_CASE("resultant oracle basics") {
  // I(y - x^2, x): shear not needed; use phi = y - x^2, psi = x + y (y-regular both)
  CHECK(resultant_multiplicity_oracle(Y() - mono(2, 0), Y()) == 2);
  CHECK(resultant_multiplicity_oracle(mono(0, 2) - mono(3, 0),
                                      mono(0, 2) + mono(3, 0)) == 6);
  BiSeries prod = (Y() - mono(2, 0)) * (Y() - mono(2, 0, 2));
  CHECK(resultant_multiplicity_oracle(prod, Y() - mono(5, 0)) == 4);
}

TEST_CASE("contact skewness") {
  PuiseuxBranch bx = axis_branch(Axis::X), by = axis_branch(Axis::Y);
  auto c0 = contact_skewness(bx, by);
  CHECK(!c0.infinite);
  CHECK(c0.value == Rat(1));

  PuiseuxBranch b1 = branch_from_curve(Y() - mono(2, 0), Rat(8));
  PuiseuxBranch b2 = branch_from_curve(Y() - mono(2, 0, 3), Rat(8));
  auto c1 = contact_skewness(b1, b2);
  CHECK(c1.value == Rat(2));

  auto c2 = contact_skewness(by, b1);
  CHECK(c2.value == Rat(2));

  auto cc = contact_skewness(b1, b1);
  CHECK(cc.infinite);

  // ramified: cusp against its conjugate-coefficient twin
  PuiseuxBranch c3 = branch_from_curve(mono(0, 2) - mono(3, 0), Rat(8));
  PuiseuxBranch c4 = branch_from_curve(mono(0, 2) + mono(3, 0), Rat(8));
  auto cv = contact_skewness(c3, c4);
  CHECK(cv.value == Rat(3, 2));

  // symmetry
  auto cv2 = contact_skewness(c4, c3);
  CHECK(cv2.value == cv.value);
}

TEST_CASE("branch of a defining polynomial meets it at infinity") {
  for (auto curve : {Y() - mono(2, 0), mono(0, 2) - mono(3, 0),
                     mono(0, 4) - mono(5, 0)}) {
    PuiseuxBranch b = branch_from_curve(curve, Rat(10));
    auto iv = branch_poly_intersection(b, curve);
    CHECK(iv.infinite);
  }
}

TEST_CASE("branch product decomposition is the multiset union") {
  BiSeries a = (Y() - mono(2, 0)) * (mono(0, 2) - mono(3, 0));
  auto dec = branches(a, Rat(10));
  CHECK(dec.groups.size() == 2);
  CHECK(dec.mult0_sum() == 3);
}

TEST_CASE("random polynomials: substitution vs resultant oracle") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> cd(-3, 3);
  std::uniform_int_distribution<unsigned> ed(0, 6);
  auto rand_vanishing = [&]() {
    // random poly of degree <= 6 vanishing at 0 whose x=0 fiber is c*y^k
    std::vector<BiSeries::Term> ts;
    int n = 3 + static_cast<int>(rng() % 6);
    for (int k = 0; k < n; ++k) {
      unsigned i = ed(rng), j = ed(rng);
      if (i + j > 6 || i + j == 0) continue;
      if (i == 0) continue;  // pure y-powers added separately
      ts.push_back({i, j, Cyclo(Rat(cd(rng)))});
    }
    unsigned k = 1 + rng() % 5;
    ts.push_back({0, k, Cyclo(Rat(1))});  // y-regular, fiber meets only origin
    return BiSeries::from_terms(std::move(ts));
  };
  int done = 0;
  for (int trial = 0; trial < 300 && done < 120; ++trial) {
    BiSeries phi = rand_vanishing(), psi = rand_vanishing();
    if (phi.is_zero() || psi.is_zero()) continue;
    BiSeries g = biseries_gcd(phi, psi);
    auto og = g.order();
    if (!og.is_finite() || og.value > 0) continue;  // need a unit gcd at 0
    unsigned oracle;
    try {
      oracle = resultant_multiplicity_oracle(phi, psi);
    } catch (const std::invalid_argument&) {
      continue;
    }
    auto iv = intersection_multiplicity(phi, psi);
    REQUIRE(!iv.infinite);
    CHECK(iv.value == Rat(oracle));
    ++done;
  }
  CHECK(done >= 100);
}
