#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "germdyn/germ.hpp"

using namespace germdyn;

namespace {

BiSeries mono(unsigned i, unsigned j, long c = 1) {
  return BiSeries::monomial(i, j, Cyclo(Rat(c)));
}

BiSeries rand_poly(std::mt19937& rng, unsigned deg, int nterms) {
  std::uniform_int_distribution<int> cd(-3, 3);
  std::uniform_int_distribution<unsigned> ed(0, deg);
  std::vector<BiSeries::Term> ts;
  for (int k = 0; k < nterms; ++k) {
    unsigned i = ed(rng), j = ed(rng);
    if (i + j > deg) continue;
    ts.push_back({i, j, Cyclo(Rat(cd(rng)))});
  }
  return BiSeries::from_terms(std::move(ts));
}

}  // namespace

TEST_CASE("order") {
  CHECK(mono(2, 3).order() == OrderVal::finite(5));
  CHECK((mono(0, 4) - mono(5, 0)).order() == OrderVal::finite(4));
  CHECK(BiSeries().order() == OrderVal::infinite());
  CHECK(BiSeries::zero(8u).order() == OrderVal::indeterminate());
  // Ex: f1 of (y^2, y^4 - x^5)
  CHECK(mono(0, 2).order() == OrderVal::finite(2));
}

TEST_CASE("order is additive on exact products") {
  std::mt19937 rng(3);
  for (int t = 0; t < 200; ++t) {
    BiSeries a = rand_poly(rng, 5, 4), b = rand_poly(rng, 5, 4);
    if (a.is_zero() || b.is_zero()) continue;
    auto oa = a.order(), ob = b.order(), op = (a * b).order();
    REQUIRE(op.is_finite());
    CHECK(op.value == oa.value + ob.value);
  }
}

TEST_CASE("compose: monomial germs multiply exponent matrices") {
  Germ f(mono(2, 0), mono(0, 2));
  Germ ff = f.compose_after(f, 8u);
  CHECK(ff.f1() == mono(4, 0).truncated(8));
  CHECK(ff.f2() == mono(0, 4).truncated(8));

  Germ g(mono(0, 3), mono(2, 0));
  Germ gg = g.compose_after(g, 12u);
  CHECK(gg.f1().terms().size() == 1);
  CHECK(gg.f1().terms()[0].i == 6);
  CHECK(gg.f1().terms()[0].j == 0);
  CHECK(gg.f2().terms()[0].i == 0);
  CHECK(gg.f2().terms()[0].j == 6);
}

TEST_CASE("compose: (y^2, y^4 - x^5) squared by hand") {
  Germ f(mono(0, 2), mono(0, 4) - mono(5, 0));
  Germ f2 = f.compose_after(f, std::nullopt);
  BiSeries q = mono(0, 4) - mono(5, 0);
  CHECK(f2.f1() == q * q);
  CHECK(f2.f2() == q.pow_trunc(4, std::nullopt) - mono(0, 10));
}

TEST_CASE("compose associativity under truncation") {
  std::mt19937 rng(5);
  for (int t = 0; t < 25; ++t) {
    BiSeries a1 = rand_poly(rng, 3, 3), a2 = rand_poly(rng, 3, 3);
    // strip constant terms
    auto strip = [](BiSeries b) {
      std::vector<BiSeries::Term> ts;
      for (auto& x : b.terms())
        if (x.i + x.j > 0) ts.push_back(x);
      return BiSeries::from_terms(std::move(ts));
    };
    a1 = strip(a1);
    a2 = strip(a2);
    if (a1.is_zero() || a2.is_zero()) continue;
    Germ f(a1, a2);
    unsigned D = 9;
    Germ left = f.compose_after(f, D).compose_after(f, D);
    Germ right = f.compose_after(f.compose_after(f, D), D);
    CHECK(left.f1() == right.f1());
    CHECK(left.f2() == right.f2());
  }
}

TEST_CASE("jacobian") {
  // (x^a y^b, x^c y^d) -> (ad - bc) x^{a+c-1} y^{b+d-1}
  Germ m(mono(2, 1), mono(2, 3));
  CHECK(m.jacobian() == mono(3, 3, 4));
  // (y + x^2, y^2) -> 4xy
  Germ f(mono(0, 1) + mono(2, 0), mono(0, 2));
  CHECK(f.jacobian() == mono(1, 1, 4));
  // (x^p, y^p) in char 0: p^2 x^{p-1} y^{p-1} != 0
  Germ p(mono(5, 0), mono(0, 5));
  CHECK(p.jacobian() == mono(4, 4, 25));
  CHECK(!p.jacobian().is_zero());
}

TEST_CASE("jacobian chain rule up to truncation") {
  std::mt19937 rng(9);
  for (int t = 0; t < 20; ++t) {
    auto strip = [](BiSeries b) {
      std::vector<BiSeries::Term> ts;
      for (auto& x : b.terms())
        if (x.i + x.j > 0) ts.push_back(x);
      return BiSeries::from_terms(std::move(ts));
    };
    BiSeries a1 = strip(rand_poly(rng, 3, 3)), a2 = strip(rand_poly(rng, 3, 3));
    BiSeries b1 = strip(rand_poly(rng, 3, 3)), b2 = strip(rand_poly(rng, 3, 3));
    if (a1.is_zero() || a2.is_zero() || b1.is_zero() || b2.is_zero()) continue;
    Germ f(a1, a2), g(b1, b2);
    unsigned D = 7;
    Germ fg = f.compose_after(g, D);
    BiSeries lhs = fg.jacobian().truncated(D >= 1 ? D - 1 : 0);
    BiSeries rhs = f.jacobian()
                       .substitute(g.f1(), g.f2(), D)
                       .mul_trunc(g.jacobian(), D)
                       .truncated(D >= 1 ? D - 1 : 0);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("newton envelope") {
  // y^2 -> 2t
  auto e1 = mono(0, 2).newton_envelope(Axis::Y);
  CHECK(e1.pieces().size() == 1);
  CHECK(e1.eval(Rat(3)) == Rat(6));
  // y^4 - x^5 -> min(4t, 5), breakpoint 5/4
  auto e2 = (mono(0, 4) - mono(5, 0)).newton_envelope(Axis::Y);
  CHECK(e2.eval(Rat(1)) == Rat(4));
  CHECK(e2.eval(Rat(5, 4)) == Rat(5));
  CHECK(e2.eval(Rat(2)) == Rat(5));
  auto bps = e2.breakpoints();
  REQUIRE(bps.size() == 1);
  CHECK(bps[0] == Rat(5, 4));
  // x^2 y^3 -> 2 + 3t
  auto e3 = mono(2, 3).newton_envelope(Axis::Y);
  CHECK(e3.eval(Rat(7)) == Rat(23));
  CHECK(e3.is_concave());
  CHECK(e3.is_increasing());
}

TEST_CASE("envelope at t=1 equals the order") {
  std::mt19937 rng(13);
  for (int t = 0; t < 200; ++t) {
    BiSeries a = rand_poly(rng, 6, 5);
    if (a.is_zero()) continue;
    CHECK(a.newton_envelope(Axis::Y).eval(Rat(1)) == Rat(a.order().value));
    CHECK(a.newton_envelope(Axis::X).eval(Rat(1)) == Rat(a.order().value));
  }
}

TEST_CASE("shift coordinates") {
  BiSeries p = mono(2, 0);  // x^2
  // y - x^2 shifted by y -> y + x^2 gives y
  CHECK((mono(0, 1) - mono(2, 0)).shift(Axis::Y, p) == mono(0, 1));
  // y^2 -> y^2 + 2x^2 y + x^4
  CHECK(mono(0, 2).shift(Axis::Y, p) == mono(0, 2) + mono(2, 1, 2) + mono(4, 0));
  // y^4 - x^5 -> (y+x)^4 - x^5
  BiSeries px = mono(1, 0);
  BiSeries lhs = (mono(0, 4) - mono(5, 0)).shift(Axis::Y, px);
  BiSeries rhs = (mono(0, 1) + mono(1, 0)).pow_trunc(4, std::nullopt) - mono(5, 0);
  CHECK(lhs == rhs);
}

TEST_CASE("classify_germ") {
  // (x^2, xy): contracted factor x
  Germ a(mono(2, 0), mono(1, 1));
  auto ca = a.classify();
  REQUIRE(ca.contracted_curve_factor.has_value());
  CHECK(*ca.contracted_curve_factor == mono(1, 0));
  // (y + x^2, y^2): superattracting, nilpotent linear part
  Germ b(mono(0, 1) + mono(2, 0), mono(0, 2));
  CHECK(b.superattracting());
  CHECK(b.classify().dominant == Dominance::Yes);
  // (x + y^2, y^2): not superattracting
  Germ c(mono(1, 0) + mono(0, 2), mono(0, 2));
  CHECK(!c.superattracting());
}

TEST_CASE("bivariate gcd and squarefree") {
  BiSeries a = (mono(0, 1) - mono(2, 0)) * (mono(0, 1) - mono(2, 0, 2));
  BiSeries b = (mono(0, 1) - mono(2, 0)) * mono(0, 1);
  BiSeries g = biseries_gcd(a, b);
  // gcd = y - x^2 up to scalar; normalized with monic leading y-coefficient
  CHECK(g.coeff(0, 1).is_one());
  CHECK(g == mono(0, 1) - mono(2, 0));

  BiSeries sq = (mono(0, 1) - mono(2, 0)) * (mono(0, 1) - mono(2, 0)) * mono(1, 0);
  auto dec = biseries_squarefree(sq);
  CHECK(dec.ax == 1);
  CHECK(dec.ay == 0);
  REQUIRE(dec.parts.size() == 1);
  CHECK(dec.parts[0].second == 2);
  CHECK(dec.parts[0].first == mono(0, 1) - mono(2, 0));
}

TEST_CASE("truncated composition certifies low degrees") {
  Germ f(mono(0, 2), mono(0, 4) - mono(5, 0));
  Germ f2t = f.compose_after(f, 12u);
  Germ f2 = f.compose_after(f, std::nullopt);
  for (auto& t : f2.f1().terms())
    if (t.i + t.j <= 12) CHECK(f2t.f1().coeff(t.i, t.j) == t.c);
  CHECK(!f2t.f1().is_exact());
  CHECK(f2t.f1().truncation() == 12u);
}
