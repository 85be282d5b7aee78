#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "germdyn/valuation.hpp"

using namespace germdyn;

namespace {

BiSeries mono(unsigned i, unsigned j, long c = 1) {
  return BiSeries::monomial(i, j, Cyclo(Rat(c)));
}

BiSeries X() { return BiSeries::var_x(); }
BiSeries Y() { return BiSeries::var_y(); }

PuiseuxBranch graph_branch(const BiSeries& curve) {
  return branch_from_curve(curve, Rat(12));
}

}  // namespace

TEST_CASE("monomial evaluation") {
  Valuation v = Valuation::monomial(Rat(1), Rat(2));
  auto r = v.evaluate(mono(0, 4) - mono(5, 0));
  CHECK(!r.infinite);
  CHECK(r.value == Rat(5));  // min(8, 5)
  CHECK(r.certified);

  auto r2 = Valuation::ord0().evaluate(mono(0, 4) - mono(5, 0));
  CHECK(r2.value == Rat(4));
}

TEST_CASE("quasimonomial evaluation on its own curve") {
  PuiseuxBranch b = graph_branch(Y() - mono(2, 0));
  Valuation v = Valuation::quasimonomial(b, Rat(5, 2));
  auto r = v.evaluate(Y() - mono(2, 0));
  CHECK(r.value == Rat(5, 2));
  // against the contact-2 curve y
  CHECK(v.evaluate(Y()).value == Rat(2));
  CHECK(v.evaluate(X()).value == Rat(1));
}

TEST_CASE("canonicalization to monomial form") {
  PuiseuxBranch b = graph_branch(Y() - mono(2, 0));
  Valuation v = Valuation::quasimonomial(b, Rat(3, 2));
  CHECK(v.kind() == Valuation::Kind::Monomial);
  CHECK(v == Valuation::monomial(Rat(1), Rat(3, 2)));
  CHECK(Valuation::quasimonomial(b, Rat(1)) == Valuation::ord0());
  // above the contact it stays quasimonomial
  CHECK(Valuation::quasimonomial(b, Rat(3)).kind() ==
        Valuation::Kind::Quasimonomial);
  // mirrored branch canonicalizes to the x side
  PuiseuxBranch bx = graph_branch(X() - mono(0, 3));
  CHECK(Valuation::quasimonomial(bx, Rat(2)) ==
        Valuation::monomial(Rat(2), Rat(1)));
}

TEST_CASE("meet") {
  Valuation vx = Valuation::curve(axis_branch(Axis::X));
  Valuation vy = Valuation::curve(axis_branch(Axis::Y));
  CHECK(Valuation::meet(vx, vy) == Valuation::ord0());

  Valuation m12 = Valuation::monomial(Rat(1), Rat(2));
  Valuation m13 = Valuation::monomial(Rat(1), Rat(3));
  CHECK(Valuation::meet(m12, m13) == m12);

  PuiseuxBranch b = graph_branch(Y() - mono(2, 0));
  Valuation q = Valuation::quasimonomial(b, Rat(4));
  CHECK(Valuation::meet(q, vy) == m12);  // contact(y, y - x^2) = 2
}

TEST_CASE("skewness") {
  CHECK(Valuation::ord0().skewness() == ExtRat::fin(Rat(1)));
  CHECK(Valuation::monomial(Rat(1), Rat(2)).skewness() == ExtRat::fin(Rat(2)));
  PuiseuxBranch b45 = branch_from_curve(mono(0, 4) - mono(5, 0), Rat(12));
  Valuation v = Valuation::quasimonomial(b45, Rat(41, 32));
  CHECK(v.kind() == Valuation::Kind::Quasimonomial);
  CHECK(v.skewness() == ExtRat::fin(Rat(41, 32)));
  CHECK(Valuation::curve(b45).skewness().infinite);
}

TEST_CASE("thinness") {
  CHECK(Valuation::ord0().thinness() == ExtRat::fin(Rat(2)));
  CHECK(Valuation::monomial(Rat(1), Rat(7, 2)).thinness() == ExtRat::fin(Rat(9, 2)));
  // cusp branch y = x^{3/2}: multiplicity jumps to 2 at contact 3/2
  PuiseuxBranch cusp = branch_from_curve(mono(0, 2) - mono(3, 0), Rat(12));
  for (Rat t : {Rat(2), Rat(7, 4), Rat(3)}) {
    Valuation v = Valuation::quasimonomial(cusp, t);
    ExtRat a = v.thinness();
    CHECK(a == ExtRat::fin(Rat(5, 2) + 2 * (t - Rat(3, 2))));
  }
  CHECK(Valuation::curve(cusp).thinness().infinite);
}

TEST_CASE("distance") {
  Valuation o = Valuation::ord0();
  CHECK(Valuation::distance(o, o, TreeParam::Thinness) == Rat(0));
  Valuation m2 = Valuation::monomial(Rat(1), Rat(2));
  Valuation m3 = Valuation::monomial(Rat(1), Rat(3));
  CHECK(Valuation::distance(m2, m3, TreeParam::Thinness) == Rat(1));
  Valuation cy = Valuation::curve(axis_branch(Axis::Y));
  CHECK(Valuation::distance(o, cy, TreeParam::InvThinness) == Rat(1, 2));
  CHECK_THROWS_AS(Valuation::distance(o, cy, TreeParam::Thinness),
                  std::invalid_argument);
}

TEST_CASE("evaluation certification on truncated series") {
  BiSeries t = (mono(0, 1) + mono(3, 0)).truncated(2);  // y + O(3)
  Valuation m = Valuation::monomial(Rat(1), Rat(2));
  auto r = m.evaluate(t);
  CHECK(r.value == Rat(2));
  CHECK(r.certified);
  BiSeries high = mono(4, 0).truncated(6);  // x^4 exact to degree 6
  auto r2 = Valuation::monomial(Rat(1), Rat(2)).evaluate(high);
  CHECK(r2.value == Rat(4));
  CHECK(r2.certified);
  BiSeries over = mono(5, 0).truncated(6);
  auto r3 = Valuation::monomial(Rat(2), Rat(1)).evaluate(over);
  CHECK(r3.value == Rat(10));
  CHECK(!r3.certified);  // 10 > 6
}

TEST_CASE("quasimonomial on ramified branch agrees with figure data") {
  // nu_{y^4-x^5, 41/32} evaluates y^4 - x^5 to m0 * skew = 4 * 41/32 = 41/8
  PuiseuxBranch b = branch_from_curve(mono(0, 4) - mono(5, 0), Rat(12));
  Valuation v = Valuation::quasimonomial(b, Rat(41, 32));
  auto r = v.evaluate(mono(0, 4) - mono(5, 0));
  CHECK(r.value == Rat(4) * Rat(41, 32));
  // on y: contact(B, y-axis) = 5/4 < skew
  CHECK(v.evaluate(Y()).value == Rat(5, 4));
  // on x: 1
  CHECK(v.evaluate(X()).value == Rat(1));
}

namespace {

struct Sampler {
  std::mt19937 rng{20240613};
  std::uniform_int_distribution<int> coeff{-3, 3};

  BiSeries poly(unsigned maxdeg, int nterms, bool vanish = true) {
    std::uniform_int_distribution<unsigned> ed(0, maxdeg);
    std::vector<BiSeries::Term> ts;
    for (int k = 0; k < nterms; ++k) {
      unsigned i = ed(rng), j = ed(rng);
      if (i + j > maxdeg || (vanish && i + j == 0)) continue;
      ts.push_back({i, j, Cyclo(Rat(coeff(rng)))});
    }
    return BiSeries::from_terms(std::move(ts));
  }

  Valuation valuation() {
    switch (rng() % 6) {
      case 0:
        return Valuation::ord0();
      case 1:
        return Valuation::monomial(Rat(1), 1 + Rat((int)(rng() % 7), 1 + (int)(rng() % 3)));
      case 2:
        return Valuation::monomial(Rat(1 + (int)(rng() % 5)), Rat(1));
      case 3: {
        BiSeries c = BiSeries::var_y() - BiSeries::monomial(2, 0, Cyclo(Rat(1 + (int)(rng() % 3))));
        return Valuation::quasimonomial(branch_from_curve(c, Rat(12)),
                                        Rat(2 + (int)(rng() % 6), 1 + (int)(rng() % 2)));
      }
      case 4: {
        BiSeries c = BiSeries::monomial(0, 2, Cyclo(Rat(1))) -
                     BiSeries::monomial(3, 0, Cyclo(Rat(1)));
        return Valuation::quasimonomial(branch_from_curve(c, Rat(14)),
                                        Rat(3 + (int)(rng() % 8), 2));
      }
      default: {
        BiSeries c = BiSeries::var_y() - BiSeries::monomial(1, 0, Cyclo(Rat(1))) -
                     BiSeries::monomial(2, 0, Cyclo(Rat(1 + (int)(rng() % 2))));
        return Valuation::quasimonomial(branch_from_curve(c, Rat(12)),
                                        Rat(1 + (int)(rng() % 5)));
      }
    }
  }
};

Rat eval_fin(const Valuation& v, const BiSeries& phi) {
  auto r = v.evaluate(phi);
  REQUIRE(!r.infinite);
  return r.value;
}

}  // namespace

TEST_CASE("semivaluation axioms on random samples") {
  Sampler S;
  int done = 0;
  for (int trial = 0; trial < 400 && done < 150; ++trial) {
    Valuation v = S.valuation();
    BiSeries a = S.poly(4, 4), b = S.poly(4, 4);
    if (a.is_zero() || b.is_zero()) continue;
    // multiplicativity
    CHECK(eval_fin(v, a * b) == eval_fin(v, a) + eval_fin(v, b));
    // ultrametric inequality
    BiSeries sum = a + b;
    if (!sum.is_zero()) {
      Rat va = eval_fin(v, a), vb = eval_fin(v, b);
      CHECK(eval_fin(v, sum) >= (va < vb ? va : vb));
    }
    // ord0 lower bound
    auto o = a.order();
    CHECK(eval_fin(v, a) >= Rat(o.value));
    ++done;
  }
  CHECK(done >= 150);
}

TEST_CASE("alpha <= A and meet properties on random samples") {
  Sampler S;
  for (int trial = 0; trial < 150; ++trial) {
    Valuation v = S.valuation(), w = S.valuation(), u = S.valuation();
    ExtRat alpha = v.skewness(), A = v.thinness();
    if (!alpha.infinite) {
      REQUIRE(!A.infinite);
      CHECK(alpha.value <= A.value);
    }
    Valuation m = Valuation::meet(v, w);
    // alpha(meet) <= min
    ExtRat am = m.skewness();
    REQUIRE(!am.infinite);
    if (!alpha.infinite) CHECK(am.value <= alpha.value);
    // commutative, idempotent
    CHECK(Valuation::meet(w, v) == m);
    CHECK(Valuation::meet(v, v) == v);
    // associative
    CHECK(Valuation::meet(Valuation::meet(v, w), u) ==
          Valuation::meet(v, Valuation::meet(w, u)));
  }
}

TEST_CASE("Lipschitz bound |nu(phi) - mu(phi)| <= ord(phi) d_A(nu, mu)") {
  Sampler S;
  int done = 0;
  for (int trial = 0; trial < 300 && done < 120; ++trial) {
    Valuation v = S.valuation(), w = S.valuation();
    BiSeries a = S.poly(4, 4);
    if (a.is_zero()) continue;
    ExtRat Av = v.thinness(), Aw = w.thinness();
    if (Av.infinite || Aw.infinite) continue;
    Rat d = Valuation::distance(v, w, TreeParam::Thinness);
    Rat lhs = eval_fin(v, a) - eval_fin(w, a);
    if (lhs < 0) lhs = -lhs;
    CHECK(lhs <= Rat(a.order().value) * d);
    ++done;
  }
  CHECK(done >= 120);
}

TEST_CASE("monomial evaluation agrees with the newton envelope") {
  Sampler S;
  for (int trial = 0; trial < 150; ++trial) {
    BiSeries a = S.poly(6, 5);
    if (a.is_zero()) continue;
    Rat t(1 + (int)(S.rng() % 9), 1 + (int)(S.rng() % 3));
    if (t < 1) t = Rat(1) / t;
    auto env = a.newton_envelope(Axis::Y);
    CHECK(Valuation::monomial(Rat(1), t).evaluate(a).value == env.eval(t));
  }
}

TEST_CASE("graph-curve evaluation agrees with shifted monomial evaluation") {
  // change-of-coordinates consistency, both routes exercised explicitly
  Sampler S;
  BiSeries p = mono(2, 0, 3) + mono(3, 0, -1);
  PuiseuxBranch b = graph_branch(Y() - p);
  for (int trial = 0; trial < 60; ++trial) {
    BiSeries a = S.poly(5, 5);
    if (a.is_zero()) continue;
    Rat t(3 + (int)(S.rng() % 5));
    Valuation v = Valuation::quasimonomial(b, t);
    Rat via_contacts = v.evaluate_via_contacts(a).value;
    Rat via_shift = eval_fin(v, a);  // fast path: shifted monomial evaluation
    CHECK(via_contacts == via_shift);
  }
}
