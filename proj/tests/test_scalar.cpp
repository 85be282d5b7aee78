#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "germdyn/cyclo.hpp"
#include "germdyn/ratfunc.hpp"

using namespace germdyn;

TEST_CASE("cyclotomic polynomials") {
  auto phi1 = cyclotomic_polynomial(1);
  CHECK(phi1 == std::vector<Rat>{Rat(-1), Rat(1)});
  auto phi4 = cyclotomic_polynomial(4);
  CHECK(phi4 == std::vector<Rat>{Rat(1), Rat(0), Rat(1)});  // t^2 + 1
  auto phi6 = cyclotomic_polynomial(6);
  CHECK(phi6 == std::vector<Rat>{Rat(1), Rat(-1), Rat(1)});  // t^2 - t + 1
  auto phi12 = cyclotomic_polynomial(12);
  CHECK(phi12.size() == 5);  // degree 4
}

TEST_CASE("zeta_2 squares to one") {
  Cyclo z = Cyclo::zeta(2);
  CHECK(z * z == Cyclo(Rat(1)));
  CHECK(z == Cyclo(Rat(-1)));  // rational-valued, cross-conductor compare
}

TEST_CASE("zeta_3 * zeta_3 reduces mod Phi_3") {
  Cyclo z = Cyclo::zeta(3);
  Cyclo sq = z * z;
  // zeta_3^2 = -1 - zeta_3
  CHECK(sq == Cyclo(Rat(-1)) - z);
}

TEST_CASE("(1+zeta_4)(1-zeta_4) = 2") {
  Cyclo z = Cyclo::zeta(4);
  Cyclo one(Rat(1));
  CHECK((one + z) * (one - z) == Cyclo(Rat(2)));
}

TEST_CASE("primitivity: zeta_m^k != 1 for 0 < k < m, zeta_m^m = 1") {
  for (unsigned m = 1; m <= 12; ++m) {
    Cyclo z = Cyclo::zeta(m);
    Cyclo p(Rat(1));
    for (unsigned k = 0; k < m; ++k) {
      if (k == 0)
        CHECK(p.is_one());
      else
        CHECK(!p.is_one());
      p *= z;
    }
    CHECK(p.is_one());
  }
}

TEST_CASE("conductor promotion and mismatch") {
  Cyclo z3 = Cyclo::zeta(3);
  Cyclo r(Rat(2, 5));
  CHECK((r * z3).conductor() == 3);
  Cyclo z4 = Cyclo::zeta(4);
  CHECK_THROWS_AS((void)(z3 * z4), ConductorMismatch);
  // conductor-2 values are rational and mix freely
  CHECK(Cyclo::zeta(2) * z3 == -z3);
}

TEST_CASE("field axioms on random samples") {
  std::mt19937 rng(7);
  auto rnd = [&](unsigned m) {
    std::uniform_int_distribution<int> d(-4, 4);
    std::vector<Rat> c(euler_phi(m));
    for (auto& x : c) x = Rat(d(rng));
    return Cyclo::from_coeffs(m, std::move(c));
  };
  for (unsigned m : {3u, 4u, 5u, 8u, 12u}) {
    for (int trial = 0; trial < 40; ++trial) {
      Cyclo a = rnd(m), b = rnd(m), c = rnd(m);
      CHECK((a + b) * c == a * c + b * c);
      CHECK((a * b) * c == a * (b * c));
      if (!a.is_zero()) CHECK(a * a.inverse() == Cyclo(Rat(1)));
    }
  }
}

TEST_CASE("ratfunc compose: theta^2 twice is theta^4") {
  RatFunc r(UPoly::monomial(2, Cyclo(Rat(1))), UPoly(Cyclo(Rat(1))));
  RatFunc r2 = r.compose(r);
  CHECK(r2.num() == UPoly::monomial(4, Cyclo(Rat(1))));
  CHECK(r2.den().degree() == 0);
}

TEST_CASE("ratfunc: zeta_m theta/(theta+1) has order m") {
  for (unsigned m : {2u, 3u, 5u}) {
    UPoly num = UPoly::variable() * Cyclo::zeta(m);
    UPoly den = UPoly::variable() + UPoly(Cyclo(Rat(1)));
    RatFunc r(num, den);
    RatFunc it = RatFunc::theta();
    for (unsigned k = 1; k <= m; ++k) {
      it = r.compose(it);
      if (k < m) CHECK(!it.is_identity());
    }
    CHECK(it.is_identity());
  }
}

TEST_CASE("ratfunc eval: orbit of infinity under 1/(theta+1)") {
  RatFunc h(UPoly(Cyclo(Rat(1))), UPoly::variable() + UPoly(Cyclo(Rat(1))));
  ProjPoint p = ProjPoint::infinity();
  std::vector<Rat> expected{Rat(0), Rat(1), Rat(1, 2), Rat(2, 3), Rat(3, 5)};
  for (auto& e : expected) {
    p = h.eval(p);
    REQUIRE(!p.infinite);
    CHECK(p.value == Cyclo(e));
  }
}

TEST_CASE("ratfunc eval conventions at infinity and poles") {
  // theta^2/(1+theta)^2 at infinity -> 1
  UPoly t = UPoly::variable(), one(Cyclo(Rat(1)));
  RatFunc r(t * t, (t + one) * (t + one));
  CHECK(r.eval(ProjPoint::infinity()) == ProjPoint::finite(Cyclo(Rat(1))));
  // theta^d at 0 -> 0
  RatFunc p(t * t * t, one);
  CHECK(p.eval(ProjPoint::finite(Cyclo())) == ProjPoint::finite(Cyclo()));
  // 1/(theta+1) at -1 -> infinity
  RatFunc h(one, t + one);
  CHECK(h.eval(ProjPoint::finite(Cyclo(Rat(-1)))).infinite);
}

TEST_CASE("eval commutes with compose") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-3, 3);
  auto rpoly = [&](int deg) {
    std::vector<Cyclo> c;
    for (int i = 0; i <= deg; ++i) c.push_back(Cyclo(Rat(d(rng))));
    return UPoly::from_coeffs(std::move(c));
  };
  for (int trial = 0; trial < 60; ++trial) {
    UPoly a = rpoly(2), b = rpoly(2), c = rpoly(1), e = rpoly(1);
    if (b.is_zero() || e.is_zero()) continue;
    RatFunc R(a, b), S(c, e);
    RatFunc RS;
    try {
      RS = R.compose(S);
    } catch (const std::domain_error&) {
      continue;
    }
    Cyclo x(Rat(d(rng)));
    ProjPoint lhs, rhs;
    try {
      lhs = RS.eval(ProjPoint::finite(x));
      rhs = R.eval(S.eval(ProjPoint::finite(x)));
    } catch (const std::exception&) {
      continue;
    }
    CHECK(lhs == rhs);
  }
}
