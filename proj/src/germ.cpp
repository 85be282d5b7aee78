#include "germdyn/germ.hpp"

namespace germdyn {

Germ::Germ(BiSeries f1, BiSeries f2) : f1_(std::move(f1)), f2_(std::move(f2)) {
  if (!f1_.constant_term().is_zero() || !f2_.constant_term().is_zero())
    throw std::invalid_argument("Germ: components must vanish at the origin");
}

std::array<Cyclo, 4> Germ::linear_part() const {
  return {f1_.coeff(1, 0), f1_.coeff(0, 1), f2_.coeff(1, 0), f2_.coeff(0, 1)};
}

bool Germ::superattracting() const {
  auto [a, b, c, d] = linear_part();
  // nilpotent 2x2: trace and determinant vanish
  return (a + d).is_zero() && (a * d - b * c).is_zero();
}

const BiSeries& Germ::jacobian() const {
  std::lock_guard<std::mutex> lock(jac_mu_);
  if (!jac_) {
    BiSeries j = f1_.derivative(Axis::X) * f2_.derivative(Axis::Y) -
                 f1_.derivative(Axis::Y) * f2_.derivative(Axis::X);
    jac_ = std::make_shared<const BiSeries>(std::move(j));
  }
  return *jac_;
}

Germ Germ::compose_after(const Germ& inner, std::optional<unsigned> cap) const {
  return Germ(f1_.substitute(inner.f1(), inner.f2(), cap),
              f2_.substitute(inner.f1(), inner.f2(), cap));
}

GermClassification Germ::classify() const {
  GermClassification r{};
  r.superattracting = superattracting();
  const BiSeries& j = jacobian();
  if (!j.is_zero()) {
    r.dominant = Dominance::Yes;
  } else if (j.is_exact()) {
    r.dominant = Dominance::No;
  } else {
    r.dominant = Dominance::NotFalsifiedUpTo;
    r.dominance_checked_to = *j.truncation();
  }
  if (is_exact() && !f1_.is_zero() && !f2_.is_zero()) {
    BiSeries g = biseries_gcd(f1_, f2_);
    auto ord = g.order();
    if (ord.is_finite() && ord.value > 0) r.contracted_curve_factor = g;
  }
  return r;
}

std::string Germ::str() const { return "(" + f1_.str() + ", " + f2_.str() + ")"; }

}  // namespace germdyn
