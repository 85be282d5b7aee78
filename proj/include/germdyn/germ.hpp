#pragma once

#include <array>
#include <memory>
#include <mutex>

#include "germdyn/biseries.hpp"

namespace germdyn {

enum class Dominance { Yes, No, NotFalsifiedUpTo };

struct GermClassification {
  Dominance dominant;
  unsigned dominance_checked_to = 0;  // for NotFalsifiedUpTo
  bool superattracting;
  std::optional<BiSeries> contracted_curve_factor;  // gcd(f1, f2) when a non-unit
};

// A fixed point germ f = (f1, f2); both components vanish at the origin.
class Germ {
 public:
  Germ(BiSeries f1, BiSeries f2);
  Germ(const Germ& o) : f1_(o.f1_), f2_(o.f2_), jac_(o.peek_jacobian()) {}
  Germ(Germ&& o) noexcept
      : f1_(std::move(o.f1_)), f2_(std::move(o.f2_)), jac_(o.peek_jacobian()) {}
  Germ& operator=(const Germ& o) {
    f1_ = o.f1_;
    f2_ = o.f2_;
    set_jacobian(o.peek_jacobian());
    return *this;
  }
  Germ& operator=(Germ&& o) {
    f1_ = std::move(o.f1_);
    f2_ = std::move(o.f2_);
    set_jacobian(o.peek_jacobian());
    return *this;
  }

  const BiSeries& f1() const { return f1_; }
  const BiSeries& f2() const { return f2_; }
  bool is_exact() const { return f1_.is_exact() && f2_.is_exact(); }

  // [[a, b], [c, d]]: linear part of (f1, f2) = (ax + by + ..., cx + dy + ...).
  std::array<Cyclo, 4> linear_part() const;
  bool superattracting() const;

  const BiSeries& jacobian() const;

  // (g o f) truncated so that every term of total degree <= cap is exact.
  Germ compose_after(const Germ& inner, std::optional<unsigned> cap) const;

  GermClassification classify() const;

  std::string str() const;

 private:
  BiSeries f1_, f2_;
  mutable std::mutex jac_mu_;
  mutable std::shared_ptr<const BiSeries> jac_;  // write-once cache

  std::shared_ptr<const BiSeries> peek_jacobian() const {
    std::lock_guard<std::mutex> lock(jac_mu_);
    return jac_;
  }
  void set_jacobian(std::shared_ptr<const BiSeries> j) {
    std::lock_guard<std::mutex> lock(jac_mu_);
    jac_ = std::move(j);
  }
};

}  // namespace germdyn
