#include "germdyn/tower.hpp"

#include <sstream>

namespace germdyn {

int Tower::ext_degree(int k) const {
  return static_cast<int>(mp_[k - 1].size()) - 1;
}

long long Tower::total_degree() const {
  long long d = 1;
  for (int k = 1; k <= levels(); ++k) d *= ext_degree(k);
  return d;
}

AlgNum Tower::zero(int lvl) const {
  if (lvl == 0) return AlgNum::from_cyclo(Cyclo());
  return AlgNum{lvl, Cyclo(), {}};
}

AlgNum Tower::one(int lvl) const { return from_rat(Rat(1), lvl); }

AlgNum Tower::from_rat(const Rat& r, int lvl) const {
  return from_cyclo(Cyclo(r), lvl);
}

AlgNum Tower::from_cyclo(const Cyclo& c, int lvl) const {
  if (lvl == 0) return AlgNum::from_cyclo(c);
  if (c.is_zero()) return zero(lvl);
  return AlgNum{lvl, Cyclo(), {from_cyclo(c, lvl - 1)}};
}

AlgNum Tower::gen(int lvl) const {
  if (lvl < 1 || lvl > levels()) throw std::logic_error("Tower::gen: bad level");
  return AlgNum{lvl, Cyclo(), {zero(lvl - 1), one(lvl - 1)}};
}

AlgNum Tower::lift(const AlgNum& a, int lvl) const {
  if (a.lvl == lvl) return a;
  if (a.lvl > lvl) throw std::logic_error("Tower::lift: cannot lower");
  return AlgNum{lvl, Cyclo(), {lift(a, lvl - 1)}};
}

bool Tower::is_zero(const AlgNum& a) const {
  if (a.lvl == 0) return a.base.is_zero();
  for (const auto& c : a.p)
    if (!is_zero(c)) return false;
  return true;
}

bool Tower::is_cyclo(const AlgNum& a) const {
  if (a.lvl == 0) return true;
  if (a.p.empty()) return true;
  for (size_t k = 1; k < a.p.size(); ++k)
    if (!is_zero(a.p[k])) return false;
  return is_cyclo(a.p.empty() ? zero(a.lvl - 1) : a.p[0]);
}

Cyclo Tower::to_cyclo(const AlgNum& a) const {
  if (a.lvl == 0) return a.base;
  if (a.p.empty()) return Cyclo();
  return to_cyclo(a.p[0]);
}

AlgNum Tower::neg(const AlgNum& a) const {
  AlgNum r = a;
  if (r.lvl == 0) {
    r.base = -r.base;
  } else {
    for (auto& c : r.p) c = neg(c);
  }
  return r;
}

AlgNum Tower::add(const AlgNum& a, const AlgNum& b) const {
  if (a.lvl != b.lvl) {
    int lvl = std::max(a.lvl, b.lvl);
    return add(lift(a, lvl), lift(b, lvl));
  }
  if (a.lvl == 0) return AlgNum::from_cyclo(a.base + b.base);
  AlgNum r{a.lvl, Cyclo(), {}};
  r.p.resize(std::max(a.p.size(), b.p.size()), zero(a.lvl - 1));
  for (size_t k = 0; k < a.p.size(); ++k) r.p[k] = a.p[k];
  for (size_t k = 0; k < b.p.size(); ++k) r.p[k] = add(r.p[k], b.p[k]);
  while (!r.p.empty() && is_zero(r.p.back())) r.p.pop_back();
  return r;
}

AlgNum Tower::sub(const AlgNum& a, const AlgNum& b) const { return add(a, neg(b)); }

AlgNum Tower::reduce(AlgNum a) const {
  if (a.lvl == 0) return a;
  const TPoly& m = mp_[a.lvl - 1];
  size_t deg = m.size() - 1;
  while (a.p.size() > deg) {
    AlgNum lead = a.p.back();
    size_t shift = a.p.size() - 1 - deg;
    a.p.pop_back();
    if (!is_zero(lead)) {
      for (size_t i = 0; i < deg; ++i) {
        AlgNum t = mul(lead, lift(m[i], a.lvl - 1));
        a.p[shift + i] = sub(a.p[shift + i], t);
      }
    }
  }
  while (!a.p.empty() && is_zero(a.p.back())) a.p.pop_back();
  return a;
}

AlgNum Tower::mul(const AlgNum& a, const AlgNum& b) const {
  if (a.lvl != b.lvl) {
    int lvl = std::max(a.lvl, b.lvl);
    return mul(lift(a, lvl), lift(b, lvl));
  }
  if (a.lvl == 0) return AlgNum::from_cyclo(a.base * b.base);
  if (a.p.empty() || b.p.empty()) return zero(a.lvl);
  AlgNum r{a.lvl, Cyclo(), {}};
  r.p.assign(a.p.size() + b.p.size() - 1, zero(a.lvl - 1));
  for (size_t i = 0; i < a.p.size(); ++i) {
    if (is_zero(a.p[i])) continue;
    for (size_t j = 0; j < b.p.size(); ++j) {
      if (is_zero(b.p[j])) continue;
      r.p[i + j] = add(r.p[i + j], mul(a.p[i], b.p[j]));
    }
  }
  return reduce(std::move(r));
}

AlgNum Tower::pow(const AlgNum& a, long long e) const {
  if (e < 0) return pow(inv(a), -e);
  AlgNum acc = one(a.lvl), base = a;
  unsigned long long k = static_cast<unsigned long long>(e);
  while (k) {
    if (k & 1) acc = mul(acc, base);
    base = mul(base, base);
    k >>= 1;
  }
  return acc;
}

// Extended Euclid of a against minpoly at level a.lvl; raises SplitRequest
// when a proper gcd appears.
AlgNum Tower::inv(const AlgNum& a) const {
  if (is_zero(a)) throw std::domain_error("Tower: inverse of zero");
  if (a.lvl == 0) return AlgNum::from_cyclo(a.base.inverse());
  int lvl = a.lvl;
  // Work with polynomials over level lvl-1.
  TPoly r0 = mp_[lvl - 1];
  TPoly r1 = a.p;
  tpoly_normalize(*this, r1);
  TPoly s0{}, s1{one(lvl - 1)};
  while (r1.size() > 1) {
    auto [q, rem] = tpoly_divmod(*this, r0, r1);  // may raise SplitRequest below
    TPoly s2 = tpoly_sub(*this, s0, tpoly_mul(*this, q, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) {
    // r0 is a proper monic factor of the minimal polynomial: split.
    TPoly f = tpoly_monic(*this, r0);
    auto [g, rem] = tpoly_divmod(*this, mp_[lvl - 1], f);
    if (!rem.empty()) throw std::logic_error("Tower::inv: factor does not divide");
    throw SplitRequest{lvl, std::move(f), std::move(g)};
  }
  // r1 constant: invert it (recursing a level down; may itself split).
  AlgNum c = inv(r1[0]);
  TPoly res = tpoly_scale(*this, s1, c);
  AlgNum out{lvl, Cyclo(), std::move(res)};
  return reduce(std::move(out));
}

bool Tower::decide_nonzero(const AlgNum& a) const {
  if (is_zero(a)) return false;
  if (a.lvl == 0) return true;
  (void)inv(a);  // raises SplitRequest on zero divisors
  return true;
}

Tower Tower::extended(TPoly minpoly) const {
  Tower t2 = *this;
  TPoly m = tpoly_monic(*this, minpoly);
  if (m.size() < 3) throw std::logic_error("Tower::extended: degree must be >= 2");
  t2.mp_.push_back(std::move(m));
  return t2;
}

Tower Tower::replaced(int k, TPoly factor) const {
  Tower t2;
  t2.mp_.assign(mp_.begin(), mp_.begin() + (k - 1));
  {
    TPoly f = factor;
    for (auto& c : f) c = t2.renorm(c);
    t2.mp_.push_back(std::move(f));
  }
  for (int j = k + 1; j <= levels(); ++j) {
    TPoly m = mp_[j - 1];
    for (auto& c : m) c = t2.renorm(c);
    tpoly_normalize(t2, m);
    t2.mp_.push_back(std::move(m));
  }
  return t2;
}

AlgNum Tower::renorm(const AlgNum& a) const {
  if (a.lvl == 0) return a;
  AlgNum r{a.lvl, Cyclo(), {}};
  r.p.reserve(a.p.size());
  for (const auto& c : a.p) r.p.push_back(renorm(c));
  r = reduce(std::move(r));
  return r;
}

std::string Tower::str(const AlgNum& a) const {
  if (a.lvl == 0) return a.base.str();
  std::ostringstream os;
  os << "[";
  for (size_t k = 0; k < a.p.size(); ++k) {
    if (k) os << ", ";
    os << str(a.p[k]);
  }
  os << "]_" << a.lvl;
  return os.str();
}

// ---------------------------------------------------------------------------

void tpoly_normalize(const Tower& tw, TPoly& p) {
  while (!p.empty() && tw.is_zero(p.back())) p.pop_back();
}

TPoly tpoly_add(const Tower& tw, const TPoly& a, const TPoly& b) {
  TPoly r = a;
  if (b.size() > r.size()) r.resize(b.size(), tw.zero(b.empty() ? 0 : b[0].lvl));
  for (size_t i = 0; i < b.size(); ++i) r[i] = tw.add(r[i], b[i]);
  tpoly_normalize(tw, r);
  return r;
}

TPoly tpoly_sub(const Tower& tw, const TPoly& a, const TPoly& b) {
  TPoly nb;
  nb.reserve(b.size());
  for (auto& c : b) nb.push_back(tw.neg(c));
  return tpoly_add(tw, a, nb);
}

TPoly tpoly_mul(const Tower& tw, const TPoly& a, const TPoly& b) {
  if (a.empty() || b.empty()) return {};
  TPoly r(a.size() + b.size() - 1, tw.zero(a[0].lvl));
  for (size_t i = 0; i < a.size(); ++i) {
    if (tw.is_zero(a[i])) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (tw.is_zero(b[j])) continue;
      r[i + j] = tw.add(r[i + j], tw.mul(a[i], b[j]));
    }
  }
  tpoly_normalize(tw, r);
  return r;
}

TPoly tpoly_scale(const Tower& tw, const TPoly& a, const AlgNum& s) {
  TPoly r;
  r.reserve(a.size());
  for (auto& c : a) r.push_back(tw.mul(c, s));
  tpoly_normalize(tw, r);
  return r;
}

TPoly tpoly_derivative(const Tower& tw, const TPoly& a) {
  TPoly r;
  for (size_t k = 1; k < a.size(); ++k)
    r.push_back(tw.mul(a[k], tw.from_rat(Rat(static_cast<long>(k)), a[k].lvl)));
  tpoly_normalize(tw, r);
  return r;
}

TPoly tpoly_monic(const Tower& tw, const TPoly& a) {
  TPoly r = a;
  tpoly_normalize(tw, r);
  if (r.empty()) return r;
  AlgNum ic = tw.inv(r.back());  // may split
  return tpoly_scale(tw, r, ic);
}

TPoly tpoly_rem_monic(const Tower& tw, TPoly a, const TPoly& m) {
  tpoly_normalize(tw, a);
  while (a.size() >= m.size()) {
    AlgNum lead = a.back();
    size_t shift = a.size() - m.size();
    a.pop_back();
    if (!tw.is_zero(lead))
      for (size_t i = 0; i + 1 < m.size(); ++i)
        a[shift + i] = tw.sub(a[shift + i], tw.mul(lead, m[i]));
    tpoly_normalize(tw, a);
  }
  return a;
}

std::pair<TPoly, TPoly> tpoly_divmod(const Tower& tw, TPoly a, const TPoly& b) {
  TPoly bb = b;
  tpoly_normalize(tw, bb);
  if (bb.empty()) throw std::domain_error("tpoly_divmod: zero divisor");
  AlgNum ic = tw.inv(bb.back());  // may split
  tpoly_normalize(tw, a);
  TPoly q(a.size() >= bb.size() ? a.size() - bb.size() + 1 : 0,
          tw.zero(bb.back().lvl));
  while (a.size() >= bb.size()) {
    AlgNum f = tw.mul(a.back(), ic);
    size_t shift = a.size() - bb.size();
    q[shift] = f;
    a.pop_back();
    if (!tw.is_zero(f))
      for (size_t i = 0; i + 1 < bb.size(); ++i)
        a[shift + i] = tw.sub(a[shift + i], tw.mul(f, bb[i]));
    tpoly_normalize(tw, a);
  }
  tpoly_normalize(tw, q);
  return {q, a};
}

TPoly tpoly_gcd(const Tower& tw, TPoly a, TPoly b) {
  tpoly_normalize(tw, a);
  tpoly_normalize(tw, b);
  while (!b.empty()) {
    // Leading coefficient of b must be decided; splits propagate.
    TPoly r = tpoly_divmod(tw, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  return tpoly_monic(tw, a);
}

TPoly tpoly_squarefree_part(const Tower& tw, const TPoly& a) {
  TPoly d = tpoly_derivative(tw, a);
  if (d.empty()) throw std::logic_error("tpoly_squarefree_part: constant input");
  TPoly g = tpoly_gcd(tw, a, d);
  if (g.size() <= 1) return tpoly_monic(tw, a);
  return tpoly_divmod(tw, tpoly_monic(tw, a), g).first;
}

}  // namespace germdyn
