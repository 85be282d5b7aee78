#include "germdyn/biseries.hpp"

#include <algorithm>
#include <sstream>

#include "germdyn/upoly.hpp"

namespace germdyn {

namespace {

struct DegOrder {
  bool operator()(const std::pair<unsigned, unsigned>& a,
                  const std::pair<unsigned, unsigned>& b) const {
    unsigned da = a.first + a.second, db = b.first + b.second;
    if (da != db) return da < db;
    return a.first < b.first;
  }
};

using TermMap = std::map<std::pair<unsigned, unsigned>, Cyclo, DegOrder>;

std::vector<BiSeries::Term> map_to_terms(TermMap& m) {
  std::vector<BiSeries::Term> out;
  out.reserve(m.size());
  for (auto& [k, c] : m)
    if (!c.is_zero()) out.push_back({k.first, k.second, std::move(c)});
  return out;
}

}  // namespace

BiSeries BiSeries::zero(std::optional<unsigned> trunc) {
  BiSeries b;
  b.trunc_ = trunc;
  return b;
}

BiSeries BiSeries::constant(Cyclo c) { return monomial(0, 0, std::move(c)); }

BiSeries BiSeries::monomial(unsigned i, unsigned j, Cyclo c) {
  BiSeries b;
  if (!c.is_zero()) b.t_.push_back({i, j, std::move(c)});
  return b;
}

BiSeries BiSeries::from_terms(std::vector<Term> terms, std::optional<unsigned> trunc) {
  TermMap m;
  for (auto& t : terms) {
    if (trunc && t.i + t.j > *trunc) continue;
    auto [it, fresh] = m.try_emplace({t.i, t.j}, t.c);
    if (!fresh) it->second += t.c;
  }
  BiSeries b;
  b.t_ = map_to_terms(m);
  b.trunc_ = trunc;
  return b;
}

unsigned BiSeries::total_degree() const {
  return t_.empty() ? 0 : t_.back().i + t_.back().j;
}

Cyclo BiSeries::coeff(unsigned i, unsigned j) const {
  for (auto& t : t_)
    if (t.i == i && t.j == j) return t.c;
  return Cyclo();
}

std::optional<unsigned> BiSeries::combine_trunc(const std::optional<unsigned>& a,
                                                const std::optional<unsigned>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

BiSeries BiSeries::operator-() const {
  BiSeries r = *this;
  for (auto& t : r.t_) t.c = -t.c;
  return r;
}

BiSeries BiSeries::operator+(const BiSeries& o) const {
  auto tr = combine_trunc(trunc_, o.trunc_);
  TermMap m;
  for (auto& t : t_) {
    if (tr && t.i + t.j > *tr) continue;
    m.try_emplace({t.i, t.j}, Cyclo()).first->second += t.c;
  }
  for (auto& t : o.t_) {
    if (tr && t.i + t.j > *tr) continue;
    m.try_emplace({t.i, t.j}, Cyclo()).first->second += t.c;
  }
  BiSeries r;
  r.t_ = map_to_terms(m);
  r.trunc_ = tr;
  return r;
}

BiSeries BiSeries::operator-(const BiSeries& o) const { return *this + (-o); }

BiSeries BiSeries::operator*(const BiSeries& o) const {
  auto tr = combine_trunc(trunc_, o.trunc_);
  if (tr) return mul_trunc(o, *tr);
  TermMap m;
  for (auto& a : t_)
    for (auto& b : o.t_)
      m.try_emplace({a.i + b.i, a.j + b.j}, Cyclo()).first->second += a.c * b.c;
  BiSeries r;
  r.t_ = map_to_terms(m);
  return r;
}

BiSeries BiSeries::operator*(const Cyclo& s) const {
  if (s.is_zero()) return zero(trunc_);
  BiSeries r = *this;
  for (auto& t : r.t_) t.c *= s;
  return r;
}

BiSeries BiSeries::mul_trunc(const BiSeries& o, unsigned cap) const {
  auto tr = combine_trunc(combine_trunc(trunc_, o.trunc_), cap);
  unsigned capv = *tr;
  TermMap m;
  unsigned omin = o.t_.empty() ? 0 : o.t_.front().i + o.t_.front().j;
  for (auto& a : t_) {
    unsigned da = a.i + a.j;
    if (da + omin > capv) break;  // terms sorted by degree
    for (auto& b : o.t_) {
      if (da + b.i + b.j > capv) break;
      m.try_emplace({a.i + b.i, a.j + b.j}, Cyclo()).first->second += a.c * b.c;
    }
  }
  BiSeries r;
  r.t_ = map_to_terms(m);
  // Exact if both inputs exact and nothing could have been dropped.
  if (is_exact() && o.is_exact() && total_degree() + o.total_degree() <= cap)
    r.trunc_ = std::nullopt;
  else
    r.trunc_ = capv;
  return r;
}

BiSeries BiSeries::pow_trunc(unsigned e, std::optional<unsigned> cap) const {
  BiSeries acc = constant(Cyclo(Rat(1)));
  BiSeries base = *this;
  while (e) {
    if (e & 1) acc = cap ? acc.mul_trunc(base, *cap) : acc * base;
    e >>= 1;
    if (e) base = cap ? base.mul_trunc(base, *cap) : base * base;
  }
  return acc;
}

BiSeries BiSeries::truncated(unsigned cap) const {
  BiSeries r;
  for (auto& t : t_)
    if (t.i + t.j <= cap) r.t_.push_back(t);
  r.trunc_ = combine_trunc(trunc_, cap);
  return r;
}

BiSeries BiSeries::with_certified_truncation(unsigned cap) const {
  BiSeries r = *this;
  r.trunc_ = cap;
  return r;
}

OrderVal BiSeries::order() const {
  if (t_.empty()) return is_exact() ? OrderVal::infinite() : OrderVal::indeterminate();
  return OrderVal::finite(t_.front().i + t_.front().j);
}

BiSeries::Weighted BiSeries::weighted_order(const Rat& s, const Rat& t) const {
  if (t_.empty()) return {Rat(0), is_exact(), true};
  Rat best;
  bool first = true;
  for (auto& term : t_) {
    Rat v = s * Rat(term.i) + t * Rat(term.j);
    if (first || v < best) {
      best = v;
      first = false;
    }
  }
  bool cert = is_exact() || best <= Rat(*trunc_);
  return {best, cert, false};
}

PiecewiseAffine BiSeries::newton_envelope(Axis axis) const {
  if (t_.empty()) throw std::domain_error("newton_envelope: zero series");
  std::vector<std::pair<Rat, Rat>> lines;
  for (auto& t : t_) {
    if (axis == Axis::Y)
      lines.push_back({Rat(t.j), Rat(t.i)});  // i + j*t
    else
      lines.push_back({Rat(t.i), Rat(t.j)});  // j + i*t
  }
  return PiecewiseAffine::lower_envelope(std::move(lines), Rat(1), std::nullopt);
}

BiSeries BiSeries::derivative(Axis axis) const {
  BiSeries r;
  r.trunc_ = trunc_;  // conservative: exact terms differentiate exactly
  if (trunc_ && *trunc_ > 0) r.trunc_ = *trunc_ - 1;
  TermMap m;
  for (auto& t : t_) {
    if (axis == Axis::X && t.i > 0)
      m.try_emplace({t.i - 1, t.j}, Cyclo()).first->second +=
          t.c * Cyclo(Rat(static_cast<long>(t.i)));
    if (axis == Axis::Y && t.j > 0)
      m.try_emplace({t.i, t.j - 1}, Cyclo()).first->second +=
          t.c * Cyclo(Rat(static_cast<long>(t.j)));
  }
  r.t_ = map_to_terms(m);
  return r;
}

BiSeries BiSeries::substitute(const BiSeries& fx, const BiSeries& fy,
                              std::optional<unsigned> cap) const {
  auto tr = combine_trunc(combine_trunc(trunc_, fx.truncation()),
                          combine_trunc(fy.truncation(), cap));
  unsigned maxi = 0, maxj = 0;
  for (auto& t : t_) {
    maxi = std::max(maxi, t.i);
    maxj = std::max(maxj, t.j);
  }
  auto powers = [&](const BiSeries& base, unsigned emax) {
    std::vector<BiSeries> p(emax + 1);
    p[0] = constant(Cyclo(Rat(1)));
    for (unsigned k = 1; k <= emax; ++k)
      p[k] = tr ? p[k - 1].mul_trunc(base, *tr) : p[k - 1] * base;
    return p;
  };
  auto px = powers(fx, maxi), py = powers(fy, maxj);
  BiSeries acc = zero(tr);
  for (auto& t : t_) {
    BiSeries prod = tr ? px[t.i].mul_trunc(py[t.j], *tr) : px[t.i] * py[t.j];
    acc = acc + prod * t.c;
  }
  if (!tr) acc.trunc_ = std::nullopt;
  return acc;
}

BiSeries BiSeries::shift(Axis axis, const BiSeries& p, std::optional<unsigned> cap) const {
  if (!p.constant_term().is_zero())
    throw std::invalid_argument("shift: p(0) must vanish");
  if (axis == Axis::Y) return substitute(var_x(), var_y() + p, cap);
  return substitute(var_x() + p, var_y(), cap);
}

BiSeries BiSeries::mirrored() const {
  BiSeries r;
  r.trunc_ = trunc_;
  std::vector<Term> ts = t_;
  for (auto& t : ts) std::swap(t.i, t.j);
  return from_terms(std::move(ts), trunc_);
}

bool BiSeries::eq(const BiSeries& o) const {
  if (trunc_ != o.trunc_ || t_.size() != o.t_.size()) return false;
  for (size_t k = 0; k < t_.size(); ++k)
    if (t_[k].i != o.t_[k].i || t_[k].j != o.t_[k].j || !(t_[k].c == o.t_[k].c))
      return false;
  return true;
}

std::string BiSeries::str() const {
  std::ostringstream os;
  if (t_.empty()) os << "0";
  bool first = true;
  for (auto& t : t_) {
    std::string cs = t.c.str();
    if (!first) os << " + ";
    bool unit = t.c.is_one();
    bool paren = cs.find(' ') != std::string::npos || cs.find('/') != std::string::npos;
    if (t.i == 0 && t.j == 0) {
      os << (paren ? "(" + cs + ")" : cs);
    } else {
      if (!unit) os << (paren ? "(" + cs + ")" : cs) << "*";
      if (t.i) {
        os << "x";
        if (t.i > 1) os << "^" << t.i;
        if (t.j) os << "*";
      }
      if (t.j) {
        os << "y";
        if (t.j > 1) os << "^" << t.j;
      }
    }
    first = false;
  }
  if (trunc_) os << " + O(deg>" << *trunc_ << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Exact polynomial utilities via the recursive representation F[x][y].

namespace {

using YPoly = std::vector<UPoly>;  // coefficient of y^k is a UPoly in x

YPoly to_ypoly(const BiSeries& a) {
  if (!a.is_exact()) throw std::invalid_argument("exact polynomial required");
  unsigned degy = 0;
  for (auto& t : a.terms()) degy = std::max(degy, t.j);
  YPoly r(a.is_zero() ? 0 : degy + 1);
  for (auto& t : a.terms()) {
    std::vector<Cyclo> mono(t.i + 1, Cyclo());
    mono[t.i] = t.c;
    r[t.j] = r[t.j] + UPoly::from_coeffs(std::move(mono));
  }
  while (!r.empty() && r.back().is_zero()) r.pop_back();
  return r;
}

BiSeries from_ypoly(const YPoly& p) {
  std::vector<BiSeries::Term> ts;
  for (unsigned j = 0; j < p.size(); ++j)
    for (unsigned i = 0; i < p[j].coeffs().size(); ++i)
      if (!p[j].coeffs()[i].is_zero()) ts.push_back({i, j, p[j].coeffs()[i]});
  return BiSeries::from_terms(std::move(ts));
}

void ynormalize(YPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

UPoly ycontent(const YPoly& a) {
  UPoly g;
  for (auto& c : a) g = upoly_gcd(g, c);
  return g;
}

YPoly ydiv_content(const YPoly& a, const UPoly& g) {
  YPoly r;
  r.reserve(a.size());
  for (auto& c : a) {
    auto [q, rem] = c.divmod(g);
    if (!rem.is_zero()) throw std::logic_error("ydiv_content: not divisible");
    r.push_back(q);
  }
  return r;
}

YPoly ymul(const YPoly& a, const YPoly& b) {
  if (a.empty() || b.empty()) return {};
  YPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  return r;
}

YPoly yscale(const YPoly& a, const UPoly& s) {
  YPoly r;
  r.reserve(a.size());
  for (auto& c : a) r.push_back(c * s);
  ynormalize(r);
  return r;
}

YPoly ysub(YPoly a, const YPoly& b) {
  if (b.size() > a.size()) a.resize(b.size());
  for (size_t i = 0; i < b.size(); ++i) a[i] = a[i] - b[i];
  ynormalize(a);
  return a;
}

// Pseudo-remainder of a by b in (F[x])[y].
YPoly yprem(YPoly a, const YPoly& b) {
  if (b.empty()) throw std::domain_error("yprem: zero divisor");
  ynormalize(a);
  const UPoly& lb = b.back();
  while (a.size() >= b.size()) {
    UPoly la = a.back();
    size_t shift = a.size() - b.size();
    // a = lb*a - la*y^shift*b
    YPoly scaled = yscale(a, lb);
    YPoly sub(shift);
    for (auto& c : b) sub.push_back(c * la);
    a = ysub(std::move(scaled), sub);
    if (a.size() >= b.size() + shift + 1) throw std::logic_error("yprem: no progress");
  }
  return a;
}

// Exact division in (F[x])[y]; throws if not divisible.
YPoly yexact_div(YPoly a, const YPoly& b) {
  if (b.empty()) throw std::domain_error("yexact_div: zero divisor");
  YPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  ynormalize(a);
  while (a.size() >= b.size()) {
    auto [qc, rem] = a.back().divmod(b.back());
    if (!rem.is_zero()) throw std::logic_error("yexact_div: not divisible");
    size_t shift = a.size() - b.size();
    q[shift] = qc;
    YPoly sub(shift);
    for (auto& c : b) sub.push_back(c * qc);
    size_t before = a.size();
    a = ysub(std::move(a), sub);
    if (a.size() >= before) throw std::logic_error("yexact_div: no progress");
  }
  if (!a.empty()) throw std::logic_error("yexact_div: nonzero remainder");
  ynormalize(q);
  return q;
}

YPoly ygcd(YPoly a, YPoly b) {
  ynormalize(a);
  ynormalize(b);
  if (a.empty()) return b;
  if (b.empty()) return a;
  UPoly ca = ycontent(a), cb = ycontent(b);
  YPoly pa = ydiv_content(a, ca), pb = ydiv_content(b, cb);
  while (!pb.empty()) {
    YPoly r = yprem(pa, pb);
    ynormalize(r);
    pa = std::move(pb);
    if (r.empty()) {
      pb = {};
    } else {
      UPoly cr = ycontent(r);
      pb = ydiv_content(r, cr);
    }
  }
  UPoly cg = upoly_gcd(ca, cb);
  YPoly g = yscale(pa, cg);
  // normalize: make the leading y-coefficient monic in x
  if (!g.empty()) {
    Cyclo inv = g.back().lead().inverse();
    for (auto& c : g) c = c * inv;
  }
  return g;
}

}  // namespace

BiSeries biseries_gcd(const BiSeries& a, const BiSeries& b) {
  return from_ypoly(ygcd(to_ypoly(a), to_ypoly(b)));
}

BiSeries biseries_exact_div(const BiSeries& a, const BiSeries& b) {
  YPoly pb = to_ypoly(b);
  if (pb.size() == 1) {
    // divisor is univariate in x
    YPoly pa = to_ypoly(a), q;
    for (auto& c : pa) {
      auto [qc, rem] = c.divmod(pb[0]);
      if (!rem.is_zero()) throw std::logic_error("biseries_exact_div: not divisible");
      q.push_back(qc);
    }
    return from_ypoly(q);
  }
  return from_ypoly(yexact_div(to_ypoly(a), pb));
}

SquarefreeDecomposition biseries_squarefree(const BiSeries& a) {
  if (!a.is_exact() || a.is_zero())
    throw std::invalid_argument("squarefree: exact nonzero polynomial required");
  SquarefreeDecomposition out;
  // Pull off pure x and y powers.
  unsigned ax = UINT32_MAX, ay = UINT32_MAX;
  for (auto& t : a.terms()) {
    ax = std::min(ax, t.i);
    ay = std::min(ay, t.j);
  }
  out.ax = ax;
  out.ay = ay;
  std::vector<BiSeries::Term> ts;
  for (auto& t : a.terms()) ts.push_back({t.i - ax, t.j - ay, t.c});
  BiSeries body = BiSeries::from_terms(std::move(ts));

  // Split off the x-content (poly in x alone); its x^0-free part is a unit at
  // the origin and is discarded for germ purposes only by callers that say so.
  YPoly p = to_ypoly(body);
  if (p.empty()) return out;
  UPoly cont = ycontent(p);
  // roots of cont at x=0 were already removed with ax; remaining content has
  // cont(0) != 0 and is dropped as a unit times ... it still matters for
  // exactness, so keep it multiplied into the primitive part.
  YPoly prim = ydiv_content(p, cont);
  // Yun's algorithm on the primitive part wrt y (char 0).
  auto yderiv = [](const YPoly& f) {
    YPoly d;
    for (size_t k = 1; k < f.size(); ++k)
      d.push_back(f[k] * Cyclo(Rat(static_cast<long>(k))));
    ynormalize(d);
    return d;
  };
  YPoly f = prim;
  if (f.size() <= 1) {
    // no y-dependence left; content portion (unit at origin after x^ax removed)
    if (!(f.size() == 1)) throw std::logic_error("squarefree: empty primitive part");
    UPoly rest = cont * f[0];
    if (rest.degree() > 0) {
      // remaining x-only factor with nonzero constant term: unit germ, record as
      // a degree-0 "part" only if a caller needs exactness; skip here.
      std::vector<Cyclo> cs = rest.coeffs();
      if (cs[0].is_zero()) throw std::logic_error("squarefree: x-power left behind");
    }
    return out;
  }
  YPoly fp = yderiv(f);
  YPoly g = ygcd(f, fp);
  YPoly c = yexact_div(f, g);
  YPoly d = ysub(yexact_div(fp, g), yderiv(c));
  unsigned mult = 1;
  while (true) {
    if (c.size() <= 1 && (c.empty() || c[0].degree() <= 0)) break;
    YPoly pk = ygcd(c, d);
    // pk may be 1
    bool trivial = pk.size() == 1 && pk[0].degree() == 0;
    if (!trivial) {
      BiSeries part = from_ypoly(pk);
      // drop unit x-content scalar normalization already done by ygcd
      if (part.order().is_finite() && part.order().value > 0)
        out.parts.push_back({part, mult});
    }
    YPoly cnext = trivial ? c : yexact_div(c, pk);
    d = ysub(trivial ? d : yexact_div(d, pk), yderiv(cnext));
    c = std::move(cnext);
    ++mult;
  }
  // Factors pure in x (no y) inside cont with roots away from 0 are units at
  // the origin; factors x^k were already extracted.  Nothing else to do.
  return out;
}

}  // namespace germdyn
