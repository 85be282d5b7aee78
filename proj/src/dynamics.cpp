#include "germdyn/dynamics.hpp"

#include <sstream>

namespace germdyn {

RateValue attraction_rate(const Germ& f, const Valuation& nu) {
  // An empty truncated component has order beyond the working degree: its
  // value is unknown but exceeds the certification bound.
  auto ev = [&](const BiSeries& s) -> std::optional<EvalResult> {
    try {
      return nu.evaluate(s);
    } catch (const Indeterminate&) {
      return std::nullopt;
    }
  };
  std::optional<EvalResult> v1 = ev(f.f1()), v2 = ev(f.f2());
  if (!v1 && !v2) return {false, Rat(0), false};
  if (!v1 || !v2) {
    const EvalResult& r = v1 ? *v1 : *v2;
    if (r.infinite) return {false, Rat(0), false};
    // the missing component exceeds the truncation bound; a certified value
    // of the other component is still the minimum
    return {false, r.value, r.certified};
  }
  if (v1->infinite && v2->infinite)
    return {true, Rat(0), v1->certified && v2->certified};
  if (v1->infinite) return {false, v2->value, v2->certified};
  if (v2->infinite) return {false, v1->value, v1->certified};
  // an uncertified component value still exceeds the truncation degree, so it
  // cannot undercut a certified smaller one
  if (v1->value <= v2->value) return {false, v1->value, v1->certified};
  return {false, v2->value, v2->certified};
}

size_t RateSequenceResult::certified_prefix() const {
  size_t k = 0;
  while (k < entries.size() && entries[k].certified) ++k;
  return k;
}

std::vector<Rat> RateSequenceResult::certified_values() const {
  std::vector<Rat> v;
  for (auto& e : entries) {
    if (!e.certified) break;
    v.push_back(e.value);
  }
  return v;
}

namespace {

// min-plus lower bounds on the component orders of f^k
std::vector<std::pair<long long, long long>> minplus_orders(const Germ& f,
                                                            unsigned n) {
  auto ordof = [](const BiSeries& s) -> long long {
    auto o = s.order();
    return o.is_finite() ? o.value : 1;
  };
  std::vector<std::pair<long long, long long>> L{{ordof(f.f1()), ordof(f.f2())}};
  for (unsigned k = 1; k < n; ++k) {
    auto [a, b] = L.back();
    auto comp = [&](const BiSeries& s) {
      long long best = LLONG_MAX;
      for (auto& t : s.terms())
        best = std::min(best, t.i * a + t.j * b);
      return best == LLONG_MAX ? a + b : best;
    };
    L.push_back({comp(f.f1()), comp(f.f2())});
  }
  return L;
}

// smallest extra order contributed by the companion factors when one slot of
// one monomial of f is filled with a given term
long long companion_min(const Germ& f, long long a, long long b) {
  long long best = LLONG_MAX;
  auto scan = [&](const BiSeries& s) {
    for (auto& t : s.terms()) {
      if (t.i >= 1) best = std::min(best, (t.i - 1) * a + t.j * b);
      if (t.j >= 1) best = std::min(best, t.i * a + (t.j - 1) * b);
    }
  };
  scan(f.f1());
  scan(f.f2());
  return best == LLONG_MAX ? 0 : best;
}

RateValue rate_of(const Germ& fk, const Valuation& nu) {
  return attraction_rate(fk, nu);
}

}  // namespace

RateSequenceResult rate_sequence(const Germ& f, const Valuation& nu,
                                 unsigned n_max, unsigned degree_cap) {
  bool monomial = as_monomial(f).has_value() && f.is_exact();
  ExtRat A = nu.thinness();
  if (A.infinite)
    throw std::invalid_argument("rate_sequence: seed must have finite thinness");

  if (monomial) {
    // single-term components compose exactly
    RateSequenceResult out;
    Germ fk = f;
    for (unsigned k = 1; k <= n_max; ++k) {
      RateValue r = rate_of(fk, nu);
      if (r.infinite) throw std::invalid_argument("rate_sequence: contracted seed");
      out.entries.push_back({r.value, true});
      if (k < n_max) fk = f.compose_after(fk, std::nullopt);
    }
    out.degree_used = 0;
    return out;
  }

  unsigned D = 16;
  auto L = minplus_orders(f, n_max);
  while (true) {
    // backward-threaded working degrees
    std::vector<long long> W(n_max, D);
    for (unsigned k = n_max - 1; k >= 1; --k) {
      auto [a, b] = L[k - 1];
      long long extra = companion_min(f, a, b);
      W[k - 1] = std::min<long long>(D, W[k] - extra);
      long long floor_k = std::max(L[k - 1].first, L[k - 1].second) + 1;
      if (W[k - 1] < floor_k) W[k - 1] = floor_k;
    }
    RateSequenceResult out;
    out.degree_used = D;
    Germ fk = Germ(f.f1().truncated(static_cast<unsigned>(W[0])),
                   f.f2().truncated(static_cast<unsigned>(W[0])));
    bool all_ok = true;
    Rat last_rate(1), prev_rate(1);
    for (unsigned k = 1; k <= n_max; ++k) {
      RateValue r = rate_of(fk, nu);
      if (r.infinite) throw std::invalid_argument("rate_sequence: contracted seed");
      out.entries.push_back({r.value, r.certified});
      if (!r.certified) {
        all_ok = false;
        break;
      }
      prev_rate = last_rate;
      last_rate = r.value;
      if (k < n_max) {
        fk = f.compose_after(fk, static_cast<unsigned>(W[k]));
        // The generic truncation rule is conservative; the dropped terms of
        // F_k only reach degrees > W_k + companion >= W_{k+1}, so the new
        // iterate is exact to W_{k+1} (intersected with f's own truncation).
        unsigned cert = static_cast<unsigned>(W[k]);
        if (!f.is_exact()) {
          unsigned flim = std::min(f.f1().truncation().value_or(UINT32_MAX),
                                   f.f2().truncation().value_or(UINT32_MAX));
          cert = std::min(cert, flim);
        }
        fk = Germ(fk.f1().with_certified_truncation(cert),
                  fk.f2().with_certified_truncation(cert));
      }
    }
    if (all_ok) return out;
    if (D >= degree_cap) {
      out.capped = true;
      return out;
    }
    // estimated growth jump, at least doubling
    Rat growth = prev_rate > 0 && last_rate > prev_rate ? Rat(last_rate / prev_rate) : Rat(2);
    Rat target = last_rate;
    for (size_t left = out.entries.size(); left < n_max + 1; ++left) target *= growth;
    unsigned long long d2 = static_cast<unsigned long long>(D) * 2;
    Int tgt = rat_ceil(target);
    if (tgt > Int(d2) && tgt < Int(degree_cap)) d2 = tgt.convert_to<unsigned long long>() + 1;
    D = static_cast<unsigned>(std::min<unsigned long long>(degree_cap, d2));
  }
}

Germ MonomialMap::germ() const {
  auto e = [](const Int& v) { return static_cast<unsigned>(v.convert_to<long long>()); };
  return Germ(BiSeries::monomial(e(m[0]), e(m[1]), Cyclo(Rat(1))),
              BiSeries::monomial(e(m[2]), e(m[3]), Cyclo(Rat(1))));
}

std::optional<MonomialMap> as_monomial(const Germ& f) {
  if (f.f1().terms().size() != 1 || f.f2().terms().size() != 1) return std::nullopt;
  const auto& t1 = f.f1().terms()[0];
  const auto& t2 = f.f2().terms()[0];
  if (!t1.c.is_one() || !t2.c.is_one()) return std::nullopt;
  MonomialMap M{{Int(t1.i), Int(t1.j), Int(t2.i), Int(t2.j)}};
  if (M.det() == 0) return std::nullopt;
  return M;
}

std::pair<Valuation, Rat> monomial_pushforward(const MonomialMap& M,
                                               const Valuation& nu) {
  if (nu.kind() != Valuation::Kind::Monomial)
    throw std::invalid_argument("monomial_pushforward: monomial valuation required");
  Rat s = nu.mono_s(), t = nu.mono_t();
  Rat S = Rat(M.m[0]) * s + Rat(M.m[1]) * t;
  Rat T = Rat(M.m[2]) * s + Rat(M.m[3]) * t;
  Rat rate = S < T ? S : T;
  return {Valuation::monomial(S / rate, T / rate), rate};
}

std::string ClassificationReport::describe() const {
  std::ostringstream os;
  os << "situation " << situation << ": ";
  switch (eigen_kind) {
    case Eigen::CurveEnd:
      os << "curve eigenvaluation nu_" << (end_axis == Axis::X ? "x" : "y");
      break;
    case Eigen::Divisorial:
      os << "divisorial eigenvaluation mono(" << rat_str(weight_s) << ","
         << rat_str(weight_t) << ")";
      break;
    case Eigen::Irrational:
      os << "irrational eigenvaluation with weights "
         << (weights_swapped ? "(tau,1)" : "(1,tau)") << ", tau^2 = " << tau_u
         << "*tau + " << tau_v;
      break;
    case Eigen::Segment:
      os << "segment [nu_x, nu_y] fixed by f_*^" << iterate;
      break;
  }
  os << "; c_inf = " << c_infinity.str();
  if (!notes.empty()) os << " (" << notes << ")";
  return os.str();
}

ClassificationReport classify_monomial(const MonomialMap& M) {
  ClassificationReport rep;
  const Int &a = M.m[0], &b = M.m[1], &c = M.m[2], &d = M.m[3];
  // c_infinity = spectral radius = dominant root of t^2 - tr t + det
  rep.c_infinity = QuadraticInteger::from_quadratic(M.trace(), M.det());
  // M^2 scalar <=> segment of fixed points of f_*^2
  Int m2_offdiag1 = a * b + b * d, m2_offdiag2 = c * a + d * c;
  Int m2_diff = (a * a + b * c) - (c * b + d * d);
  if (m2_offdiag1 == 0 && m2_offdiag2 == 0 && m2_diff == 0) {
    rep.situation = 3;
    rep.eigen_kind = ClassificationReport::Eigen::Segment;
    bool scalar = (b == 0 && c == 0 && a == d);
    rep.iterate = scalar ? 1 : 2;
    if (!scalar) rep.notes = "period-2 swap of the axes";
    return rep;
  }
  // dominant eigenvector on the closed positive quadrant
  Int disc = M.trace() * M.trace() - 4 * M.det();
  Int sq = boost::multiprecision::sqrt(disc < 0 ? Int(0) : disc);
  bool rational_spectrum = disc >= 0 && sq * sq == disc;
  if (!rational_spectrum) {
    // Irrational spectrum forces b, c > 0.  The dominant eigenvector is
    // (1, tau) with tau = (lambda - a)/b; when tau < 1 the normalized weights
    // are the swapped (1/tau, 1).
    rep.situation = 2;
    rep.eigen_kind = ClassificationReport::Eigen::Irrational;
    QuadExt lambda = rep.c_infinity.as_ext();
    // tau >= 1 <=> lambda >= a + b
    bool tau_ge_1 =
        (lambda - QuadExt(Rat(a + b), Rat(0), 0, 0)).sign() >= 0;
    rep.weights_swapped = !tau_ge_1;
    if (!rep.weights_swapped) {
      // b tau^2 + (a - d) tau - c = 0
      Rat u = Rat(d - a) / Rat(b), v = Rat(c) / Rat(b);
      if (is_integer(u) && is_integer(v)) {
        rep.tau_u = rat_num(u);
        rep.tau_v = rat_num(v);
      } else {
        std::ostringstream os;
        os << "tau root of " << b << "t^2 + " << (a - d) << "t - " << c;
        rep.notes = os.str();
      }
    } else {
      // sigma = 1/tau with weights (sigma, 1): c sigma^2 + (d - a) sigma - b = 0
      Rat u = Rat(a - d) / Rat(c), v = Rat(b) / Rat(c);
      if (is_integer(u) && is_integer(v)) {
        rep.tau_u = rat_num(u);
        rep.tau_v = rat_num(v);
      } else {
        std::ostringstream os;
        os << "sigma root of " << c << "t^2 + " << (d - a) << "t - " << b;
        rep.notes = os.str();
      }
    }
    return rep;
  }
  // rational spectrum: dominant eigenvalue and eigenvector
  Rat lambda((M.trace() + sq), 2);
  // eigenvector candidates (b, lambda - a) and (lambda - d, c)
  Rat e1x = Rat(b), e1y = lambda - Rat(a);
  Rat e2x = lambda - Rat(d), e2y = Rat(c);
  Rat ex = e1x, ey = e1y;
  if (ex == 0 && ey == 0) {
    ex = e2x;
    ey = e2y;
  }
  if (ex < 0 || ey < 0) {
    ex = -ex;
    ey = -ey;
  }
  if (ex > 0 && ey > 0) {
    rep.situation = 2;
    rep.eigen_kind = ClassificationReport::Eigen::Divisorial;
    Rat mn = ex < ey ? ex : ey;
    rep.weight_s = ex / mn;
    rep.weight_t = ey / mn;
    return rep;
  }
  // eigenvector on an axis: end eigenvaluation.  The rate at the end (and so
  // c_infinity) is the other eigenvalue: the orbit of ord0 grows like the
  // non-dominant coordinate.
  rep.situation = 1;
  rep.eigen_kind = ClassificationReport::Eigen::CurveEnd;
  rep.end_axis = (ey == 0) ? Axis::X : Axis::Y;
  rep.c_infinity = QuadraticInteger::from_rational(Rat(M.trace() - sq, 2));
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

BiSeries adapt(const BiSeries& phi, const PuiseuxBranch& b) {
  if (b.is_axis()) return b.dep == Axis::Y ? phi : phi.mirrored();
  if (!b.is_graph())
    throw UnsupportedSegment("segment_action: ramified adapted charts unsupported");
  BiSeries p = b.graph_poly();
  BiSeries shifted = phi.shift(b.dep == Axis::Y ? Axis::Y : Axis::X, p);
  return b.dep == Axis::Y ? shifted : shifted.mirrored();
}

}  // namespace

SegmentAction segment_action(const Germ& f, const PuiseuxBranch& src,
                             const Rat& alpha_lo, const Rat& alpha_hi,
                             const PuiseuxBranch& tgt) {
  if (alpha_lo < 1 || alpha_hi <= alpha_lo)
    throw std::invalid_argument("segment_action: bad skewness range");
  // In src-adapted coordinates the segment is monomial with weights (1, t):
  // the envelopes of the adapted components give the exact rate pieces.
  BiSeries a1 = adapt(f.f1(), src), a2 = adapt(f.f2(), src);
  if (a1.is_zero() || a2.is_zero())
    throw UnsupportedSegment("segment_action: component vanishes in the chart");
  auto clip = [&](const PiecewiseAffine& e) {
    // restrict an envelope on [1, oo) to [alpha_lo, alpha_hi]
    std::vector<PiecewiseAffine::Piece> ps;
    for (auto& p : e.pieces()) {
      if (p.lo >= alpha_hi) break;
      ps.push_back({p.lo < alpha_lo ? alpha_lo : p.lo, p.slope, p.intercept});
    }
    // drop duplicate leading pieces clamped to alpha_lo
    std::vector<PiecewiseAffine::Piece> out;
    for (auto& p : ps) {
      if (!out.empty() && out.back().lo == p.lo) out.pop_back();
      out.push_back(p);
    }
    return PiecewiseAffine(std::move(out), alpha_hi);
  };
  PiecewiseAffine rate = clip(a1.newton_envelope(Axis::Y))
                             .pointwise_min(clip(a2.newton_envelope(Axis::Y)));
  // skewness action: alpha' = nu_t(g_tgt o f) / (c(t) * m0(tgt))
  BiSeries gof = adapt(tgt.defining.substitute(f.f1(), f.f2()), src);
  if (gof.is_zero())
    throw UnsupportedSegment("segment_action: target curve contracted");
  PiecewiseAffine num = clip(gof.newton_envelope(Axis::Y));
  Rat m0t(tgt.mult0());
  // overlay the pieces of num and rate
  std::vector<Rat> cuts{alpha_lo};
  for (auto& p : num.pieces()) cuts.push_back(p.lo);
  for (auto& p : rate.pieces()) cuts.push_back(p.lo);
  cuts.push_back(alpha_hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  SegmentAction out{rate, {}};
  for (size_t k = 0; k + 1 < cuts.size(); ++k) {
    if (cuts[k] < alpha_lo || cuts[k] >= alpha_hi) continue;
    Rat mid = (cuts[k] + cuts[k + 1]) / 2;
    // active affine forms at mid
    auto active = [&](const PiecewiseAffine& pa) {
      auto ps = pa.pieces();
      size_t i = 0;
      while (i + 1 < ps.size() && ps[i + 1].lo <= mid) ++i;
      return ps[i];
    };
    auto pn = active(num), pr = active(rate);
    out.alpha_map.push_back({cuts[k], cuts[k + 1], pn.slope, pn.intercept,
                             pr.slope * m0t, pr.intercept * m0t});
  }
  return out;
}

JacobianCheck check_jacobian_formula(const Germ& f, const Valuation& nu,
                                     std::optional<Rat> image_thinness) {
  Rat a_img;
  if (image_thinness) {
    a_img = *image_thinness;
  } else {
    auto M = as_monomial(f);
    if (!M) throw std::invalid_argument(
        "check_jacobian_formula: supply the image thinness for non-monomial germs");
    if (nu.kind() != Valuation::Kind::Monomial)
      throw std::invalid_argument("check_jacobian_formula: monomial valuation required");
    // raw image weights (S, T): A(f_. nu) = (S + T) / c
    Rat s = nu.mono_s(), t = nu.mono_t();
    Rat S = Rat(M->m[0]) * s + Rat(M->m[1]) * t;
    Rat T = Rat(M->m[2]) * s + Rat(M->m[3]) * t;
    Rat c = S < T ? S : T;
    a_img = (S + T) / c;
  }
  RateValue c = attraction_rate(f, nu);
  if (c.infinite) throw std::invalid_argument("check_jacobian_formula: contracted seed");
  ExtRat A = nu.thinness();
  if (A.infinite) throw std::invalid_argument("check_jacobian_formula: infinite thinness");
  EvalResult j = nu.evaluate(f.jacobian());
  if (j.infinite) throw std::invalid_argument("check_jacobian_formula: jacobian vanishes along nu");
  JacobianCheck out{Rat(c.value * a_img), Rat(A.value + j.value), false};
  out.holds = out.lhs == out.rhs;
  return out;
}

EquicontinuityCheck check_equicontinuity(
    const Germ& f, const Valuation& nu, const Valuation& mu,
    std::optional<std::pair<Valuation, Valuation>> images) {
  Valuation inu = Valuation::ord0(), imu = Valuation::ord0();
  if (images) {
    inu = images->first;
    imu = images->second;
  } else {
    auto M = as_monomial(f);
    if (!M) throw std::invalid_argument(
        "check_equicontinuity: supply the images for non-monomial germs");
    inu = monomial_pushforward(*M, nu).first;
    imu = monomial_pushforward(*M, mu).first;
  }
  Rat lhs = Valuation::distance(inu, imu, TreeParam::InvThinness);
  Rat rhs = Valuation::distance(nu, mu, TreeParam::Thinness) / 2;
  return {lhs, rhs, lhs <= rhs};
}

}  // namespace germdyn
