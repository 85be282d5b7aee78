#include "germdyn/puiseux.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "germdyn/upoly.hpp"

namespace germdyn {

namespace {

// Yun squarefree decomposition over a tower ring (monic pairwise-coprime
// factors with multiplicities); decisions may raise SplitRequest.
std::vector<std::pair<TPoly, unsigned>> tpoly_yun(const Tower& tw, TPoly f) {
  f = tpoly_monic(tw, f);
  TPoly fp = tpoly_derivative(tw, f);
  TPoly g = tpoly_gcd(tw, f, fp);
  if (g.size() <= 1) return {{f, 1}};
  TPoly c = tpoly_divmod(tw, f, g).first;
  TPoly d = tpoly_sub(tw, tpoly_divmod(tw, fp, g).first, tpoly_derivative(tw, c));
  std::vector<std::pair<TPoly, unsigned>> out;
  for (unsigned i = 1; c.size() > 1; ++i) {
    TPoly p = tpoly_gcd(tw, c, d);
    bool triv = p.size() <= 1;
    if (!triv) out.push_back({p, i});
    TPoly cn = triv ? c : tpoly_divmod(tw, c, p).first;
    d = tpoly_sub(tw, triv ? d : tpoly_divmod(tw, d, p).first,
                  tpoly_derivative(tw, cn));
    c = std::move(cn);
    if (i > 64) throw std::logic_error("tpoly_yun: runaway");
  }
  return out;
}

// Rational roots of a polynomial whose coefficients are all rational-valued;
// returns (root, multiplicity) pairs and the root-free cofactor.  Used to keep
// towers away from characteristic polynomials that split in the field.
std::optional<std::pair<std::vector<std::pair<Rat, unsigned>>, TPoly>>
extract_rational_roots(const Tower& tw, const TPoly& q) {
  if (q.size() < 3) return std::nullopt;  // linear factors are cheap anyway
  std::vector<Rat> rq;
  rq.reserve(q.size());
  const Int size_cap = Int(1) << 26;  // keep divisor enumeration cheap
  for (auto& c : q) {
    if (!tw.is_cyclo(c)) return std::nullopt;
    Cyclo cc = tw.to_cyclo(c);
    if (!cc.is_rational()) return std::nullopt;
    Rat r = cc.rational_value();
    if (boost::multiprecision::abs(rat_num(r)) > size_cap ||
        rat_den(r) > size_cap)
      return std::nullopt;
    rq.push_back(std::move(r));
  }
  // clear denominators
  Int den = 1;
  for (auto& r : rq) den = int_lcm(den, rat_den(r));
  std::vector<Int> zq;
  zq.reserve(rq.size());
  for (auto& r : rq) zq.push_back(rat_num(r) * (den / rat_den(r)));
  auto eval_zero = [&](const std::vector<Rat>& p, const Rat& x) {
    Rat acc(0);
    for (size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
    return acc == 0;
  };
  auto divisors = [](Int n) {
    if (n < 0) n = -n;
    std::vector<Int> d;
    for (Int k = 1; k * k <= n; ++k)
      if (n % k == 0) {
        d.push_back(k);
        d.push_back(n / k);
      }
    return d;
  };
  std::vector<std::pair<Rat, unsigned>> roots;
  std::vector<Rat> cur = rq;
  // candidate roots p/s with p | constant, s | leading (constant term nonzero
  // for segment polynomials)
  bool changed = true;
  while (changed && cur.size() > 1) {
    changed = false;
    Int a0 = rat_num(cur.front()) , an = rat_num(cur.back());
    Int d0 = rat_den(cur.front()), dn = rat_den(cur.back());
    // scale to integers for candidate generation
    Int scale = 1;
    for (auto& r : cur) scale = int_lcm(scale, rat_den(r));
    Int iz0 = rat_num(cur.front()) * (scale / rat_den(cur.front()));
    Int izn = rat_num(cur.back()) * (scale / rat_den(cur.back()));
    (void)a0; (void)an; (void)d0; (void)dn;
    if (iz0 == 0) break;  // segment char polys have nonzero constant term
    if (boost::multiprecision::abs(iz0) > size_cap * size_cap ||
        boost::multiprecision::abs(izn) > size_cap * size_cap)
      break;
    for (const Int& p : divisors(iz0)) {
      for (const Int& s : divisors(izn)) {
        for (int sign : {1, -1}) {
          Rat cand(sign * p, s);
          if (eval_zero(cur, cand)) {
            // deflate
            unsigned mult = 0;
            while (cur.size() > 1 && eval_zero(cur, cand)) {
              std::vector<Rat> next(cur.size() - 1);
              Rat carry = cur.back();
              for (size_t k = cur.size() - 1; k-- > 0;) {
                next[k] = carry;
                carry = cur[k] + carry * cand;
              }
              cur = std::move(next);
              ++mult;
            }
            roots.push_back({cand, mult});
            changed = true;
            goto next_round;
          }
        }
      }
    }
  next_round:;
  }
  if (roots.empty()) return std::nullopt;
  TPoly cof;
  cof.reserve(cur.size());
  for (auto& r : cur) cof.push_back(tw.from_rat(r, q.empty() ? 0 : q[0].lvl));
  return std::make_pair(std::move(roots), std::move(cof));
}

struct TTerm {
  long long i, j;  // u^i w^j
  AlgNum c;
};

struct Step {
  long long b, a;  // u = lam * u1^b, w = u1^a * (mu + w1)
  AlgNum lam, mu;
};

struct NpItem {
  Tower tw;
  std::vector<TTerm> psi;
  std::vector<Step> steps;
  Rat eps = Rat(0);        // resolved x-exponent depth
  long long ramsofar = 1;  // product of the b's
  int rounds = 0;
};

NpItem project_item(const NpItem& it, const Tower& nt) {
  NpItem r;
  r.tw = nt;
  r.psi.reserve(it.psi.size());
  for (auto& t : it.psi) {
    AlgNum c = nt.renorm(t.c);
    if (!nt.is_zero(c)) r.psi.push_back({t.i, t.j, std::move(c)});
  }
  r.steps.reserve(it.steps.size());
  for (auto& s : it.steps)
    r.steps.push_back({s.b, s.a, nt.renorm(s.lam), nt.renorm(s.mu)});
  r.eps = it.eps;
  r.ramsofar = it.ramsofar;
  r.rounds = it.rounds;
  return r;
}

// Unwind the substitution chain into a parameterization.
BranchGroup make_group(const NpItem& it, Axis dep, unsigned mult, bool exact_tail,
                       bool tail_regular) {
  const auto& tw = it.tw;
  int T = static_cast<int>(it.steps.size());
  std::vector<AlgNum> Lam(T + 1, tw.one(0));
  std::vector<long long> B(T + 1, 1);
  for (int t = T; t >= 1; --t) {
    const Step& s = it.steps[t - 1];
    B[t - 1] = s.b * B[t];
    Lam[t - 1] = tw.mul(s.lam, tw.pow(Lam[t], s.b));
  }
  std::vector<std::pair<long long, AlgNum>> W;
  long long sprec = 0;
  for (int t = T; t >= 1; --t) {
    const Step& s = it.steps[t - 1];
    AlgNum factor = tw.pow(Lam[t], s.a);
    long long shift = s.a * B[t];
    std::vector<std::pair<long long, AlgNum>> W2;
    W2.reserve(W.size() + 1);
    W2.push_back({shift, tw.mul(factor, s.mu)});
    for (auto& [e, c] : W) W2.push_back({e + shift, tw.mul(factor, c)});
    W = std::move(W2);
  }
  std::sort(W.begin(), W.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (int t = 1; t <= T; ++t) sprec += it.steps[t - 1].a * B[t];
  BranchGroup g;
  g.dep = dep;
  g.mult = mult;
  g.ram = static_cast<unsigned>(B[0]);
  g.tower = tw;
  g.xi = Lam[0];
  // drop representation-zero coefficients (mu can vanish only for C = 0,
  // excluded by edge endpoints, but products can still cancel)
  for (auto& [e, c] : W)
    if (!tw.is_zero(c)) g.dep_terms.push_back({e, c});
  g.sprec = sprec;
  g.exact_tail = exact_tail;
  g.tail_regular = tail_regular || exact_tail;
  return g;
}

long long ll_gcd(long long a, long long b) {
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

// A', B' >= 0 with b*A' - a*B' = 1 and B' in [0, b) (gcd(a, b) = 1).
std::pair<long long, long long> bezout_unit(long long b, long long a) {
  long long r0 = b, r1 = a, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    long long q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  if (r0 != 1) throw std::logic_error("bezout_unit: not coprime");
  long long A = s0, B = -t0;  // b*A - a*B = 1
  // shift (A, B) -> (A + a*t, B + b*t) so that 0 <= B < b
  long long t = B >= 0 ? -(B / b) : (b - 1 - B) / b;
  A += a * t;
  B += b * t;
  if (B < 0 || B >= b || A < 0 || b * A - a * B != 1)
    throw std::logic_error("bezout_unit: normalization failed");
  return {A, B};
}

struct NpConfig {
  Rat precision;
  // slope filters for the first polygon stage (orientation split)
  bool top_restrict = false;
  bool top_strict = false;  // e > 1 (mirror pass) instead of e >= 1
  Axis dep = Axis::Y;
  unsigned mult = 1;
};

void np_process(const NpItem& item, const NpConfig& cfg, std::vector<NpItem>& queue,
                std::vector<BranchGroup>& out) {
  const Tower& tw = item.tw;
  bool top = item.steps.empty();
  // 1. decided support
  std::vector<TTerm> sup;
  sup.reserve(item.psi.size());
  for (auto& t : item.psi)
    if (tw.decide_nonzero(t.c)) sup.push_back(t);
  if (sup.empty()) throw std::logic_error("np: vanishing working polynomial");
  // 2. exact termination: w^k0 factor
  long long k0 = sup[0].j;
  for (auto& t : sup) k0 = std::min(k0, t.j);
  if (k0 > 0) {
    if (top) throw std::logic_error("np: axis factor not extracted");
    out.push_back(make_group(item, cfg.dep, cfg.mult * static_cast<unsigned>(k0),
                             /*exact_tail=*/true, true));
    for (auto& t : sup) t.j -= k0;
  }
  long long degw = 0;
  for (auto& t : sup) degw = std::max(degw, t.j);
  if (degw == 0) return;  // no branches left in this chart
  // 3. registered once separated and deep enough
  if (!top && item.eps >= cfg.precision && degw == 1) {
    out.push_back(make_group(item, cfg.dep, cfg.mult, /*exact_tail=*/false,
                             /*tail_regular=*/true));
    return;
  }
  if (item.rounds > 4000) throw std::logic_error("np: iteration cap exceeded");
  // 4. Newton polygon: minimal i per j, lower convex hull in the (j, i) plane
  std::map<long long, long long> min_i;
  for (auto& t : sup) {
    auto [it2, fresh] = min_i.try_emplace(t.j, t.i);
    if (!fresh) it2->second = std::min(it2->second, t.i);
  }
  std::vector<std::pair<long long, long long>> pts(min_i.begin(), min_i.end());
  std::vector<std::pair<long long, long long>> hull;  // (j, i)
  for (auto& p : pts) {
    while (hull.size() >= 2) {
      auto& a = hull[hull.size() - 2];
      auto& b = hull[hull.size() - 1];
      // keep convex: slope(a,b) < slope(b,p) (in (j,i) coordinates)
      __int128 lhs = static_cast<__int128>(b.second - a.second) * (p.first - b.first);
      __int128 rhs = static_cast<__int128>(p.second - b.second) * (b.first - a.first);
      if (lhs >= rhs)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }
  // 5. edges with positive descent (i decreasing as j increases)
  auto coeff_at = [&](long long i, long long j) -> AlgNum {
    for (auto& t : sup)
      if (t.i == i && t.j == j) return t.c;
    return tw.zero(0);
  };
  for (size_t v = 0; v + 1 < hull.size(); ++v) {
    auto [j1, i1] = hull[v];
    auto [j2, i2] = hull[v + 1];
    if (i1 <= i2) continue;  // slope <= 0
    long long di = i1 - i2, dj = j2 - j1;
    long long g = ll_gcd(di, dj);
    long long a = di / g, b = dj / g;  // slope e = a/b in lowest terms
    Rat e(a, b);
    if (top && cfg.top_restrict) {
      if (cfg.top_strict ? e <= 1 : e < 1) continue;
    }
    // characteristic polynomial q(C), C ~ c^b
    long long K = dj / b;
    TPoly q;
    q.reserve(K + 1);
    for (long long k = 0; k <= K; ++k) q.push_back(coeff_at(i1 - k * a, j1 + k * b));
    tpoly_normalize(tw, q);
    if (static_cast<long long>(q.size()) != K + 1)
      throw std::logic_error("np: degenerate characteristic polynomial");
    std::vector<std::pair<Tower, AlgNum>> root_cases;
    TPoly qrem = q;
    if (auto rr = extract_rational_roots(tw, q)) {
      for (auto& [root, multr] : rr->first) {
        (void)multr;
        root_cases.push_back({tw, tw.from_rat(root, 0)});
      }
      qrem = std::move(rr->second);
    }
    if (qrem.size() > 1) {
      auto factors = tpoly_yun(tw, qrem);
      for (auto& [fac, multd] : factors) {
        (void)multd;
        if (fac.size() == 2) {
          root_cases.push_back({tw, tw.neg(fac[0])});
        } else {
          Tower tw2 = tw.extended(fac);
          root_cases.push_back({tw2, tw2.gen(tw2.levels())});
        }
      }
    }
    for (auto& [tw2, C] : root_cases) {
      int lvl = C.lvl;
      auto [A1, B1] = bezout_unit(b, a);
      AlgNum lam = tw2.pow(C, B1);
      AlgNum mu = tw2.pow(C, A1);
      // substitute u = lam u1^b, w = u1^a (mu + w1), divide by u1^V
      long long V = b * i1 + a * j1;
      long long maxi = 0, maxj = 0;
      for (auto& t : sup) {
        maxi = std::max(maxi, t.i);
        maxj = std::max(maxj, t.j);
      }
      std::vector<AlgNum> lampow(maxi + 1, tw2.one(lvl)), mupow(maxj + 1, tw2.one(lvl));
      for (long long k = 1; k <= maxi; ++k) lampow[k] = tw2.mul(lampow[k - 1], lam);
      for (long long k = 1; k <= maxj; ++k) mupow[k] = tw2.mul(mupow[k - 1], mu);
      long long newram = item.ramsofar * b;
      Rat neweps = item.eps + Rat(a, newram);
      // u1-degree cap: enough for the remaining precision plus slack
      Rat remain = cfg.precision - neweps;
      long long cap = 2 * (a + b) + 8;
      if (remain > 0) {
        Rat need = remain * Rat(newram);
        cap += rat_floor(need).convert_to<long long>() + 1;
      }
      std::map<std::pair<long long, long long>, AlgNum> acc;
      for (auto& t : sup) {
        long long ubase = b * t.i + a * t.j - V;
        if (ubase > cap) continue;
        AlgNum base = tw2.mul(tw2.lift(t.c, lvl), lampow[t.i]);
        // (mu + w1)^j
        Rat binom(1);
        for (long long k = 0; k <= t.j; ++k) {
          if (k > 0) binom = binom * Rat(t.j - k + 1) / Rat(k);
          AlgNum cc = tw2.mul(base, tw2.mul(mupow[t.j - k],
                                            tw2.from_rat(binom, lvl)));
          auto key = std::make_pair(ubase, k);
          auto [ai, fresh] = acc.try_emplace(key, cc);
          if (!fresh) ai->second = tw2.add(ai->second, cc);
        }
      }
      NpItem next;
      next.tw = tw2;
      for (auto& [key, c] : acc)
        if (!tw2.is_zero(c)) next.psi.push_back({key.first, key.second, c});
      next.steps = item.steps;
      next.steps.push_back({b, a, lam, mu});
      next.eps = neweps;
      next.ramsofar = newram;
      next.rounds = item.rounds + 1;
      queue.push_back(std::move(next));
    }
  }
}

void np_run(NpItem seed, const NpConfig& cfg, std::vector<BranchGroup>& out) {
  std::vector<NpItem> queue;
  queue.push_back(std::move(seed));
  while (!queue.empty()) {
    NpItem it = std::move(queue.back());
    queue.pop_back();
    try {
      np_process(it, cfg, queue, out);
    } catch (const SplitRequest& sr) {
      Tower t1 = it.tw.replaced(sr.level, sr.f);
      Tower t2 = it.tw.replaced(sr.level, sr.g);
      queue.push_back(project_item(it, t1));
      queue.push_back(project_item(it, t2));
    }
  }
}

NpItem seed_from(const BiSeries& p) {
  NpItem it;
  for (auto& t : p.terms())
    it.psi.push_back({static_cast<long long>(t.i), static_cast<long long>(t.j),
                      AlgNum::from_cyclo(t.c)});
  return it;
}

}  // namespace

unsigned BranchGroup::branch_mult0() const {
  if (dep_terms.empty()) return ram;
  return static_cast<unsigned>(std::min<long long>(ram, dep_terms.front().first));
}

std::string BranchGroup::str() const {
  std::ostringstream os;
  os << (dep == Axis::Y ? "y(" : "x(") << "s), "
     << (dep == Axis::Y ? "x" : "y") << " = (" << tower.str(xi) << ")*s^" << ram
     << ", terms:";
  for (auto& [e, c] : dep_terms) os << " s^" << e << "*(" << tower.str(c) << ")";
  os << " [mult " << mult << ", resdeg " << residue_degree()
     << (exact_tail ? ", exact" : "") << ", sprec " << sprec << "]";
  return os.str();
}

long long BranchDecomposition::mult0_sum() const {
  long long s = 0;
  for (auto& g : groups) s += static_cast<long long>(g.mult) * g.residue_degree() * g.branch_mult0();
  return s;
}

BranchDecomposition branches(const BiSeries& phi, const Rat& precision) {
  if (!phi.is_exact()) throw std::invalid_argument("branches: exact input required");
  if (phi.is_zero()) throw std::invalid_argument("branches: zero input");
  if (!phi.constant_term().is_zero())
    throw std::invalid_argument("branches: input must vanish at the origin");
  BranchDecomposition dec;
  auto sq = biseries_squarefree(phi);
  if (sq.ay > 0) {
    BranchGroup g;
    g.dep = Axis::Y;
    g.mult = sq.ay;
    g.xi = AlgNum::from_cyclo(Cyclo(Rat(1)));
    g.sprec = 1;
    g.exact_tail = true;
    g.tail_regular = true;
    dec.groups.push_back(std::move(g));
  }
  if (sq.ax > 0) {
    BranchGroup g;
    g.dep = Axis::X;
    g.mult = sq.ax;
    g.xi = AlgNum::from_cyclo(Cyclo(Rat(1)));
    g.sprec = 1;
    g.exact_tail = true;
    g.tail_regular = true;
    dec.groups.push_back(std::move(g));
  }
  Rat prec = precision < 2 ? Rat(2) : precision;
  for (auto& [part, mult] : sq.parts) {
    NpConfig cfg{prec, true, false, Axis::Y, mult};
    np_run(seed_from(part), cfg, dec.groups);
    NpConfig cfgm{prec, true, true, Axis::X, mult};
    np_run(seed_from(part.mirrored()), cfgm, dec.groups);
  }
  for (auto& g : dec.groups)
    if (g.tower.levels() > 0) dec.unsplit = true;
  return dec;
}

// ---------------------------------------------------------------------------
// Substitution orders

namespace {

struct SubstItem {
  Tower tw;
  AlgNum xi;
  std::vector<std::pair<long long, AlgNum>> terms;
};

void subst_orders_rec(SubstItem item, const BiSeries& psi, unsigned ram,
                      long long scan_to, bool exact_tail, long long sprec,
                      std::vector<OrdPiece>& out) {
  const Tower& tw = item.tw;
  try {
    // y(s)^j truncated at scan_to
    unsigned maxj = 0;
    for (auto& t : psi.terms()) maxj = std::max(maxj, t.j);
    using Series = std::map<long long, AlgNum>;
    auto smul = [&](const Series& A, const Series& B) {
      Series r;
      for (auto& [ea, ca] : A) {
        if (ea > scan_to) break;
        for (auto& [eb, cb] : B) {
          if (ea + eb > scan_to) break;
          AlgNum prod = tw.mul(ca, cb);
          auto [it2, fresh] = r.try_emplace(ea + eb, prod);
          if (!fresh) it2->second = tw.add(it2->second, prod);
        }
      }
      return r;
    };
    std::vector<Series> ypow(maxj + 1);
    ypow[0] = {{0, tw.one(0)}};
    Series y1;
    for (auto& [e, c] : item.terms)
      if (e <= scan_to) y1[e] = c;
    for (unsigned j = 1; j <= maxj; ++j) ypow[j] = smul(ypow[j - 1], y1);
    unsigned maxi = 0;
    for (auto& t : psi.terms()) maxi = std::max(maxi, t.i);
    std::vector<AlgNum> xipow(maxi + 1, tw.one(0));
    for (unsigned k = 1; k <= maxi; ++k) xipow[k] = tw.mul(xipow[k - 1], item.xi);
    Series total;
    for (auto& t : psi.terms()) {
      long long base = static_cast<long long>(ram) * t.i;
      if (base > scan_to) continue;
      AlgNum cc = tw.mul(AlgNum::from_cyclo(t.c), xipow[t.i]);
      for (auto& [e, c] : ypow[t.j]) {
        if (base + e > scan_to) break;
        AlgNum prod = tw.mul(cc, c);
        auto [it2, fresh] = total.try_emplace(base + e, prod);
        if (!fresh) it2->second = tw.add(it2->second, prod);
      }
    }
    for (long long e = 0; e <= scan_to; ++e) {
      auto it2 = total.find(e);
      if (it2 == total.end()) continue;
      if (!exact_tail && e > sprec)
        throw Indeterminate("branch precision exhausted before order resolved",
                            Rat(scan_to, ram));
      if (tw.decide_nonzero(it2->second)) {
        out.push_back({tw.total_degree(), e});
        return;
      }
    }
    if (!exact_tail && sprec < scan_to)
      throw Indeterminate("branch precision exhausted before order resolved",
                          Rat(scan_to, ram));
    out.push_back({tw.total_degree(), std::nullopt});
  } catch (const SplitRequest& sr) {
    for (auto* fac : {&sr.f, &sr.g}) {
      Tower nt = item.tw.replaced(sr.level, *fac);
      SubstItem ni;
      ni.tw = nt;
      ni.xi = nt.renorm(item.xi);
      for (auto& [e, c] : item.terms) {
        AlgNum cc = nt.renorm(c);
        if (!nt.is_zero(cc)) ni.terms.push_back({e, cc});
      }
      subst_orders_rec(std::move(ni), psi, ram, scan_to, exact_tail, sprec, out);
    }
  }
}

}  // namespace

std::vector<OrdPiece> group_substitution_orders(const BranchGroup& g,
                                                const BiSeries& psi_in,
                                                long long bound) {
  if (!psi_in.is_exact())
    throw std::invalid_argument("group_substitution_orders: exact psi required");
  BiSeries psi = (g.dep == Axis::X) ? psi_in.mirrored() : psi_in;
  long long scan_to = bound;
  if (g.exact_tail) {
    // the substituted series is an exact polynomial; compute it in full
    long long maxdep = g.dep_terms.empty() ? 0 : g.dep_terms.back().first;
    long long cap = 0;
    for (auto& t : psi.terms())
      cap = std::max<long long>(
          cap, static_cast<long long>(g.ram) * t.i + maxdep * t.j);
    scan_to = cap;
  }
  SubstItem item{g.tower, g.xi, g.dep_terms};
  std::vector<OrdPiece> out;
  subst_orders_rec(std::move(item), psi, g.ram, scan_to, g.exact_tail, g.sprec, out);
  return out;
}

// ---------------------------------------------------------------------------
// Working-field branches for valuations

unsigned PuiseuxBranch::mult0() const {
  if (terms.empty()) return ram;
  return static_cast<unsigned>(std::min<long long>(ram, terms.front().first));
}

Rat PuiseuxBranch::first_exponent() const {
  if (terms.empty()) throw std::logic_error("first_exponent: axis branch");
  return Rat(terms.front().first, ram);
}

BiSeries PuiseuxBranch::graph_poly() const {
  if (!is_graph()) throw std::logic_error("graph_poly: not a graph branch");
  std::vector<BiSeries::Term> ts;
  for (auto& [e, c] : terms) {
    if (dep == Axis::Y)
      ts.push_back({static_cast<unsigned>(e), 0, c});
    else
      ts.push_back({0, static_cast<unsigned>(e), c});
  }
  return BiSeries::from_terms(std::move(ts));
}

std::string PuiseuxBranch::str() const {
  std::ostringstream os;
  os << (dep == Axis::Y ? "y = " : "x = ");
  if (terms.empty()) os << "0";
  bool first = true;
  for (auto& [e, c] : terms) {
    if (!first) os << " + ";
    os << "(" << c.str() << ")*" << (dep == Axis::Y ? "x" : "y");
    Rat ex(e, ram);
    os << "^(" << rat_str(ex) << ")";
    first = false;
  }
  if (!exact_tail) os << " + o(" << rat_str(Rat(sprec, ram)) << ")";
  return os.str();
}

PuiseuxBranch axis_branch(Axis dep) {
  PuiseuxBranch b;
  b.dep = dep;
  b.ram = 1;
  b.xi = Cyclo(Rat(1));
  b.sprec = 1;
  b.exact_tail = true;
  b.tail_regular = true;
  b.defining = dep == Axis::Y ? BiSeries::var_y() : BiSeries::var_x();
  return b;
}

PuiseuxBranch branch_from_curve(const BiSeries& curve, const Rat& precision) {
  BranchDecomposition dec = branches(curve, precision);
  if (dec.groups.size() != 1)
    throw std::invalid_argument("branch_from_curve: curve has " +
                                std::to_string(dec.groups.size()) +
                                " branches at the origin; need exactly one");
  const BranchGroup& g = dec.groups[0];
  if (g.tower.levels() > 0)
    throw std::invalid_argument(
        "branch_from_curve: branch coefficients leave the working field");
  if (g.mult != 1)
    throw std::invalid_argument("branch_from_curve: curve is not reduced");
  PuiseuxBranch b;
  b.dep = g.dep;
  b.ram = g.ram;
  b.xi = g.tower.to_cyclo(g.xi);
  for (auto& [e, c] : g.dep_terms) b.terms.push_back({e, g.tower.to_cyclo(c)});
  b.sprec = g.sprec;
  b.exact_tail = g.exact_tail;
  b.tail_regular = g.tail_regular;
  b.defining = curve;
  if (b.ram == 1 && !b.xi.is_one()) {
    // re-parameterize s -> s/xi so the independent variable is x itself
    Cyclo inv = b.xi.inverse();
    for (auto& [e, c] : b.terms) c = c * inv.pow(e);
    b.xi = Cyclo(Rat(1));
  }
  return b;
}

void ensure_precision(PuiseuxBranch& b, const Rat& precision) {
  if (b.exact_tail) return;
  if (Rat(b.sprec, b.ram) >= precision) return;
  PuiseuxBranch nb = branch_from_curve(b.defining, precision + 1);
  b = std::move(nb);
}

IntersectionValue branch_poly_intersection(const PuiseuxBranch& b, const BiSeries& psi) {
  if (!psi.is_exact())
    throw std::invalid_argument("branch_poly_intersection: exact psi required");
  if (psi.is_zero()) return {true, Rat(0)};
  BiSeries p = (b.dep == Axis::X) ? psi.mirrored() : psi;
  unsigned degb = b.defining.total_degree();
  unsigned degp = p.total_degree();
  long long bound = static_cast<long long>(std::max(1u, degb)) *
                    std::max(1u, degp) * b.ram;
  long long scan_to = bound;
  if (b.exact_tail) {
    long long maxdep = b.terms.empty() ? 0 : b.terms.back().first;
    long long cap = 0;
    for (auto& t : p.terms())
      cap = std::max<long long>(cap,
                                static_cast<long long>(b.ram) * t.i + maxdep * t.j);
    scan_to = cap;
  } else if (b.sprec < scan_to) {
    throw Indeterminate("branch precision below the intersection bound",
                        Rat(scan_to, b.ram));
  }
  // polynomial series arithmetic over the working field
  using Series = std::map<long long, Cyclo>;
  unsigned maxj = 0, maxi = 0;
  for (auto& t : p.terms()) {
    maxj = std::max(maxj, t.j);
    maxi = std::max(maxi, t.i);
  }
  auto smul = [&](const Series& A, const Series& B) {
    Series r;
    for (auto& [ea, ca] : A) {
      if (ea > scan_to) break;
      for (auto& [eb, cb] : B) {
        if (ea + eb > scan_to) break;
        Cyclo prod = ca * cb;
        auto [it2, fresh] = r.try_emplace(ea + eb, prod);
        if (!fresh) it2->second += prod;
      }
    }
    return r;
  };
  std::vector<Series> ypow(maxj + 1);
  ypow[0] = {{0, Cyclo(Rat(1))}};
  Series y1;
  for (auto& [e, c] : b.terms)
    if (e <= scan_to) y1[e] = c;
  for (unsigned j = 1; j <= maxj; ++j) ypow[j] = smul(ypow[j - 1], y1);
  std::vector<Cyclo> xipow(maxi + 1, Cyclo(Rat(1)));
  for (unsigned k = 1; k <= maxi; ++k) xipow[k] = xipow[k - 1] * b.xi;
  Series total;
  for (auto& t : p.terms()) {
    long long base = static_cast<long long>(b.ram) * t.i;
    if (base > scan_to) continue;
    Cyclo cc = t.c * xipow[t.i];
    for (auto& [e, c] : ypow[t.j]) {
      if (base + e > scan_to) break;
      Cyclo prod = cc * c;
      auto [it2, fresh] = total.try_emplace(base + e, prod);
      if (!fresh) it2->second += prod;
    }
  }
  for (auto& [e, c] : total)
    if (!c.is_zero()) return {false, Rat(e)};
  return {true, Rat(0)};
}

ContactValue contact_skewness(const PuiseuxBranch& b1, const PuiseuxBranch& b2) {
  PuiseuxBranch a = b1;
  // intersect a's parameterization with b2's defining polynomial
  IntersectionValue iv;
  for (int attempt = 0;; ++attempt) {
    try {
      iv = branch_poly_intersection(a, b2.defining);
      break;
    } catch (const Indeterminate& ind) {
      if (attempt >= 4) throw;
      ensure_precision(a, ind.required_precision + 1);
    }
  }
  if (iv.infinite) return {true, Rat(0)};
  // iv.value = ord_s psi(param) = I(B1, B2) over all conjugates of the pair
  Rat contact = iv.value / (Rat(b1.mult0()) * Rat(b2.mult0()));
  return {false, contact};
}

IntersectionValue intersection_multiplicity(const BiSeries& phi, const BiSeries& psi) {
  if (!phi.is_exact() || !psi.is_exact())
    throw std::invalid_argument("intersection_multiplicity: exact inputs required");
  if (psi.is_zero() || phi.is_zero()) return {true, Rat(0)};
  // common factor through the origin => infinite
  BiSeries g = biseries_gcd(phi, psi);
  auto og = g.order();
  if (og.is_finite() && og.value > 0) return {true, Rat(0)};
  unsigned dphi = phi.total_degree(), dpsi = psi.total_degree();
  long long bd = static_cast<long long>(std::max(1u, dphi)) * std::max(1u, dpsi);
  // Expand lazily: most orders resolve well below the Bezout bound.
  Rat prec = Rat(2 * std::max(dphi, 1u) + 2);
  while (true) {
    BranchDecomposition dec = branches(phi, prec);
    try {
      long long total = 0;
      for (auto& grp : dec.groups) {
        long long bound = bd * grp.ram;
        auto pieces = group_substitution_orders(grp, psi, bound);
        for (auto& p : pieces) {
          if (!p.ord) {
            // beyond the Bezout bound with no common factor: impossible
            throw std::logic_error(
                "intersection_multiplicity: order above Bezout bound");
          }
          total += static_cast<long long>(grp.mult) * p.resdeg * *p.ord;
        }
      }
      return {false, Rat(total)};
    } catch (const Indeterminate& ind) {
      Rat next = Rat(prec * 2);
      Rat hinted = Rat(ind.required_precision + 2);
      if (hinted > next) next = hinted;
      if (prec >= Rat(bd + 2)) throw;  // cannot need more than the bound
      Rat cap = Rat(bd + 2);
      prec = next < cap ? next : cap;
    }
  }
}

unsigned resultant_multiplicity_oracle(const BiSeries& phi, const BiSeries& psi) {
  if (!phi.is_exact() || !psi.is_exact())
    throw std::invalid_argument("resultant oracle: exact inputs required");
  unsigned n = 0, m = 0;
  for (auto& t : phi.terms()) n = std::max(n, t.j);
  for (auto& t : psi.terms()) m = std::max(m, t.j);
  if (n == 0 || m == 0)
    throw std::invalid_argument("resultant oracle: inputs must involve y");
  if (phi.coeff(0, n).is_zero() || psi.coeff(0, m).is_zero())
    throw std::invalid_argument("resultant oracle: inputs must be y-regular");
  // coefficients of y^k as polynomials in x
  auto xcoeffs = [](const BiSeries& f, unsigned degy) {
    std::vector<UPoly> c(degy + 1);
    for (auto& t : f.terms()) {
      std::vector<Cyclo> mono(t.i + 1, Cyclo());
      mono[t.i] = t.c;
      c[t.j] = c[t.j] + UPoly::from_coeffs(std::move(mono));
    }
    return c;
  };
  auto A = xcoeffs(phi, n), B = xcoeffs(psi, m);
  unsigned N = n + m;
  std::vector<std::vector<UPoly>> M(N, std::vector<UPoly>(N));
  for (unsigned r = 0; r < m; ++r)
    for (unsigned k = 0; k <= n; ++k) M[r][r + k] = A[n - k];
  for (unsigned r = 0; r < n; ++r)
    for (unsigned k = 0; k <= m; ++k) M[m + r][r + k] = B[m - k];
  // Bareiss fraction-free elimination
  UPoly prev(Cyclo(Rat(1)));
  int sign = 1;
  for (unsigned k = 0; k + 1 < N; ++k) {
    if (M[k][k].is_zero()) {
      bool found = false;
      for (unsigned r = k + 1; r < N; ++r) {
        if (!M[r][k].is_zero()) {
          std::swap(M[k], M[r]);
          sign = -sign;
          found = true;
          break;
        }
      }
      if (!found) throw std::invalid_argument("resultant oracle: resultant vanishes (common factor?)");
    }
    for (unsigned i = k + 1; i < N; ++i)
      for (unsigned j = k + 1; j < N; ++j) {
        UPoly num = M[k][k] * M[i][j] - M[i][k] * M[k][j];
        auto [q, rem] = num.divmod(prev);
        if (!rem.is_zero()) throw std::logic_error("bareiss: inexact division");
        M[i][j] = q;
      }
    prev = M[k][k];
  }
  UPoly det = M[N - 1][N - 1];
  if (sign < 0) det = -det;
  if (det.is_zero())
    throw std::invalid_argument("resultant oracle: resultant vanishes (common factor?)");
  for (size_t k = 0; k < det.coeffs().size(); ++k)
    if (!det.coeffs()[k].is_zero()) return static_cast<unsigned>(k);
  throw std::logic_error("bareiss: unreachable");
}

}  // namespace germdyn
