#include "germdyn/recurrence.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <sstream>

namespace germdyn {

namespace {

// Exact solution of the fit system for (r, N): unknowns a_1..a_r, equations
// c_k = sum a_i c_{k-i} for k = N+r+1 .. len.  Returns the unique solution, or
// nullopt when inconsistent or underdetermined.
std::optional<std::vector<Rat>> solve_fit(const std::vector<Rat>& seq, unsigned r,
                                          unsigned N) {
  size_t len = seq.size();
  if (N + r + 1 > len) return std::nullopt;
  size_t rows = len - (N + r);
  if (rows < r) return std::nullopt;
  // Gaussian elimination on the augmented matrix
  std::vector<std::vector<Rat>> M(rows, std::vector<Rat>(r + 1, Rat(0)));
  for (size_t e = 0; e < rows; ++e) {
    size_t k = N + r + 1 + e;  // 1-based index of the predicted term
    for (unsigned i = 1; i <= r; ++i) M[e][i - 1] = seq[k - i - 1];
    M[e][r] = seq[k - 1];
  }
  size_t rank = 0;
  std::vector<int> pivot_col(rows, -1);
  for (unsigned col = 0; col < r && rank < rows; ++col) {
    size_t sel = rank;
    while (sel < rows && M[sel][col] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(M[sel], M[rank]);
    Rat inv = Rat(1) / M[rank][col];
    for (unsigned j = col; j <= r; ++j) M[rank][j] *= inv;
    for (size_t e = 0; e < rows; ++e) {
      if (e == rank || M[e][col] == 0) continue;
      Rat f = M[e][col];
      for (unsigned j = col; j <= r; ++j) M[e][j] -= f * M[rank][j];
    }
    pivot_col[rank] = static_cast<int>(col);
    ++rank;
  }
  // inconsistent?
  for (size_t e = rank; e < rows; ++e)
    if (M[e][r] != 0) return std::nullopt;
  if (rank < r) return std::nullopt;  // underdetermined
  std::vector<Rat> a(r, Rat(0));
  for (size_t e = 0; e < rank; ++e) a[pivot_col[e]] = M[e][r];
  return a;
}

bool all_integral(const std::vector<Rat>& v) {
  for (auto& x : v)
    if (!is_integer(x)) return false;
  return true;
}

}  // namespace

std::vector<Rat> LinearRecurrence::characteristic_polynomial() const {
  std::vector<Rat> p(order + 1, Rat(0));
  p[order] = 1;
  for (unsigned i = 1; i <= order; ++i) p[order - i] = -coeffs[i - 1];
  return p;
}

bool LinearRecurrence::fits(const std::vector<Rat>& seq) const {
  for (size_t k = preperiod + order + 1; k <= seq.size(); ++k) {
    Rat pred(0);
    for (unsigned i = 1; i <= order; ++i) pred += coeffs[i - 1] * seq[k - i - 1];
    if (pred != seq[k - 1]) return false;
  }
  return true;
}

std::string LinearRecurrence::str() const {
  std::ostringstream os;
  os << "c[n+" << order << "] =";
  bool first = true;
  for (unsigned i = 1; i <= order; ++i) {
    const Rat& a = coeffs[i - 1];
    if (a == 0 && !(order == 0)) {
      continue;
    }
    if (first) {
      os << " " << rat_str(a);
      first = false;
    } else {
      os << (a >= 0 ? " + " : " - ") << rat_str(a >= 0 ? a : Rat(-a));
    }
    os << "*c[n+" << (order - i) << "]";
  }
  if (first) os << " 0";
  if (preperiod > 0) os << "  (n > " << preperiod << ")";
  return os.str();
}

LinearRecurrence minimal_recurrence(const std::vector<Rat>& seq) {
  if (seq.size() < 4) throw InsufficientData("minimal_recurrence: need >= 4 terms");
  unsigned rmax = static_cast<unsigned>(seq.size() / 2);
  for (unsigned r = 1; r <= rmax; ++r) {
    auto a = solve_fit(seq, r, 0);
    if (a) {
      LinearRecurrence rec;
      rec.order = r;
      rec.coeffs = std::move(*a);
      rec.preperiod = 0;
      rec.integral = all_integral(rec.coeffs);
      rec.window = static_cast<unsigned>(seq.size());
      return rec;
    }
  }
  throw InsufficientData("minimal_recurrence: window only consistent with order > length/2");
}

LinearRecurrence eventual_recurrence(const std::vector<Rat>& seq) {
  if (seq.size() < 4) throw InsufficientData("eventual_recurrence: need >= 4 terms");
  size_t len = seq.size();
  for (unsigned r = 1; 2 * r + 1 <= len; ++r) {
    for (unsigned N = 0; N + 2 * r + 1 <= len; ++N) {
      auto a = solve_fit(seq, r, N);
      if (!a) continue;
      LinearRecurrence rec;
      rec.order = r;
      rec.coeffs = std::move(*a);
      rec.preperiod = N;
      rec.integral = all_integral(rec.coeffs);
      rec.window = static_cast<unsigned>(len);
      return rec;
    }
  }
  throw InsufficientData("eventual_recurrence: no recurrence within the window");
}

FitAnswer fits_order_exactly(const std::vector<Rat>& seq, unsigned r) {
  // All solutions of the linear system; is there one with a_r != 0?  The
  // solution set is an affine subspace; examine the unique solution when the
  // system is determined, otherwise check whether a_r is forced to zero.
  size_t len = seq.size();
  if (len < r + 1) return FitAnswer::No;
  auto unique_sol = solve_fit(seq, r, 0);
  if (unique_sol) {
    if ((*unique_sol)[r - 1] == 0) return FitAnswer::No;
    return all_integral(*unique_sol) ? FitAnswer::Integral : FitAnswer::RationalOnly;
  }
  // solve_fit returned nullopt: either inconsistent (no solutions at all) or
  // underdetermined.  Re-run a reduced elimination to distinguish and, when
  // underdetermined, decide whether a_r == 0 on the whole solution set.
  size_t rows = len - r;
  std::vector<std::vector<Rat>> M(rows, std::vector<Rat>(r + 1, Rat(0)));
  for (size_t e = 0; e < rows; ++e) {
    size_t k = r + 1 + e;
    for (unsigned i = 1; i <= r; ++i) M[e][i - 1] = seq[k - i - 1];
    M[e][r] = seq[k - 1];
  }
  size_t rank = 0;
  std::vector<int> pivcol;
  for (unsigned col = 0; col < r && rank < rows; ++col) {
    size_t sel = rank;
    while (sel < rows && M[sel][col] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(M[sel], M[rank]);
    Rat inv = Rat(1) / M[rank][col];
    for (unsigned j = col; j <= r; ++j) M[rank][j] *= inv;
    for (size_t e = 0; e < rows; ++e) {
      if (e == rank || M[e][col] == 0) continue;
      Rat f = M[e][col];
      for (unsigned j = col; j <= r; ++j) M[e][j] -= f * M[rank][j];
    }
    pivcol.push_back(static_cast<int>(col));
    ++rank;
  }
  for (size_t e = rank; e < rows; ++e)
    if (M[e][r] != 0) return FitAnswer::No;  // inconsistent
  // Underdetermined and consistent: a_r (column r-1) is forced to a fixed
  // value iff it is a pivot column whose row has zero entries in all free
  // columns; otherwise some solution has a_r != 0 (choose a free parameter).
  for (size_t e = 0; e < rank; ++e) {
    if (pivcol[e] == static_cast<int>(r - 1)) {
      bool depends_on_free = false;
      for (unsigned col = 0; col < r; ++col) {
        bool is_pivot = std::find(pivcol.begin(), pivcol.end(),
                                  static_cast<int>(col)) != pivcol.end();
        if (!is_pivot && M[e][col] != 0) depends_on_free = true;
      }
      if (!depends_on_free && M[e][r] == 0) return FitAnswer::No;  // forced zero
      // a_r attainable nonzero; integrality of some solution is not decided
      // exactly here -- report the rational existence
      return FitAnswer::RationalOnly;
    }
  }
  // a_r is a free variable: nonzero choices exist; integral choices exist by
  // scaling the free parameter to clear denominators only if the particular
  // solution is integral -- undecided in general, report rational existence.
  return FitAnswer::RationalOnly;
}

GeneratingFunction generating_function(const std::vector<Rat>& prefix,
                                       const LinearRecurrence& rec) {
  if (!rec.fits(prefix))
    throw std::invalid_argument("generating_function: recurrence does not fit");
  if (prefix.size() < rec.preperiod + rec.order)
    throw std::invalid_argument("generating_function: prefix shorter than N + r");
  GeneratingFunction g;
  g.den.assign(rec.order + 1, Rat(0));
  g.den[0] = 1;
  for (unsigned i = 1; i <= rec.order; ++i) g.den[i] = -rec.coeffs[i - 1];
  size_t np = rec.preperiod + rec.order;
  g.num.assign(np + 1, Rat(0));
  for (size_t k = 1; k <= np; ++k) {
    Rat p = prefix[k - 1];
    for (unsigned i = 1; i <= rec.order && i < k; ++i)
      p -= rec.coeffs[i - 1] * prefix[k - i - 1];
    g.num[k] = p;
  }
  while (!g.num.empty() && g.num.back() == 0) g.num.pop_back();
  return g;
}

std::vector<Rat> GeneratingFunction::taylor(unsigned nterms) const {
  // power series division num/den, den[0] != 0
  if (den.empty() || den[0] == 0)
    throw std::invalid_argument("taylor: denominator has zero constant term");
  std::vector<Rat> c(nterms + 1, Rat(0));
  for (unsigned k = 0; k <= nterms; ++k) {
    Rat acc = k < num.size() ? num[k] : Rat(0);
    for (unsigned i = 1; i <= k && i < den.size(); ++i) acc -= den[i] * c[k - i];
    c[k] = acc / den[0];
  }
  return std::vector<Rat>(c.begin() + 1, c.end());  // c_1..c_n
}

bool GeneratingFunction::equals(const GeneratingFunction& o) const {
  // cross multiply
  auto mul = [](const std::vector<Rat>& a, const std::vector<Rat>& b) {
    if (a.empty() || b.empty()) return std::vector<Rat>{};
    std::vector<Rat> r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  };
  return mul(num, o.den) == mul(o.num, den);
}

std::string GeneratingFunction::str() const {
  auto poly_str = [](const std::vector<Rat>& p) {
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < p.size(); ++k) {
      if (p[k] == 0) continue;
      if (!first) os << (p[k] > 0 ? " + " : " - ");
      Rat a = (!first && p[k] < 0) ? Rat(-p[k]) : p[k];
      if (first && a < 0) {
        os << "-";
        a = -a;
      }
      if (k == 0 || a != 1) os << rat_str(a);
      if (k > 0) {
        if (a != 1) os << "*";
        os << "t";
        if (k > 1) os << "^" << k;
      }
      first = false;
    }
    if (first) os << "0";
    return os.str();
  };
  return "(" + poly_str(num) + ")/(" + poly_str(den) + ")";
}

// ---------------------------------------------------------------------------

namespace {

// integer-coefficient content-free image of a rational polynomial
std::vector<Int> to_integer_poly(const std::vector<Rat>& p) {
  Int den = 1;
  for (auto& c : p) den = int_lcm(den, rat_den(c));
  std::vector<Int> z;
  z.reserve(p.size());
  for (auto& c : p) z.push_back(rat_num(c) * (den / rat_den(c)));
  Int g = 0;
  for (auto& c : z) g = int_gcd(g, c);
  if (g > 1)
    for (auto& c : z) c /= g;
  return z;
}

std::vector<Int> int_poly_div(const std::vector<Int>& a, const std::vector<Int>& b,
                              bool& ok) {
  // division in Q[t] checking the quotient stays integral and remainder zero
  std::vector<Rat> r(a.begin(), a.end());
  std::vector<Rat> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
  Rat lead = Rat(b.back());
  while (r.size() >= b.size()) {
    Rat f = r.back() / lead;
    size_t shift = r.size() - b.size();
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= f * Rat(b[i]);
    while (!r.empty() && r.back() == 0) r.pop_back();
    if (r.size() >= b.size() + shift) {
      ok = false;
      return {};
    }
  }
  if (!r.empty()) {
    ok = false;
    return {};
  }
  std::vector<Int> zq;
  zq.reserve(q.size());
  for (auto& c : q) {
    if (!is_integer(c)) {
      ok = false;
      return {};
    }
    zq.push_back(rat_num(c));
  }
  ok = true;
  return zq;
}

std::vector<Int> divisors_of(Int n) {
  if (n < 0) n = -n;
  std::vector<Int> d;
  for (Int k = 1; k * k <= n; ++k)
    if (n % k == 0) {
      d.push_back(k);
      if (k * k != n) d.push_back(n / k);
    }
  return d;
}

struct Factorization {
  std::vector<Rat> linear_roots;              // roots of linear factors
  std::vector<std::pair<Int, Int>> quads;     // (u, v): irreducible t^2 - u t + v
  std::vector<std::vector<Int>> unfactored;   // leftover integer factors, deg > 2
};

Factorization factor_charpoly(const std::vector<Rat>& cp) {
  Factorization f;
  std::vector<Int> p = to_integer_poly(cp);
  // strip t^k factors (roots at zero)
  size_t shift = 0;
  while (shift < p.size() && p[shift] == 0) ++shift;
  if (shift) {
    for (size_t k = 0; k < shift; ++k) f.linear_roots.push_back(Rat(0));
    p.erase(p.begin(), p.begin() + shift);
  }
  // rational roots
  bool changed = true;
  while (changed && p.size() > 1) {
    changed = false;
    for (const Int& num : divisors_of(p.front())) {
      for (const Int& den : divisors_of(p.back())) {
        for (int sg : {1, -1}) {
          Rat cand(sg * num, den);
          Rat acc(0);
          for (size_t k = p.size(); k-- > 0;) acc = acc * cand + Rat(p[k]);
          if (acc != 0) continue;
          // deflate exactly
          std::vector<Rat> next(p.size() - 1, Rat(0));
          Rat carry = Rat(p.back());
          for (size_t k = p.size() - 1; k-- > 0;) {
            next[k] = carry;
            carry = Rat(p[k]) + carry * cand;
          }
          f.linear_roots.push_back(cand);
          p = to_integer_poly(next);
          changed = true;
          goto deflated;
        }
      }
    }
  deflated:;
  }
  // integer quadratic factors t^2 - u t + v (monic up to content)
  if (p.size() > 3) {
    bool again = true;
    while (again && p.size() > 3) {
      again = false;
      Int a0 = p.front(), an = p.back();
      // Fujiwara-style root bound: |root| <= 2 max_k |a_{n-k}/a_n|^{1/k}
      Int rb = 1;
      {
        size_t deg = p.size() - 1;
        Int lead = boost::multiprecision::abs(an);
        for (size_t k = 1; k <= deg; ++k) {
          Int num = boost::multiprecision::abs(p[deg - k]);
          // smallest integer m with m^k * lead >= num
          Int m = 1;
          while (boost::multiprecision::pow(m, static_cast<unsigned>(k)) * lead < num)
            ++m;
          rb = std::max(rb, m);
        }
        rb = 2 * rb;
      }
      Int ubound = 2 * rb + 2;
      for (const Int& vd : divisors_of(a0)) {
        for (int sv : {1, -1}) {
          Int v = sv * vd;
          for (Int u = -ubound; u <= ubound; ++u) {
            // candidate t^2 - u t + v; must divide p (times lead adjustments)
            std::vector<Int> quad{v, -u, 1};
            bool ok = false;
            std::vector<Int> q = int_poly_div(p, quad, ok);
            if (!ok) continue;
            f.quads.push_back({u, v});
            p = q;
            again = true;
            goto quad_found;
          }
        }
      }
    quad_found:;
    }
  }
  if (p.size() == 3) {
    // remaining quadratic a t^2 + b t + c, monic-ize rationally
    Rat u = Rat(-p[1]) / Rat(p[2]), v = Rat(p[0]) / Rat(p[2]);
    if (is_integer(u) && is_integer(v))
      f.quads.push_back({rat_num(u), rat_num(v)});
    else
      f.unfactored.push_back(p);
  } else if (p.size() == 2) {
    f.linear_roots.push_back(Rat(-p[0]) / Rat(p[1]));
  } else if (p.size() > 3) {
    f.unfactored.push_back(p);
  }
  return f;
}

// exact upper bound refinement: unique positive root of |an| t^d - sum |ai| t^i
Rat cauchy_root_bound(const std::vector<Int>& p, const Rat& tol) {
  size_t d = p.size() - 1;
  // |a_d| t^d - sum_{k<d} |a_k| t^k, evaluated by Horner
  auto val = [&](const Rat& t) {
    Rat acc = Rat(boost::multiprecision::abs(p[d]));
    for (size_t k = d; k-- > 0;) {
      acc *= t;
      acc -= Rat(boost::multiprecision::abs(p[k]));
    }
    return acc;
  };
  Rat lo(0), hi(1);
  while (val(hi) <= 0) hi *= 2;
  while (Rat(hi - lo) > tol) {
    Rat mid = (lo + hi) / 2;
    if (val(mid) <= 0)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

}  // namespace

QuadraticInteger asymptotic_rate(const LinearRecurrence& rec,
                                 const std::vector<Rat>& prefix) {
  auto cp = rec.characteristic_polynomial();
  Factorization f = factor_charpoly(cp);
  // candidate dominant values: positive real roots of the degree-<=2 factors
  std::vector<QuadraticInteger> cands;
  for (auto& r : f.linear_roots)
    if (r > 0) cands.push_back(QuadraticInteger::from_rational(r));
  for (auto& [u, v] : f.quads) {
    Int disc = u * u - 4 * v;
    if (disc >= 0) {
      QuadraticInteger q = QuadraticInteger::from_quadratic(u, v);
      // dominant root (u + sqrt(disc))/2 is positive iff u > 0 or v < 0
      if (q.as_ext().sign() > 0) cands.push_back(q);
    }
  }
  if (cands.empty())
    throw NotQuadratic("asymptotic_rate: no positive real root in factors of degree <= 2");
  QuadraticInteger best = cands[0];
  for (auto& c : cands)
    if (best.as_ext() < c.as_ext()) best = c;
  QuadExt lambda = best.as_ext();
  // dominance: modulus of every other root must not exceed lambda
  for (auto& r : f.linear_roots) {
    Rat ar = r < 0 ? Rat(-r) : r;
    if ((lambda - QuadExt(ar, Rat(0), 0, 0)).sign() < 0)
      throw NotQuadratic("asymptotic_rate: a negative root dominates");
  }
  for (auto& [u, v] : f.quads) {
    Int disc = u * u - 4 * v;
    if (disc < 0) {
      // complex pair of modulus sqrt(v)
      if ((lambda * lambda - QuadExt(Rat(v), Rat(0), 0, 0)).sign() < 0)
        throw NotQuadratic("asymptotic_rate: complex pair dominates");
    }
  }
  for (auto& g : f.unfactored) {
    // all roots of g have modulus <= cauchy bound; refine until separated
    Rat tol(1, 16);
    for (int iter = 0;; ++iter) {
      Rat bound = cauchy_root_bound(g, tol);
      auto [lo, hi] = lambda.bracket(tol);
      if (bound <= lo) break;  // dominated
      if (iter >= 40)
        throw NotQuadratic(
            "asymptotic_rate: dominant root may lie in an unfactored piece");
      tol /= 16;
    }
  }
  (void)prefix;
  return best;
}

LinearRecurrence recurrence_from_matrix(const std::array<Int, 4>& m) {
  Int tr = m[0] + m[3];
  Int det = m[0] * m[3] - m[1] * m[2];
  if (det == 0) throw std::invalid_argument("recurrence_from_matrix: singular matrix");
  LinearRecurrence rec;
  rec.order = 2;
  rec.coeffs = {Rat(tr), Rat(-det)};
  rec.preperiod = 0;
  rec.integral = true;
  rec.window = 0;
  return rec;
}

bool ratio_converges_to(const std::vector<Rat>& seq, const QuadraticInteger& lambda,
                        unsigned tail) {
  if (seq.size() < tail + 2) return false;
  QuadExt l = lambda.as_ext();
  std::optional<QuadExt> last;
  for (size_t k = seq.size() - tail; k + 1 <= seq.size(); ++k) {
    if (seq[k - 1] == 0) return false;
    Rat ratio = seq[k] / seq[k - 1];  // c_{k+1}/c_k, 0-based slices
    QuadExt diff = QuadExt(ratio, Rat(0), 0, 0) - l;
    if (diff.sign() < 0) diff = -diff;
    if (last && !(diff < *last) && diff.sign() != 0) return false;
    last = diff;
  }
  return true;
}

}  // namespace germdyn
