#include "germdyn/valuation.hpp"

#include <sstream>

namespace germdyn {

Valuation Valuation::monomial(Rat s, Rat t) {
  if (s <= 0 || t <= 0 || (s != 1 && t != 1) || s < 1 || t < 1)
    throw std::invalid_argument("monomial valuation: need min(s, t) = 1");
  Valuation v;
  v.kind_ = Kind::Monomial;
  v.s_ = std::move(s);
  v.t_ = std::move(t);
  return v;
}

Valuation Valuation::quasimonomial(PuiseuxBranch branch, Rat skew) {
  if (skew < 1) throw std::invalid_argument("quasimonomial: skewness >= 1 required");
  if (skew == 1) return ord0();
  if (branch.is_axis())
    return branch.dep == Axis::Y ? monomial(Rat(1), skew) : monomial(skew, Rat(1));
  Rat e1 = branch.first_exponent();
  if (e1 < 1)
    throw std::invalid_argument("quasimonomial: branch not orientation-normalized");
  if (skew <= e1)
    return branch.dep == Axis::Y ? monomial(Rat(1), skew) : monomial(skew, Rat(1));
  Valuation v;
  v.kind_ = Kind::Quasimonomial;
  v.t_ = std::move(skew);
  v.s_ = Rat(1);
  v.branch_ = std::move(branch);
  return v;
}

Valuation Valuation::curve(PuiseuxBranch branch) {
  Valuation v;
  v.kind_ = Kind::Curve;
  v.s_ = v.t_ = Rat(0);
  v.branch_ = std::move(branch);
  return v;
}

const PuiseuxBranch& Valuation::branch() const {
  if (!branch_) throw std::logic_error("Valuation: no branch");
  return *branch_;
}

PuiseuxBranch Valuation::as_branch() const {
  if (branch_) return *branch_;
  // monomial: lies on an axis segment
  if (t_ >= s_) return axis_branch(Axis::Y);
  return axis_branch(Axis::X);
}

ExtRat Valuation::skew_on_branch() const {
  switch (kind_) {
    case Kind::Monomial:
      return ExtRat::fin(t_ >= s_ ? t_ : s_);
    case Kind::Quasimonomial:
      return ExtRat::fin(t_);
    case Kind::Curve:
      return ExtRat::inf();
  }
  throw std::logic_error("unreachable");
}

ExtRat Valuation::skewness() const { return skew_on_branch(); }

// ---------------------------------------------------------------------------
// Contact structure and thinness

Rat branch_divergence_skewness(const PuiseuxBranch& b, const Rat& beta) {
  // alpha_B(beta) = beta / m(beta-) + sum_{e_i < beta} (1/m_{i-1} - 1/m_i) e_i
  Int m_prev = 1;
  Rat acc(0);
  for (auto& [se, c] : b.terms) {
    Rat e(se, b.ram);
    if (e >= beta) break;
    Int m_next = int_lcm(m_prev, rat_den(e));
    if (m_next != m_prev) {
      acc += (Rat(1, m_prev) - Rat(1, m_next)) * e;
      m_prev = m_next;
    }
  }
  return beta / Rat(m_prev) + acc;
}

ContactProfile contact_profile(const PuiseuxBranch& b) {
  ContactProfile p;
  Int m_prev = 1;
  for (auto& [se, c] : b.terms) {
    Rat e(se, b.ram);
    Int m_next = int_lcm(m_prev, rat_den(e));
    if (m_next != m_prev) {
      p.jumps.push_back({branch_divergence_skewness(b, e),
                         static_cast<unsigned>(m_next)});
      m_prev = m_next;
    }
  }
  // complete when the full ramification is visible and no further jumps can
  // occur (regular or exact tail)
  p.complete = (b.exact_tail || b.tail_regular) &&
               m_prev == Int(b.ram);
  return p;
}

ExtRat Valuation::thinness() const {
  switch (kind_) {
    case Kind::Monomial:
      return ExtRat::fin(s_ + t_);
    case Kind::Curve:
      return ExtRat::inf();
    case Kind::Quasimonomial: {
      PuiseuxBranch b = *branch_;
      for (int attempt = 0;; ++attempt) {
        ContactProfile p = contact_profile(b);
        bool enough = p.complete ||
                      branch_divergence_skewness(b, Rat(b.sprec, b.ram)) >= t_;
        if (!enough) {
          Rat cur(b.sprec, b.ram);
          if (attempt >= 6)
            throw Indeterminate("thinness: branch precision below skewness", t_);
          ensure_precision(b, Rat(cur * 2) + 2);
          continue;
        }
        Rat a(2);
        Rat level(1);
        unsigned mult = 1;
        for (auto& [kappa, m_next] : p.jumps) {
          if (kappa >= t_) break;
          a += Rat(mult) * (kappa - level);
          level = kappa;
          mult = m_next;
        }
        a += Rat(mult) * (t_ - level);
        return ExtRat::fin(a);
      }
    }
  }
  throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Meet, equality, distance

namespace {

ExtRat branch_contact(const PuiseuxBranch& a, const PuiseuxBranch& b) {
  auto c = contact_skewness(a, b);
  if (c.infinite) return ExtRat::inf();
  return ExtRat::fin(c.value);
}

}  // namespace

Valuation Valuation::meet(const Valuation& a, const Valuation& b) {
  PuiseuxBranch ba = a.as_branch(), bb = b.as_branch();
  ExtRat sa = a.skew_on_branch(), sb = b.skew_on_branch();
  ExtRat contact = branch_contact(ba, bb);
  // min of the three
  ExtRat m = sa;
  if (!sb.infinite && (m.infinite || sb.value < m.value)) m = sb;
  if (!contact.infinite && (m.infinite || contact.value < m.value)) m = contact;
  if (m.infinite) {
    // identical curve semivaluations
    return a;
  }
  return quasimonomial(ba, m.value);
}

bool Valuation::operator==(const Valuation& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case Kind::Monomial:
      return s_ == o.s_ && t_ == o.t_;
    case Kind::Quasimonomial: {
      if (t_ != o.t_) return false;
      ExtRat c = branch_contact(*branch_, *o.branch_);
      return c.infinite || c.value >= t_;
    }
    case Kind::Curve: {
      ExtRat c = branch_contact(*branch_, *o.branch_);
      return c.infinite;
    }
  }
  throw std::logic_error("unreachable");
}

Rat Valuation::distance(const Valuation& a, const Valuation& b, TreeParam param) {
  Valuation w = meet(a, b);
  auto val = [&](const Valuation& v) -> Rat {
    ExtRat A = v.thinness();
    if (param == TreeParam::Thinness) {
      if (A.infinite)
        throw std::invalid_argument("distance: infinite thinness under d_A");
      return A.value;
    }
    return A.infinite ? Rat(0) : Rat(1) / A.value;
  };
  Rat va = val(a), vb = val(b), vw = val(w);
  Rat d1 = va > vw ? Rat(va - vw) : Rat(vw - va);
  Rat d2 = vb > vw ? Rat(vb - vw) : Rat(vw - vb);
  return d1 + d2;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

// Evaluate a quasimonomial/curve valuation on an exact polynomial via the
// branch decomposition of phi and contacts with the valuation's branch.
// skew is empty for curve semivaluations (t = infinity).
ExtRat eval_on_branch(const PuiseuxBranch& vb, const std::optional<Rat>& skew,
                      const BiSeries& phi) {
  // Bezout bound on relevant contact orders
  unsigned degb = std::max(1u, vb.defining.total_degree());
  unsigned degp = std::max(1u, phi.total_degree());
  long long bd = static_cast<long long>(degb) * degp;
  Rat prec = Rat(2 * degp + 2);
  const Rat prec_cap = Rat(bd + 2);
  while (true) {
    BranchDecomposition dec = branches(phi, prec);
    try {
      Rat total(0);
      for (auto& g : dec.groups) {
        // required scan depth: contacts only matter up to the skewness
        long long bound = bd;
        if (skew) {
          Rat need = *skew * Rat(g.branch_mult0()) * Rat(vb.mult0());
          Int ceilneed = rat_ceil(need);
          long long nv = ceilneed.convert_to<long long>() + 1;
          bound = std::min(bound, nv);
        }
        auto pieces = group_substitution_orders(g, vb.defining, bound);
        for (auto& p : pieces) {
          ExtRat contact = ExtRat::inf();
          if (p.ord)
            contact = ExtRat::fin(Rat(*p.ord) /
                                  (Rat(g.branch_mult0()) * Rat(vb.mult0())));
          // min(skew, contact), weighted by mult * resdeg * m0
          ExtRat piece_val;
          if (!skew && contact.infinite) return ExtRat::inf();
          if (!skew)
            piece_val = contact;
          else if (contact.infinite || contact.value > *skew)
            piece_val = ExtRat::fin(*skew);
          else
            piece_val = contact;
          total += Rat(g.mult) * Rat(p.resdeg) * Rat(g.branch_mult0()) *
                   piece_val.value;
        }
      }
      return ExtRat::fin(total);
    } catch (const Indeterminate& ind) {
      if (prec >= prec_cap) throw;
      Rat next = Rat(prec * 2);
      Rat hinted = Rat(ind.required_precision + 2);
      if (hinted > next) next = hinted;
      prec = next < prec_cap ? next : prec_cap;
    }
  }
}

}  // namespace

EvalResult Valuation::evaluate(const BiSeries& phi) const {
  if (phi.is_zero()) {
    if (phi.is_exact()) return {true, Rat(0), true};
    throw Indeterminate("evaluate: empty truncated series",
                        Rat(*phi.truncation()));
  }
  if (!phi.constant_term().is_zero()) return {false, Rat(0), true};
  auto certify = [&](const Rat& v) {
    return phi.is_exact() || v <= Rat(*phi.truncation());
  };
  switch (kind_) {
    case Kind::Monomial: {
      auto w = phi.weighted_order(s_, t_);
      return {false, w.value, w.certified};
    }
    case Kind::Quasimonomial: {
      const PuiseuxBranch& b = *branch_;
      if (b.is_graph()) {
        // exact change of coordinates: the valuation is monomial in
        // (x, y - p(x)) (resp. mirrored)
        BiSeries p = b.graph_poly();
        BiSeries shifted = phi.shift(b.dep == Axis::Y ? Axis::Y : Axis::X, p);
        auto w = b.dep == Axis::Y ? shifted.weighted_order(Rat(1), t_)
                                  : shifted.weighted_order(t_, Rat(1));
        return {false, w.value, w.certified};
      }
      return evaluate_via_contacts(phi);
    }
    case Kind::Curve:
      return evaluate_via_contacts(phi);
  }
  throw std::logic_error("unreachable");
}

EvalResult Valuation::evaluate_via_contacts(const BiSeries& phi) const {
  if (phi.is_zero()) {
    if (phi.is_exact()) return {true, Rat(0), true};
    throw Indeterminate("evaluate: empty truncated series",
                        Rat(*phi.truncation()));
  }
  if (!phi.constant_term().is_zero()) return {false, Rat(0), true};
  auto certify = [&](const Rat& v) {
    return phi.is_exact() || v <= Rat(*phi.truncation());
  };
  BiSeries stored = BiSeries::from_terms(
      std::vector<BiSeries::Term>(phi.terms().begin(), phi.terms().end()));
  switch (kind_) {
    case Kind::Monomial: {
      // the monomial valuation sits on an axis segment
      ExtRat v = eval_on_branch(as_branch(), t_ >= s_ ? t_ : s_, stored);
      if (v.infinite) throw std::logic_error("finite valuation gave infinity");
      return {false, v.value, certify(v.value)};
    }
    case Kind::Quasimonomial: {
      ExtRat v = eval_on_branch(*branch_, t_, stored);
      if (v.infinite) throw std::logic_error("finite valuation gave infinity");
      return {false, v.value, certify(v.value)};
    }
    case Kind::Curve: {
      ExtRat v = eval_on_branch(*branch_, std::nullopt, stored);
      if (v.infinite) {
        // infinite only when the branch divides phi itself; exact statement
        // requires exact input
        return {true, Rat(0), phi.is_exact()};
      }
      return {false, v.value, certify(v.value)};
    }
  }
  throw std::logic_error("unreachable");
}

std::string Valuation::str() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Monomial:
      if (s_ == 1 && t_ == 1) return "ord0";
      os << "mono(" << rat_str(s_) << "," << rat_str(t_) << ")";
      return os.str();
    case Kind::Quasimonomial:
      os << "qm(" << branch_->defining.str() << ", " << rat_str(t_) << ")";
      return os.str();
    case Kind::Curve:
      os << "curve(" << branch_->defining.str() << ")";
      return os.str();
  }
  return "?";
}

}  // namespace germdyn
