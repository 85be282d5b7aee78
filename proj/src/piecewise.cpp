#include "germdyn/piecewise.hpp"

#include <algorithm>

namespace germdyn {

PiecewiseAffine::PiecewiseAffine(std::vector<Piece> pieces, std::optional<Rat> hi)
    : pieces_(std::move(pieces)), hi_(std::move(hi)) {
  if (pieces_.empty()) throw std::invalid_argument("PiecewiseAffine: no pieces");
  merge_collinear();
}

void PiecewiseAffine::merge_collinear() {
  std::vector<Piece> out;
  for (auto& p : pieces_) {
    if (!out.empty() && out.back().slope == p.slope && out.back().intercept == p.intercept)
      continue;
    out.push_back(p);
  }
  pieces_ = std::move(out);
}

PiecewiseAffine PiecewiseAffine::lower_envelope(std::vector<std::pair<Rat, Rat>> lines,
                                                const Rat& lo, std::optional<Rat> hi) {
  if (lines.empty()) throw std::invalid_argument("lower_envelope: no lines");
  // Keep, per slope, the smallest intercept; sort by slope.
  std::sort(lines.begin(), lines.end());
  std::vector<std::pair<Rat, Rat>> uniq;
  for (auto& l : lines) {
    if (!uniq.empty() && uniq.back().first == l.first) continue;  // larger intercept
    uniq.push_back(l);
  }
  // Walk from t = lo rightward: at each point pick the minimal line, then find
  // the first crossing with a smaller-slope line to the right.
  std::vector<Piece> pieces;
  Rat t = lo;
  // Index of minimal line at t (ties -> smaller slope wins to the right?  At a
  // tie the smaller slope is smaller just right of t only if it crosses from
  // above; picking the smallest value then smallest slope is correct.)
  auto value_at = [&](size_t i, const Rat& x) { return uniq[i].first * x + uniq[i].second; };
  size_t cur = 0;
  for (size_t i = 1; i < uniq.size(); ++i) {
    Rat vi = value_at(i, t), vc = value_at(cur, t);
    if (vi < vc || (vi == vc && uniq[i].first < uniq[cur].first)) cur = i;
  }
  while (true) {
    // Next crossing: smallest x > t where some line with smaller slope meets cur.
    std::optional<Rat> best_x;
    size_t best_i = cur;
    for (size_t i = 0; i < uniq.size(); ++i) {
      if (uniq[i].first >= uniq[cur].first) continue;
      Rat dx = uniq[cur].first - uniq[i].first;  // > 0
      Rat x = (uniq[i].second - uniq[cur].second) / dx;
      if (x <= t) continue;
      if (hi && x >= *hi) continue;
      if (!best_x || x < *best_x ||
          (x == *best_x && uniq[i].first < uniq[best_i].first)) {
        best_x = x;
        best_i = i;
      }
    }
    pieces.push_back({t, uniq[cur].first, uniq[cur].second});
    if (!best_x) break;
    t = *best_x;
    cur = best_i;
  }
  return PiecewiseAffine(std::move(pieces), std::move(hi));
}

PiecewiseAffine PiecewiseAffine::pointwise_min(const PiecewiseAffine& o) const {
  if (domain_lo() != o.domain_lo() || hi_ != o.hi_)
    throw std::invalid_argument("pointwise_min: domain mismatch");
  // Collect all breakpoints, then on each subinterval take the envelope of the
  // two active affine forms.
  std::vector<Rat> cuts{domain_lo()};
  for (auto& p : pieces_) cuts.push_back(p.lo);
  for (auto& p : o.pieces_) cuts.push_back(p.lo);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto active = [](const std::vector<Piece>& ps, const Rat& t) {
    size_t k = 0;
    while (k + 1 < ps.size() && ps[k + 1].lo <= t) ++k;
    return ps[k];
  };
  std::vector<Piece> out;
  for (size_t k = 0; k < cuts.size(); ++k) {
    Rat a = cuts[k];
    std::optional<Rat> b = (k + 1 < cuts.size()) ? std::optional<Rat>(cuts[k + 1]) : hi_;
    Piece p1 = active(pieces_, a), p2 = active(o.pieces_, a);
    PiecewiseAffine env = lower_envelope(
        {{p1.slope, p1.intercept}, {p2.slope, p2.intercept}}, a, b);
    for (auto& p : env.pieces_) out.push_back(p);
  }
  return PiecewiseAffine(std::move(out), hi_);
}

Rat PiecewiseAffine::eval(const Rat& t) const {
  if (t < pieces_.front().lo || (hi_ && t > *hi_))
    throw std::out_of_range("PiecewiseAffine: out of domain");
  size_t k = 0;
  while (k + 1 < pieces_.size() && pieces_[k + 1].lo <= t) ++k;
  return pieces_[k].slope * t + pieces_[k].intercept;
}

std::vector<Rat> PiecewiseAffine::breakpoints() const {
  std::vector<Rat> r;
  for (size_t i = 1; i < pieces_.size(); ++i) r.push_back(pieces_[i].lo);
  return r;
}

bool PiecewiseAffine::is_concave() const {
  for (size_t i = 1; i < pieces_.size(); ++i)
    if (pieces_[i].slope > pieces_[i - 1].slope) return false;
  return true;
}

bool PiecewiseAffine::is_increasing() const {
  for (auto& p : pieces_)
    if (p.slope < 0) return false;
  return true;
}

}  // namespace germdyn
