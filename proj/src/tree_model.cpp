#include "germdyn/tree_model.hpp"

#include <map>
#include <sstream>

#include "germdyn/parse.hpp"

namespace germdyn {

Rat ModelEdge::apply_mobius(const Rat& alpha) const {
  Rat den = mobius[2] * alpha + mobius[3];
  if (den == 0) throw std::domain_error("model edge: Moebius pole inside the range");
  return (mobius[0] * alpha + mobius[1]) / den;
}

size_t FiniteTreeModel::edge_index(const std::string& id) const {
  for (size_t k = 0; k < edges.size(); ++k)
    if (edges[k].id == id) return k;
  throw std::invalid_argument("model: unknown edge id " + id);
}

void FiniteTreeModel::validate() const {
  if (edges.empty()) throw std::invalid_argument("model: no edges");
  for (auto& e : edges) {
    if (!(e.alo < e.ahi)) throw std::invalid_argument("model: empty range on edge " + e.id);
    // endpoint skewness must match the range
    ExtRat sf = e.from.skewness(), st = e.to.skewness();
    if (sf.infinite || sf.value != e.alo || st.infinite || st.value != e.ahi)
      throw std::invalid_argument("model: endpoint skewness mismatch on edge " + e.id);
    // positive rates on the closed range
    if (e.rate_at(e.alo) <= 0 || e.rate_at(e.ahi) <= 0)
      throw std::invalid_argument("model: nonpositive rate on edge " + e.id);
    // Moebius image inside the target range (monotone on the interval since
    // the denominator keeps one sign there)
    Rat dlo = e.mobius[2] * e.alo + e.mobius[3];
    Rat dhi = e.mobius[2] * e.ahi + e.mobius[3];
    if (dlo == 0 || dhi == 0 || (dlo > 0) != (dhi > 0))
      throw std::invalid_argument("model: Moebius pole inside edge " + e.id);
    const ModelEdge& tgt = edges[edge_index(e.maps_to)];
    Rat ilo = e.apply_mobius(e.alo), ihi = e.apply_mobius(e.ahi);
    if (ilo > ihi) std::swap(ilo, ihi);
    if (ilo < tgt.alo || ihi > tgt.ahi)
      throw std::invalid_argument("model: image of edge " + e.id +
                                  " leaves the range of " + e.maps_to);
  }
  // assembled rates along root paths: continuous, increasing, concave
  // (walk the tree away from ord0)
  Valuation root = Valuation::ord0();
  struct Walk {
    Valuation at;
    Rat value;   // assembled rate at `at`
    Rat slope;   // slope of the last piece
    std::vector<size_t> used;
  };
  std::vector<Walk> stack;
  bool found_root = false;
  for (size_t k = 0; k < edges.size(); ++k) {
    if (edges[k].from == root) {
      found_root = true;
      const auto& e = edges[k];
      stack.push_back({e.to, e.rate_at(e.ahi), e.rate_slope, {k}});
      // increasing on the edge itself
      if (e.rate_slope < 0)
        throw std::invalid_argument("model: decreasing rate on edge " + e.id);
    }
  }
  if (!found_root) throw std::invalid_argument("model: no edge starts at ord0");
  while (!stack.empty()) {
    Walk w = std::move(stack.back());
    stack.pop_back();
    for (size_t k = 0; k < edges.size(); ++k) {
      const auto& e = edges[k];
      if (std::find(w.used.begin(), w.used.end(), k) != w.used.end()) continue;
      if (!(e.from == w.at)) continue;
      if (e.rate_slope < 0)
        throw std::invalid_argument("model: decreasing rate on edge " + e.id);
      if (e.rate_at(e.alo) != w.value)
        throw std::invalid_argument("model: assembled rate discontinuous at edge " + e.id);
      if (e.rate_slope > w.slope)
        throw std::invalid_argument("model: assembled rate not concave at edge " + e.id);
      Walk next{e.to, e.rate_at(e.ahi), e.rate_slope, w.used};
      next.used.push_back(k);
      stack.push_back(std::move(next));
    }
  }
}

FiniteTreeModel::Position FiniteTreeModel::locate(const Valuation& v) const {
  for (size_t k = 0; k < edges.size(); ++k) {
    if (edges[k].from == v) return {k, edges[k].alo};
    if (edges[k].to == v) return {k, edges[k].ahi};
  }
  throw std::invalid_argument("model: valuation is not a vertex of the model");
}

FiniteTreeModel::Orbit FiniteTreeModel::iterate(Position start, unsigned N) const {
  Orbit orbit;
  Position pos = start;
  Rat cumulative(1);
  for (unsigned k = 1; k <= N; ++k) {
    const ModelEdge& e = edges[pos.edge];
    if (pos.alpha < e.alo || pos.alpha > e.ahi)
      throw ModelIncomplete("model: position left the edge ranges", k);
    Rat rate = e.rate_at(pos.alpha);
    cumulative *= rate;
    orbit.rates.push_back(cumulative);
    Rat next_alpha = e.apply_mobius(pos.alpha);
    size_t next_edge = edge_index(e.maps_to);
    const ModelEdge& t = edges[next_edge];
    if (next_alpha < t.alo || next_alpha > t.ahi)
      throw ModelIncomplete("model: orbit exits the model at step", k);
    pos = {next_edge, next_alpha};
    orbit.positions.push_back(pos);
  }
  return orbit;
}

namespace {

std::map<std::string, std::string> parse_kv(std::istringstream& line) {
  std::map<std::string, std::string> kv;
  std::string tok;
  while (line >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("model: expected key=value, got " + tok);
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

std::vector<Rat> parse_rat_list(const std::string& s) {
  std::vector<Rat> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(parse_rat(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(parse_rat(cur));
  return out;
}

}  // namespace

FiniteTreeModel FiniteTreeModel::parse(const std::string& text) {
  FiniteTreeModel model;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "model") {
      ls >> model.name;
      continue;
    }
    if (head != "edge")
      throw std::invalid_argument("model: unknown directive " + head);
    ModelEdge e;
    ls >> e.id;
    auto kv = parse_kv(ls);
    auto need = [&](const std::string& k) {
      auto it = kv.find(k);
      if (it == kv.end())
        throw std::invalid_argument("model edge " + e.id + ": missing " + k);
      return it->second;
    };
    e.maps_to = need("maps_to");
    e.from = parse_valuation(need("from"));
    e.to = parse_valuation(need("to"));
    auto range = parse_rat_list(need("range"));
    if (range.size() != 2) throw std::invalid_argument("model: bad range");
    e.alo = range[0];
    e.ahi = range[1];
    auto mob = parse_rat_list(need("mobius"));
    if (mob.size() != 4) throw std::invalid_argument("model: bad mobius");
    e.mobius = {mob[0], mob[1], mob[2], mob[3]};
    auto rate = parse_rat_list(need("rate"));
    if (rate.size() != 2) throw std::invalid_argument("model: bad rate");
    e.rate_slope = rate[0];
    e.rate_intercept = rate[1];
    model.edges.push_back(std::move(e));
  }
  model.validate();
  return model;
}

std::string FiniteTreeModel::serialize() const {
  std::ostringstream os;
  os << "model " << name << "\n";
  for (auto& e : edges) {
    os << "edge " << e.id << " maps_to=" << e.maps_to << " from=" << e.from.str()
       << " to=" << e.to.str() << " range=" << rat_str(e.alo) << ","
       << rat_str(e.ahi) << " mobius=" << rat_str(e.mobius[0]) << ","
       << rat_str(e.mobius[1]) << "," << rat_str(e.mobius[2]) << ","
       << rat_str(e.mobius[3]) << " rate=" << rat_str(e.rate_slope) << ","
       << rat_str(e.rate_intercept) << "\n";
  }
  return os.str();
}

}  // namespace germdyn
