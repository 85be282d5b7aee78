#include "germdyn/corpus.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "germdyn/parse.hpp"

namespace germdyn {

namespace {

std::vector<Rat> rat_list(const std::string& s) {
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

std::string seq_str(const std::vector<Rat>& v) {
  std::ostringstream os;
  for (size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << rat_str(v[k]);
  return os.str();
}

struct Ctx {
  Germ germ;
  Valuation seed;
  std::optional<RateSequenceResult> brute;
  std::optional<FiniteTreeModel> model;
  std::vector<Rat> model_rates;

  const std::vector<Rat>& source_seq(const std::string& which,
                                     std::vector<Rat>& scratch) const {
    if (which == "model") {
      if (model_rates.empty()) throw std::runtime_error("no model sequence");
      return model_rates;
    }
    if (!brute) throw std::runtime_error("no brute-force sequence");
    scratch = brute->certified_values();
    return scratch;
  }
};

}  // namespace

Valuation edge_valuation(const ModelEdge& e, const Rat& alpha) {
  if (e.to.kind() == Valuation::Kind::Monomial) {
    const Valuation& v = e.to;
    if (v.mono_t() >= v.mono_s()) return Valuation::monomial(Rat(1), alpha);
    return Valuation::monomial(alpha, Rat(1));
  }
  return Valuation::quasimonomial(e.to.branch(), alpha);
}

void validate_model_against_germ(const FiniteTreeModel& model, const Germ& f) {
  for (auto& e : model.edges) {
    const ModelEdge& tgt = model.edges[model.edge_index(e.maps_to)];
    // target chart branch (axis for monomial targets)
    PuiseuxBranch tb;
    if (tgt.to.kind() == Valuation::Kind::Monomial)
      tb = axis_branch(tgt.to.mono_t() >= tgt.to.mono_s() ? Axis::Y : Axis::X);
    else
      tb = tgt.to.branch();
    BiSeries gof = tb.defining.substitute(f.f1(), f.f2());
    Rat mid = (e.alo + e.ahi) / 2;
    for (const Rat& alpha : {e.alo, mid, e.ahi}) {
      Valuation nu = edge_valuation(e, alpha);
      RateValue c = attraction_rate(f, nu);
      if (c.infinite || !c.certified)
        throw std::runtime_error("model check: rate not computable on edge " + e.id);
      if (c.value != e.rate_at(alpha))
        throw std::runtime_error("model check: rate mismatch on edge " + e.id +
                                 " at alpha=" + rat_str(alpha) + ": germ gives " +
                                 rat_str(c.value) + ", model says " +
                                 rat_str(e.rate_at(alpha)));
      EvalResult img = nu.evaluate(gof);
      if (img.infinite || !img.certified)
        throw std::runtime_error("model check: image evaluation failed on edge " + e.id);
      Rat alpha_img = img.value / (c.value * Rat(tb.mult0()));
      if (alpha_img != e.apply_mobius(alpha))
        throw std::runtime_error(
            "model check: skewness action mismatch on edge " + e.id +
            " at alpha=" + rat_str(alpha) + ": germ gives " + rat_str(alpha_img) +
            ", model says " + rat_str(e.apply_mobius(alpha)));
    }
  }
}

std::string default_corpus_dir() {
  if (const char* env = std::getenv("GERMDYN_CORPUS_DIR")) return env;
  return "data/corpus";
}

std::vector<CorpusCase> parse_corpus_file(const std::string& text) {
  std::vector<CorpusCase> cases;
  std::istringstream in(text);
  std::string line;
  std::optional<CorpusCase> cur;
  size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("corpus line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    // provenance suffix
    std::string provenance;
    auto sep = line.find("::");
    if (sep != std::string::npos) {
      provenance = line.substr(sep + 2);
      size_t b = provenance.find_first_not_of(" \t");
      provenance = b == std::string::npos ? "" : provenance.substr(b);
      line = line.substr(0, sep);
    }
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "case") {
      if (cur) fail("nested case");
      cur.emplace();
      ls >> cur->id;
      continue;
    }
    if (!cur) fail("directive outside a case");
    if (head == "end") {
      cases.push_back(std::move(*cur));
      cur.reset();
    } else if (head == "germ") {
      std::string rest;
      std::getline(ls, rest);
      cur->germ_text = rest;
    } else if (head == "seed") {
      std::string rest;
      std::getline(ls, rest);
      cur->seed_text = rest;
    } else if (head == "n") {
      ls >> cur->n;
    } else if (head == "cap") {
      ls >> cur->degree_cap;
    } else if (head == "truncate") {
      unsigned d;
      ls >> d;
      cur->truncate = d;
    } else if (head == "model") {
      std::string file;
      unsigned nn = 0;
      ls >> file >> nn;
      cur->model_file = file;
      cur->model_n = nn;
    } else if (head.rfind("expect_", 0) == 0) {
      CorpusCase::Expect e;
      e.what = head.substr(7);
      e.provenance = provenance;
      std::string tok;
      while (ls >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) fail("expected key=value in " + head);
        e.kv[tok.substr(0, eq)] = tok.substr(eq + 1);
      }
      cur->expects.push_back(std::move(e));
    } else {
      fail("unknown directive " + head);
    }
  }
  if (cur) throw std::invalid_argument("corpus: unterminated case " + cur->id);
  return cases;
}

std::vector<CorpusCase> load_corpus_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<CorpusCase> all;
  std::vector<fs::path> files;
  for (auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".case") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (auto& f : files) {
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    auto cases = parse_corpus_file(ss.str());
    for (auto& c : cases) all.push_back(std::move(c));
  }
  std::sort(all.begin(), all.end(),
            [](const CorpusCase& a, const CorpusCase& b) { return a.id < b.id; });
  return all;
}

namespace {

void run_expect(const CorpusCase::Expect& e, Ctx& ctx,
                std::vector<CheckResult>& out) {
  CheckResult r;
  r.name = e.what;
  r.provenance = e.provenance;
  auto kv = [&](const std::string& k) -> std::string {
    auto it = e.kv.find(k);
    if (it == e.kv.end()) throw std::runtime_error("missing key " + k);
    return it->second;
  };
  auto kv_or = [&](const std::string& k, const std::string& def) {
    auto it = e.kv.find(k);
    return it == e.kv.end() ? def : it->second;
  };
  std::vector<Rat> scratch;
  if (e.what == "sequence") {
    auto expect = rat_list(kv("values"));
    if (!ctx.brute) throw std::runtime_error("no brute sequence computed");
    auto got = ctx.brute->certified_values();
    r.expected = seq_str(expect);
    r.actual = seq_str(got);
    r.pass = got.size() >= expect.size() &&
             std::equal(expect.begin(), expect.end(), got.begin());
  } else if (e.what == "minimal_recurrence" || e.what == "eventual_recurrence") {
    const auto& seq = ctx.source_seq(kv_or("source", "brute"), scratch);
    LinearRecurrence rec = e.what == "minimal_recurrence" ? minimal_recurrence(seq)
                                                          : eventual_recurrence(seq);
    unsigned order = std::stoul(kv("order"));
    auto coeffs = rat_list(kv("coeffs"));
    unsigned preperiod = std::stoul(kv_or("preperiod", "0"));
    r.expected = "order=" + std::to_string(order) + " preperiod=" +
                 std::to_string(preperiod) + " coeffs=" + seq_str(coeffs);
    r.actual = "order=" + std::to_string(rec.order) + " preperiod=" +
               std::to_string(rec.preperiod) + " coeffs=" + seq_str(rec.coeffs);
    r.pass = rec.order == order && rec.preperiod == preperiod && rec.coeffs == coeffs;
  } else if (e.what == "relation") {
    // a (possibly non-minimal) relation that must annihilate the sequence
    const auto& seq = ctx.source_seq(kv_or("source", "brute"), scratch);
    LinearRecurrence rec;
    rec.order = std::stoul(kv("order"));
    rec.coeffs = rat_list(kv("coeffs"));
    rec.preperiod = std::stoul(kv_or("preperiod", "0"));
    r.expected = "relation holds on " + std::to_string(seq.size()) + " terms";
    bool ok = rec.fits(seq);
    r.actual = ok ? r.expected : "relation fails";
    r.pass = ok;
  } else if (e.what == "gf") {
    const auto& seq = ctx.source_seq(kv_or("source", "brute"), scratch);
    auto rec = eventual_recurrence(seq);
    auto gf = generating_function(seq, rec);
    GeneratingFunction expect{rat_list(kv("num")), rat_list(kv("den"))};
    r.expected = expect.str();
    r.actual = gf.str();
    r.pass = gf.equals(expect);
    // re-expansion must reproduce the sequence
    if (r.pass && gf.taylor(static_cast<unsigned>(seq.size())) != seq) {
      r.pass = false;
      r.actual += " (re-expansion mismatch)";
    }
  } else if (e.what == "cinf") {
    const auto& seq = ctx.source_seq(kv_or("source", "brute"), scratch);
    auto rec = eventual_recurrence(seq);
    QuadraticInteger q = asymptotic_rate(rec, seq);
    QuadraticInteger expect;
    if (e.kv.count("rational")) {
      expect = QuadraticInteger::from_rational(parse_rat(kv("rational")));
    } else {
      auto uv = rat_list(kv("quad"));
      expect = QuadraticInteger::from_quadratic(rat_num(uv[0]), rat_num(uv[1]));
    }
    r.expected = expect.str();
    r.actual = q.str();
    r.pass = q == expect && q.is_integral();
  } else if (e.what == "classification") {
    auto M = as_monomial(ctx.germ);
    if (!M) throw std::runtime_error("classification: germ is not monomial");
    auto rep = classify_monomial(*M);
    bool ok = rep.situation == std::stoi(kv("situation"));
    if (e.kv.count("end"))
      ok = ok && rep.eigen_kind == ClassificationReport::Eigen::CurveEnd &&
           (kv("end") == "x" ? rep.end_axis == Axis::X : rep.end_axis == Axis::Y);
    if (e.kv.count("weights")) {
      auto w = rat_list(kv("weights"));
      ok = ok && rep.eigen_kind == ClassificationReport::Eigen::Divisorial &&
           rep.weight_s == w[0] && rep.weight_t == w[1];
    }
    if (e.kv.count("tau")) {
      auto uv = rat_list(kv("tau"));
      ok = ok && rep.eigen_kind == ClassificationReport::Eigen::Irrational &&
           Rat(rep.tau_u) == uv[0] && Rat(rep.tau_v) == uv[1] &&
           rep.weights_swapped == (kv_or("swapped", "0") == "1");
    }
    if (e.kv.count("iterate"))
      ok = ok && rep.iterate == std::stoul(kv("iterate"));
    if (e.kv.count("cinf_rational"))
      ok = ok && rep.c_infinity == QuadraticInteger::from_rational(
                                       parse_rat(kv("cinf_rational")));
    if (e.kv.count("cinf_quad")) {
      auto uv = rat_list(kv("cinf_quad"));
      ok = ok && rep.c_infinity ==
                     QuadraticInteger::from_quadratic(rat_num(uv[0]), rat_num(uv[1]));
    }
    r.expected = "situation " + kv("situation");
    r.actual = rep.describe();
    r.pass = ok;
  } else if (e.what == "tangent") {
    Axis dep = kv_or("dep", "y") == "y" ? Axis::Y : Axis::X;
    unsigned k = std::stoul(kv("k"));
    auto tm = tangent_map(ctx.germ, dep, k);
    RatFunc expect(parse_theta_poly(kv("num")), parse_theta_poly(kv("den")));
    r.expected = expect.str();
    r.actual = tm.map.str();
    r.pass = tm.map == expect && tm.k_img == std::stoul(kv_or("kimg", kv("k")));
  } else if (e.what == "tangent_order") {
    Axis dep = kv_or("dep", "y") == "y" ? Axis::Y : Axis::X;
    unsigned k = std::stoul(kv("k"));
    unsigned m = std::stoul(kv("m"));
    auto tm = tangent_map(ctx.germ, dep, k);
    RatFunc it = RatFunc::theta();
    bool ok = true;
    for (unsigned i = 1; i <= m; ++i) {
      it = tm.map.compose(it);
      if (i < m && it.is_identity()) ok = false;
    }
    ok = ok && it.is_identity();
    r.expected = "R has exact order " + std::to_string(m);
    r.actual = ok ? r.expected : "order differs";
    r.pass = ok;
  } else if (e.what == "orbit_avoids") {
    Axis dep = kv_or("dep", "y") == "y" ? Axis::Y : Axis::X;
    unsigned k = std::stoul(kv("k"));
    unsigned nn = std::stoul(kv("n"));
    auto tm = tangent_map(ctx.germ, dep, k);
    std::vector<ProjPoint> avoid;
    for (auto& part : rat_list(kv("avoid_finite"))) avoid.push_back(ProjPoint::finite(Cyclo(part)));
    if (kv_or("avoid_inf", "1") == "1") avoid.push_back(ProjPoint::infinity());
    ProjPoint p = ProjPoint::infinity();
    bool ok = true;
    for (unsigned i = 1; i <= nn && ok; ++i) {
      p = tm.map.eval(p);
      for (auto& a : avoid)
        if (p == a) ok = false;
    }
    r.expected = "orbit of infinity avoids the excluded directions for n <= " +
                 std::to_string(nn);
    r.actual = ok ? r.expected : "orbit hits an excluded direction";
    r.pass = ok;
  } else if (e.what == "no_integral_fit") {
    unsigned maxr = std::stoul(kv("max_order"));
    if (!ctx.brute) throw std::runtime_error("no brute sequence");
    auto seq = ctx.brute->certified_values();
    bool ok = true;
    for (unsigned rr = 1; rr <= maxr; ++rr)
      if (fits_order_exactly(seq, rr) == FitAnswer::Integral) ok = false;
    r.expected =
        "no integral preperiod-0 recurrence of order <= " + std::to_string(maxr);
    r.actual = ok ? r.expected : "an integral recurrence fits";
    r.pass = ok;
  } else if (e.what == "model_matches_brute") {
    if (!ctx.brute || ctx.model_rates.empty())
      throw std::runtime_error("model_matches_brute: missing sequences");
    auto certified = ctx.brute->certified_values();
    size_t m = std::min(certified.size(), ctx.model_rates.size());
    size_t want = std::stoul(kv_or("n", std::to_string(m)));
    bool ok = m >= want;
    for (size_t i = 0; i < std::min(m, want); ++i)
      if (certified[i] != ctx.model_rates[i]) ok = false;
    r.expected = "model orbit matches the first " + std::to_string(want) +
                 " brute-force rates";
    r.actual = ok ? r.expected
                  : "mismatch (brute=" + seq_str(certified) + " model prefix=" +
                        seq_str(std::vector<Rat>(
                            ctx.model_rates.begin(),
                            ctx.model_rates.begin() + std::min(m, want))) + ")";
    r.pass = ok;
  } else {
    throw std::runtime_error("unknown expectation " + e.what);
  }
  out.push_back(std::move(r));
}

}  // namespace

CaseResult CorpusCase::run(const std::string& corpus_dir) const {
  CaseResult result;
  result.id = id;
  auto t0 = std::chrono::steady_clock::now();
  try {
    Germ g = parse_germ(germ_text);
    if (truncate)
      g = Germ(g.f1().with_certified_truncation(*truncate),
               g.f2().with_certified_truncation(*truncate));
    Valuation seed = parse_valuation(seed_text);
    Ctx ctx{std::move(g), std::move(seed), std::nullopt, std::nullopt, {}};
    if (n > 0) ctx.brute = rate_sequence(ctx.germ, ctx.seed, n, degree_cap);
    if (model_file) {
      std::ifstream in(corpus_dir + "/" + *model_file);
      if (!in) throw std::runtime_error("cannot open model file " + *model_file);
      std::stringstream ss;
      ss << in.rdbuf();
      ctx.model = FiniteTreeModel::parse(ss.str());
      validate_model_against_germ(*ctx.model, ctx.germ);
      auto orbit = ctx.model->iterate(ctx.model->locate(ctx.seed), model_n);
      ctx.model_rates = orbit.rates;
      CheckResult mv;
      mv.name = "model_validates";
      mv.pass = true;
      mv.expected = mv.actual = "structural + sampled germ checks pass";
      result.checks.push_back(mv);
    }
    for (auto& e : expects) run_expect(e, ctx, result.checks);
  } catch (const std::exception& ex) {
    CheckResult r;
    r.name = "case";
    r.pass = false;
    r.expected = "no exception";
    r.actual = std::string("exception: ") + ex.what();
    result.checks.push_back(std::move(r));
  }
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace germdyn
