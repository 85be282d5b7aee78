#include "germdyn/report.hpp"

#include <json.hpp>
#include <sstream>

namespace germdyn {

using nlohmann::json;

namespace {

json rates_json(const RateSequenceResult& rates) {
  json seq = json::array();
  for (size_t k = 0; k < rates.entries.size(); ++k) {
    seq.push_back({{"n", k + 1},
                   {"value", rat_str(rates.entries[k].value)},
                   {"certified", rates.entries[k].certified}});
  }
  return seq;
}

json rec_json(const LinearRecurrence& rec, const GeneratingFunction& gf) {
  json coeffs = json::array();
  for (auto& c : rec.coeffs) coeffs.push_back(rat_str(c));
  json cp = json::array();
  for (auto& c : rec.characteristic_polynomial()) cp.push_back(rat_str(c));
  return {{"order", rec.order},
          {"preperiod", rec.preperiod},
          {"coeffs", coeffs},
          {"integral", rec.integral},
          {"charpoly", cp},
          {"gf", gf.str()}};
}

}  // namespace

std::string render_corpus_json(const std::vector<CaseResult>& results) {
  json out;
  out["schema"] = kReportSchemaVersion;
  out["cases"] = json::array();
  bool all = true;
  for (auto& r : results) {
    json c;
    c["case"] = r.id;
    c["pass"] = r.pass();
    c["seconds"] = r.seconds;
    c["checks"] = json::array();
    for (auto& ch : r.checks) {
      c["checks"].push_back({{"name", ch.name},
                             {"pass", ch.pass},
                             {"expected", ch.expected},
                             {"actual", ch.actual},
                             {"provenance", ch.provenance}});
      all = all && ch.pass;
    }
    out["cases"].push_back(std::move(c));
  }
  out["pass"] = all;
  return out.dump(2);
}

std::string render_corpus_table(const std::vector<CaseResult>& results) {
  std::ostringstream os;
  for (auto& r : results) {
    os << (r.pass() ? "PASS" : "FAIL") << "  " << r.id << "  ("
       << r.checks.size() << " checks, " << r.seconds << "s)\n";
    for (auto& ch : r.checks) {
      if (ch.pass) continue;
      os << "      check " << ch.name << " failed\n";
      os << "        expected: " << ch.expected << "\n";
      os << "        actual:   " << ch.actual << "\n";
      if (!ch.provenance.empty()) os << "        provenance: " << ch.provenance << "\n";
    }
  }
  return os.str();
}

std::string render_rates_json(const std::string& germ, const std::string& seed,
                              const RateSequenceResult& rates, double seconds) {
  json out;
  out["schema"] = kReportSchemaVersion;
  out["germ"] = germ;
  out["seed"] = seed;
  out["sequence"] = rates_json(rates);
  out["degree_used"] = rates.degree_used;
  out["capped"] = rates.capped;
  out["timings"] = {{"seconds", seconds}};
  return out.dump(2);
}

std::string render_rates_text(const RateSequenceResult& rates) {
  std::ostringstream os;
  for (size_t k = 0; k < rates.entries.size(); ++k) {
    os << (k ? " " : "") << rat_str(rates.entries[k].value);
    if (!rates.entries[k].certified) os << "?";
  }
  return os.str();
}

std::string render_recurrence_json(const std::string& germ, const std::string& seed,
                                   const RateSequenceResult& rates,
                                   const LinearRecurrence& rec,
                                   const GeneratingFunction& gf,
                                   const std::string& cinf, double seconds) {
  json out;
  out["schema"] = kReportSchemaVersion;
  out["germ"] = germ;
  out["seed"] = seed;
  out["sequence"] = rates_json(rates);
  out["recurrence"] = rec_json(rec, gf);
  out["c_infinity"] = cinf;
  out["timings"] = {{"seconds", seconds}};
  return out.dump(2);
}

}  // namespace germdyn
