#pragma once

#include <optional>

#include "germdyn/dynamics.hpp"
#include "germdyn/recurrence.hpp"
#include "germdyn/tangent.hpp"
#include "germdyn/tree_model.hpp"

namespace germdyn {

// One expectation of a corpus case with its provenance tag (paper quote or the
// oracle that derived it).
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string expected, actual;
  std::string provenance;
};

struct CaseResult {
  std::string id;
  std::vector<CheckResult> checks;
  double seconds = 0;
  bool pass() const {
    for (auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
};

struct CorpusCase {
  std::string id;
  std::string germ_text;
  std::string seed_text = "ord0";
  unsigned n = 6;
  unsigned degree_cap = 4096;
  std::optional<unsigned> truncate;          // mark the germ TruncatedAt(D)
  std::optional<std::string> model_file;     // bundled FiniteTreeModel
  unsigned model_n = 0;                      // orbit length on the model
  // directive lines: (directive, arguments, provenance)
  struct Expect {
    std::string what;
    std::map<std::string, std::string> kv;
    std::string provenance;
  };
  std::vector<Expect> expects;

  CaseResult run(const std::string& corpus_dir) const;
};

// Parse every case in a corpus file (text format; see data/corpus).
std::vector<CorpusCase> parse_corpus_file(const std::string& text);
// Load all *.case files from the directory (sorted by id).
std::vector<CorpusCase> load_corpus_dir(const std::string& dir);
// Default directory: $GERMDYN_CORPUS_DIR or ./data/corpus.
std::string default_corpus_dir();

// Exact sampled verification of a model's rate and skewness data against the
// germ (three points per edge pin the affine and Moebius forms).
void validate_model_against_germ(const FiniteTreeModel& model, const Germ& f);

Valuation edge_valuation(const ModelEdge& e, const Rat& alpha);

}  // namespace germdyn
