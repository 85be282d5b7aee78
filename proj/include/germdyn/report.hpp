#pragma once

#include "germdyn/corpus.hpp"
#include "germdyn/recurrence.hpp"

namespace germdyn {

inline constexpr const char* kReportSchemaVersion = "1";

// Machine-readable reports (stable, versioned JSON schema).
std::string render_corpus_json(const std::vector<CaseResult>& results);
std::string render_corpus_table(const std::vector<CaseResult>& results);

std::string render_rates_json(const std::string& germ, const std::string& seed,
                              const RateSequenceResult& rates, double seconds);
std::string render_rates_text(const RateSequenceResult& rates);

std::string render_recurrence_json(const std::string& germ, const std::string& seed,
                                   const RateSequenceResult& rates,
                                   const LinearRecurrence& rec,
                                   const GeneratingFunction& gf,
                                   const std::string& cinf, double seconds);

}  // namespace germdyn
