#pragma once

#include <string>

#include "json.hpp"
#include "qspin/suite.hpp"
#include "qspin/witt.hpp"

namespace qspin {

// Insertion-ordered JSON keeps reports byte-stable across identical runs.
using json = nlohmann::ordered_json;

json ctx_to_json(const RingCtx& ctx);
RingCtx ctx_from_json(const json& j);

// Term lists sorted leading-first: [{"coeff": "p/q", "exps": [..]}, ...]
json elem_to_json(const RingElem& e);
RingElem elem_from_json(const json& j, const RingCtx& ctx);

json mat_to_json(const RingMat& m);
RingMat mat_from_json(const json& j);

json vector_pair_to_json(const RingCtx& ctx, const std::vector<RingElem>& a,
                         const std::vector<RingElem>& b);
UnitVector unit_vector_from_json(const json& j);

json spin_to_json(const SpinElem& s);

// Accepts {"g": matrix} for a full even element or {"h": matrix} for the
// diag(h, (h*)^{-1}) candidate.
CliffordElem clifford_candidate_from_json(const json& j);

json suite_report_to_json(const std::vector<SuiteItem>& items,
                          const json& config_echo);

struct WitnessOutcome {
  bool ok = false;
  std::string reason;
  json report;
};

// Dispatch on {"type": "congruence" | "factorization" | "orbit"}.
WitnessOutcome run_witness_file(const json& file);

}  // namespace qspin
