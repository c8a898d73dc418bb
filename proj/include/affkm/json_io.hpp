#pragma once

#include <json.hpp>

#include "affkm/casimir.hpp"
#include "affkm/super.hpp"

namespace affkm {

// Field order is part of the emitted format, hence ordered_json throughout.
using Json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "1";

Json rat_to_json(const Rat& q);           // "p/q" string
Rat rat_from_json(const Json& j);

Json finite_weight_to_json(const FiniteWeight& w);
FiniteWeight finite_weight_from_json(const Json& j);

/// {"finite": [...], "d": "...", "level": "..."}
Json weight_to_json(const AffineWeight& w);
AffineWeight weight_from_json(const Json& j);

Json support_to_json(const WeightSupport& s);
WeightSupport support_from_json(const Json& j);

/// {"format","spec","level","depth","weights":[...]}
Json candidate_to_json(const std::string& spec_name, const SupportCandidate& s);
SupportCandidate candidate_from_json(const Json& j, std::string* spec_name);

const char* trace_rule_name(TraceRule r);
const char* trace_kind_name(TraceKind k);
Json trace_step_to_json(const TraceStep& s);
Json trace_to_json(const std::string& spec_name, const ObstructionTrace& t);

Json minimal_report_to_json(const RootSystem& rs, const MinimalRepReport& r);
Json pair_report_to_json(const PairAuditReport& r);
Json mu0_to_json(const Mu0Result& r);

} // namespace affkm
