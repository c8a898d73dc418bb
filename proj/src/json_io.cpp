#include "affkm/json_io.hpp"

#include "affkm/errors.hpp"

namespace affkm {

Json rat_to_json(const Rat& q) { return rat_str(q); }

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
  if (!j.is_string()) throw precondition_error("expected a rational as \"p/q\"");
  return rat_parse(j.get<std::string>());
}

Json finite_weight_to_json(const FiniteWeight& w) {
  Json a = Json::array();
  for (const Rat& c : w.coords) a.push_back(rat_to_json(c));
  return a;
}

FiniteWeight finite_weight_from_json(const Json& j) {
  if (!j.is_array()) throw precondition_error("expected a coordinate array");
  FiniteWeight w;
  for (const Json& c : j) w.coords.push_back(rat_from_json(c));
  return w;
}

Json weight_to_json(const AffineWeight& w) {
  Json j;
  j["finite"] = finite_weight_to_json(w.finite);
  j["d"] = rat_to_json(w.d);
  j["level"] = rat_to_json(w.level);
  return j;
}

AffineWeight weight_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("finite") || !j.contains("d") || !j.contains("level"))
    throw precondition_error("weight object needs fields finite/d/level");
  return AffineWeight{finite_weight_from_json(j.at("finite")), rat_from_json(j.at("d")),
                      rat_from_json(j.at("level"))};
}

Json support_to_json(const WeightSupport& s) {
  Json j;
  j["format"] = kFormatVersion;
  j["depth"] = s.depth;
  Json entries = Json::array();
  for (const auto& [w, m] : s.entries) {
    Json e;
    e["weight"] = weight_to_json(w);
    e["mult"] = m;
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

WeightSupport support_from_json(const Json& j) {
  WeightSupport s;
  s.depth = j.at("depth").get<long>();
  for (const Json& e : j.at("entries"))
    s.entries.emplace(weight_from_json(e.at("weight")), e.at("mult").get<long>());
  return s;
}

Json candidate_to_json(const std::string& spec_name, const SupportCandidate& s) {
  Json j;
  j["format"] = kFormatVersion;
  j["spec"] = spec_name;
  j["level"] = rat_to_json(s.level);
  j["depth"] = s.depth;
  Json ws = Json::array();
  for (const AffineWeight& w : s.weights) ws.push_back(weight_to_json(w));
  j["weights"] = std::move(ws);
  return j;
}

SupportCandidate candidate_from_json(const Json& j, std::string* spec_name) {
  if (!j.is_object()) throw precondition_error("candidate file must hold a JSON object");
  if (spec_name) {
    if (!j.contains("spec") || !j.at("spec").is_string())
      throw precondition_error("candidate file needs a \"spec\" string");
    *spec_name = j.at("spec").get<std::string>();
  }
  SupportCandidate s;
  s.level = rat_from_json(j.at("level"));
  s.depth = j.at("depth").get<long>();
  for (const Json& w : j.at("weights")) s.weights.insert(weight_from_json(w));
  return s;
}

const char* trace_rule_name(TraceRule r) {
  switch (r) {
    case TraceRule::locate_lowest: return "locate-lowest";
    case TraceRule::delta_set: return "delta-set";
    case TraceRule::string_step: return "string-step";
    case TraceRule::drop_imaginary: return "drop-imaginary";
    case TraceRule::drop_root: return "drop-root";
    case TraceRule::raise_root: return "raise-root";
    case TraceRule::heisenberg: return "heisenberg-ladder";
  }
  return "?";
}

const char* trace_kind_name(TraceKind k) {
  switch (k) {
    case TraceKind::located: return "located";
    case TraceKind::fact: return "fact";
    case TraceKind::forbidden: return "forbidden";
    case TraceKind::contradiction: return "contradiction";
    case TraceKind::consistent: return "consistent-at-depth";
  }
  return "?";
}

Json trace_step_to_json(const TraceStep& s) {
  Json j;
  j["rule"] = trace_rule_name(s.rule);
  j["kind"] = trace_kind_name(s.kind);
  j["subject"] = weight_to_json(s.subject);
  if (s.gamma) {
    Json g;
    Json coords = Json::array();
    for (long c : s.gamma->alpha.coords) coords.push_back(c);
    g["alpha"] = std::move(coords);
    g["n"] = s.gamma->n;
    j["gamma"] = std::move(g);
  }
  if (!s.params.empty()) {
    Json p;
    for (const auto& [k, v] : s.params) p[k] = v;
    j["params"] = std::move(p);
  }
  j["note"] = s.note;
  return j;
}

Json trace_to_json(const std::string& spec_name, const ObstructionTrace& t) {
  Json j;
  j["format"] = kFormatVersion;
  j["spec"] = spec_name;
  j["outcome"] = t.contradiction ? "contradiction" : "consistent-at-depth";
  Json steps = Json::array();
  for (const TraceStep& s : t.steps) steps.push_back(trace_step_to_json(s));
  j["steps"] = std::move(steps);
  return j;
}

Json minimal_report_to_json(const RootSystem& rs, const MinimalRepReport& r) {
  Json j;
  j["format"] = kFormatVersion;
  j["type"] = rs.type().str();
  j["coset_count"] = rs.coset_index();
  j["all_in_01"] = r.all_in_01;
  Json rows = Json::array();
  for (const MinimalRepWitness& w : r.witnesses) {
    Json row;
    row["rep"] = finite_weight_to_json(w.rep);
    row["beta_covalue"] = rat_to_json(w.beta_covalue);
    rows.push_back(std::move(row));
  }
  j["cosets"] = std::move(rows);
  return j;
}

Json pair_report_to_json(const PairAuditReport& r) {
  Json j;
  j["format"] = kFormatVersion;
  j["all_nonzero"] = r.all_nonzero;
  j["all_positive"] = r.all_positive;
  Json rows = Json::array();
  for (const PairAuditRow& row : r.rows) {
    Json e;
    e["lambda"] = weight_to_json(row.lambda);
    e["mu"] = weight_to_json(row.mu);
    Json beta = Json::array();
    for (long c : row.beta) beta.push_back(c);
    e["beta"] = std::move(beta);
    e["value"] = rat_to_json(row.value);
    rows.push_back(std::move(e));
  }
  j["pairs"] = std::move(rows);
  return j;
}

Json mu0_to_json(const Mu0Result& r) {
  Json j;
  j["format"] = kFormatVersion;
  j["mu0"] = weight_to_json(r.mu0);
  j["s"] = rat_to_json(r.s);
  j["member"] = r.member;
  return j;
}

} // namespace affkm
