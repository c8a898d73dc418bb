#include "affkm/report.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include "affkm/errors.hpp"

namespace affkm {

namespace {

bool starts_with_at(const std::string& s, std::size_t i, const char* tok) {
  const std::size_t n = std::char_traits<char>::length(tok);
  return s.compare(i, n, tok) == 0;
}

void skip_ws(const std::string& s, std::size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

} // namespace

AffineWeight parse_weight_expr(const RootSystem& rs, const std::string& expr) {
  AffineWeight acc = zero_affine(rs);
  std::size_t i = 0;
  skip_ws(expr, i);
  if (i >= expr.size()) throw parse_error("empty weight expression", 0);

  bool first = true;
  while (true) {
    skip_ws(expr, i);
    if (i >= expr.size()) break;
    Rat sign(1);
    if (expr[i] == '+' || expr[i] == '-') {
      if (expr[i] == '-') sign = -1;
      ++i;
      skip_ws(expr, i);
    } else if (!first) {
      throw parse_error("expected '+' or '-' between terms", i);
    }
    first = false;

    // Optional rational coefficient.
    Rat coef(1);
    bool have_coef = false;
    if (i < expr.size() && std::isdigit(static_cast<unsigned char>(expr[i]))) {
      const std::size_t start = i;
      while (i < expr.size() &&
             (std::isdigit(static_cast<unsigned char>(expr[i])) || expr[i] == '/'))
        ++i;
      try {
        coef = rat_parse(expr.substr(start, i - start));
      } catch (const std::invalid_argument&) {
        throw parse_error("bad coefficient", start);
      }
      have_coef = true;
      skip_ws(expr, i);
      if (i < expr.size() && expr[i] == '*') {
        ++i;
        skip_ws(expr, i);
      }
    }

    // Symbol: w<k> | omega<k> | L0 | Lambda0 | d | delta, unicode accepted.
    AffineWeight term = zero_affine(rs);
    if (i >= expr.size()) {
      if (have_coef && coef == 0) break; // bare "0"
      throw parse_error("expected a weight symbol", i);
    }
    if (starts_with_at(expr, i, "\xCF\x89") || expr[i] == 'w') { // omega
      i += (expr[i] == 'w') ? 1 : 2;
      if (i >= expr.size() || !std::isdigit(static_cast<unsigned char>(expr[i])))
        throw parse_error("expected a fundamental-weight index", i);
      long k = 0;
      while (i < expr.size() && std::isdigit(static_cast<unsigned char>(expr[i])))
        k = k * 10 + (expr[i++] - '0');
      if (k < 1 || k > rs.rank()) throw parse_error("fundamental-weight index out of range", i - 1);
      term = lift_finite(rs.fundamental_weight(static_cast<int>(k - 1)));
    } else if (starts_with_at(expr, i, "\xCE\x9B") || expr[i] == 'L') { // Lambda
      i += (expr[i] == 'L') ? 1 : 2;
      if (i >= expr.size() || expr[i] != '0')
        throw parse_error("only Lambda0 is available; finite parts use w<k>", i);
      ++i;
      term = lambda0_weight(rs);
    } else if (starts_with_at(expr, i, "\xCE\xB4") || expr[i] == 'd') { // delta
      i += (expr[i] == 'd') ? 1 : 2;
      term = delta_weight(rs);
    } else if (have_coef && coef == 0) {
      throw parse_error("unexpected characters after zero term", i);
    } else {
      throw parse_error("unknown weight symbol", i);
    }

    const Rat c = sign * coef;
    acc.finite.coords = qvec_add(acc.finite.coords, qvec_scale(c, term.finite.coords));
    acc.d += c * term.d;
    acc.level += c * term.level;
  }
  return acc;
}

namespace {

std::string weight_str(const AffineWeight& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.finite.coords.size(); ++i) {
    if (i) s += ",";
    s += rat_str(w.finite.coords[i]);
  }
  s += ")";
  if (w.d != 0) s += (w.d > 0 ? "+" : "") + rat_str(w.d) + "d";
  if (w.level != 0) s += (w.level > 0 ? "+" : "") + rat_str(w.level) + "L0";
  return s;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::vector<SimpleType> finite_types_up_to(long max_rank) {
  std::vector<SimpleType> out;
  for (int r = 1; r <= max_rank; ++r) out.push_back({Series::A, r});
  for (int r = 2; r <= max_rank; ++r) out.push_back({Series::B, r});
  for (int r = 2; r <= max_rank; ++r) out.push_back({Series::C, r});
  for (int r = 3; r <= max_rank; ++r) out.push_back({Series::D, r});
  for (int r = 6; r <= max_rank && r <= 8; ++r) out.push_back({Series::E, r});
  if (max_rank >= 4) out.push_back({Series::F, 4});
  if (max_rank >= 2) out.push_back({Series::G, 2});
  return out;
}

/// Dominant finite weights with coordinate sum <= height_cap.
std::vector<FiniteWeight> dominant_weights_up_to(const RootSystem& rs, long height_cap) {
  std::vector<FiniteWeight> out;
  std::vector<long> c(rs.rank(), 0);
  auto rec = [&](auto&& self, int idx, long rest) -> void {
    if (idx == rs.rank()) {
      out.push_back(FiniteWeight{QVec(c.begin(), c.end())});
      return;
    }
    for (long v = 0; v <= rest; ++v) {
      c[idx] = v;
      self(self, idx + 1, rest - v);
    }
    c[idx] = 0;
  };
  rec(rec, 0, height_cap);
  return out;
}

CheckResult check_minimal_reps(long max_rank) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  r.id = "minimal-reps";
  r.params = "all finite types, rank <= " + std::to_string(max_rank);
  r.pass = true;
  for (const SimpleType& t : finite_types_up_to(max_rank)) {
    RootSystem rs(t, +1);
    MinimalRepReport rep = verify_minimal_reps(rs);
    r.pass = r.pass && rep.all_in_01;
    r.witnesses += static_cast<long>(rep.witnesses.size());
  }
  r.wall_ms = ms_since(t0);
  return r;
}

CheckResult check_mu0(long max_rank) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  r.id = "mu0-membership";
  r.params = "A1 A2 B2 C2 (rank <= " + std::to_string(max_rank) +
             "), levels 1..3, heights <= 4, drops 0..2";
  r.pass = true;
  const std::vector<SimpleType> types{{Series::A, 1}, {Series::A, 2}, {Series::B, 2},
                                      {Series::C, 2}};
  for (const SimpleType& t : types) {
    if (t.rank > max_rank) continue;
    RootSystem rs(t, +1);
    for (long k = 1; k <= 3; ++k)
      for (const FiniteWeight& bar : dominant_weights_up_to(rs, 4)) {
        const AffineWeight lambda{bar, Rat(0), Rat(k)};
        if (!is_dominant(rs, lambda)) continue;
        for (long drop = 0; drop <= 2; ++drop) {
          const Mu0Result res = construct_mu0(rs, lambda, Rat(-drop));
          r.pass = r.pass && res.member;
          ++r.witnesses;
        }
      }
  }
  r.wall_ms = ms_since(t0);
  return r;
}

CheckResult check_pair_audit(long max_rank, long depth, Exec exec) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  r.id = "pair-audit";
  r.params = "A1 A2 (rank <= " + std::to_string(max_rank) + "), L0 and L0+w1, depth " +
             std::to_string(depth);
  r.pass = true;
  const std::vector<SimpleType> types{{Series::A, 1}, {Series::A, 2}};
  for (const SimpleType& t : types) {
    if (t.rank > max_rank) continue;
    RootSystem rs(t, +1);
    std::vector<AffineWeight> tops{lambda0_weight(rs)};
    tops.push_back(lambda0_weight(rs) + lift_finite(rs.fundamental_weight(0)));
    for (const AffineWeight& top : tops) {
      if (!is_dominant(rs, top)) continue;
      WeightSupport support = enumerate_support(rs, top, depth, exec);
      PairAuditReport rep = primitive_pair_audit(rs, support, top, exec);
      r.pass = r.pass && rep.all_nonzero && rep.all_positive;
      r.witnesses += static_cast<long>(rep.rows.size());
    }
  }
  r.wall_ms = ms_since(t0);
  return r;
}

CheckResult check_delta_finiteness() {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  r.id = "delta-finiteness";
  r.params = "B(1,1) B(1,2) D(2,1;1/2), level 1, pairing values -5..0";
  r.pass = true;
  for (const char* name : {"B(1,1)", "B(1,2)", "D(2,1;1/2)"}) {
    ResolvedSuper rsv = normalize_form(catalog(name));
    const ResolvedComponent& c2 = rsv.components[1];
    for (long v = -5; v <= 0; ++v) {
      QVec coords(rsv.finite_rank, Rat(0));
      for (int j = 0; j < c2.rs.rank(); ++j) coords[c2.offset + j] = v;
      const AffineWeight lambda{FiniteWeight{coords}, Rat(0), Rat(1)};
      const auto ds = delta_lambda(rsv, lambda);
      // Closed-form count: sum over the roots of the second component of
      // floor(-value * |norm| / (2k)), clamped at zero.
      long expected = 0;
      const AffineWeight l2 = slice_weight(c2, lambda);
      for (const FiniteRoot& a : c2.rs.roots()) {
        const Rat val = c2.rs.eval_coroot(l2.finite, a);
        const Rat bound = -val * (-c2.rs.root_norm(a)) / (2 * lambda.level);
        if (bound > 0) expected += static_cast<long>(rat_floor(bound).get_num().get_si());
      }
      r.pass = r.pass && static_cast<long>(ds.size()) == expected;
      ++r.witnesses;
    }
  }
  r.wall_ms = ms_since(t0);
  return r;
}

Json report_to_json(const RunConfig& config, const VerificationReport& vr) {
  Json j;
  j["format"] = kFormatVersion;
  j["command"] = "verify-all";
  j["max_rank"] = config.max_rank;
  j["depth"] = config.depth;
  Json rows = Json::array();
  for (const CheckResult& c : vr.checks) {
    Json e;
    e["id"] = c.id;
    e["params"] = c.params;
    e["pass"] = c.pass;
    e["witnesses"] = c.witnesses;
    if (config.with_timing) e["wall_ms"] = c.wall_ms;
    rows.push_back(std::move(e));
  }
  j["checks"] = std::move(rows);
  j["all_pass"] = vr.all_pass();
  return j;
}

std::string report_table(const VerificationReport& vr) {
  std::ostringstream os;
  os << std::left << std::setw(20) << "check" << std::setw(8) << "pass" << std::setw(10)
     << "cases" << std::setw(12) << "wall_ms"
     << "params\n";
  for (const CheckResult& c : vr.checks)
    os << std::left << std::setw(20) << c.id << std::setw(8) << (c.pass ? "yes" : "NO")
       << std::setw(10) << c.witnesses << std::setw(12) << std::fixed << std::setprecision(1)
       << c.wall_ms << c.params << "\n";
  os << (vr.all_pass() ? "all checks passed\n" : "SOME CHECKS FAILED\n");
  return os.str();
}

std::string minimal_table(const RootSystem& rs, const MinimalRepReport& rep) {
  std::ostringstream os;
  os << rs.type().str() << ": " << rs.coset_index() << " coset(s)\n";
  os << std::left << std::setw(28) << "minimal representative"
     << "value on highest coroot\n";
  for (const MinimalRepWitness& w : rep.witnesses) {
    std::string rep_str = "(";
    for (std::size_t i = 0; i < w.rep.coords.size(); ++i) {
      if (i) rep_str += ",";
      rep_str += rat_str(w.rep.coords[i]);
    }
    rep_str += ")";
    os << std::left << std::setw(28) << rep_str << rat_str(w.beta_covalue) << "\n";
  }
  return os.str();
}

AffineWeight resolve_highest(const RootSystem& rs, const RunConfig& config) {
  if (config.highest.empty()) {
    AffineWeight w = lambda0_weight(rs);
    w.level = config.level;
    return w;
  }
  AffineWeight w = parse_weight_expr(rs, config.highest);
  if (w.level == 0) {
    w.level = config.level;
  } else if (w.level != config.level) {
    throw precondition_error("--highest carries a level that contradicts --level");
  }
  return w;
}

} // namespace

RunOutput run(const RunConfig& config) {
  RunOutput out;
  switch (config.command) {
    case RunConfig::Command::minimal: {
      RootSystem rs(parse_simple_type(config.algebra), +1);
      MinimalRepReport rep = verify_minimal_reps(rs);
      out.artifact = minimal_report_to_json(rs, rep);
      out.rendered = config.emit == RunConfig::Emit::table ? minimal_table(rs, rep)
                                                           : out.artifact.dump(2) + "\n";
      out.exit_code = rep.all_in_01 ? 0 : 1;
      break;
    }
    case RunConfig::Command::weights: {
      RootSystem rs(parse_simple_type(config.algebra), +1);
      const AffineWeight top = resolve_highest(rs, config);
      WeightSupport support = enumerate_support(rs, top, config.depth, config.exec);
      Json j = support_to_json(support);
      j["type"] = rs.type().str();
      j["highest"] = weight_to_json(top);
      out.artifact = std::move(j);
      if (config.emit == RunConfig::Emit::table) {
        std::ostringstream os;
        os << rs.type().str() << " highest " << weight_str(top) << " depth " << config.depth
           << ": " << support.size() << " weights\n";
        for (const auto& [w, m] : support.entries)
          os << "  " << std::left << std::setw(30) << weight_str(w) << " x" << m << "\n";
        out.rendered = os.str();
      } else {
        out.rendered = out.artifact.dump(2) + "\n";
      }
      out.exit_code = 0;
      break;
    }
    case RunConfig::Command::mu0: {
      RootSystem rs(parse_simple_type(config.algebra), +1);
      const AffineWeight top = resolve_highest(rs, config);
      const Mu0Result res = construct_mu0(rs, top, config.s);
      out.artifact = mu0_to_json(res);
      out.rendered = config.emit == RunConfig::Emit::table
                         ? ("mu0 = " + weight_str(res.mu0) + "  member: " +
                            (res.member ? "yes" : "NO") + "\n")
                         : out.artifact.dump(2) + "\n";
      out.exit_code = res.member ? 0 : 1;
      break;
    }
    case RunConfig::Command::casimir_audit: {
      RootSystem rs(parse_simple_type(config.algebra), +1);
      const AffineWeight top = resolve_highest(rs, config);
      WeightSupport support = enumerate_support(rs, top, config.depth, config.exec);
      PairAuditReport rep = primitive_pair_audit(rs, support, top, config.exec);
      out.artifact = pair_report_to_json(rep);
      if (config.emit == RunConfig::Emit::table) {
        std::ostringstream os;
        os << rep.rows.size() << " dominant pairs; all nonzero: "
           << (rep.all_nonzero ? "yes" : "NO") << "\n";
        for (const PairAuditRow& row : rep.rows)
          os << "  " << std::left << std::setw(26) << weight_str(row.lambda) << std::setw(26)
             << weight_str(row.mu) << rat_str(row.value) << "\n";
        out.rendered = os.str();
      } else {
        out.rendered = out.artifact.dump(2) + "\n";
      }
      out.exit_code = rep.all_nonzero ? 0 : 1;
      break;
    }
    case RunConfig::Command::obstruct: {
      std::ifstream in(config.support_path);
      if (!in) throw precondition_error("cannot open support file: " + config.support_path);
      Json j = Json::parse(in);
      std::string file_spec;
      SupportCandidate cand = candidate_from_json(j, &file_spec);
      std::string spec_name = config.super_spec.empty() ? file_spec : config.super_spec;
      if (!config.super_spec.empty() && !file_spec.empty() && file_spec != config.super_spec)
        throw precondition_error("support file spec \"" + file_spec +
                                 "\" does not match --spec \"" + config.super_spec + "\"");
      ResolvedSuper rsv = normalize_form(catalog(spec_name));
      ObstructionTrace trace = obstruction_run(rsv, cand);
      TraceCheck chk = check_trace(rsv, cand, trace);
      if (!chk.ok)
        throw precondition_error("internal: emitted trace failed its own checker at step " +
                                 std::to_string(chk.bad_step) + ": " + chk.reason);
      out.artifact = trace_to_json(spec_name, trace);
      if (config.emit == RunConfig::Emit::table) {
        std::ostringstream os;
        for (const TraceStep& s : trace.steps)
          os << trace_rule_name(s.rule) << " [" << trace_kind_name(s.kind) << "] "
             << weight_str(s.subject) << "  " << s.note << "\n";
        os << "outcome: " << (trace.contradiction ? "contradiction" : "consistent-at-depth")
           << "\n";
        out.rendered = os.str();
      } else {
        // One JSON object per line: the steps stream, then a closing line.
        std::ostringstream os;
        for (const TraceStep& s : trace.steps) os << trace_step_to_json(s).dump() << "\n";
        Json tail;
        tail["format"] = kFormatVersion;
        tail["spec"] = spec_name;
        tail["outcome"] = trace.contradiction ? "contradiction" : "consistent-at-depth";
        os << tail.dump() << "\n";
        out.rendered = os.str();
      }
      out.exit_code = trace.contradiction ? 0 : 2;
      break;
    }
    case RunConfig::Command::verify_all: {
      VerificationReport vr;
      vr.checks.push_back(check_minimal_reps(config.max_rank));
      vr.checks.push_back(check_mu0(config.max_rank));
      vr.checks.push_back(check_pair_audit(config.max_rank, config.depth, config.exec));
      vr.checks.push_back(check_delta_finiteness());
      out.report = vr;
      out.artifact = report_to_json(config, vr);
      out.rendered = config.emit == RunConfig::Emit::table ? report_table(vr)
                                                           : out.artifact.dump(2) + "\n";
      out.exit_code = vr.all_pass() ? 0 : 1;
      break;
    }
  }
  return out;
}

void emit_output(const RunConfig& config, const RunOutput& output) {
  std::string path = config.out_path;
  if (path.empty()) {
    if (const char* dir = std::getenv("AFFKM_OUT_DIR")) {
      std::string base;
      switch (config.command) {
        case RunConfig::Command::minimal: base = "minimal"; break;
        case RunConfig::Command::weights: base = "weights"; break;
        case RunConfig::Command::mu0: base = "mu0"; break;
        case RunConfig::Command::casimir_audit: base = "casimir-audit"; break;
        case RunConfig::Command::obstruct: base = "obstruct"; break;
        case RunConfig::Command::verify_all: base = "verify-all"; break;
      }
      path = std::string(dir) + "/" + base +
             (config.emit == RunConfig::Emit::json ? ".json" : ".txt");
    }
  }
  if (path.empty()) {
    std::fputs(output.rendered.c_str(), stdout);
    return;
  }
  std::ofstream f(path);
  if (!f) throw precondition_error("cannot write output file: " + path);
  f << output.rendered;
}

} // namespace affkm
