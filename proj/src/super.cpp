#include "affkm/super.hpp"

#include <algorithm>
#include <cctype>

#include "affkm/errors.hpp"

namespace affkm {

namespace {

long to_long(const Rat& q) {
  if (!is_integer(q)) throw precondition_error("internal: expected an integer rational");
  return static_cast<long>(q.get_num().get_si());
}

AffineWeight scale_weight(const Rat& c, const AffineWeight& w) {
  return {FiniteWeight{qvec_scale(c, w.finite.coords)}, c * w.d, c * w.level};
}

struct Cursor {
  const std::string& s;
  std::size_t i = 0;

  bool done() const { return i >= s.size(); }
  char peek() const { return done() ? '\0' : s[i]; }
  void expect(char c, const char* what) {
    if (done() || s[i] != c) throw parse_error(std::string("expected ") + what, i);
    ++i;
  }
  long integer() {
    if (done() || !std::isdigit(static_cast<unsigned char>(s[i])))
      throw parse_error("expected an integer", i);
    long v = 0;
    while (!done() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = v * 10 + (s[i] - '0');
      if (v > 1000) throw parse_error("parameter out of range", i);
      ++i;
    }
    return v;
  }
  Rat rational() {
    const std::size_t start = i;
    while (!done() && s[i] != ')' && s[i] != ';' && s[i] != ':') ++i;
    try {
      return rat_parse(s.substr(start, i - start));
    } catch (const std::invalid_argument&) {
      throw parse_error("expected a rational parameter", start);
    }
  }
};

} // namespace

SuperAlgebraSpec catalog(const std::string& name) {
  Cursor c{name};
  if (c.done()) throw parse_error("empty superalgebra name", 0);
  const char fam = static_cast<char>(std::toupper(static_cast<unsigned char>(c.peek())));
  ++c.i;
  c.expect('(', "'('");

  SuperAlgebraSpec spec;
  auto comp = [](Series s, int r, int sign) {
    return SuperAlgebraSpec::EvenComponent{SimpleType{s, r}, sign};
  };

  switch (fam) {
    case 'A': {
      spec.family = SuperFamily::A;
      spec.m = static_cast<int>(c.integer());
      c.expect(',', "','");
      spec.n = static_cast<int>(c.integer());
      c.expect(')', "')'");
      if (spec.m == 0 && spec.n == 0)
        throw precondition_error("A(0,0) is not in the table");
      if (spec.m >= 1) spec.even_components.push_back(comp(Series::A, spec.m, +1));
      if (spec.n >= 1)
        spec.even_components.push_back(
            comp(Series::A, spec.n, spec.even_components.empty() ? +1 : -1));
      spec.has_center_summand = true;
      spec.name = "A(" + std::to_string(spec.m) + "," + std::to_string(spec.n) + ")";
      break;
    }
    case 'B': {
      spec.family = SuperFamily::B;
      spec.m = static_cast<int>(c.integer());
      c.expect(',', "','");
      spec.n = static_cast<int>(c.integer());
      c.expect(')', "')'");
      if (spec.n < 1) throw precondition_error("B(m,n) requires n >= 1");
      if (spec.m >= 1) {
        spec.even_components.push_back(comp(Series::B, spec.m, +1));
        spec.even_components.push_back(comp(Series::C, spec.n, -1));
      } else {
        spec.even_components.push_back(comp(Series::C, spec.n, +1));
      }
      spec.name = "B(" + std::to_string(spec.m) + "," + std::to_string(spec.n) + ")";
      break;
    }
    case 'C': {
      spec.family = SuperFamily::C;
      spec.n = static_cast<int>(c.integer());
      c.expect(')', "')'");
      if (spec.n < 2) throw precondition_error("C(n) requires n >= 2");
      spec.even_components.push_back(comp(Series::C, spec.n, +1));
      spec.has_center_summand = true;
      spec.name = "C(" + std::to_string(spec.n) + ")";
      break;
    }
    case 'D': {
      spec.m = static_cast<int>(c.integer());
      c.expect(',', "','");
      spec.n = static_cast<int>(c.integer());
      if (c.peek() == ';' || c.peek() == ':') {
        ++c.i;
        spec.family = SuperFamily::D21a;
        if (spec.m != 2 || spec.n != 1)
          throw precondition_error("the one-parameter family is D(2,1;a)");
        spec.a = c.rational();
        c.expect(')', "')'");
        if (spec.a == 0 || spec.a == -1)
          throw precondition_error("D(2,1;a) requires a not in {0, -1}");
        spec.even_components.push_back(comp(Series::D, 2, +1));
        spec.even_components.push_back(comp(Series::A, 1, -1));
        spec.name = "D(2,1;" + rat_str(spec.a) + ")";
      } else {
        spec.family = SuperFamily::D;
        c.expect(')', "')'");
        if (spec.m < 2 || spec.n < 1) throw precondition_error("D(m,n) requires m >= 2, n >= 1");
        spec.even_components.push_back(comp(Series::D, spec.m, +1));
        spec.even_components.push_back(comp(Series::C, spec.n, -1));
        spec.name = "D(" + std::to_string(spec.m) + "," + std::to_string(spec.n) + ")";
      }
      break;
    }
    case 'F': {
      spec.family = SuperFamily::F4;
      if (c.integer() != 4) throw precondition_error("the exceptional family is F(4)");
      c.expect(')', "')'");
      spec.even_components.push_back(comp(Series::B, 3, +1));
      spec.even_components.push_back(comp(Series::A, 1, -1));
      spec.name = "F(4)";
      break;
    }
    case 'G': {
      spec.family = SuperFamily::G3;
      if (c.integer() != 3) throw precondition_error("the exceptional family is G(3)");
      c.expect(')', "')'");
      spec.even_components.push_back(comp(Series::G, 2, +1));
      spec.even_components.push_back(comp(Series::A, 1, -1));
      spec.name = "G(3)";
      break;
    }
    default:
      throw parse_error("unknown superalgebra family", 0);
  }
  if (!c.done()) throw parse_error("trailing characters", c.i);
  return spec;
}

ResolvedSuper normalize_form(const SuperAlgebraSpec& spec) {
  if (spec.d2_factor != 0 && spec.d2_factor != 1)
    throw precondition_error("d2_factor selects one of the two A1 factors (0 or 1)");
  ResolvedSuper out;
  out.spec = spec;
  int offset = 0;
  for (const auto& ec : spec.even_components) {
    SimpleType concrete = ec.type;
    int slice = offset;
    if ((ec.type.series == Series::B || ec.type.series == Series::C) && ec.type.rank == 1) {
      concrete = SimpleType{Series::A, 1};
    } else if (ec.type.series == Series::D && ec.type.rank == 2) {
      // Reducible: two A1 factors. The engine works with one of them; the
      // other keeps its coordinate in the weight layout untouched.
      concrete = SimpleType{Series::A, 1};
      slice = offset + spec.d2_factor;
    }
    out.components.push_back(ResolvedComponent{RootSystem(concrete, ec.form_sign), slice,
                                               ec.type.rank});
    offset += ec.type.rank;
  }
  out.finite_rank = offset;
  return out;
}

AffineWeight slice_weight(const ResolvedComponent& c, const AffineWeight& w) {
  QVec part(w.finite.coords.begin() + c.offset,
            w.finite.coords.begin() + c.offset + c.rs.rank());
  return AffineWeight{FiniteWeight{std::move(part)}, w.d, w.level};
}

AffineWeight embed_root(const ResolvedSuper& rsv, std::size_t comp, const AffineRealRoot& g) {
  const ResolvedComponent& c = rsv.components.at(comp);
  FiniteWeight local = c.rs.root_to_weight(g.alpha);
  QVec full(rsv.finite_rank, Rat(0));
  for (int i = 0; i < c.rs.rank(); ++i) full[c.offset + i] = local.coords[i];
  return AffineWeight{FiniteWeight{std::move(full)}, Rat(g.n), Rat(0)};
}

Rat component_pairing(const ResolvedComponent& c, const AffineWeight& w, const AffineRealRoot& g) {
  return affine_coroot(c.rs, g).eval(slice_weight(c, w));
}

std::optional<AffineWeight> string_step(const ResolvedSuper& rsv, std::size_t comp,
                                        const AffineWeight& lambda, const AffineRealRoot& g) {
  const ResolvedComponent& c = rsv.components.at(comp);
  if (component_pairing(c, lambda, g) <= 0) return std::nullopt;
  return lambda - embed_root(rsv, comp, g);
}

std::vector<AffineRealRoot> delta_lambda(const ResolvedSuper& rsv, const AffineWeight& lambda,
                                         bool include_depth_zero) {
  if (!rsv.two_components())
    throw precondition_error("the negative-root set needs two even simple components");
  const Rat k = lambda.level;
  if (k <= 0)
    throw precondition_error(
        "the negative-root set requires level > 0: finiteness rests on (alpha,alpha) < 0 "
        "against a positive level");
  const ResolvedComponent& c2 = rsv.components[1];
  const AffineWeight l2 = slice_weight(c2, lambda);

  std::vector<AffineRealRoot> out;
  for (const FiniteRoot& a : c2.rs.roots()) {
    const Rat norm = c2.rs.root_norm(a);
    if (norm >= 0)
      throw precondition_error("internal: second component must be negatively normalized");
    const Rat v = c2.rs.eval_coroot(l2.finite, a);
    // gamma = alpha - n delta: lambda(gamma^vee) = v + 2nk/|norm|, increasing
    // in n, so the count below is exact and certifies finiteness.
    const Rat bound = -v * (-norm) / (2 * k);
    const long cnt = bound > 0 ? to_long(rat_floor(bound)) : 0;
    for (long n = 1; n <= cnt; ++n) out.push_back(AffineRealRoot{a, -n});
    const Rat beyond = v + Rat(2 * (cnt + 1)) * k / (-norm);
    if (beyond <= 0)
      throw precondition_error("internal: finiteness certificate failed");
  }
  if (include_depth_zero) {
    for (const FiniteRoot& a : c2.rs.roots()) {
      bool negative = true;
      for (long x : a.coords)
        if (x > 0) {
          negative = false;
          break;
        }
      if (!negative) continue;
      if (c2.rs.eval_coroot(l2.finite, a) <= 0) out.push_back(AffineRealRoot{a, 0});
    }
  }
  std::sort(out.begin(), out.end(), [](const AffineRealRoot& x, const AffineRealRoot& y) {
    if (std::labs(x.n) != std::labs(y.n)) return std::labs(x.n) < std::labs(y.n);
    return x.alpha < y.alpha;
  });
  return out;
}

void validate_candidate(const ResolvedSuper& rsv, const SupportCandidate& s) {
  if (!is_integer(s.level)) throw precondition_error("candidate level must be an integer");
  if (s.depth < 0) throw precondition_error("candidate depth must be >= 0");
  for (const AffineWeight& w : s.weights) {
    if (w.finite.coords.size() != static_cast<std::size_t>(rsv.finite_rank))
      throw precondition_error("candidate weight has the wrong coordinate width");
    if (w.level != s.level)
      throw precondition_error("candidate weights must share the declared level");
  }
}

namespace {

AffineWeight full_delta(const ResolvedSuper& rsv) {
  return AffineWeight{FiniteWeight{qvec_zero(rsv.finite_rank)}, Rat(1), Rat(0)};
}

Rat min_d(const SupportCandidate& s) {
  Rat m = s.weights.begin()->d;
  for (const AffineWeight& w : s.weights) m = std::min(m, w.d);
  return m;
}

Rat max_d(const SupportCandidate& s) {
  Rat m = s.weights.begin()->d;
  for (const AffineWeight& w : s.weights) m = std::max(m, w.d);
  return m;
}

Rat comp_height(const ResolvedComponent& c, const AffineWeight& w) {
  Rat h(0);
  for (const Rat& x : c.rs.weight_to_root_coords(slice_weight(c, w).finite)) h += x;
  return h;
}

} // namespace

std::vector<SupportViolation> integrable_support_rules(const ResolvedSuper& rsv,
                                                       const SupportCandidate& s) {
  validate_candidate(rsv, s);
  std::vector<SupportViolation> out;
  if (s.weights.empty()) return out;
  const Rat dmin = min_d(s);
  const Rat dmax = max_d(s);
  const AffineWeight dw = full_delta(rsv);
  const long window = s.depth;

  for (const AffineWeight& mu : s.weights) {
    for (std::size_t ci = 0; ci < rsv.components.size(); ++ci) {
      const ResolvedComponent& c = rsv.components[ci];
      for (const FiniteRoot& a : c.rs.roots())
        for (long n = -window; n <= window; ++n) {
          const AffineRealRoot g{a, n};
          if (component_pairing(c, mu, g) <= 0) continue;
          const AffineWeight target = mu - embed_root(rsv, ci, g);
          if (target.d < dmin || target.d > dmax) continue;
          if (!s.contains(target))
            out.push_back(SupportViolation{SupportViolation::Kind::string_closure, mu, ci, g});
        }
    }
    if (window >= 1) {
      bool unbroken = true;
      AffineWeight up = mu;
      for (long m = 1; m <= window; ++m) {
        up = up + dw;
        if (!s.contains(up)) {
          unbroken = false;
          break;
        }
      }
      if (unbroken)
        out.push_back(SupportViolation{SupportViolation::Kind::ladder_termination, mu, 0,
                                       std::nullopt});
    }
  }
  return out;
}

// -- obstruction engine -----------------------------------------------------

namespace {

struct EngineCtx {
  const ResolvedSuper& rsv;
  const SupportCandidate& s;
  const ResolvedComponent& c2;
  AffineWeight lambda;
  long r = 1;
  long p = 0;
  long s_max = 0;
};

TraceStep make_step(TraceRule rule, TraceKind kind, AffineWeight subject, std::string note) {
  TraceStep st;
  st.rule = rule;
  st.kind = kind;
  st.subject = std::move(subject);
  st.note = std::move(note);
  return st;
}

} // namespace

ObstructionTrace obstruction_run(const ResolvedSuper& rsv, const SupportCandidate& s) {
  if (!rsv.two_components())
    throw precondition_error(
        "the obstruction engine needs two even simple components; single-component algebras "
        "admit highest-weight modules instead");
  validate_candidate(rsv, s);
  if (s.level <= 0) throw precondition_error("obstruction run requires level > 0");

  ObstructionTrace trace;
  if (s.weights.empty()) {
    TraceStep st = make_step(TraceRule::locate_lowest, TraceKind::consistent,
                             AffineWeight{FiniteWeight{qvec_zero(rsv.finite_rank)}, Rat(0),
                                          s.level},
                             "empty candidate: nothing to refute at this depth");
    trace.steps.push_back(std::move(st));
    trace.consistent_at_depth = true;
    return trace;
  }

  const ResolvedComponent& c2 = rsv.components[1];
  const AffineWeight dw = full_delta(rsv);

  // (i) lambda: minimal second-component height; ties go to the shallowest
  // weight (largest d) so that pure-delta drops below lambda stay visible to
  // the sweeps. Every depth-zero drop lands strictly lower in component-2
  // height, so lambda - alpha is absent for all positive alpha.
  AffineWeight lambda = *s.weights.begin();
  Rat best = comp_height(c2, lambda);
  for (const AffineWeight& w : s.weights) {
    const Rat h = comp_height(c2, w);
    const bool better =
        h < best || (h == best && (w.d > lambda.d ||
                                   (w.d == lambda.d && w.finite < lambda.finite)));
    if (better) {
      best = h;
      lambda = w;
    }
  }
  trace.steps.push_back(make_step(TraceRule::locate_lowest, TraceKind::located, lambda,
                                  "second-component-lowest weight of the candidate"));

  // Depth-zero strings must already be closed; a positive pairing with an
  // absent conclusion refutes the candidate immediately.
  for (const FiniteRoot& a : c2.rs.positive_roots()) {
    const AffineRealRoot g{a, 0};
    if (component_pairing(c2, lambda, g) > 0) {
      TraceStep st = make_step(TraceRule::string_step, TraceKind::contradiction, lambda,
                               "string conclusion missing from the candidate");
      st.gamma = g;
      trace.steps.push_back(std::move(st));
      trace.contradiction = true;
      return trace;
    }
  }

  // (ii) the finite negative-root set and its threshold r.
  long r = 1;
  {
    std::vector<AffineRealRoot> ds = delta_lambda(rsv, lambda, false);
    for (const AffineRealRoot& g : ds) r = std::max(r, -g.n + 1);
    TraceStep st = make_step(TraceRule::delta_set, TraceKind::fact, lambda,
                             "threshold past the finite negative-root set");
    st.params["r"] = r;
    st.params["delta_size"] = static_cast<long>(ds.size());
    trace.steps.push_back(std::move(st));
  }

  const long s_max = to_long(lambda.d - min_d(s));

  // (iii) sweep 1: lambda - s delta for s >= r.
  for (long sd = r; sd <= s_max; ++sd) {
    const AffineWeight probe = lambda - scale_weight(Rat(sd), dw);
    if (s.contains(probe)) {
      // Once sd >= r the pairing is positive for every root; a positive alpha
      // makes the forced conclusion lambda - alpha, which the locate step
      // already knows to be absent.
      const FiniteRoot& a = c2.rs.positive_roots().front();
      TraceStep st = make_step(TraceRule::drop_imaginary, TraceKind::contradiction, probe,
                               "pure-delta drop forces an absent string conclusion");
      st.gamma = AffineRealRoot{a, -sd};
      st.params["s"] = sd;
      st.params["r"] = r;
      trace.steps.push_back(std::move(st));
      trace.contradiction = true;
      return trace;
    }
    TraceStep st = make_step(TraceRule::drop_imaginary, TraceKind::forbidden, probe,
                             "pure-delta drop cannot be a weight");
    st.params["s"] = sd;
    st.params["r"] = r;
    trace.steps.push_back(std::move(st));
  }

  // p: deepest pure-delta drop still present.
  long p = 0;
  for (long sd = 1; sd <= s_max; ++sd)
    if (s.contains(lambda - scale_weight(Rat(sd), dw))) p = sd;

  // (iii) sweep 2: lambda - alpha - (m+p) delta.
  for (const FiniteRoot& a : c2.rs.positive_roots()) {
    FiniteRoot neg = a;
    for (long& x : neg.coords) x = -x;
    for (long m = 1; m + p <= s_max; ++m) {
      const AffineWeight probe =
          lambda - embed_root(rsv, 1, AffineRealRoot{a, 0}) - scale_weight(Rat(m + p), dw);
      TraceStep st = make_step(TraceRule::drop_root, TraceKind::forbidden, probe,
                               "root drop below the deepest delta level");
      st.gamma = AffineRealRoot{neg, 0};
      st.params["m"] = m;
      st.params["p"] = p;
      if (s.contains(probe)) {
        st.kind = TraceKind::contradiction;
        st.note = "root drop forces a delta level deeper than p";
        trace.steps.push_back(std::move(st));
        trace.contradiction = true;
        return trace;
      }
      trace.steps.push_back(std::move(st));
    }
  }

  // (iii) sweep 3: lambda + alpha - (m+p+1) delta for m >= r.
  for (const FiniteRoot& a : c2.rs.positive_roots()) {
    for (long m = r; m + p + 1 <= s_max; ++m) {
      const AffineWeight probe =
          lambda + embed_root(rsv, 1, AffineRealRoot{a, 0}) - scale_weight(Rat(m + p + 1), dw);
      TraceStep st = make_step(TraceRule::raise_root, TraceKind::forbidden, probe,
                               "raised weight below the deepest delta level");
      st.gamma = AffineRealRoot{a, -m};
      st.params["m"] = m;
      st.params["p"] = p;
      if (s.contains(probe)) {
        st.kind = TraceKind::contradiction;
        st.note = "raised weight forces the delta level p+1";
        trace.steps.push_back(std::move(st));
        trace.contradiction = true;
        return trace;
      }
      trace.steps.push_back(std::move(st));
    }
  }

  // (iv)+(v) the d-minimal weight is silent under every negative mode, so the
  // free ladder lambda' + m delta must persist for all m > 0; a finite
  // candidate cannot carry it.
  const AffineWeight lp = *s.weights.begin(); // minimal (d, finite) at fixed level
  long m0 = 1;
  {
    AffineWeight up = lp + dw;
    while (s.contains(up)) {
      ++m0;
      up = up + dw;
    }
  }
  TraceStep st = make_step(TraceRule::heisenberg, TraceKind::contradiction, lp,
                           "free delta ladder leaves the finite candidate");
  st.params["m0"] = m0;
  trace.steps.push_back(std::move(st));
  trace.contradiction = true;
  return trace;
}

// -- independent trace checker ----------------------------------------------

namespace {

struct CheckerState {
  bool have_lambda = false;
  AffineWeight lambda;
  bool have_r = false;
  long r = 1;
};

TraceCheck bad(std::size_t i, std::string reason) {
  return TraceCheck{false, i, std::move(reason)};
}

} // namespace

TraceCheck check_trace(const ResolvedSuper& rsv, const SupportCandidate& s,
                       const ObstructionTrace& trace) {
  validate_candidate(rsv, s);
  if (!rsv.two_components()) return TraceCheck{false, 0, "not a two-component spec"};
  if (trace.steps.empty()) return TraceCheck{false, 0, "empty trace"};
  const ResolvedComponent& c2 = rsv.components[1];
  const AffineWeight dw = full_delta(rsv);
  CheckerState st;

  auto verify_p = [&](long p) -> bool {
    // p is the deepest pure-delta drop of lambda present in the candidate.
    if (p < 0) return false;
    if (p > 0 && !s.contains(st.lambda - scale_weight(Rat(p), dw))) return false;
    for (const AffineWeight& w : s.weights) {
      if (w.finite == st.lambda.finite && w.level == st.lambda.level) {
        const Rat drop = st.lambda.d - w.d;
        if (is_integer(drop) && drop > p) return false;
      }
    }
    return true;
  };

  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& step = trace.steps[i];
    switch (step.rule) {
      case TraceRule::locate_lowest: {
        if (step.kind == TraceKind::consistent) {
          if (!s.weights.empty()) return bad(i, "consistent marker on a nonempty candidate");
          break;
        }
        if (step.kind != TraceKind::located) return bad(i, "unexpected kind for locate");
        if (!s.contains(step.subject)) return bad(i, "located weight not in candidate");
        for (const FiniteRoot& a : c2.rs.positive_roots())
          if (s.contains(step.subject - embed_root(rsv, 1, AffineRealRoot{a, 0})))
            return bad(i, "located weight has a positive-root drop in the candidate");
        st.lambda = step.subject;
        st.have_lambda = true;
        break;
      }
      case TraceRule::string_step: {
        if (step.kind != TraceKind::contradiction) return bad(i, "string step must refute");
        if (!step.gamma) return bad(i, "string step lacks a root witness");
        if (!s.contains(step.subject)) return bad(i, "string subject not in candidate");
        if (component_pairing(c2, step.subject, *step.gamma) <= 0)
          return bad(i, "string hypothesis fails");
        if (s.contains(step.subject - embed_root(rsv, 1, *step.gamma)))
          return bad(i, "string conclusion is present; no contradiction");
        break;
      }
      case TraceRule::delta_set: {
        if (!st.have_lambda || !(step.subject == st.lambda))
          return bad(i, "delta set does not refer to the located weight");
        auto it = step.params.find("r");
        if (it == step.params.end() || it->second < 1) return bad(i, "missing threshold r");
        const long r = it->second;
        const AffineWeight l2 = slice_weight(c2, st.lambda);
        for (const FiniteRoot& a : c2.rs.roots()) {
          if (c2.rs.root_norm(a) >= 0) return bad(i, "second component is not negative");
          const Rat at_r = c2.rs.eval_coroot(l2.finite, a) +
                           Rat(2 * r) * st.lambda.level / (-c2.rs.root_norm(a));
          if (at_r <= 0) return bad(i, "threshold r does not clear the negative-root set");
        }
        if (r > 1) {
          bool tight = false;
          for (const FiniteRoot& a : c2.rs.roots()) {
            const Rat at_prev = c2.rs.eval_coroot(l2.finite, a) +
                                Rat(2 * (r - 1)) * st.lambda.level / (-c2.rs.root_norm(a));
            if (at_prev <= 0) {
              tight = true;
              break;
            }
          }
          if (!tight) return bad(i, "threshold r is not minimal");
        }
        st.r = r;
        st.have_r = true;
        break;
      }
      case TraceRule::drop_imaginary: {
        if (!st.have_lambda || !st.have_r) return bad(i, "sweep before locate/delta steps");
        auto it = step.params.find("s");
        if (it == step.params.end()) return bad(i, "missing s");
        const long sd = it->second;
        if (sd < st.r) return bad(i, "s below the threshold r");
        if (!(step.subject == st.lambda - scale_weight(Rat(sd), dw)))
          return bad(i, "subject is not lambda - s delta");
        if (step.kind == TraceKind::forbidden) {
          if (s.contains(step.subject)) return bad(i, "forbidden weight present");
        } else if (step.kind == TraceKind::contradiction) {
          if (!s.contains(step.subject)) return bad(i, "refuting weight absent");
          if (!step.gamma || step.gamma->n != -sd) return bad(i, "witness root mismatch");
          if (component_pairing(c2, step.subject, *step.gamma) <= 0)
            return bad(i, "string hypothesis fails at the witness");
          if (s.contains(step.subject - embed_root(rsv, 1, *step.gamma)))
            return bad(i, "string conclusion is present; no contradiction");
        } else {
          return bad(i, "unexpected kind in delta sweep");
        }
        break;
      }
      case TraceRule::drop_root:
      case TraceRule::raise_root: {
        if (!st.have_lambda || !st.have_r) return bad(i, "sweep before locate/delta steps");
        auto mi = step.params.find("m");
        auto pi = step.params.find("p");
        if (mi == step.params.end() || pi == step.params.end()) return bad(i, "missing m or p");
        const long m = mi->second;
        const long p = pi->second;
        if (!verify_p(p)) return bad(i, "p is not the deepest delta drop");
        if (!step.gamma) return bad(i, "missing root witness");
        AffineWeight expected = st.lambda;
        if (step.rule == TraceRule::drop_root) {
          if (m < 1) return bad(i, "m must be >= 1");
          FiniteRoot pos = step.gamma->alpha;
          for (long& x : pos.coords) x = -x; // recorded witness is -alpha
          expected = expected - embed_root(rsv, 1, AffineRealRoot{pos, 0}) -
                     scale_weight(Rat(m + p), dw);
          if (step.gamma->n != 0) return bad(i, "drop witness must sit at depth zero");
        } else {
          if (m < st.r) return bad(i, "m below the threshold r");
          if (step.gamma->n != -m) return bad(i, "raise witness depth mismatch");
          expected = expected + embed_root(rsv, 1, AffineRealRoot{step.gamma->alpha, 0}) -
                     scale_weight(Rat(m + p + 1), dw);
        }
        if (!(step.subject == expected)) return bad(i, "subject does not match the sweep form");
        if (step.kind == TraceKind::forbidden) {
          if (s.contains(step.subject)) return bad(i, "forbidden weight present");
        } else if (step.kind == TraceKind::contradiction) {
          if (!s.contains(step.subject)) return bad(i, "refuting weight absent");
          if (component_pairing(c2, step.subject, *step.gamma) <= 0)
            return bad(i, "string hypothesis fails at the witness");
          if (s.contains(step.subject - embed_root(rsv, 1, *step.gamma)))
            return bad(i, "string conclusion is present; no contradiction");
        } else {
          return bad(i, "unexpected kind in root sweep");
        }
        break;
      }
      case TraceRule::heisenberg: {
        if (step.kind != TraceKind::contradiction) return bad(i, "ladder step must refute");
        if (!s.contains(step.subject)) return bad(i, "ladder base not in candidate");
        auto it = step.params.find("m0");
        if (it == step.params.end() || it->second < 1) return bad(i, "missing ladder break m0");
        const long m0 = it->second;
        // Premise: the base is silent under every negative mode of the second
        // component and of its Cartan directions within the candidate window.
        const long wn = to_long(max_d(s) - min_d(s)) + 1;
        for (long n = -wn; n <= -1; ++n) {
          if (s.contains(step.subject + scale_weight(Rat(n), dw)))
            return bad(i, "ladder base is not d-minimal along delta");
          for (const FiniteRoot& a : c2.rs.roots())
            if (s.contains(step.subject + embed_root(rsv, 1, AffineRealRoot{a, n})))
              return bad(i, "ladder base sees a negative-mode weight");
        }
        for (long m = 1; m < m0; ++m)
          if (!s.contains(step.subject + scale_weight(Rat(m), dw)))
            return bad(i, "ladder break m0 is not minimal");
        if (s.contains(step.subject + scale_weight(Rat(m0), dw)))
          return bad(i, "claimed ladder break is present");
        break;
      }
    }
  }

  const TraceStep& last = trace.steps.back();
  const bool ends_contra = last.kind == TraceKind::contradiction;
  const bool ends_consistent = last.kind == TraceKind::consistent;
  if (trace.contradiction != ends_contra)
    return bad(trace.steps.size() - 1, "contradiction flag disagrees with the final step");
  if (trace.consistent_at_depth != ends_consistent)
    return bad(trace.steps.size() - 1, "consistency flag disagrees with the final step");
  if (!ends_contra && !ends_consistent)
    return bad(trace.steps.size() - 1, "trace does not end in a verdict");
  return TraceCheck{};
}

} // namespace affkm
