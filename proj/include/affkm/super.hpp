#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "affkm/weights.hpp"

namespace affkm {

enum class SuperFamily { A, B, C, D, D21a, F4, G3 };

/// One row of the basic-superalgebra table: the even-part decomposition with
/// the per-component sign of the invariant form. When two simple components
/// exist, exactly the second carries the negative sign.
struct SuperAlgebraSpec {
  struct EvenComponent {
    SimpleType type; // may be B1, C1 or the reducible D2; resolved later
    int form_sign;
  };

  SuperFamily family;
  std::string name; // canonical rendering, e.g. "B(1,2)" or "D(2,1;1/2)"
  int m = 0;
  int n = 0;
  Rat a;            // D(2,1;a) only; a not in {0, -1}
  std::vector<EvenComponent> even_components;
  bool has_center_summand = false;
  int d2_factor = 0; // which A1 factor of a reducible D2 entry the engine uses
};

/// Materializes a table row by name. Accepts "A(m,n)", "B(m,n)", "C(n)",
/// "D(m,n)", "D(2,1;a)" (';' or ':'), "F(4)", "G(3)".
SuperAlgebraSpec catalog(const std::string& name);

/// An even component made concrete: a simple root system together with its
/// slice of the full finite coordinate block. B1 and C1 materialize as A1;
/// a reducible D2 materializes as the chosen A1 factor while keeping its
/// two-coordinate slice in the weight layout.
struct ResolvedComponent {
  RootSystem rs;
  int offset;
  int declared_width;
};

struct ResolvedSuper {
  SuperAlgebraSpec spec;
  std::vector<ResolvedComponent> components;
  int finite_rank = 0; // total declared coordinates of the even part

  bool two_components() const { return components.size() == 2; }
};

/// Builds the per-component root data with the two-signed normalization:
/// the first component is scaled to highest-root square +2, the second to -2.
ResolvedSuper normalize_form(const SuperAlgebraSpec& spec);

/// The slice of a full weight seen by one component (finite block restricted
/// to the component's own coordinates; d and level pass through).
AffineWeight slice_weight(const ResolvedComponent& c, const AffineWeight& w);

/// gamma = alpha + n delta as a weight of the full Cartan, supported on the
/// component's slice.
AffineWeight embed_root(const ResolvedSuper& rsv, std::size_t comp, const AffineRealRoot& g);

/// lambda(gamma^vee) computed with the component's own form sign.
Rat component_pairing(const ResolvedComponent& c, const AffineWeight& w, const AffineRealRoot& g);

/// Single string step: if lambda(gamma^vee) > 0, any integrable support
/// containing lambda must contain lambda - gamma; returns that weight,
/// nullopt when the hypothesis fails. Throws if gamma.alpha is not a root of
/// the component.
std::optional<AffineWeight> string_step(const ResolvedSuper& rsv, std::size_t comp,
                                        const AffineWeight& lambda, const AffineRealRoot& g);

/// The finite set of negative real roots gamma = alpha - n delta (n > 0) of
/// the affinized second component with lambda(gamma^vee) <= 0. Each per-root
/// count is obtained in closed form from the sign of (alpha, alpha), which is
/// what certifies finiteness; requires level > 0. The depth-zero negative
/// roots join the set only when include_depth_zero is set.
std::vector<AffineRealRoot> delta_lambda(const ResolvedSuper& rsv, const AffineWeight& lambda,
                                         bool include_depth_zero = false);

/// Finite truncated support candidate over the full Cartan; single level.
struct SupportCandidate {
  Rat level;
  std::set<AffineWeight> weights;
  long depth = 0;

  bool contains(const AffineWeight& w) const { return weights.count(w) > 0; }
};

/// Throws when the candidate breaks its own invariants (mixed levels, wrong
/// coordinate width, non-integer or non-positive level).
void validate_candidate(const ResolvedSuper& rsv, const SupportCandidate& s);

struct SupportViolation {
  enum class Kind { string_closure, ladder_termination };
  Kind kind;
  AffineWeight weight;
  std::size_t component = 0;
  std::optional<AffineRealRoot> gamma;
};

/// Closure audit: every in-window string-step conclusion must be present,
/// and no weight may carry an unbroken delta ladder of length depth (the
/// support-level shadow of finite odd generation).
std::vector<SupportViolation> integrable_support_rules(const ResolvedSuper& rsv,
                                                       const SupportCandidate& s);

enum class TraceRule {
  locate_lowest,   // pick lambda with lambda - alpha absent for positive alpha
  delta_set,       // compute the negative-root set and its threshold r
  string_step,     // direct string-step consequence
  drop_imaginary,  // lambda - s delta is impossible for s >= r
  drop_root,       // lambda - alpha - (m+p) delta is impossible
  raise_root,      // lambda + alpha - (m+p+1) delta is impossible
  heisenberg       // the free ladder lambda' + m delta must persist
};

enum class TraceKind { located, fact, forbidden, contradiction, consistent };

struct TraceStep {
  TraceRule rule;
  TraceKind kind;
  AffineWeight subject;
  std::optional<AffineRealRoot> gamma; // second-component root witness
  std::map<std::string, long> params;  // named integers: r, s, p, m, m0
  std::string note;
};

struct ObstructionTrace {
  std::vector<TraceStep> steps;
  bool contradiction = false;
  bool consistent_at_depth = false;
};

/// Replays the two-component refutation argument on a candidate support:
/// locates a second-component-lowest weight, derives the forbidden-weight
/// sweeps, then applies the free-ladder rule to the d-minimal weight. Every
/// finite nonempty candidate at positive level ends in a contradiction; the
/// trace records each deduction so it can be re-derived independently.
/// Throws for single-component specs and for level <= 0.
ObstructionTrace obstruction_run(const ResolvedSuper& rsv, const SupportCandidate& s);

struct TraceCheck {
  bool ok = true;
  std::size_t bad_step = 0;
  std::string reason;
};

/// Independent validator: re-derives every step of a trace from the candidate
/// and the step's recorded premises alone. Shares no state with the engine.
TraceCheck check_trace(const ResolvedSuper& rsv, const SupportCandidate& s,
                       const ObstructionTrace& trace);

} // namespace affkm
