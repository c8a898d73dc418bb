#include <doctest.h>

#include <random>

#include "affkm/super.hpp"
#include "candidate_gen.hpp"

using namespace affkm;

namespace {

AffineWeight weight2(const ResolvedSuper& rsv, long c1, long c2, long d, long level) {
  QVec coords(rsv.finite_rank);
  coords[0] = c1;
  coords[rsv.finite_rank - 1] = c2;
  return AffineWeight{FiniteWeight{std::move(coords)}, Rat(d), Rat(level)};
}

} // namespace

TEST_CASE("catalog rows") {
  SuperAlgebraSpec b12 = catalog("B(1,2)");
  REQUIRE(b12.even_components.size() == 2);
  CHECK(b12.even_components[0].type == SimpleType{Series::B, 1});
  CHECK(b12.even_components[0].form_sign == +1);
  CHECK(b12.even_components[1].type == SimpleType{Series::C, 2});
  CHECK(b12.even_components[1].form_sign == -1);
  CHECK_FALSE(b12.has_center_summand);

  SuperAlgebraSpec c3 = catalog("C(3)");
  REQUIRE(c3.even_components.size() == 1);
  CHECK(c3.even_components[0].type == SimpleType{Series::C, 3});
  CHECK(c3.has_center_summand);

  SuperAlgebraSpec d21 = catalog("D(2,1;1/2)");
  REQUIRE(d21.even_components.size() == 2);
  CHECK(d21.even_components[0].type == SimpleType{Series::D, 2});
  CHECK(d21.even_components[1].type == SimpleType{Series::A, 1});
  CHECK(d21.a == Rat(1, 2));
  CHECK(catalog("D(2,1:-2)").a == -2);

  SuperAlgebraSpec a01 = catalog("A(0,1)");
  REQUIRE(a01.even_components.size() == 1);
  CHECK(a01.even_components[0].form_sign == +1);
  CHECK(a01.has_center_summand);

  CHECK(catalog("F(4)").even_components[0].type == SimpleType{Series::B, 3});
  CHECK(catalog("G(3)").even_components[0].type == SimpleType{Series::G, 2});

  CHECK_THROWS_AS(catalog("D(2,1;0)"), precondition_error);
  CHECK_THROWS_AS(catalog("D(2,1;-1)"), precondition_error);
  CHECK_THROWS_AS(catalog("A(0,0)"), precondition_error);
  CHECK_THROWS_AS(catalog("Q(3)"), parse_error);
  CHECK_THROWS_AS(catalog("B(1,2"), parse_error);
  CHECK_THROWS_AS(catalog("F(5)"), precondition_error);
}

TEST_CASE("two-signed normalization of the even part") {
  ResolvedSuper b11 = normalize_form(catalog("B(1,1)"));
  REQUIRE(b11.components.size() == 2);
  CHECK(b11.finite_rank == 2);
  CHECK(b11.components[0].rs.root_norm(b11.components[0].rs.highest_root()) == 2);
  CHECK(b11.components[1].rs.root_norm(b11.components[1].rs.highest_root()) == -2);
  // B1 and C1 both materialize as the rank-1 system.
  CHECK(b11.components[0].rs.type() == SimpleType{Series::A, 1});

  ResolvedSuper a01 = normalize_form(catalog("A(0,1)"));
  REQUIRE(a01.components.size() == 1);
  CHECK(a01.components[0].rs.root_norm(a01.components[0].rs.highest_root()) == 2);

  SuperAlgebraSpec d21 = catalog("D(2,1;1/2)");
  ResolvedSuper r0 = normalize_form(d21);
  CHECK(r0.finite_rank == 3);
  CHECK(r0.components[0].offset == 0);
  CHECK(r0.components[0].rs.rank() == 1); // one factor of the reducible D2
  CHECK(r0.components[1].offset == 2);
  d21.d2_factor = 1;
  CHECK(normalize_form(d21).components[0].offset == 1);
  d21.d2_factor = 2;
  CHECK_THROWS_AS(normalize_form(d21), precondition_error);
}

TEST_CASE("string steps propagate exactly when the pairing is positive") {
  ResolvedSuper rsv = normalize_form(catalog("B(1,1)"));
  const FiniteRoot alpha{{1}};

  // Component 1, depth 0, pairing 2: one step down.
  AffineWeight w = weight2(rsv, 2, 0, 0, 1);
  auto next = string_step(rsv, 0, w, AffineRealRoot{alpha, 0});
  REQUIRE(next.has_value());
  CHECK(*next == weight2(rsv, 0, 0, 0, 1));

  // Pairing zero: no conclusion.
  CHECK_FALSE(string_step(rsv, 0, weight2(rsv, 0, 0, 0, 1), AffineRealRoot{alpha, 0}));

  // Component 2 with (alpha,alpha) = -2 at level 1: gamma = alpha - n delta
  // has pairing value + n, so deep negative modes always fire.
  AffineWeight v = weight2(rsv, 0, -3, 0, 1);
  CHECK(component_pairing(rsv.components[1], v, AffineRealRoot{alpha, -4}) == 1);
  auto climbed = string_step(rsv, 1, v, AffineRealRoot{alpha, -4});
  REQUIRE(climbed.has_value());
  CHECK(*climbed == weight2(rsv, 0, -5, 4, 1));

  CHECK_THROWS_AS(string_step(rsv, 1, v, AffineRealRoot{FiniteRoot{{2}}, 0}),
                  precondition_error);
}

TEST_CASE("the negative-root set is finite with the exact closed-form count") {
  ResolvedSuper rsv = normalize_form(catalog("B(1,1)"));

  // Second-component value -3 at level 1: exactly alpha - delta, alpha - 2delta,
  // alpha - 3delta.
  AffineWeight lambda = weight2(rsv, 0, -3, 0, 1);
  auto ds = delta_lambda(rsv, lambda);
  REQUIRE(ds.size() == 3);
  for (long n = 1; n <= 3; ++n) CHECK(ds[n - 1] == AffineRealRoot{FiniteRoot{{1}}, -n});

  // Value 0 admits nothing at positive depth.
  CHECK(delta_lambda(rsv, weight2(rsv, 0, 0, 0, 1)).empty());

  // Linear growth in the pairing value.
  CHECK(delta_lambda(rsv, weight2(rsv, 0, -50, 0, 1)).size() == 50);

  // The depth-zero flag adds the nonpositive depth-zero negatives.
  auto with0 = delta_lambda(rsv, weight2(rsv, 0, 3, 0, 1), true);
  REQUIRE(with0.size() == 1);
  CHECK(with0[0] == AffineRealRoot{FiniteRoot{{-1}}, 0});

  CHECK_THROWS_AS(delta_lambda(rsv, weight2(rsv, 0, -1, 0, 0)), precondition_error);
  CHECK_THROWS_AS(delta_lambda(normalize_form(catalog("C(2)")), lambda), precondition_error);
}

TEST_CASE("support-rule audit flags missing string conclusions and unbroken ladders") {
  ResolvedSuper rsv = normalize_form(catalog("B(1,1)"));

  SupportCandidate empty;
  empty.level = 1;
  empty.depth = 2;
  CHECK(integrable_support_rules(rsv, empty).empty());

  // A closed pair: (2,0) steps to (0,0) in component 1, nothing else fires at
  // depth 0 and both are d-isolated.
  SupportCandidate closed;
  closed.level = 1;
  closed.depth = 0;
  closed.weights.insert(weight2(rsv, 2, 0, 0, 1));
  closed.weights.insert(weight2(rsv, 0, 0, 0, 1));
  closed.weights.insert(weight2(rsv, -2, 0, 0, 1));
  CHECK(integrable_support_rules(rsv, closed).empty());

  // Dropping the middle weight breaks closure with a named witness.
  SupportCandidate open = closed;
  open.weights.erase(weight2(rsv, 0, 0, 0, 1));
  auto violations = integrable_support_rules(rsv, open);
  REQUIRE_FALSE(violations.empty());
  CHECK(violations[0].kind == SupportViolation::Kind::string_closure);
  CHECK(violations[0].weight == weight2(rsv, 2, 0, 0, 1));

  // A full delta ladder of the window length is a termination violation.
  SupportCandidate ladder;
  ladder.level = 1;
  ladder.depth = 2;
  for (long m = 0; m <= 2; ++m) ladder.weights.insert(weight2(rsv, 0, 0, m, 1));
  bool found_ladder = false;
  for (const auto& v : integrable_support_rules(rsv, ladder))
    if (v.kind == SupportViolation::Kind::ladder_termination &&
        v.weight == weight2(rsv, 0, 0, 0, 1))
      found_ladder = true;
  CHECK(found_ladder);

  SupportCandidate mixed;
  mixed.level = 1;
  mixed.weights.insert(weight2(rsv, 0, 0, 0, 1));
  mixed.weights.insert(weight2(rsv, 0, 0, 0, 2));
  CHECK_THROWS_AS(validate_candidate(rsv, mixed), precondition_error);
}

TEST_CASE("obstruction engine: guards") {
  ResolvedSuper one = normalize_form(catalog("A(0,1)"));
  SupportCandidate s;
  s.level = 1;
  s.weights.insert(AffineWeight{FiniteWeight{qvec_zero(one.finite_rank)}, Rat(0), Rat(1)});
  CHECK_THROWS_AS(obstruction_run(one, s), precondition_error);

  ResolvedSuper two = normalize_form(catalog("B(1,1)"));
  SupportCandidate lvl0;
  lvl0.level = 0;
  lvl0.weights.insert(weight2(two, 0, 0, 0, 0));
  CHECK_THROWS_AS(obstruction_run(two, lvl0), precondition_error);
}

TEST_CASE("obstruction engine: empty candidate is consistent at depth") {
  ResolvedSuper rsv = normalize_form(catalog("B(1,1)"));
  SupportCandidate s;
  s.level = 1;
  s.depth = 2;
  ObstructionTrace t = obstruction_run(rsv, s);
  CHECK(t.consistent_at_depth);
  CHECK_FALSE(t.contradiction);
  CHECK(check_trace(rsv, s, t).ok);
}

TEST_CASE("obstruction engine: single weight refutes through the ladder") {
  ResolvedSuper rsv = normalize_form(catalog("B(1,1)"));
  SupportCandidate s;
  s.level = 1;
  s.depth = 6;
  s.weights.insert(weight2(rsv, 0, 0, 0, 1));
  ObstructionTrace t = obstruction_run(rsv, s);
  CHECK(t.contradiction);
  REQUIRE_FALSE(t.steps.empty());
  CHECK(t.steps.back().rule == TraceRule::heisenberg);
  CHECK(t.steps.back().params.at("m0") == 1);
  CHECK(check_trace(rsv, s, t).ok);
}

TEST_CASE("obstruction engine: a candidate violating the pure-delta sweep is pinpointed") {
  ResolvedSuper rsv = normalize_form(catalog("B(1,1)"));
  SupportCandidate s;
  s.level = 1;
  s.depth = 6;
  const AffineWeight lambda = weight2(rsv, 0, -1, 0, 1);
  s.weights.insert(lambda);
  s.weights.insert(weight2(rsv, 0, -1, -2, 1)); // lambda - 2 delta with r = 2
  ObstructionTrace t = obstruction_run(rsv, s);
  REQUIRE(t.contradiction);
  CHECK(t.steps.back().rule == TraceRule::drop_imaginary);
  CHECK(t.steps.back().params.at("s") == 2);
  CHECK(check_trace(rsv, s, t).ok);
}

TEST_CASE("trace checker rejects tampered traces") {
  ResolvedSuper rsv = normalize_form(catalog("B(1,1)"));
  SupportCandidate s;
  s.level = 1;
  s.depth = 4;
  s.weights.insert(weight2(rsv, 0, -1, 0, 1));
  s.weights.insert(weight2(rsv, 0, 1, -1, 1));
  ObstructionTrace t = obstruction_run(rsv, s);
  REQUIRE(t.contradiction);
  REQUIRE(check_trace(rsv, s, t).ok);

  ObstructionTrace wrong_subject = t;
  wrong_subject.steps.front().subject = weight2(rsv, 5, 5, 0, 1);
  CHECK_FALSE(check_trace(rsv, s, wrong_subject).ok);

  ObstructionTrace wrong_flag = t;
  wrong_flag.contradiction = false;
  wrong_flag.consistent_at_depth = true;
  CHECK_FALSE(check_trace(rsv, s, wrong_flag).ok);

  ObstructionTrace wrong_param = t;
  for (TraceStep& step : wrong_param.steps)
    if (step.rule == TraceRule::heisenberg) step.params["m0"] += 1;
  CHECK_FALSE(check_trace(rsv, s, wrong_param).ok);
}

TEST_CASE("randomized string-closed candidates always refute") {
  ResolvedSuper rsv = normalize_form(catalog("B(1,1)"));
  std::mt19937_64 rng(424242);
  for (int trial = 0; trial < 10; ++trial) {
    SupportCandidate cand = affkm_test::random_closed_candidate(rsv, rng, 4);
    REQUIRE_FALSE(cand.weights.empty());
    // The generator's output really is string-closed.
    for (const auto& v : integrable_support_rules(rsv, cand))
      CHECK(v.kind != SupportViolation::Kind::string_closure);
    ObstructionTrace t = obstruction_run(rsv, cand);
    CHECK(t.contradiction);
    TraceCheck chk = check_trace(rsv, cand, t);
    CHECK(chk.ok);
    if (!chk.ok)
      MESSAGE("bad step ", chk.bad_step, ": ", chk.reason);
  }
}
