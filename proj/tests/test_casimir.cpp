#include <doctest.h>

#include <random>

#include "affkm/casimir.hpp"

using namespace affkm;

namespace {

RootSystem a1() { return RootSystem{SimpleType{Series::A, 1}, +1}; }
RootSystem a2() { return RootSystem{SimpleType{Series::A, 2}, +1}; }

} // namespace

TEST_CASE("the induced form: null directions and the finite block") {
  RootSystem rs = a1();
  AffineGram g(rs);
  const AffineWeight dlt = delta_weight(rs);
  const AffineWeight l0 = lambda0_weight(rs);
  const AffineWeight w1 = lift_finite(rs.fundamental_weight(0));

  CHECK(g.pairing(dlt, dlt) == 0);
  CHECK(g.pairing(l0, l0) == 0);
  CHECK(g.pairing(l0, dlt) == 1);
  CHECK(g.pairing(dlt, l0) == 1);
  CHECK(g.pairing(w1, w1) == Rat(1, 2));
  CHECK(g.pairing(w1, dlt) == 0);
  CHECK(g.pairing(w1, l0) == 0);

  // <mu, delta> recovers the level.
  AffineWeight mixed{rs.fundamental_weight(0), Rat(-3), Rat(7)};
  CHECK(g.pairing(mixed, dlt) == 7);

  // Bilinear and symmetric on random rational inputs.
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> v(-6, 6);
  for (int t = 0; t < 100; ++t) {
    AffineWeight x{FiniteWeight{{Rat(v(rng), 2)}}, Rat(v(rng)), Rat(v(rng))};
    AffineWeight y{FiniteWeight{{Rat(v(rng), 2)}}, Rat(v(rng)), Rat(v(rng))};
    AffineWeight z{FiniteWeight{{Rat(v(rng), 2)}}, Rat(v(rng)), Rat(v(rng))};
    CHECK(g.pairing(x, y) == g.pairing(y, x));
    CHECK(g.pairing(x + y, z) == g.pairing(x, z) + g.pairing(y, z));
  }
}

TEST_CASE("rho: value one on every simple affine coroot") {
  RootSystem rs1 = a1();
  const AffineWeight rho1 = rho_weight(rs1);
  CHECK(rho1.finite == rs1.fundamental_weight(0));
  CHECK(rho1.level == 2); // dual Coxeter number of the rank-1 system
  CHECK(rho1.d == 0);
  CHECK(affine_simple_values(rs1, rho1) == QVec{Rat(1), Rat(1)});

  RootSystem rs2 = a2();
  CHECK(rho_weight(rs2).level == 3);
  for (const SimpleType& t : {SimpleType{Series::B, 2}, SimpleType{Series::G, 2}}) {
    RootSystem rs(t, +1);
    QVec vals = affine_simple_values(rs, rho_weight(rs));
    for (const Rat& v : vals) CHECK(v == 1);
  }

  RootSystem neg(SimpleType{Series::A, 1}, -1);
  CHECK_THROWS_AS(rho_weight(neg), precondition_error);
}

TEST_CASE("casimir separation on the rank-1 affine system") {
  RootSystem rs = a1();
  AffineGram g(rs);
  const AffineWeight l0 = lambda0_weight(rs);

  CHECK(casimir_separation(g, l0, AffineRootCoeffs{1, 1}) == 6);  // beta = delta
  CHECK(casimir_separation(g, l0, AffineRootCoeffs{1, 0}) == 2);  // beta = alpha_0
  CHECK_THROWS_AS(casimir_separation(g, l0, AffineRootCoeffs{0, 0}), precondition_error);
  CHECK_THROWS_AS(casimir_separation(g, l0, AffineRootCoeffs{-1, 0}), precondition_error);

  // Boundary: lambda flat against alpha_1 makes the alpha_1 separation vanish,
  // and indeed lambda - alpha_1 is then not dominant.
  const AffineWeight flat{rs.zero_weight(), Rat(0), Rat(5)};
  CHECK(casimir_separation(g, flat, AffineRootCoeffs{0, 1}) == 0);
  const AffineWeight dropped = flat - lift_finite(rs.root_to_weight(FiniteRoot{{1}}));
  CHECK_FALSE(is_dominant(rs, dropped));
}

TEST_CASE("casimir shift: base case and additivity across intermediate weights") {
  RootSystem rs = a1();
  AffineGram g(rs);
  const AffineWeight l0 = lambda0_weight(rs);

  CHECK(casimir_shift(g, l0, AffineRootCoeffs{0, 0}, Rat(5)) == 5);
  CHECK(casimir_shift(g, l0, AffineRootCoeffs{1, 1}, Rat(0)) ==
        casimir_separation(g, l0, AffineRootCoeffs{1, 1}));

  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> v(-3, 3);
  for (int t = 0; t < 200; ++t) {
    AffineWeight lambda{FiniteWeight{{Rat(v(rng))}}, Rat(v(rng)), Rat(v(rng) + 4)};
    AffineRootCoeffs b1{v(rng), v(rng)};
    AffineRootCoeffs b2{v(rng), v(rng)};
    const Rat a(v(rng));
    const Rat step1 = casimir_shift(g, lambda, b1, a);
    const AffineWeight mid = lambda - affine_coeffs_to_weight(rs, b1);
    const Rat step2 = casimir_shift(g, mid, b2, step1);
    AffineRootCoeffs b12{b1[0] + b2[0], b1[1] + b2[1]};
    CHECK(step2 == casimir_shift(g, lambda, b12, a));
  }
}

TEST_CASE("pair audit over truncated supports") {
  RootSystem rs = a1();
  const AffineWeight l0 = lambda0_weight(rs);
  const WeightSupport s = enumerate_support(rs, l0, 2);
  PairAuditReport rep = primitive_pair_audit(rs, s, l0);
  CHECK(rep.all_nonzero);
  CHECK(rep.all_positive);
  CHECK(rep.rows.size() == 3); // L0, L0-delta, L0-2delta: three ordered pairs
  for (const PairAuditRow& row : rep.rows) CHECK(row.value > 0);

  WeightSupport single;
  single.depth = 0;
  single.entries.emplace(l0, 1);
  CHECK(primitive_pair_audit(rs, single, l0).rows.empty());

  WeightSupport level0;
  level0.depth = 0;
  level0.entries.emplace(zero_affine(rs), 1);
  CHECK_THROWS_AS(primitive_pair_audit(rs, level0, zero_affine(rs)), precondition_error);
}

TEST_CASE("separation is strictly positive on dominant pairs at small rank") {
  for (const SimpleType& t : {SimpleType{Series::A, 1}, SimpleType{Series::A, 2},
                              SimpleType{Series::B, 2}}) {
    RootSystem rs(t, +1);
    AffineGram g(rs);
    for (long level = 1; level <= 2; ++level) {
      AffineWeight top = lambda0_weight(rs);
      top.level = level;
      const WeightSupport s = enumerate_support(rs, top, 2);
      PairAuditReport rep = primitive_pair_audit(rs, s, top);
      CHECK(rep.all_positive);
    }
  }
}
