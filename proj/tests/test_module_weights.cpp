#include <doctest.h>

#include <map>
#include <vector>

#include "affkm/weights.hpp"

using namespace affkm;

namespace {

RootSystem a1() { return RootSystem{SimpleType{Series::A, 1}, +1}; }
RootSystem a2() { return RootSystem{SimpleType{Series::A, 2}, +1}; }

/// Partitions with `colors` colors: coefficient of q^m in
/// prod_{n>=1} (1-q^n)^(-colors). Used as the independent multiplicity
/// oracle for the level-one modules of the simply laced types.
std::vector<long> colored_partitions(long colors, long max_m) {
  std::vector<long> ways(max_m + 1, 0);
  ways[0] = 1;
  for (long part = 1; part <= max_m; ++part)
    for (long color = 0; color < colors; ++color)
      for (long m = part; m <= max_m; ++m) ways[m] += ways[m - part];
  return ways;
}

/// Expected truncated support of the level-one module with highest weight
/// Lambda_0 for a simply laced system: weights Lambda_0 + gamma - m delta
/// with gamma in the root lattice and multiplicity p_rank(m - (gamma,gamma)/2).
std::map<AffineWeight, long> level_one_oracle(const RootSystem& rs, long depth) {
  const auto part = colored_partitions(rs.rank(), depth);
  std::map<AffineWeight, long> expected;
  std::vector<long> c(rs.rank(), -4);
  auto next = [&]() {
    for (int i = 0; i < rs.rank(); ++i) {
      if (++c[i] <= 4) return true;
      c[i] = -4;
    }
    return false;
  };
  do {
    FiniteRoot gamma{c};
    const Rat half_norm = rs.pair_rr(gamma, gamma) / 2;
    if (!is_integer(half_norm)) continue;
    const long hn = static_cast<long>(half_norm.get_num().get_si());
    for (long m = 0; m <= depth; ++m) {
      const long arg = m - hn;
      if (arg < 0 || arg > depth) continue;
      if (part[arg] == 0) continue;
      AffineWeight w{rs.root_to_weight(gamma), Rat(-m), Rat(1)};
      expected[w] = part[arg];
    }
  } while (next());
  return expected;
}

} // namespace

TEST_CASE("membership by dominant-conjugate reduction") {
  RootSystem rs = a1();
  const AffineWeight l0 = lambda0_weight(rs);
  const AffineWeight dlt = delta_weight(rs);
  const AffineWeight alpha1 = lift_finite(rs.root_to_weight(FiniteRoot{{1}}));

  CHECK(member(rs, l0 - dlt, l0));
  CHECK(member(rs, l0, l0));
  CHECK_FALSE(member(rs, l0 + alpha1, l0));
  CHECK_FALSE(member(rs, l0 - alpha1, l0)); // Weyl image of Lambda_0 + alpha_1
  CHECK(member(rs, l0 - dlt + alpha1, l0));

  CHECK_THROWS_AS(member(rs, l0, lift_finite(rs.fundamental_weight(0))), precondition_error);
}

TEST_CASE("level-one supports match the colored-partition oracle exactly") {
  for (auto [rs, depth] : {std::pair{a1(), 4L}, std::pair{a2(), 3L}}) {
    const WeightSupport support = enumerate_support(rs, lambda0_weight(rs), depth);
    const auto expected = level_one_oracle(rs, depth);
    REQUIRE(support.entries.size() == expected.size());
    for (const auto& [w, m] : expected) {
      auto it = support.entries.find(w);
      REQUIRE(it != support.entries.end());
      CHECK(it->second == m);
    }
  }
}

TEST_CASE("depth-zero support of the basic module is the top weight alone") {
  RootSystem rs = a1();
  const WeightSupport s = enumerate_support(rs, lambda0_weight(rs), 0);
  REQUIRE(s.entries.size() == 1);
  CHECK(s.entries.begin()->first == lambda0_weight(rs));
  CHECK(s.entries.begin()->second == 1);
}

TEST_CASE("supports are closed under the finite Weyl group with constant multiplicity") {
  RootSystem rs = a2();
  const AffineWeight top = lambda0_weight(rs) + lift_finite(rs.fundamental_weight(0));
  REQUIRE(is_dominant(rs, top));
  const WeightSupport s = enumerate_support(rs, top, 1);
  for (int i = 1; i <= rs.rank(); ++i)
    for (const auto& [w, m] : s.entries) {
      const AffineWeight img = affine_reflect(rs, w, i);
      auto it = s.entries.find(img);
      REQUIRE(it != s.entries.end());
      CHECK(it->second == m);
    }
}

TEST_CASE("freudenthal multiplicity endpoints") {
  RootSystem rs = a1();
  const AffineWeight l0 = lambda0_weight(rs);
  CHECK(freudenthal_mult(rs, l0, l0) == 1);
  CHECK(freudenthal_mult(rs, l0, l0 + delta_weight(rs)) == 0);
  CHECK(freudenthal_mult(rs, l0, l0 - delta_weight(rs)) == 1);
  const AffineWeight deep{rs.zero_weight(), Rat(-2), Rat(1)};
  CHECK(freudenthal_mult(rs, l0, deep) == 2); // p(2)
  const AffineWeight off{rs.root_to_weight(FiniteRoot{{1}}), Rat(-1), Rat(1)};
  CHECK(freudenthal_mult(rs, l0, off) == 1); // p(1 - 1^2) = p(0)
}

TEST_CASE("membership and multiplicity agree on and off the support") {
  RootSystem rs = a1();
  const AffineWeight top = lambda0_weight(rs);
  const WeightSupport s = enumerate_support(rs, top, 2);
  for (const auto& [w, m] : s.entries) {
    CHECK(member(rs, w, top));
    CHECK(freudenthal_mult(rs, top, w) == m);
  }
  // Neighbours of support weights that stayed out are non-members.
  const AffineWeight alpha1 = lift_finite(rs.root_to_weight(FiniteRoot{{1}}));
  for (const auto& [w, m] : s.entries) {
    (void)m;
    for (const AffineWeight& probe : {w + alpha1, w - alpha1}) {
      if (top.d - probe.d > 2 || s.contains(probe)) continue;
      CHECK_FALSE(member(rs, probe, top));
      CHECK(freudenthal_mult(rs, top, probe) == 0);
    }
  }
}

TEST_CASE("mu0 construction") {
  RootSystem rs = a1();
  const AffineWeight l0 = lambda0_weight(rs);

  Mu0Result r0 = construct_mu0(rs, l0, Rat(0));
  CHECK(r0.mu0 == l0);
  CHECK(r0.member);

  Mu0Result r1 = construct_mu0(rs, l0 + lift_finite(rs.fundamental_weight(0)), Rat(0));
  CHECK(r1.mu0.finite == rs.fundamental_weight(0));
  CHECK(r1.member);

  Mu0Result r2 = construct_mu0(rs, l0, Rat(-1));
  CHECK(r2.mu0 == l0 - delta_weight(rs));
  CHECK(r2.member);

  CHECK_THROWS_AS(construct_mu0(rs, l0, Rat(1)), precondition_error);      // lambda(d)-s = -1
  CHECK_THROWS_AS(construct_mu0(rs, l0, Rat(1, 2)), precondition_error);   // not an integer
  CHECK_THROWS_AS(construct_mu0(rs, lift_finite(rs.fundamental_weight(0)), Rat(0)),
                  precondition_error); // level 0
}

TEST_CASE("upward gap search") {
  RootSystem rs = a1();
  const AffineWeight l0 = lambda0_weight(rs);

  WeightSupport single;
  single.depth = 0;
  single.entries.emplace(l0, 1);
  auto g = find_gap_up(rs, single, l0);
  REQUIRE(g.has_value());
  CHECK(*g == rs.root_to_weight(FiniteRoot{{1}})); // alpha_1

  const WeightSupport s = enumerate_support(rs, l0, 3);
  auto g2 = find_gap_up(rs, s, l0);
  REQUIRE(g2.has_value());
  CHECK(*g2 == rs.root_to_weight(FiniteRoot{{1}}));

  // A support that fills the whole cone above lambda out to the truncation
  // boundary blocks every candidate in the search region.
  WeightSupport cone;
  cone.depth = 2;
  cone.entries.emplace(l0, 1);
  for (long c = 1; c <= 3; ++c)
    cone.entries.emplace(l0 + AffineWeight{rs.root_to_weight(FiniteRoot{{c}}), Rat(0), Rat(0)},
                         1);
  CHECK_FALSE(find_gap_up(rs, cone, l0).has_value());

  WeightSupport missing;
  missing.depth = 0;
  missing.entries.emplace(l0 - delta_weight(rs), 1);
  CHECK_THROWS_AS(find_gap_up(rs, missing, l0), precondition_error);
}

TEST_CASE("downward gap search mirrors the upward one") {
  RootSystem rs = a1();
  const AffineWeight l0 = lambda0_weight(rs);

  WeightSupport single;
  single.depth = 0;
  single.entries.emplace(l0, 1);
  auto g = find_gap_down(rs, single, l0);
  REQUIRE(g.has_value());
  CHECK(g->coords == qvec_scale(Rat(-1), rs.root_to_weight(FiniteRoot{{1}}).coords));

  const WeightSupport s = enumerate_support(rs, l0, 2);
  // The single dominant deepest weight still admits a downward gap.
  auto g2 = find_gap_down(rs, s, l0);
  CHECK(g2.has_value());

  WeightSupport cone;
  cone.depth = 2;
  cone.entries.emplace(l0, 1);
  for (long c = 1; c <= 3; ++c)
    cone.entries.emplace(l0 - AffineWeight{rs.root_to_weight(FiniteRoot{{c}}), Rat(0), Rat(0)},
                         1);
  CHECK_FALSE(find_gap_down(rs, cone, l0).has_value());
}

TEST_CASE("gap search with the rational cone admits weight-lattice candidates") {
  RootSystem rs = a1();
  const AffineWeight l0 = lambda0_weight(rs);
  WeightSupport single;
  single.depth = 0;
  single.entries.emplace(l0, 1);
  GapOptions opts;
  opts.eta0_cone = GapCone::rational;
  auto g = find_gap_up(rs, single, l0, opts);
  REQUIRE(g.has_value());
  // omega_1 has root coordinate 1/2: the lowest admissible height.
  CHECK(*g == rs.fundamental_weight(0));
}

TEST_CASE("coset split partitions by the affine root lattice") {
  RootSystem rs = a1();
  const AffineWeight l0 = lambda0_weight(rs);

  WeightSupport s;
  s.depth = 1;
  s.entries.emplace(l0, 1);
  s.entries.emplace(l0 - delta_weight(rs), 1);
  CHECK(coset_split(rs, s).size() == 1);

  WeightSupport two;
  two.depth = 0;
  two.entries.emplace(l0, 1);
  two.entries.emplace(l0 + lift_finite(rs.fundamental_weight(0)), 1);
  auto parts = coset_split(rs, two);
  CHECK(parts.size() == 2);
  std::size_t total = 0;
  for (const auto& p : parts) total += p.entries.size();
  CHECK(total == two.entries.size());

  WeightSupport empty;
  CHECK(coset_split(rs, empty).empty());
}

TEST_CASE("positive-root gap audit") {
  RootSystem rs = a1();
  const AffineWeight l0 = lambda0_weight(rs);

  const WeightSupport s = enumerate_support(rs, l0, 3);
  CHECK(audit_positive_root_gap(rs, s, l0, AffineRootCoeffs{0, 0}).ok);

  WeightSupport bad;
  bad.depth = 2;
  bad.entries.emplace(l0, 1);
  bad.entries.emplace(l0 + AffineWeight{rs.root_to_weight(FiniteRoot{{1}}), Rat(1), Rat(0)}, 1);
  auto audit = audit_positive_root_gap(rs, bad, l0, AffineRootCoeffs{0, 1}); // eta = alpha_1
  CHECK_FALSE(audit.ok);
  REQUIRE(audit.counterexamples.size() == 1);
  CHECK(audit.counterexamples[0] == AffineRealRoot{FiniteRoot{{1}}, 1});

  WeightSupport single;
  single.depth = 0;
  single.entries.emplace(l0, 1);
  CHECK(audit_positive_root_gap(rs, single, l0, AffineRootCoeffs{1, 0}).ok);
}
