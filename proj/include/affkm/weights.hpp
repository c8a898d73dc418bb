#pragma once

#include <map>
#include <optional>
#include <vector>

#include "affkm/affine.hpp"
#include "affkm/exec.hpp"

namespace affkm {

/// Coefficient vector over the affine simple roots alpha_0..alpha_n
/// (index 0 is alpha_0 = delta - beta).
using AffineRootCoeffs = std::vector<long>;

AffineWeight affine_coeffs_to_weight(const RootSystem& rs, const AffineRootCoeffs& c);

/// Finite truncation of a weight system: weight -> multiplicity, all entries
/// sharing one level. depth records the truncation bound: the maximum
/// alpha_0-coefficient of lambda - mu admitted when the support was built.
struct WeightSupport {
  std::map<AffineWeight, long> entries;
  long depth = 0;

  bool contains(const AffineWeight& w) const { return entries.count(w) > 0; }
  std::size_t size() const { return entries.size(); }
};

/// Membership in P(lambda) by dominant-conjugate reduction: true iff the
/// dominant affine-Weyl representative mu+ of mu satisfies mu+ <= lambda.
/// lambda must be dominant integral with level >= 1.
bool member(const RootSystem& rs, const AffineWeight& mu, const AffineWeight& lambda);

/// All mu in P(lambda) whose distance lambda - mu has alpha_0-coefficient
/// <= depth, with multiplicities from the Freudenthal recursion. The result
/// is closed under the finite Weyl group and multiplicities are constant on
/// its orbits.
WeightSupport enumerate_support(const RootSystem& rs, const AffineWeight& lambda, long depth,
                                Exec exec = default_exec());

/// Multiplicity of mu in the module with highest weight lambda; 0 iff mu is
/// not a weight. Runs the recursion truncated at mu's own depth.
long freudenthal_mult(const RootSystem& rs, const AffineWeight& lambda, const AffineWeight& mu);

struct Mu0Result {
  AffineWeight mu0;
  Rat s;
  bool member = false;
};

/// mu0 = mu0_bar + s delta + lambda(K) Lambda_0, where mu0_bar is the minimal
/// dominant representative of lambda's coset. Requires lambda dominant
/// integral of level >= 1 and lambda(d) - s a non-negative integer. The
/// returned member flag is evaluated through the membership oracle; the
/// construction predicts it to be true.
Mu0Result construct_mu0(const RootSystem& rs, const AffineWeight& lambda, const Rat& s);

/// Coefficient cone admitted for the eta quantifiers of the gap searches.
/// `integral` reads the order exactly as printed (coefficients in N over the
/// simple roots); `rational` admits weight-lattice elements whose simple-root
/// coefficients are non-negative rationals.
enum class GapCone { integral, rational };

struct GapOptions {
  GapCone eta0_cone = GapCone::integral;
  GapCone eta_cone = GapCone::integral;
};

/// Smallest eta0 > 0 (height, then leftmost-coordinate order) such that no
/// support weight sits at lambda + eta0 + eta for nonzero admissible eta,
/// at any delta shift. Candidates are searched up to height max(1, depth);
/// returns nullopt when every candidate in that region is blocked.
std::optional<FiniteWeight> find_gap_up(const RootSystem& rs, const WeightSupport& support,
                                        const AffineWeight& lambda, GapOptions opts = {});

/// Mirror image of find_gap_up with every order reversed.
std::optional<FiniteWeight> find_gap_down(const RootSystem& rs, const WeightSupport& support,
                                          const AffineWeight& lambda, GapOptions opts = {});

/// Partition by the affine root lattice: two weights land in one part iff
/// their difference is an integer combination of alpha_0..alpha_n. The parts
/// reconstruct the input.
std::vector<WeightSupport> coset_split(const RootSystem& rs, const WeightSupport& support);

struct RootGapAudit {
  bool ok = true;
  std::vector<AffineRealRoot> counterexamples;
};

/// Checks that no positive affine real root alpha with alpha > eta
/// (coefficientwise over alpha_0..alpha_n, strictly) has lambda + alpha in
/// the support; roots are scanned up to the support's truncation depth.
RootGapAudit audit_positive_root_gap(const RootSystem& rs, const WeightSupport& support,
                                     const AffineWeight& lambda, const AffineRootCoeffs& eta);

} // namespace affkm
