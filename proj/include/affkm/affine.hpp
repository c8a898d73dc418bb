#pragma once

#include <tuple>
#include <vector>

#include "affkm/root_system.hpp"

namespace affkm {

/// Affine weight in the canonical coordinates
///   lambda = lambda_bar + lambda(d) delta + lambda(K) Lambda_0,
/// stored as (finite part, delta coefficient, level). The decomposition is
/// unique, so this representation is lossless.
struct AffineWeight {
  FiniteWeight finite;
  Rat d;     // lambda(d), the delta coefficient
  Rat level; // lambda(K)

  bool operator==(const AffineWeight&) const = default;
  bool operator<(const AffineWeight& o) const {
    if (level != o.level) return level < o.level;
    if (d != o.d) return d < o.d;
    return finite < o.finite;
  }

  AffineWeight operator+(const AffineWeight& o) const {
    return {FiniteWeight{qvec_add(finite.coords, o.finite.coords)}, d + o.d, level + o.level};
  }
  AffineWeight operator-(const AffineWeight& o) const {
    return {FiniteWeight{qvec_sub(finite.coords, o.finite.coords)}, d - o.d, level - o.level};
  }
};

inline AffineWeight compose(FiniteWeight finite, Rat d, Rat level) {
  return AffineWeight{std::move(finite), std::move(d), std::move(level)};
}

inline std::tuple<FiniteWeight, Rat, Rat> decompose(const AffineWeight& w) {
  return {w.finite, w.d, w.level};
}

/// gamma = alpha + n delta with alpha a nonzero root of the finite system.
struct AffineRealRoot {
  FiniteRoot alpha;
  long n = 0;

  bool operator==(const AffineRealRoot&) const = default;
  bool operator<(const AffineRealRoot& o) const {
    if (n != o.n) return n < o.n;
    return alpha < o.alpha;
  }
};

/// gamma^vee = alpha^vee + (2n/(alpha,alpha)) K as a functional on affine weights.
struct AffineCoroot {
  CorootFunctional finite_part;
  Rat k_coeff;

  Rat eval(const AffineWeight& w) const {
    return finite_part.eval(w.finite) + k_coeff * w.level;
  }
};

AffineWeight zero_affine(const RootSystem& rs);
/// delta = (0, 1, 0); Lambda_0 = (0, 0, 1).
AffineWeight delta_weight(const RootSystem& rs);
AffineWeight lambda0_weight(const RootSystem& rs);
/// A finite weight extended by lambda(K) = lambda(d) = 0.
AffineWeight lift_finite(const FiniteWeight& w);
/// gamma as an element of the affine weight space.
AffineWeight affine_root_weight(const RootSystem& rs, const AffineRealRoot& g);
/// alpha_0 = delta - beta.
AffineWeight alpha0_weight(const RootSystem& rs);
/// Simple affine root alpha_i as a weight; i = 0..rank.
AffineWeight affine_simple_root(const RootSystem& rs, int i);

/// Throws precondition_error if gamma.alpha is not a root.
AffineCoroot affine_coroot(const RootSystem& rs, const AffineRealRoot& g);

/// lambda(alpha_i^vee) for i = 0..rank; index 0 is
/// alpha_0^vee = K - beta^vee, so the value is lambda(K) - lambda_bar(beta^vee).
QVec affine_simple_values(const RootSystem& rs, const AffineWeight& w);

/// Dominance against all n+1 simple affine coroots, values in the
/// non-negative integers. Requires form_sign = +1 and an integer level
/// (non_integral_level otherwise).
bool is_dominant(const RootSystem& rs, const AffineWeight& w);

/// True iff lambda - mu is an N-combination of alpha_0..alpha_n. The
/// expansion is unique through the basis {alpha_1..alpha_n, delta} with
/// alpha_0 = delta - beta: levels must agree, the delta gap is the alpha_0
/// coefficient, and the finite remainder must expand integrally.
bool affine_leq(const RootSystem& rs, const AffineWeight& mu, const AffineWeight& lambda);

/// Finite-direction order: lambda - mu an N-combination of alpha_1..alpha_n.
bool finite_leq0(const RootSystem& rs, const FiniteWeight& mu, const FiniteWeight& lambda);

/// Reflection at simple affine root i (i = 0 uses alpha_0).
AffineWeight affine_reflect(const RootSystem& rs, const AffineWeight& w, int i);

/// Walks the weight into the dominant chamber of the affine Weyl group.
/// Requires an integral weight of level >= 1.
AffineWeight dominant_affine_representative(const RootSystem& rs, const AffineWeight& w);

/// Coset of the finite weight lattice modulo the root lattice. The canonical
/// representative is the coset's minimal dominant weight, so coset equality
/// and minimality checks share one code path.
struct Coset {
  FiniteWeight representative;

  bool operator==(const Coset&) const = default;
  bool operator<(const Coset& o) const { return representative < o.representative; }
};

/// Throws precondition_error for non-integral weights.
Coset coset_of(const RootSystem& rs, const FiniteWeight& w);

inline const FiniteWeight& minimal_representative(const RootSystem&, const Coset& c) {
  return c.representative;
}

/// All det(Cartan) cosets, deterministically ordered by representative.
std::vector<Coset> all_cosets(const RootSystem& rs);

struct MinimalRepWitness {
  Coset coset;
  FiniteWeight rep;
  Rat beta_covalue; // rep evaluated on the highest-root coroot
};

struct MinimalRepReport {
  bool all_in_01 = true;
  std::vector<MinimalRepWitness> witnesses;
};

/// For every coset, computes the minimal dominant representative and its
/// value on beta^vee; the survey passes when every value is 0 or 1.
/// Requires form_sign = +1.
MinimalRepReport verify_minimal_reps(const RootSystem& rs);

} // namespace affkm
