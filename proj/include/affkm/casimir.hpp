#pragma once

#include <vector>

#include "affkm/weights.hpp"

namespace affkm {

/// The induced bilinear form on the affine weight space. It restricts to the
/// finite form on the lambda_bar block; delta and Lambda_0 are isotropic,
/// orthogonal to the finite block, and hyperbolically paired:
/// <delta, Lambda_0> = 1.
class AffineGram {
public:
  explicit AffineGram(const RootSystem& rs) : rs_(&rs) {}

  const RootSystem& rs() const { return *rs_; }

  /// <a, b> = (a_bar, b_bar) + a(d) b(K) + a(K) b(d).
  Rat pairing(const AffineWeight& a, const AffineWeight& b) const {
    return rs_->pair_ww(a.finite, b.finite) + a.d * b.level + a.level * b.d;
  }

private:
  const RootSystem* rs_;
};

/// The Weyl vector: value 1 on every simple affine coroot including
/// alpha_0^vee, with d-coefficient 0. Its level is the dual Coxeter number.
/// Requires form_sign = +1.
AffineWeight rho_weight(const RootSystem& rs);

/// 2<lambda + rho, beta> - (beta, beta) for beta in the positive affine root
/// lattice, beta != 0 (error otherwise): the Casimir eigenvalue separation
/// between lambda and lambda - beta.
Rat casimir_separation(const AffineGram& g, const AffineWeight& lambda,
                       const AffineRootCoeffs& beta);

/// a + 2<lambda + rho, beta> - (beta, beta): the predicted Casimir eigenvalue
/// on descendants shifted by -beta from a generalized eigenvector of
/// eigenvalue a. beta may have coefficients of any sign.
Rat casimir_shift(const AffineGram& g, const AffineWeight& lambda, const AffineRootCoeffs& beta,
                  const Rat& a);

struct PairAuditRow {
  AffineWeight lambda;
  AffineWeight mu;
  AffineRootCoeffs beta;
  Rat value;
};

struct PairAuditReport {
  bool all_nonzero = true;
  bool all_positive = true;
  std::vector<PairAuditRow> rows;
};

/// Scans every ordered pair of dominant weights (lambda, mu = lambda - beta)
/// in the support with beta a nonzero N-combination of the affine simple
/// roots, and records the separation 2<lambda+rho, beta> - (beta, beta).
/// Refuses supports of level < 1; lambda_top must belong to the support.
PairAuditReport primitive_pair_audit(const RootSystem& rs, const WeightSupport& support,
                                     const AffineWeight& lambda_top,
                                     Exec exec = default_exec());

} // namespace affkm
