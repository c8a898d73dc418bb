#include "affkm/casimir.hpp"

#include <algorithm>

#include "affkm/errors.hpp"

namespace affkm {

AffineWeight rho_weight(const RootSystem& rs) {
  if (rs.form_sign() != 1)
    throw precondition_error("rho requires the positive form normalization");
  // Value 1 on alpha_1..alpha_n fixes the finite part; value 1 on
  // alpha_0^vee = K - beta^vee then forces level = 1 + rho_bar(beta^vee),
  // the dual Coxeter number.
  FiniteWeight bar{QVec(rs.rank(), Rat(1))};
  Rat level = 1 + rs.eval_coroot(bar, rs.highest_root());
  return AffineWeight{bar, Rat(0), level};
}

Rat casimir_separation(const AffineGram& g, const AffineWeight& lambda,
                       const AffineRootCoeffs& beta) {
  bool nonzero = false;
  for (long c : beta) {
    if (c < 0)
      throw precondition_error("separation requires beta in the positive affine root lattice");
    if (c != 0) nonzero = true;
  }
  if (!nonzero) throw precondition_error("separation requires beta != 0");
  return casimir_shift(g, lambda, beta, Rat(0));
}

Rat casimir_shift(const AffineGram& g, const AffineWeight& lambda, const AffineRootCoeffs& beta,
                  const Rat& a) {
  const AffineWeight bw = affine_coeffs_to_weight(g.rs(), beta);
  const AffineWeight shifted = lambda + rho_weight(g.rs());
  return a + 2 * g.pairing(shifted, bw) - g.pairing(bw, bw);
}

namespace {

struct Pair {
  const AffineWeight* hi;
  const AffineWeight* lo;
  AffineRootCoeffs beta;
};

void pair_values_serial(const AffineGram& g, const std::vector<Pair>& pairs,
                        std::vector<Rat>& values) {
  for (std::size_t i = 0; i < pairs.size(); ++i)
    values[i] = casimir_separation(g, *pairs[i].hi, pairs[i].beta);
}

void pair_values_parallel(const AffineGram& g, const std::vector<Pair>& pairs,
                          std::vector<Rat>& values) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(pairs.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i)
    values[static_cast<std::size_t>(i)] =
        casimir_separation(g, *pairs[static_cast<std::size_t>(i)].hi,
                           pairs[static_cast<std::size_t>(i)].beta);
}

} // namespace

PairAuditReport primitive_pair_audit(const RootSystem& rs, const WeightSupport& support,
                                     const AffineWeight& lambda_top, Exec exec) {
  if (!support.contains(lambda_top))
    throw precondition_error("pair audit requires the top weight to belong to the support");
  if (lambda_top.level < 1)
    throw precondition_error("pair audit requires level >= 1");

  std::vector<const AffineWeight*> dominant;
  for (const auto& [w, m] : support.entries) {
    (void)m;
    if (is_dominant(rs, w)) dominant.push_back(&w);
  }

  // Ordered pairs (hi, lo) with hi - lo a nonzero N-combination of the
  // affine simple roots; hi is the Casimir reference weight.
  std::vector<Pair> pairs;
  for (const AffineWeight* hi : dominant)
    for (const AffineWeight* lo : dominant) {
      if (hi == lo) continue;
      if (!affine_leq(rs, *lo, *hi)) continue;
      const Rat n0 = hi->d - lo->d;
      FiniteWeight beta_w = rs.root_to_weight(rs.highest_root());
      FiniteWeight rem{qvec_add(qvec_sub(hi->finite.coords, lo->finite.coords),
                                qvec_scale(n0, beta_w.coords))};
      QVec rc = rs.weight_to_root_coords(rem);
      AffineRootCoeffs beta(rs.rank() + 1, 0);
      beta[0] = static_cast<long>(n0.get_num().get_si());
      for (int i = 0; i < rs.rank(); ++i)
        beta[i + 1] = static_cast<long>(rc[i].get_num().get_si());
      pairs.push_back(Pair{hi, lo, std::move(beta)});
    }

  const AffineGram g(rs);
  std::vector<Rat> values(pairs.size());
  if (exec == Exec::parallel)
    pair_values_parallel(g, pairs, values);
  else
    pair_values_serial(g, pairs, values);

  PairAuditReport report;
  report.rows.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    report.rows.push_back(PairAuditRow{*pairs[i].hi, *pairs[i].lo, pairs[i].beta, values[i]});
    if (values[i] == 0) report.all_nonzero = false;
    if (values[i] <= 0) report.all_positive = false;
  }
  return report;
}

} // namespace affkm
