#include "affkm/affine.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "affkm/errors.hpp"

namespace affkm {

AffineWeight zero_affine(const RootSystem& rs) {
  return {rs.zero_weight(), Rat(0), Rat(0)};
}

AffineWeight delta_weight(const RootSystem& rs) {
  return {rs.zero_weight(), Rat(1), Rat(0)};
}

AffineWeight lambda0_weight(const RootSystem& rs) {
  return {rs.zero_weight(), Rat(0), Rat(1)};
}

AffineWeight lift_finite(const FiniteWeight& w) {
  return {w, Rat(0), Rat(0)};
}

AffineWeight affine_root_weight(const RootSystem& rs, const AffineRealRoot& g) {
  return {rs.root_to_weight(g.alpha), Rat(g.n), Rat(0)};
}

AffineWeight alpha0_weight(const RootSystem& rs) {
  AffineWeight beta = lift_finite(rs.root_to_weight(rs.highest_root()));
  return delta_weight(rs) - beta;
}

AffineWeight affine_simple_root(const RootSystem& rs, int i) {
  if (i == 0) return alpha0_weight(rs);
  FiniteRoot a{std::vector<long>(rs.rank(), 0)};
  a.coords[i - 1] = 1;
  return lift_finite(rs.root_to_weight(a));
}

AffineCoroot affine_coroot(const RootSystem& rs, const AffineRealRoot& g) {
  CorootFunctional f = rs.coroot(g.alpha); // throws if alpha is not a root
  Rat k = Rat(2 * g.n) / rs.root_norm(g.alpha);
  return AffineCoroot{std::move(f), std::move(k)};
}

QVec affine_simple_values(const RootSystem& rs, const AffineWeight& w) {
  QVec vals(rs.rank() + 1);
  vals[0] = w.level - rs.eval_coroot(w.finite, rs.highest_root());
  for (int i = 1; i <= rs.rank(); ++i) vals[i] = w.finite.coords[i - 1];
  return vals;
}

bool is_dominant(const RootSystem& rs, const AffineWeight& w) {
  if (rs.form_sign() != 1)
    throw precondition_error("affine dominance requires the positive form normalization");
  if (!is_integer(w.level)) throw non_integral_level();
  for (const Rat& v : affine_simple_values(rs, w))
    if (!is_nonneg_integer(v)) return false;
  return true;
}

bool finite_leq0(const RootSystem& rs, const FiniteWeight& mu, const FiniteWeight& lambda) {
  QVec diff = rs.weight_to_root_coords(FiniteWeight{qvec_sub(lambda.coords, mu.coords)});
  for (const Rat& c : diff)
    if (!is_nonneg_integer(c)) return false;
  return true;
}

bool affine_leq(const RootSystem& rs, const AffineWeight& mu, const AffineWeight& lambda) {
  if (mu.level != lambda.level) return false;
  const Rat n0 = lambda.d - mu.d;
  if (!is_nonneg_integer(n0)) return false;
  // lambda - mu = n0 alpha_0 + sum_i n_i alpha_i and alpha_0 = delta - beta,
  // so the finite remainder must be (lambda_bar - mu_bar) + n0 beta.
  FiniteWeight beta_w = rs.root_to_weight(rs.highest_root());
  FiniteWeight rem{qvec_add(qvec_sub(lambda.finite.coords, mu.finite.coords),
                            qvec_scale(n0, beta_w.coords))};
  QVec coeffs = rs.weight_to_root_coords(rem);
  for (const Rat& c : coeffs)
    if (!is_nonneg_integer(c)) return false;
  return true;
}

AffineWeight affine_reflect(const RootSystem& rs, const AffineWeight& w, int i) {
  QVec vals = affine_simple_values(rs, w);
  if (vals[i] == 0) return w;
  AffineWeight root = affine_simple_root(rs, i);
  AffineWeight r = w;
  r.finite.coords = qvec_sub(r.finite.coords, qvec_scale(vals[i], root.finite.coords));
  r.d -= vals[i] * root.d;
  return r;
}

AffineWeight dominant_affine_representative(const RootSystem& rs, const AffineWeight& w) {
  if (!is_integer(w.level)) throw non_integral_level();
  if (w.level < 1)
    throw precondition_error("dominant chamber walk requires level >= 1");
  AffineWeight v = w;
  long guard = 0;
  const long cap = 1000000;
  for (;;) {
    QVec vals = affine_simple_values(rs, v);
    int neg = -1;
    for (int i = 0; i <= rs.rank(); ++i)
      if (vals[i] < 0) {
        neg = i;
        break;
      }
    if (neg < 0) return v;
    AffineWeight root = affine_simple_root(rs, neg);
    const Rat c = vals[neg];
    v.finite.coords = qvec_sub(v.finite.coords, qvec_scale(c, root.finite.coords));
    v.d -= c * root.d;
    if (++guard > cap)
      throw precondition_error("internal: affine dominance walk did not terminate");
  }
}

namespace {

std::vector<FiniteWeight> simple_root_weights(const RootSystem& rs) {
  std::vector<FiniteWeight> out;
  out.reserve(rs.rank());
  for (int i = 0; i < rs.rank(); ++i) {
    std::vector<long> e(rs.rank(), 0);
    e[i] = 1;
    out.push_back(rs.root_to_weight(FiniteRoot{e}));
  }
  return out;
}

// Dominant weights nu <=0 sigma, found by walking the saturated weight set
// of sigma downward by simple roots. The height cap starts at 2*rank and
// doubles until no candidate was rejected for height alone, which certifies
// the walk exhausted the (finite) set.
std::vector<FiniteWeight> dominant_downset(const RootSystem& rs, const FiniteWeight& sigma) {
  const std::vector<FiniteWeight> alpha_w = simple_root_weights(rs);
  for (long cap = 2 * rs.rank();; cap *= 2) {
    bool capped = false;
    std::map<FiniteWeight, long> seen{{sigma, 0}};
    std::deque<FiniteWeight> queue{sigma};
    while (!queue.empty()) {
      FiniteWeight v = queue.front();
      queue.pop_front();
      const long h = seen.at(v);
      for (int i = 0; i < rs.rank(); ++i) {
        FiniteWeight cand{qvec_sub(v.coords, alpha_w[i].coords)};
        if (seen.count(cand)) continue;
        if (h + 1 > cap) {
          capped = true;
          continue;
        }
        if (!finite_leq0(rs, rs.dominant_representative(cand), sigma)) continue;
        seen.emplace(cand, h + 1);
        queue.push_back(cand);
      }
    }
    if (capped) continue;
    std::vector<FiniteWeight> dominants;
    for (const auto& [w, h] : seen)
      if (rs.is_dominant(w)) dominants.push_back(w);
    return dominants;
  }
}

FiniteWeight minimal_in_downset(const RootSystem& rs, const std::vector<FiniteWeight>& dom) {
  std::vector<FiniteWeight> minima;
  for (const auto& mu : dom) {
    bool minimal = true;
    for (const auto& nu : dom) {
      if (nu == mu) continue;
      if (finite_leq0(rs, nu, mu)) {
        minimal = false;
        break;
      }
    }
    if (minimal) minima.push_back(mu);
  }
  if (minima.size() != 1)
    throw precondition_error("internal: coset minimal representative is not unique");
  return minima.front();
}

} // namespace

Coset coset_of(const RootSystem& rs, const FiniteWeight& w) {
  for (const Rat& c : w.coords)
    if (!is_integer(c)) throw precondition_error("coset_of: weight has non-integral coordinates");
  // Shift by the integer part of the root coordinates to land near the
  // origin, then conjugate to the dominant chamber; both moves stay in the
  // coset.
  QVec rc = rs.weight_to_root_coords(w);
  FiniteWeight shifted = w;
  const std::vector<FiniteWeight> alpha_w = simple_root_weights(rs);
  for (int i = 0; i < rs.rank(); ++i) {
    Rat f = rat_floor(rc[i]);
    if (f == 0) continue;
    shifted.coords = qvec_sub(shifted.coords, qvec_scale(f, alpha_w[i].coords));
  }
  FiniteWeight sigma = rs.dominant_representative(shifted);
  return Coset{minimal_in_downset(rs, dominant_downset(rs, sigma))};
}

std::vector<Coset> all_cosets(const RootSystem& rs) {
  std::set<Coset> seen{coset_of(rs, rs.zero_weight())};
  std::deque<Coset> queue(seen.begin(), seen.end());
  while (!queue.empty()) {
    Coset c = queue.front();
    queue.pop_front();
    for (int i = 0; i < rs.rank(); ++i) {
      FiniteWeight shifted{qvec_add(c.representative.coords, rs.fundamental_weight(i).coords)};
      Coset next = coset_of(rs, shifted);
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  if (static_cast<long>(seen.size()) != rs.coset_index())
    throw precondition_error("internal: coset enumeration disagrees with det(Cartan)");
  return {seen.begin(), seen.end()};
}

MinimalRepReport verify_minimal_reps(const RootSystem& rs) {
  if (rs.form_sign() != 1)
    throw precondition_error("minimal-representative survey requires the positive form");
  MinimalRepReport report;
  for (const Coset& c : all_cosets(rs)) {
    Rat v = rs.eval_coroot(c.representative, rs.highest_root());
    report.witnesses.push_back({c, c.representative, v});
    if (v != 0 && v != 1) report.all_in_01 = false;
  }
  return report;
}

} // namespace affkm
