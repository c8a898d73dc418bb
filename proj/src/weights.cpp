#include "affkm/weights.hpp"

#include <algorithm>
#include <deque>
#include <tuple>

#include "affkm/casimir.hpp"
#include "affkm/errors.hpp"

namespace affkm {

namespace {

AffineWeight scale_weight(const Rat& c, const AffineWeight& w) {
  return {FiniteWeight{qvec_scale(c, w.finite.coords)}, c * w.d, c * w.level};
}

long to_long(const Rat& q) {
  if (!is_integer(q)) throw precondition_error("internal: expected an integer rational");
  return static_cast<long>(q.get_num().get_si());
}

/// Total coefficient sum of lambda - mu over alpha_0..alpha_n; requires
/// mu <= lambda.
long drop_height(const RootSystem& rs, const AffineWeight& lambda, const AffineWeight& mu) {
  const Rat n0 = lambda.d - mu.d;
  FiniteWeight beta_w = rs.root_to_weight(rs.highest_root());
  FiniteWeight rem{qvec_add(qvec_sub(lambda.finite.coords, mu.finite.coords),
                            qvec_scale(n0, beta_w.coords))};
  Rat h = n0;
  for (const Rat& c : rs.weight_to_root_coords(rem)) h += c;
  return to_long(h);
}

// -- membership filter: data-parallel kernel with a serial reference -------

void filter_members_serial(const RootSystem& rs, const std::vector<AffineWeight>& cands,
                           const AffineWeight& lambda, std::vector<char>& flags) {
  for (std::size_t i = 0; i < cands.size(); ++i)
    flags[i] = member(rs, cands[i], lambda) ? 1 : 0;
}

void filter_members_parallel(const RootSystem& rs, const std::vector<AffineWeight>& cands,
                             const AffineWeight& lambda, std::vector<char>& flags) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(cands.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i)
    flags[static_cast<std::size_t>(i)] =
        member(rs, cands[static_cast<std::size_t>(i)], lambda) ? 1 : 0;
}

long lookup_mult(const RootSystem& rs, const std::map<AffineWeight, long>& dominant_mults,
                 const AffineWeight& nu) {
  auto it = dominant_mults.find(dominant_affine_representative(rs, nu));
  return it == dominant_mults.end() ? 0 : it->second;
}

/// One Freudenthal step: multiplicity of the dominant weight mu given the
/// multiplicities of everything strictly closer to lambda.
long freudenthal_one(const RootSystem& rs, const AffineGram& g, const AffineWeight& lambda,
                     const AffineWeight& rho, const AffineWeight& mu,
                     const std::map<AffineWeight, long>& dominant_mults) {
  const long depth_mu = to_long(lambda.d - mu.d);
  Rat acc(0);

  // Real positive roots alpha_bar + k delta, each of multiplicity one.
  for (long k = 0; k <= depth_mu; ++k) {
    const auto& alphas = (k == 0) ? rs.positive_roots() : rs.roots();
    for (const FiniteRoot& a : alphas) {
      const AffineWeight gamma{rs.root_to_weight(a), Rat(k), Rat(0)};
      for (long j = 1;; ++j) {
        const AffineWeight nu = mu + scale_weight(Rat(j), gamma);
        if (!affine_leq(rs, nu, lambda)) break;
        const long m = lookup_mult(rs, dominant_mults, nu);
        if (m != 0) acc += g.pairing(nu, gamma) * m;
      }
    }
  }

  // Imaginary roots k delta with multiplicity rank; <nu, k delta> = k level.
  for (long k = 1; k <= depth_mu; ++k) {
    const AffineWeight gamma{rs.zero_weight(), Rat(k), Rat(0)};
    for (long j = 1;; ++j) {
      const AffineWeight nu = mu + scale_weight(Rat(j), gamma);
      if (!affine_leq(rs, nu, lambda)) break;
      const long m = lookup_mult(rs, dominant_mults, nu);
      if (m != 0) acc += Rat(k) * nu.level * Rat(m) * Rat(rs.rank());
    }
  }

  const AffineWeight ls = lambda + rho;
  const AffineWeight ms = mu + rho;
  const Rat denom = g.pairing(ls, ls) - g.pairing(ms, ms);
  if (denom <= 0)
    throw precondition_error("internal: Freudenthal divisor is not positive");
  const Rat m = 2 * acc / denom;
  if (!is_nonneg_integer(m))
    throw precondition_error("internal: Freudenthal recursion produced a non-integer");
  return to_long(m);
}

void layer_mults_serial(const RootSystem& rs, const AffineGram& g, const AffineWeight& lambda,
                        const AffineWeight& rho, const std::vector<AffineWeight>& layer,
                        const std::map<AffineWeight, long>& dominant_mults,
                        std::vector<long>& out) {
  for (std::size_t i = 0; i < layer.size(); ++i)
    out[i] = freudenthal_one(rs, g, lambda, rho, layer[i], dominant_mults);
}

void layer_mults_parallel(const RootSystem& rs, const AffineGram& g, const AffineWeight& lambda,
                          const AffineWeight& rho, const std::vector<AffineWeight>& layer,
                          const std::map<AffineWeight, long>& dominant_mults,
                          std::vector<long>& out) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(layer.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] =
        freudenthal_one(rs, g, lambda, rho, layer[static_cast<std::size_t>(i)], dominant_mults);
}

} // namespace

AffineWeight affine_coeffs_to_weight(const RootSystem& rs, const AffineRootCoeffs& c) {
  if (c.size() != static_cast<std::size_t>(rs.rank()) + 1)
    throw precondition_error("affine coefficient vector has wrong length");
  AffineWeight w = zero_affine(rs);
  for (int i = 0; i <= rs.rank(); ++i) {
    if (c[i] == 0) continue;
    w = w + scale_weight(Rat(c[i]), affine_simple_root(rs, i));
  }
  return w;
}

bool member(const RootSystem& rs, const AffineWeight& mu, const AffineWeight& lambda) {
  if (!is_dominant(rs, lambda) || lambda.level < 1)
    throw precondition_error("membership requires a dominant integral highest weight of level >= 1");
  if (mu.level != lambda.level) return false;
  for (const Rat& c : mu.finite.coords)
    if (!is_integer(c)) return false;
  if (!is_integer(lambda.d - mu.d)) return false;
  return affine_leq(rs, dominant_affine_representative(rs, mu), lambda);
}

WeightSupport enumerate_support(const RootSystem& rs, const AffineWeight& lambda, long depth,
                                Exec exec) {
  if (!is_dominant(rs, lambda))
    throw precondition_error("support enumeration requires a dominant integral highest weight");
  if (lambda.level < 1) throw precondition_error("support enumeration requires level >= 1");
  if (depth < 0) throw precondition_error("truncation depth must be >= 0");

  std::vector<AffineWeight> simple;
  for (int i = 0; i <= rs.rank(); ++i) simple.push_back(affine_simple_root(rs, i));

  // Discover the support: walk downward by simple affine roots, keeping the
  // alpha_0-coefficient of lambda - mu within the truncation. Saturation of
  // highest-weight supports guarantees the walk reaches every member.
  std::set<AffineWeight> seen{lambda};
  std::vector<AffineWeight> frontier{lambda};
  while (!frontier.empty()) {
    std::vector<AffineWeight> cands;
    std::set<AffineWeight> dedupe;
    for (const AffineWeight& nu : frontier)
      for (int i = 0; i <= rs.rank(); ++i) {
        AffineWeight c = nu - simple[i];
        if (lambda.d - c.d > depth) continue;
        if (seen.count(c) || !dedupe.insert(c).second) continue;
        cands.push_back(c);
      }
    std::vector<char> flags(cands.size(), 0);
    if (exec == Exec::parallel)
      filter_members_parallel(rs, cands, lambda, flags);
    else
      filter_members_serial(rs, cands, lambda, flags);
    frontier.clear();
    for (std::size_t i = 0; i < cands.size(); ++i)
      if (flags[i]) {
        seen.insert(cands[i]);
        frontier.push_back(cands[i]);
      }
  }

  // Freudenthal pass over the dominant members, nearest to lambda first.
  // Weights at equal distance are independent, which is what makes the
  // per-layer loop data-parallel.
  const AffineGram g(rs);
  const AffineWeight rho = rho_weight(rs);
  std::map<long, std::vector<AffineWeight>> layers;
  for (const AffineWeight& w : seen)
    if (is_dominant(rs, w)) layers[drop_height(rs, lambda, w)].push_back(w);

  std::map<AffineWeight, long> dominant_mults;
  for (const auto& [h, layer] : layers) {
    if (h == 0) {
      for (const AffineWeight& w : layer) dominant_mults[w] = 1;
      continue;
    }
    std::vector<long> out(layer.size(), 0);
    if (exec == Exec::parallel)
      layer_mults_parallel(rs, g, lambda, rho, layer, dominant_mults, out);
    else
      layer_mults_serial(rs, g, lambda, rho, layer, dominant_mults, out);
    for (std::size_t i = 0; i < layer.size(); ++i) dominant_mults[layer[i]] = out[i];
  }

  WeightSupport support;
  support.depth = depth;
  for (const AffineWeight& w : seen) {
    const long m = lookup_mult(rs, dominant_mults, w);
    if (m <= 0)
      throw precondition_error("internal: support member received multiplicity 0");
    support.entries.emplace(w, m);
  }
  return support;
}

long freudenthal_mult(const RootSystem& rs, const AffineWeight& lambda, const AffineWeight& mu) {
  if (!member(rs, mu, lambda)) return 0;
  const long depth = to_long(lambda.d - dominant_affine_representative(rs, mu).d);
  WeightSupport s = enumerate_support(rs, lambda, depth);
  auto it = s.entries.find(mu);
  return it == s.entries.end() ? 0 : it->second;
}

Mu0Result construct_mu0(const RootSystem& rs, const AffineWeight& lambda, const Rat& s) {
  if (!is_dominant(rs, lambda))
    throw precondition_error("mu0 construction requires a dominant integral highest weight");
  if (lambda.level < 1) throw precondition_error("mu0 construction requires level >= 1");
  if (!is_nonneg_integer(lambda.d - s))
    throw precondition_error("lambda(d) - s must be a non-negative integer");
  const Coset c = coset_of(rs, lambda.finite);
  AffineWeight mu0{c.representative, s, lambda.level};
  return Mu0Result{mu0, s, member(rs, mu0, lambda)};
}

namespace {

struct GapCandidate {
  QVec rc;       // simple-root coordinates, all >= 0 before any negation
  FiniteWeight w;
  Rat height;
};

void gen_integral(const RootSystem& rs, long hmax, std::vector<GapCandidate>& out) {
  std::vector<long> c(rs.rank(), 0);
  // All vectors with 1 <= sum <= hmax.
  auto rec = [&](auto&& self, int idx, long remaining) -> void {
    if (idx == rs.rank()) {
      long sum = 0;
      for (long x : c) sum += x;
      if (sum == 0) return;
      GapCandidate g;
      g.rc.assign(c.begin(), c.end());
      FiniteRoot r{c};
      g.w = rs.root_to_weight(r);
      g.height = sum;
      out.push_back(std::move(g));
      return;
    }
    for (long v = 0; v <= remaining; ++v) {
      c[idx] = v;
      self(self, idx + 1, remaining - v);
    }
    c[idx] = 0;
  };
  rec(rec, 0, hmax);
}

void gen_rational(const RootSystem& rs, long hmax, std::vector<GapCandidate>& out) {
  // Weight-lattice elements with simple-root coordinates in [0, hmax]^n.
  // Fundamental coordinates of such elements are bounded by the column sums
  // of the Cartan matrix.
  const int n = rs.rank();
  std::vector<long> bound(n, 0);
  for (int j = 0; j < n; ++j) {
    long s = 0;
    for (int i = 0; i < n; ++i) s += std::abs(rs.cartan()[i][j]);
    bound[j] = hmax * s;
  }
  std::vector<long> wcoords(n, 0);
  auto rec = [&](auto&& self, int idx) -> void {
    if (idx == n) {
      FiniteWeight w{QVec(wcoords.begin(), wcoords.end())};
      QVec rc = rs.weight_to_root_coords(w);
      Rat h(0);
      for (const Rat& x : rc) {
        if (x < 0) return;
        h += x;
      }
      if (h == 0 || h > hmax) return;
      out.push_back(GapCandidate{std::move(rc), std::move(w), std::move(h)});
      return;
    }
    for (long v = -bound[idx]; v <= bound[idx]; ++v) {
      wcoords[idx] = v;
      self(self, idx + 1);
    }
    wcoords[idx] = 0;
  };
  rec(rec, 0);
}

std::vector<GapCandidate> gap_candidates(const RootSystem& rs, GapCone cone, long hmax) {
  std::vector<GapCandidate> out;
  if (cone == GapCone::integral)
    gen_integral(rs, hmax, out);
  else
    gen_rational(rs, hmax, out);
  // Lowest height first; ties go to the candidate with more weight on the
  // earlier simple roots.
  std::sort(out.begin(), out.end(), [](const GapCandidate& a, const GapCandidate& b) {
    if (a.height != b.height) return a.height < b.height;
    return b.rc < a.rc;
  });
  return out;
}

bool eta_blocks(const RootSystem& rs, const FiniteWeight& xi, GapCone cone, bool downward) {
  // xi is nu_bar - lambda_bar - eta0; it blocks the candidate when it is a
  // nonzero admissible eta of the right sign.
  if (qvec_is_zero(xi.coords)) return false;
  if (cone == GapCone::rational)
    for (const Rat& c : xi.coords)
      if (!is_integer(c)) return false;
  for (const Rat& c : rs.weight_to_root_coords(xi)) {
    if (cone == GapCone::integral && !is_integer(c)) return false;
    if (!downward && c < 0) return false;
    if (downward && c > 0) return false;
  }
  return true;
}

std::optional<FiniteWeight> find_gap(const RootSystem& rs, const WeightSupport& support,
                                     const AffineWeight& lambda, GapOptions opts, bool downward) {
  if (!support.contains(lambda))
    throw precondition_error("gap search requires lambda to belong to the support");
  const long hmax = std::max<long>(1, support.depth);
  for (const GapCandidate& cand : gap_candidates(rs, opts.eta0_cone, hmax)) {
    FiniteWeight eta0 = cand.w;
    if (downward)
      eta0.coords = qvec_scale(Rat(-1), eta0.coords);
    bool blocked = false;
    for (const auto& [nu, mult] : support.entries) {
      (void)mult;
      FiniteWeight xi{qvec_sub(qvec_sub(nu.finite.coords, lambda.finite.coords), eta0.coords)};
      if (eta_blocks(rs, xi, opts.eta_cone, downward)) {
        blocked = true;
        break;
      }
    }
    if (!blocked) return eta0;
  }
  return std::nullopt;
}

} // namespace

std::optional<FiniteWeight> find_gap_up(const RootSystem& rs, const WeightSupport& support,
                                        const AffineWeight& lambda, GapOptions opts) {
  return find_gap(rs, support, lambda, opts, false);
}

std::optional<FiniteWeight> find_gap_down(const RootSystem& rs, const WeightSupport& support,
                                          const AffineWeight& lambda, GapOptions opts) {
  return find_gap(rs, support, lambda, opts, true);
}

std::vector<WeightSupport> coset_split(const RootSystem& rs, const WeightSupport& support) {
  std::map<std::tuple<Rat, Rat, QVec>, WeightSupport> parts;
  for (const auto& [w, m] : support.entries) {
    QVec rc = rs.weight_to_root_coords(w.finite);
    QVec frac(rc.size());
    for (std::size_t i = 0; i < rc.size(); ++i) frac[i] = rc[i] - rat_floor(rc[i]);
    auto key = std::make_tuple(w.level, w.d - rat_floor(w.d), std::move(frac));
    WeightSupport& part = parts[key];
    part.depth = support.depth;
    part.entries.emplace(w, m);
  }
  std::vector<WeightSupport> out;
  out.reserve(parts.size());
  for (auto& [k, v] : parts) out.push_back(std::move(v));
  return out;
}

RootGapAudit audit_positive_root_gap(const RootSystem& rs, const WeightSupport& support,
                                     const AffineWeight& lambda, const AffineRootCoeffs& eta) {
  if (!support.contains(lambda))
    throw precondition_error("root-gap audit requires lambda to belong to the support");
  if (eta.size() != static_cast<std::size_t>(rs.rank()) + 1)
    throw precondition_error("eta coefficient vector has wrong length");

  RootGapAudit audit;
  for (long k = 0; k <= support.depth; ++k) {
    const auto& alphas = (k == 0) ? rs.positive_roots() : rs.roots();
    for (const FiniteRoot& a : alphas) {
      // alpha_bar + k delta = k alpha_0 + (alpha_bar + k theta) over alpha_1..n.
      AffineRootCoeffs coeffs(rs.rank() + 1, 0);
      coeffs[0] = k;
      for (int i = 0; i < rs.rank(); ++i)
        coeffs[i + 1] = a.coords[i] + k * rs.highest_root().coords[i];
      long excess = 0;
      bool ge = true;
      for (int i = 0; i <= rs.rank(); ++i) {
        const long diff = coeffs[i] - eta[i];
        if (diff < 0) {
          ge = false;
          break;
        }
        excess += diff;
      }
      if (!ge || excess == 0) continue;
      AffineWeight shifted = lambda + AffineWeight{rs.root_to_weight(a), Rat(k), Rat(0)};
      if (support.contains(shifted)) audit.counterexamples.push_back(AffineRealRoot{a, k});
    }
  }
  audit.ok = audit.counterexamples.empty();
  return audit;
}

} // namespace affkm
