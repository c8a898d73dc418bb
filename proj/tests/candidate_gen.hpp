#pragma once

// Randomized string-closed support candidates for the obstruction tests.
// Seeds a few level-one weights near the origin and closes the set under
// every in-window string-step conclusion; the closure is finite because each
// walk drives the relevant pairing toward zero inside a bounded d-window.

#include <deque>
#include <random>
#include <stdexcept>

#include "affkm/super.hpp"

namespace affkm_test {

inline affkm::SupportCandidate random_closed_candidate(const affkm::ResolvedSuper& rsv,
                                                       std::mt19937_64& rng, long depth) {
  using namespace affkm;
  std::uniform_int_distribution<long> coord(-2, 1);
  std::uniform_int_distribution<int> nseeds(1, 2);

  SupportCandidate cand;
  cand.level = 1;
  cand.depth = depth;

  std::deque<AffineWeight> queue;
  const int seeds = nseeds(rng);
  for (int i = 0; i < seeds; ++i) {
    QVec coords(rsv.finite_rank);
    for (int j = 0; j < rsv.finite_rank; ++j) coords[j] = coord(rng);
    AffineWeight w{FiniteWeight{std::move(coords)}, Rat(0), Rat(1)};
    if (cand.weights.insert(w).second) queue.push_back(w);
  }

  const std::size_t cap = 200000;
  while (!queue.empty()) {
    const AffineWeight mu = queue.front();
    queue.pop_front();
    for (std::size_t ci = 0; ci < rsv.components.size(); ++ci) {
      const ResolvedComponent& c = rsv.components[ci];
      for (const FiniteRoot& a : c.rs.roots())
        for (long n = -depth; n <= depth; ++n) {
          auto next = string_step(rsv, ci, mu, AffineRealRoot{a, n});
          if (!next) continue;
          if (next->d < -depth || next->d > depth) continue;
          if (cand.weights.insert(*next).second) queue.push_back(*next);
        }
    }
    if (cand.weights.size() > cap)
      throw std::runtime_error("candidate closure exceeded the size cap");
  }
  return cand;
}

} // namespace affkm_test
