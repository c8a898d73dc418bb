#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace affkm {

// Exact arbitrary-precision rational. No floating point enters the core:
// several downstream checks are strict (in)equalities that rounding would
// invalidate.
using Rat = mpq_class;
using QVec = std::vector<Rat>;

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline bool is_nonneg_integer(const Rat& q) { return is_integer(q) && q >= 0; }

/// Largest integer <= q, as a Rat.
inline Rat rat_floor(const Rat& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return Rat(f);
}

/// Canonical "p/q" rendering ("p" when the denominator is 1).
inline std::string rat_str(const Rat& q) { return q.get_str(); }

/// Parses "p" or "p/q"; throws std::invalid_argument on junk.
Rat rat_parse(const std::string& s);

inline QVec qvec_zero(std::size_t n) { return QVec(n, Rat(0)); }

QVec qvec_add(const QVec& a, const QVec& b);
QVec qvec_sub(const QVec& a, const QVec& b);
QVec qvec_scale(const Rat& c, const QVec& a);
bool qvec_is_zero(const QVec& a);

} // namespace affkm
