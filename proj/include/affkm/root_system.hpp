#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "affkm/errors.hpp"
#include "affkm/linalg.hpp"
#include "affkm/rational.hpp"

namespace affkm {

enum class Series : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

/// Finite simple type. Rank constraints: A >= 1, B >= 2, C >= 2, D >= 3,
/// E in 6..8, F = 4, G = 2. Rank-1 B/C and the reducible D2 appear only in
/// superalgebra even parts and are resolved there, never here.
struct SimpleType {
  Series series;
  int rank;

  bool operator==(const SimpleType&) const = default;
  std::string str() const;
};

/// Throws parse_error on malformed input ("A2", "C3", ...).
SimpleType parse_simple_type(const std::string& s);

/// Throws precondition_error on rank/series mismatch.
void validate_simple_type(const SimpleType& t);

/// Weight in the fundamental-weight basis: coords[i] = value on the i-th
/// simple coroot. Integral coords <=> the weight lies in the weight lattice.
struct FiniteWeight {
  QVec coords;

  bool operator==(const FiniteWeight&) const = default;
  bool operator<(const FiniteWeight& o) const { return coords < o.coords; }
};

/// Root in the simple-root basis (always integer coordinates).
struct FiniteRoot {
  std::vector<long> coords;

  bool operator==(const FiniteRoot&) const = default;
  bool operator<(const FiniteRoot& o) const { return coords < o.coords; }

  long height() const {
    long h = 0;
    for (long c : coords) h += c;
    return h;
  }
};

/// Coroot of alpha as a functional on weights: values[i] = omega_i(alpha^vee),
/// so lambda(alpha^vee) = sum_i lambda.coords[i] * values[i].
struct CorootFunctional {
  QVec values;

  Rat eval(const FiniteWeight& w) const;
};

/// Finite simple root system with Bourbaki numbering:
///   A_n  chain 1-2-...-n
///   B_n  chain with short alpha_n            C_n  chain with long alpha_n
///   D_n  chain 1..n-2, fork n-1 and n        E_n  chain 1-3-4-5-..., node 2 on 4
///   F_4  1-2=>3-4 (1,2 long)                 G_2  alpha_1 short, alpha_2 long
///
/// The invariant form is normalized so the highest root beta satisfies
/// (beta, beta) = 2 * form_sign; the Cartan matrix is sign-independent.
class RootSystem {
public:
  RootSystem(SimpleType type, int form_sign);

  const SimpleType& type() const { return type_; }
  int form_sign() const { return sign_; }
  int rank() const { return type_.rank; }

  const std::vector<std::vector<int>>& cartan() const { return cartan_; }
  /// gram()[i][j] = (alpha_i, alpha_j), exact.
  const std::vector<QVec>& gram() const { return gram_; }
  /// All roots, closed under negation; deterministic (sorted) order.
  const std::vector<FiniteRoot>& roots() const { return roots_; }
  const std::vector<FiniteRoot>& positive_roots() const { return positive_; }
  const FiniteRoot& highest_root() const { return highest_; }
  bool is_root(const FiniteRoot& a) const { return root_set_.count(a.coords) > 0; }

  /// |Lambda/Q| = det of the Cartan matrix.
  long coset_index() const;

  // -- coordinates ----------------------------------------------------------

  /// Fundamental-weight coordinates of a root-lattice vector.
  FiniteWeight root_to_weight(const FiniteRoot& a) const;
  /// Rational simple-root coordinates of a weight.
  QVec weight_to_root_coords(const FiniteWeight& w) const;

  // -- invariant form -------------------------------------------------------

  Rat pair_ww(const FiniteWeight& a, const FiniteWeight& b) const;
  Rat pair_wr(const FiniteWeight& w, const FiniteRoot& a) const;
  Rat pair_rr(const FiniteRoot& a, const FiniteRoot& b) const;
  Rat root_norm(const FiniteRoot& a) const { return pair_rr(a, a); }

  /// mu |-> 2(mu, alpha)/(alpha, alpha); independent of form_sign.
  /// Throws precondition_error if alpha is not a root.
  CorootFunctional coroot(const FiniteRoot& alpha) const;
  Rat eval_coroot(const FiniteWeight& w, const FiniteRoot& alpha) const;

  // -- Weyl group -----------------------------------------------------------

  FiniteWeight reflect(const FiniteWeight& w, int i) const;
  FiniteRoot reflect_root(const FiniteRoot& a, int i) const;
  /// Finite orbit closed under all simple reflections.
  std::set<FiniteWeight> weyl_orbit(const FiniteWeight& w) const;
  /// The unique dominant element of the orbit of w.
  FiniteWeight dominant_representative(const FiniteWeight& w) const;

  bool is_dominant(const FiniteWeight& w) const;
  bool is_dominant_integral(const FiniteWeight& w) const;

  FiniteWeight zero_weight() const { return FiniteWeight{qvec_zero(rank())}; }
  FiniteWeight fundamental_weight(int i) const;

private:
  SimpleType type_;
  int sign_;
  std::vector<std::vector<int>> cartan_;
  std::vector<QVec> gram_;
  std::vector<FiniteRoot> roots_;
  std::vector<FiniteRoot> positive_;
  FiniteRoot highest_;
  std::set<std::vector<long>> root_set_;
  QMat inv_cartan_t_; // weight coords -> root coords
};

} // namespace affkm
