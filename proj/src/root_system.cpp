#include "affkm/root_system.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

#include "affkm/errors.hpp"

namespace affkm {

std::string SimpleType::str() const {
  return std::string(1, static_cast<char>(series)) + std::to_string(rank);
}

SimpleType parse_simple_type(const std::string& s) {
  if (s.empty()) throw parse_error("empty algebra type", 0);
  const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  if (c < 'A' || c > 'G') throw parse_error("expected series letter A..G", 0);
  if (s.size() < 2) throw parse_error("missing rank", 1);
  std::size_t i = 1;
  long rank = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) break;
    rank = rank * 10 + (s[i] - '0');
    if (rank > 1000) throw parse_error("rank out of range", 1);
  }
  if (i == 1) throw parse_error("expected rank digits", 1);
  if (i != s.size()) throw parse_error("trailing characters after rank", i);
  SimpleType t{static_cast<Series>(c), static_cast<int>(rank)};
  validate_simple_type(t);
  return t;
}

void validate_simple_type(const SimpleType& t) {
  const int r = t.rank;
  bool ok = false;
  switch (t.series) {
    case Series::A: ok = r >= 1; break;
    case Series::B: ok = r >= 2; break;
    case Series::C: ok = r >= 2; break;
    case Series::D: ok = r >= 3; break;
    case Series::E: ok = r >= 6 && r <= 8; break;
    case Series::F: ok = r == 4; break;
    case Series::G: ok = r == 2; break;
  }
  if (!ok)
    throw precondition_error("invalid rank for series " +
                             std::string(1, static_cast<char>(t.series)) + ": " +
                             std::to_string(r));
}

Rat CorootFunctional::eval(const FiniteWeight& w) const {
  Rat v(0);
  for (std::size_t i = 0; i < values.size(); ++i) v += values[i] * w.coords[i];
  return v;
}

namespace {

struct CartanData {
  std::vector<std::vector<int>> cartan;
  QVec norms; // (alpha_i, alpha_i) with the long-root normalization (theta,theta)=2
};

CartanData cartan_data(const SimpleType& t) {
  const int n = t.rank;
  CartanData d;
  d.cartan.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) d.cartan[i][i] = 2;
  d.norms.assign(n, Rat(2));

  auto chain_edge = [&](int i, int j) { d.cartan[i][j] = d.cartan[j][i] = -1; };

  switch (t.series) {
    case Series::A:
      for (int i = 0; i + 1 < n; ++i) chain_edge(i, i + 1);
      break;
    case Series::B:
      for (int i = 0; i + 1 < n; ++i) chain_edge(i, i + 1);
      d.cartan[n - 2][n - 1] = -2; // alpha_n short
      d.norms[n - 1] = 1;
      break;
    case Series::C:
      for (int i = 0; i + 1 < n; ++i) chain_edge(i, i + 1);
      d.cartan[n - 1][n - 2] = -2; // alpha_n long
      for (int i = 0; i + 1 < n; ++i) d.norms[i] = 1;
      break;
    case Series::D:
      for (int i = 0; i + 1 < n - 1; ++i) chain_edge(i, i + 1);
      chain_edge(n - 3, n - 1);
      break;
    case Series::E:
      chain_edge(0, 2);
      chain_edge(1, 3);
      for (int i = 2; i + 1 < n; ++i) chain_edge(i, i + 1);
      break;
    case Series::F:
      chain_edge(0, 1);
      chain_edge(1, 2);
      chain_edge(2, 3);
      d.cartan[1][2] = -2; // alpha_3, alpha_4 short
      d.norms[2] = d.norms[3] = 1;
      break;
    case Series::G:
      chain_edge(0, 1);
      d.cartan[1][0] = -3; // alpha_1 short
      d.norms[0] = Rat(2, 3);
      break;
  }
  return d;
}

} // namespace

RootSystem::RootSystem(SimpleType type, int form_sign) : type_(type), sign_(form_sign) {
  validate_simple_type(type);
  if (form_sign != 1 && form_sign != -1)
    throw precondition_error("form_sign must be +1 or -1");
  const int n = rank();
  CartanData cd = cartan_data(type);
  cartan_ = std::move(cd.cartan);

  // gram[i][j] = cartan[i][j] * (alpha_j, alpha_j) / 2, then the sign flip.
  gram_.assign(n, qvec_zero(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      gram_[i][j] = Rat(sign_) * Rat(cartan_[i][j]) * cd.norms[j] / 2;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (gram_[i][j] != gram_[j][i])
        throw precondition_error("internal: Cartan data is not symmetrizable");

  inv_cartan_t_ = QMat::from_int_rows(cartan_).transposed().inverse();

  // Roots = closure of the simple roots under simple reflections.
  std::set<std::vector<long>> seen;
  std::deque<std::vector<long>> queue;
  for (int i = 0; i < n; ++i) {
    std::vector<long> e(n, 0);
    e[i] = 1;
    seen.insert(e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    std::vector<long> a = queue.front();
    queue.pop_front();
    for (int i = 0; i < n; ++i) {
      long pairing = 0;
      for (int j = 0; j < n; ++j) pairing += a[j] * cartan_[j][i];
      std::vector<long> b = a;
      b[i] -= pairing;
      if (seen.insert(b).second) queue.push_back(b);
    }
  }
  root_set_ = seen;
  for (const auto& c : seen) {
    roots_.push_back(FiniteRoot{c});
    bool pos = true;
    for (long x : c)
      if (x < 0) {
        pos = false;
        break;
      }
    if (pos) positive_.push_back(FiniteRoot{c});
  }

  // Closure under negation is automatic for reflection orbits of simple
  // roots, but it is cheap to confirm while the set is at hand.
  for (const auto& c : seen) {
    std::vector<long> neg(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) neg[i] = -c[i];
    if (!seen.count(neg)) throw precondition_error("internal: root set not symmetric");
  }

  // Highest root: the unique maximum in the coefficientwise order.
  highest_ = positive_.front();
  for (const auto& r : positive_)
    if (r.height() > highest_.height()) highest_ = r;
  for (const auto& r : roots_)
    for (int i = 0; i < n; ++i)
      if (highest_.coords[i] < r.coords[i])
        throw precondition_error("internal: highest root is not a maximum");
  if (root_norm(highest_) != Rat(2 * sign_))
    throw precondition_error("internal: highest-root normalization failed");
}

long RootSystem::coset_index() const {
  Rat d = QMat::from_int_rows(cartan_).det();
  return static_cast<long>(d.get_num().get_si());
}

FiniteWeight RootSystem::root_to_weight(const FiniteRoot& a) const {
  const int n = rank();
  QVec w = qvec_zero(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) w[j] += Rat(a.coords[i]) * Rat(cartan_[i][j]);
  return FiniteWeight{w};
}

QVec RootSystem::weight_to_root_coords(const FiniteWeight& w) const {
  return inv_cartan_t_.apply(w.coords);
}

Rat RootSystem::pair_ww(const FiniteWeight& a, const FiniteWeight& b) const {
  // (a, b) = sum_i rc(a)_i * (alpha_i, b); (alpha_i, b) = b_i * (alpha_i, alpha_i) / 2.
  QVec rc = weight_to_root_coords(a);
  Rat v(0);
  for (int i = 0; i < rank(); ++i) v += rc[i] * b.coords[i] * gram_[i][i] / 2;
  return v;
}

Rat RootSystem::pair_wr(const FiniteWeight& w, const FiniteRoot& a) const {
  Rat v(0);
  for (int i = 0; i < rank(); ++i) v += Rat(a.coords[i]) * w.coords[i] * gram_[i][i] / 2;
  return v;
}

Rat RootSystem::pair_rr(const FiniteRoot& a, const FiniteRoot& b) const {
  Rat v(0);
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) v += Rat(a.coords[i]) * Rat(b.coords[j]) * gram_[i][j];
  return v;
}

CorootFunctional RootSystem::coroot(const FiniteRoot& alpha) const {
  if (!is_root(alpha)) throw precondition_error("coroot: not a root of this system");
  const Rat norm = root_norm(alpha);
  QVec vals(rank(), Rat(0));
  // omega_j(alpha^vee) = 2(omega_j, alpha)/(alpha, alpha) = c_j (alpha_j,alpha_j)/(alpha,alpha)
  for (int j = 0; j < rank(); ++j) vals[j] = Rat(alpha.coords[j]) * gram_[j][j] / norm;
  return CorootFunctional{vals};
}

Rat RootSystem::eval_coroot(const FiniteWeight& w, const FiniteRoot& alpha) const {
  return 2 * pair_wr(w, alpha) / root_norm(alpha);
}

FiniteWeight RootSystem::reflect(const FiniteWeight& w, int i) const {
  FiniteWeight r = w;
  const Rat c = w.coords[i];
  if (c == 0) return r;
  for (int j = 0; j < rank(); ++j) r.coords[j] -= c * Rat(cartan_[i][j]);
  return r;
}

FiniteRoot RootSystem::reflect_root(const FiniteRoot& a, int i) const {
  long pairing = 0;
  for (int j = 0; j < rank(); ++j) pairing += a.coords[j] * cartan_[j][i];
  FiniteRoot b = a;
  b.coords[i] -= pairing;
  return b;
}

std::set<FiniteWeight> RootSystem::weyl_orbit(const FiniteWeight& w) const {
  std::set<FiniteWeight> orbit{w};
  std::deque<FiniteWeight> queue{w};
  while (!queue.empty()) {
    FiniteWeight v = queue.front();
    queue.pop_front();
    for (int i = 0; i < rank(); ++i) {
      FiniteWeight u = reflect(v, i);
      if (orbit.insert(u).second) queue.push_back(u);
    }
  }
  return orbit;
}

FiniteWeight RootSystem::dominant_representative(const FiniteWeight& w) const {
  FiniteWeight v = w;
  long guard = 0;
  const long cap = 1000000;
  for (;;) {
    int neg = -1;
    for (int i = 0; i < rank(); ++i)
      if (v.coords[i] < 0) {
        neg = i;
        break;
      }
    if (neg < 0) return v;
    v = reflect(v, neg);
    if (++guard > cap) throw precondition_error("internal: dominance walk did not terminate");
  }
}

bool RootSystem::is_dominant(const FiniteWeight& w) const {
  for (const auto& c : w.coords)
    if (c < 0) return false;
  return true;
}

bool RootSystem::is_dominant_integral(const FiniteWeight& w) const {
  for (const auto& c : w.coords)
    if (!is_nonneg_integer(c)) return false;
  return true;
}

FiniteWeight RootSystem::fundamental_weight(int i) const {
  FiniteWeight w = zero_weight();
  w.coords[i] = 1;
  return w;
}

} // namespace affkm
