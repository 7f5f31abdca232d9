#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dga/matrix.hpp"

namespace dga {

inline PMat pmat_mul(PolyRingPtr ring, const PMat& a, const PMat& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matrix product: dimension mismatch");
  PMat r = pmat_zero(ring, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Poly& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Poly& bkj = b.at(k, j);
        if (!bkj.is_zero()) r.at(i, j) += aik * bkj;
      }
    }
  return r;
}

/// A bounded complex of finite free modules. Differentials d_i map degree i
/// to degree i-1 and satisfy d_{i-1} d_i = 0, checked at construction.
class ChainComplex {
 public:
  ChainComplex(PolyRingPtr ring, int lo, std::vector<std::size_t> ranks,
               std::map<int, PMat> diffs,
               std::map<int, std::vector<std::string>> labels = {})
      : ring_(std::move(ring)),
        lo_(lo),
        ranks_(std::move(ranks)),
        diffs_(std::move(diffs)),
        labels_(std::move(labels)) {
    validate();
  }

  static ChainComplex zero_complex(PolyRingPtr ring) {
    return ChainComplex(std::move(ring), 0, {}, {});
  }

  /// The ring as a complex concentrated in degree 0.
  static ChainComplex unit(PolyRingPtr ring) {
    return ChainComplex(ring, 0, {1}, {}, {{0, {"1"}}});
  }

  const PolyRingPtr& ring() const { return ring_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }

  std::size_t rank(int i) const {
    if (i < lo_ || i > hi()) return 0;
    return ranks_[static_cast<std::size_t>(i - lo_)];
  }

  /// Total rank over all degrees.
  std::size_t total_rank() const {
    std::size_t t = 0;
    for (auto r : ranks_) t += r;
    return t;
  }

  /// Differential out of degree i, shape rank(i-1) x rank(i).
  PMat diff(int i) const {
    auto it = diffs_.find(i);
    if (it != diffs_.end()) return it->second;
    return pmat_zero(ring_, rank(i - 1), rank(i));
  }

  std::string label(int i, std::size_t k) const {
    auto it = labels_.find(i);
    if (it != labels_.end() && k < it->second.size()) return it->second[k];
    return "b" + std::to_string(i) + "_" + std::to_string(k);
  }
  const std::map<int, std::vector<std::string>>& labels() const {
    return labels_;
  }

  bool has_field_coefficients() const { return ring_->is_field(); }

  /// Semantic equality: equal ranks and differentials over the union range.
  bool operator==(const ChainComplex& o) const {
    if (*ring_ != *o.ring_) return false;
    int a = std::min(lo_, o.lo_), b = std::max(hi(), o.hi());
    for (int i = a; i <= b; ++i) {
      if (rank(i) != o.rank(i)) return false;
      if (diff(i) != o.diff(i)) return false;
    }
    return true;
  }
  bool operator!=(const ChainComplex& o) const { return !(*this == o); }

 private:
  void validate() const {
    for (auto& [i, d] : diffs_) {
      if (d.rows() != rank(i - 1) || d.cols() != rank(i))
        throw std::invalid_argument(
            "differential at degree " + std::to_string(i) +
            " has shape " + std::to_string(d.rows()) + "x" +
            std::to_string(d.cols()) + ", expected " +
            std::to_string(rank(i - 1)) + "x" + std::to_string(rank(i)));
    }
    for (int i = lo_; i + 1 <= hi(); ++i) {
      PMat dd = pmat_mul(ring_, diff(i), diff(i + 1));
      if (!pmat_is_zero(dd))
        throw std::invalid_argument(
            "differentials do not compose to zero at degree " +
            std::to_string(i + 1));
    }
  }

  PolyRingPtr ring_;
  int lo_;
  std::vector<std::size_t> ranks_;
  std::map<int, PMat> diffs_;
  std::map<int, std::vector<std::string>> labels_;
};

/// A degree-n family of maps f_i : X_i -> Y_{i+n}. Such a family is a chain
/// map when d^Y f = (-1)^n f d^X in every degree.
class ChainMap {
 public:
  ChainMap(ChainComplex source, ChainComplex target, int degree,
           std::map<int, PMat> components)
      : source_(std::move(source)),
        target_(std::move(target)),
        degree_(degree),
        comps_(std::move(components)) {
    for (auto& [i, m] : comps_) {
      if (m.rows() != target_.rank(i + degree_) || m.cols() != source_.rank(i))
        throw std::invalid_argument("chain map component at degree " +
                                    std::to_string(i) + " has wrong shape");
    }
  }

  static ChainMap identity(const ChainComplex& x) {
    std::map<int, PMat> comps;
    for (int i = x.lo(); i <= x.hi(); ++i)
      if (x.rank(i)) comps.emplace(i, pmat_identity(x.ring(), x.rank(i)));
    return ChainMap(x, x, 0, std::move(comps));
  }

  /// The homothety {r * id}: multiplication by a ring element.
  static ChainMap homothety(const ChainComplex& x, const Poly& r) {
    std::map<int, PMat> comps;
    for (int i = x.lo(); i <= x.hi(); ++i)
      if (x.rank(i))
        comps.emplace(i, pmat_scaled(pmat_identity(x.ring(), x.rank(i)), r));
    return ChainMap(x, x, 0, std::move(comps));
  }

  const ChainComplex& source() const { return source_; }
  const ChainComplex& target() const { return target_; }
  int degree() const { return degree_; }

  PMat component(int i) const {
    auto it = comps_.find(i);
    if (it != comps_.end()) return it->second;
    return pmat_zero(source_.ring(), target_.rank(i + degree_),
                     source_.rank(i));
  }

  bool is_chain_map() const {
    for (int i = source_.lo(); i <= source_.hi() + 1; ++i) {
      PMat lhs = pmat_mul(source_.ring(), target_.diff(i + degree_),
                          component(i));
      PMat rhs = pmat_mul(source_.ring(), component(i - 1), source_.diff(i));
      if (degree_ % 2 != 0) rhs = pmat_neg(rhs);
      if (lhs != rhs) return false;
    }
    return true;
  }

  bool is_zero() const {
    for (auto& [i, m] : comps_)
      if (!pmat_is_zero(m)) return false;
    return true;
  }

  ChainMap compose_after(const ChainMap& g) const {
    // this o g, where g : W -> X and this : X -> Y.
    std::map<int, PMat> comps;
    for (int i = g.source().lo(); i <= g.source().hi(); ++i) {
      PMat m = pmat_mul(source_.ring(), component(i + g.degree()),
                        g.component(i));
      comps.emplace(i, std::move(m));
    }
    return ChainMap(g.source(), target_, degree_ + g.degree(),
                    std::move(comps));
  }

 private:
  ChainComplex source_, target_;
  int degree_;
  std::map<int, PMat> comps_;
};

// ---------------------------------------------------------------------------
// Suspension and shift

/// nth suspension: (S^n X)_i = X_{i-n} with differential (-1)^n d_{i-n}.
inline ChainComplex suspend(const ChainComplex& x, int n) {
  std::vector<std::size_t> ranks;
  std::map<int, PMat> diffs;
  std::map<int, std::vector<std::string>> labels;
  for (int i = x.lo(); i <= x.hi(); ++i) {
    ranks.push_back(x.rank(i));
    if (x.rank(i) && x.rank(i - 1)) {
      PMat d = x.diff(i);
      if (n % 2 != 0) d = pmat_neg(d);
      diffs.emplace(i + n, std::move(d));
    }
    std::vector<std::string> ls;
    for (std::size_t k = 0; k < x.rank(i); ++k) ls.push_back(x.label(i, k));
    if (!ls.empty()) labels.emplace(i + n, std::move(ls));
  }
  return ChainComplex(x.ring(), x.lo() + n, std::move(ranks),
                      std::move(diffs), std::move(labels));
}

/// Unsigned degree shift: same modules as S^n but the differential keeps its
/// sign. Isomorphic to the suspension, not equal to it for odd n.
inline ChainComplex shift_unsigned(const ChainComplex& x, int n) {
  std::vector<std::size_t> ranks;
  std::map<int, PMat> diffs;
  for (int i = x.lo(); i <= x.hi(); ++i) {
    ranks.push_back(x.rank(i));
    if (x.rank(i) && x.rank(i - 1)) diffs.emplace(i + n, x.diff(i));
  }
  return ChainComplex(x.ring(), x.lo() + n, std::move(ranks),
                      std::move(diffs));
}

// ---------------------------------------------------------------------------
// Hom and tensor complexes

/// Basis bookkeeping for one degree of Hom(X,Y) or (X (x) Y).
struct SummandIndex {
  int p;             // X-degree of the summand
  std::size_t size;  // number of basis elements contributed
  std::size_t offset;
};

inline std::vector<SummandIndex> hom_summands(const ChainComplex& x,
                                              const ChainComplex& y, int n) {
  std::vector<SummandIndex> out;
  std::size_t off = 0;
  for (int p = x.lo(); p <= x.hi(); ++p) {
    std::size_t sz = x.rank(p) * y.rank(p + n);
    if (sz) out.push_back({p, sz, off});
    off += sz;
  }
  return out;
}

/// Hom(X,Y)_n = sum over p of Hom(X_p, Y_{p+n}), with differential
/// d({f_p}) = {d^Y f_p - (-1)^n f_{p-1} d^X}. Summands are ordered by
/// ascending p; within a summand the basis element (target i, source j) has
/// index i*rank(X_p) + j.
inline ChainComplex hom_complex(const ChainComplex& x, const ChainComplex& y) {
  PolyRingPtr ring = x.ring();
  if (*ring != *y.ring())
    throw std::invalid_argument("hom_complex: ring mismatch");
  int lo = y.lo() - x.hi(), hi = y.hi() - x.lo();
  if (lo > hi) return ChainComplex::zero_complex(ring);

  auto dim_at = [&](int n) {
    std::size_t d = 0;
    for (auto& s : hom_summands(x, y, n)) d += s.size;
    return d;
  };

  std::vector<std::size_t> ranks;
  std::map<int, std::vector<std::string>> labels;
  for (int n = lo; n <= hi; ++n) {
    ranks.push_back(dim_at(n));
    std::vector<std::string> ls;
    for (auto& s : hom_summands(x, y, n))
      for (std::size_t i = 0; i < y.rank(s.p + n); ++i)
        for (std::size_t j = 0; j < x.rank(s.p); ++j)
          ls.push_back("(" + std::to_string(s.p) + ";" + x.label(s.p, j) +
                       "->" + y.label(s.p + n, i) + ")");
    if (!ls.empty()) labels.emplace(n, std::move(ls));
  }

  std::map<int, PMat> diffs;
  for (int n = lo + 1; n <= hi; ++n) {
    auto src = hom_summands(x, y, n);
    auto dst = hom_summands(x, y, n - 1);
    auto dst_offset = [&](int p) -> const SummandIndex* {
      for (auto& s : dst)
        if (s.p == p) return &s;
      return nullptr;
    };
    PMat d = pmat_zero(ring, dim_at(n - 1), dim_at(n));
    int sign = (n % 2 == 0) ? -1 : 1;  // -(-1)^n, n = source degree
    for (auto& s : src) {
      std::size_t rx = x.rank(s.p);
      PMat dy = y.diff(s.p + n);
      if (const SummandIndex* t = dst_offset(s.p)) {
        // d^Y composed with f: (p,i,j) -> (p,k,j) with coefficient dy[k,i].
        for (std::size_t i = 0; i < y.rank(s.p + n); ++i)
          for (std::size_t j = 0; j < rx; ++j)
            for (std::size_t k = 0; k < y.rank(s.p + n - 1); ++k)
              if (!dy.at(k, i).is_zero())
                d.at(t->offset + k * rx + j, s.offset + i * rx + j) +=
                    dy.at(k, i);
      }
      if (const SummandIndex* t = dst_offset(s.p + 1)) {
        // f composed with d^X: (p,i,j) -> (p+1,i,l), coefficient
        // -(-1)^n dx[j,l].
        PMat dx = x.diff(s.p + 1);
        std::size_t rx1 = x.rank(s.p + 1);
        for (std::size_t i = 0; i < y.rank(s.p + n); ++i)
          for (std::size_t j = 0; j < rx; ++j)
            for (std::size_t l = 0; l < rx1; ++l)
              if (!dx.at(j, l).is_zero()) {
                Poly c = dx.at(j, l);
                d.at(t->offset + i * rx1 + l, s.offset + i * rx + j) +=
                    sign == 1 ? c : -c;
              }
      }
    }
    diffs.emplace(n, std::move(d));
  }
  return ChainComplex(ring, lo, std::move(ranks), std::move(diffs),
                      std::move(labels));
}

inline std::vector<SummandIndex> tensor_summands(const ChainComplex& x,
                                                 const ChainComplex& y,
                                                 int n) {
  // Descending X-degree, matching the ordered bases of the worked examples
  // (e(x)1 before 1(x)e).
  std::vector<SummandIndex> out;
  std::size_t off = 0;
  for (int p = x.hi(); p >= x.lo(); --p) {
    std::size_t sz = x.rank(p) * y.rank(n - p);
    if (sz) out.push_back({p, sz, off});
    off += sz;
  }
  return out;
}

/// (X (x) Y)_n = sum over p of X_p (x) Y_{n-p}, differential
/// x(x)y -> dx (x) y + (-1)^p x (x) dy. Basis element (i,j) of a summand has
/// index i*rank(Y_{n-p}) + j; summands are ordered by descending p.
inline ChainComplex tensor_complex(const ChainComplex& x,
                                   const ChainComplex& y) {
  PolyRingPtr ring = x.ring();
  if (*ring != *y.ring())
    throw std::invalid_argument("tensor_complex: ring mismatch");
  int lo = x.lo() + y.lo(), hi = x.hi() + y.hi();
  if (x.hi() < x.lo() || y.hi() < y.lo())
    return ChainComplex::zero_complex(ring);

  auto dim_at = [&](int n) {
    std::size_t d = 0;
    for (auto& s : tensor_summands(x, y, n)) d += s.size;
    return d;
  };

  std::vector<std::size_t> ranks;
  std::map<int, std::vector<std::string>> labels;
  for (int n = lo; n <= hi; ++n) {
    ranks.push_back(dim_at(n));
    std::vector<std::string> ls;
    for (auto& s : tensor_summands(x, y, n))
      for (std::size_t i = 0; i < x.rank(s.p); ++i)
        for (std::size_t j = 0; j < y.rank(n - s.p); ++j)
          ls.push_back(x.label(s.p, i) + "(x)" + y.label(n - s.p, j));
    if (!ls.empty()) labels.emplace(n, std::move(ls));
  }

  std::map<int, PMat> diffs;
  for (int n = lo + 1; n <= hi; ++n) {
    auto src = tensor_summands(x, y, n);
    auto dst = tensor_summands(x, y, n - 1);
    auto dst_offset = [&](int p) -> const SummandIndex* {
      for (auto& s : dst)
        if (s.p == p) return &s;
      return nullptr;
    };
    PMat d = pmat_zero(ring, dim_at(n - 1), dim_at(n));
    for (auto& s : src) {
      int p = s.p;
      std::size_t ry = y.rank(n - p);
      if (const SummandIndex* t = dst_offset(p - 1)) {
        PMat dx = x.diff(p);
        std::size_t ry_t = y.rank(n - p);  // same j index set
        for (std::size_t i = 0; i < x.rank(p); ++i)
          for (std::size_t j = 0; j < ry; ++j)
            for (std::size_t k = 0; k < x.rank(p - 1); ++k)
              if (!dx.at(k, i).is_zero())
                d.at(t->offset + k * ry_t + j, s.offset + i * ry + j) +=
                    dx.at(k, i);
      }
      if (const SummandIndex* t = dst_offset(p)) {
        PMat dy = y.diff(n - p);
        std::size_t ry_t = y.rank(n - p - 1);
        int sign = (p % 2 == 0) ? 1 : -1;
        for (std::size_t i = 0; i < x.rank(p); ++i)
          for (std::size_t j = 0; j < ry; ++j)
            for (std::size_t l = 0; l < ry_t; ++l)
              if (!dy.at(l, j).is_zero()) {
                Poly c = dy.at(l, j);
                d.at(t->offset + i * ry_t + l, s.offset + i * ry + j) +=
                    sign == 1 ? c : -c;
              }
      }
    }
    diffs.emplace(n, std::move(d));
  }
  return ChainComplex(ring, lo, std::move(ranks), std::move(diffs),
                      std::move(labels));
}

/// The isomorphism X (x) Y -> Y (x) X sending u(x)v to (-1)^{|u||v|} v(x)u.
inline ChainMap tensor_commutativity_witness(const ChainComplex& x,
                                             const ChainComplex& y) {
  ChainComplex src = tensor_complex(x, y);
  ChainComplex dst = tensor_complex(y, x);
  PolyRingPtr ring = x.ring();
  std::map<int, PMat> comps;
  for (int n = src.lo(); n <= src.hi(); ++n) {
    PMat m = pmat_zero(ring, dst.rank(n), src.rank(n));
    auto from = tensor_summands(x, y, n);
    auto to = tensor_summands(y, x, n);
    for (auto& s : from) {
      int p = s.p, q = n - p;
      const SummandIndex* t = nullptr;
      for (auto& cand : to)
        if (cand.p == q) t = &cand;
      if (!t) continue;
      int sign = (p % 2 != 0 && q % 2 != 0) ? -1 : 1;
      std::size_t ry = y.rank(q), rx = x.rank(p);
      for (std::size_t i = 0; i < rx; ++i)
        for (std::size_t j = 0; j < ry; ++j)
          m.at(t->offset + j * rx + i, s.offset + i * ry + j) =
              Poly::constant(ring, sign);
    }
    if (src.rank(n)) comps.emplace(n, std::move(m));
  }
  return ChainMap(src, dst, 0, std::move(comps));
}

/// Direct sum, X-part first in every degree.
inline ChainComplex direct_sum(const ChainComplex& x, const ChainComplex& y) {
  PolyRingPtr ring = x.ring();
  int lo = std::min(x.lo(), y.lo()), hi = std::max(x.hi(), y.hi());
  std::vector<std::size_t> ranks;
  std::map<int, PMat> diffs;
  for (int i = lo; i <= hi; ++i) ranks.push_back(x.rank(i) + y.rank(i));
  for (int i = lo + 1; i <= hi; ++i) {
    std::size_t rows = x.rank(i - 1) + y.rank(i - 1);
    std::size_t cols = x.rank(i) + y.rank(i);
    PMat d = pmat_zero(ring, rows, cols);
    PMat dx = x.diff(i), dy = y.diff(i);
    for (std::size_t a = 0; a < dx.rows(); ++a)
      for (std::size_t b = 0; b < dx.cols(); ++b) d.at(a, b) = dx.at(a, b);
    for (std::size_t a = 0; a < dy.rows(); ++a)
      for (std::size_t b = 0; b < dy.cols(); ++b)
        d.at(x.rank(i - 1) + a, x.rank(i) + b) = dy.at(a, b);
    diffs.emplace(i, std::move(d));
  }
  return ChainComplex(ring, lo, std::move(ranks), std::move(diffs));
}

namespace detail {

/// Mapping cone of a degree-0 chain map, used internally by tests and the
/// resolution builder: C_i = X_{i-1} (+) Y_i, d(x,y) = (-dx, f(x) + dy).
inline ChainComplex cone(const ChainMap& f) {
  const ChainComplex& x = f.source();
  const ChainComplex& y = f.target();
  PolyRingPtr ring = x.ring();
  int lo = std::min(x.lo() + 1, y.lo());
  int hi = std::max(x.hi() + 1, y.hi());
  std::vector<std::size_t> ranks;
  for (int i = lo; i <= hi; ++i) ranks.push_back(x.rank(i - 1) + y.rank(i));
  std::map<int, PMat> diffs;
  for (int i = lo + 1; i <= hi; ++i) {
    std::size_t rows = x.rank(i - 2) + y.rank(i - 1);
    std::size_t cols = x.rank(i - 1) + y.rank(i);
    PMat d = pmat_zero(ring, rows, cols);
    PMat dx = x.diff(i - 1), dy = y.diff(i), fc = f.component(i - 1);
    for (std::size_t a = 0; a < dx.rows(); ++a)
      for (std::size_t b = 0; b < dx.cols(); ++b) d.at(a, b) = -dx.at(a, b);
    for (std::size_t a = 0; a < fc.rows(); ++a)
      for (std::size_t b = 0; b < fc.cols(); ++b)
        d.at(x.rank(i - 2) + a, b) = fc.at(a, b);
    for (std::size_t a = 0; a < dy.rows(); ++a)
      for (std::size_t b = 0; b < dy.cols(); ++b)
        d.at(x.rank(i - 2) + a, x.rank(i - 1) + b) = dy.at(a, b);
    diffs.emplace(i, std::move(d));
  }
  return ChainComplex(ring, lo, std::move(ranks), std::move(diffs));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Homology over a field

struct HomologyDegree {
  std::size_t dim = 0;
  SMat cycles;          // columns: basis of ker d_i
  SMat boundaries;      // columns: basis of im d_{i+1}
  SMat representatives; // columns: cycles whose classes form a basis of H_i
};

struct HomologyReport {
  int lo = 0, hi = -1;
  std::vector<HomologyDegree> degrees;

  std::size_t dim(int i) const {
    if (i < lo || i > hi) return 0;
    return degrees[static_cast<std::size_t>(i - lo)].dim;
  }
  const HomologyDegree& at(int i) const {
    return degrees.at(static_cast<std::size_t>(i - lo));
  }
  bool is_exact() const {
    for (auto& d : degrees)
      if (d.dim) return false;
    return true;
  }
};

namespace detail {

inline SMat columns_to_smat(const Field& f, std::size_t rows,
                            const std::vector<std::vector<Scalar>>& cols) {
  SMat m = smat_zero(f, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
  return m;
}

// Column basis of [B | Z] pivots landing in the Z part: representatives of
// Z's classes modulo the span of B. Deterministic given the fixed orders.
inline SMat quotient_representatives(const Field& f, const SMat& b,
                                     const SMat& z) {
  std::size_t rows = b.rows();
  SMat joint = smat_zero(f, rows, b.cols() + z.cols());
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) joint.at(i, j) = b.at(i, j);
    for (std::size_t j = 0; j < z.cols(); ++j)
      joint.at(i, b.cols() + j) = z.at(i, j);
  }
  Rref e = rref(joint);
  std::vector<std::size_t> chosen;
  for (auto c : e.pivots)
    if (c >= b.cols()) chosen.push_back(c - b.cols());
  SMat reps = smat_zero(f, rows, chosen.size());
  for (std::size_t j = 0; j < chosen.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i)
      reps.at(i, j) = z.at(i, chosen[j]);
  return reps;
}

// Coordinates of the class of cycle v in the homology basis: solve
// [boundaries | representatives] c = v and keep the representative block.
inline std::vector<Scalar> class_coordinates(const Field& f,
                                             const HomologyDegree& h,
                                             const std::vector<Scalar>& v) {
  std::size_t rows = h.boundaries.rows();
  std::size_t bc = h.boundaries.cols(), rc = h.representatives.cols();
  SMat sys = smat_zero(f, rows, bc + rc);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < bc; ++j) sys.at(i, j) = h.boundaries.at(i, j);
    for (std::size_t j = 0; j < rc; ++j)
      sys.at(i, bc + j) = h.representatives.at(i, j);
  }
  auto res = solve(f, sys, v);
  if (!res.solution)
    throw std::logic_error("vector is not a cycle modulo boundaries");
  std::vector<Scalar> out(rc, Scalar::zero(f));
  for (std::size_t j = 0; j < rc; ++j) out[j] = (*res.solution)[bc + j];
  return out;
}

}  // namespace detail

/// Exact homology of a complex with field coefficients.
inline HomologyReport homology(const ChainComplex& x) {
  const Field& f = x.ring()->field;
  HomologyReport rep;
  rep.lo = x.lo();
  rep.hi = x.hi();
  for (int i = x.lo(); i <= x.hi(); ++i) {
    SMat di = to_scalar_matrix(x.diff(i), f);
    SMat di1 = to_scalar_matrix(x.diff(i + 1), f);
    auto kb = kernel_basis(f, di);
    SMat cycles = detail::columns_to_smat(f, x.rank(i), kb);
    SMat reps = detail::quotient_representatives(f, di1, cycles);
    HomologyDegree deg;
    deg.dim = reps.cols();
    deg.cycles = std::move(cycles);
    deg.boundaries = std::move(di1);
    deg.representatives = std::move(reps);
    rep.degrees.push_back(std::move(deg));
  }
  return rep;
}

/// Matrices of H_i(f) on the canonical homology bases, for each degree of
/// the source.
inline std::map<int, SMat> induced_on_homology(const ChainMap& f) {
  const Field& field = f.source().ring()->field;
  HomologyReport hx = homology(f.source());
  HomologyReport hy = homology(f.target());
  std::map<int, SMat> out;
  int n = f.degree();
  for (int i = hx.lo; i <= hx.hi; ++i) {
    std::size_t hxd = hx.dim(i);
    std::size_t hyd = hy.dim(i + n);
    SMat m = smat_zero(field, hyd, hxd);
    if (hxd) {
      SMat fi = to_scalar_matrix(f.component(i), field);
      const HomologyDegree& src = hx.at(i);
      for (std::size_t j = 0; j < hxd; ++j) {
        std::vector<Scalar> v(f.source().rank(i), Scalar::zero(field));
        for (std::size_t r = 0; r < v.size(); ++r)
          v[r] = src.representatives.at(r, j);
        std::vector<Scalar> img(f.target().rank(i + n), Scalar::zero(field));
        for (std::size_t r = 0; r < img.size(); ++r) {
          Scalar acc = Scalar::zero(field);
          for (std::size_t c = 0; c < v.size(); ++c)
            acc += fi.at(r, c) * v[c];
          img[r] = acc;
        }
        if (hyd == 0) {
          continue;
        }
        auto coords =
            detail::class_coordinates(field, hy.at(i + n), img);
        for (std::size_t r = 0; r < hyd; ++r) m.at(r, j) = coords[r];
      }
    }
    out.emplace(i, std::move(m));
  }
  return out;
}

/// True when every induced map on homology is an isomorphism.
inline bool is_quasi_iso(const ChainMap& f) {
  if (!f.is_chain_map()) return false;
  HomologyReport hx = homology(f.source());
  HomologyReport hy = homology(f.target());
  int n = f.degree();
  int a = std::min(hx.lo, hy.lo - n), b = std::max(hx.hi, hy.hi - n);
  auto maps = induced_on_homology(f);
  for (int i = a; i <= b; ++i) {
    if (hx.dim(i) != hy.dim(i + n)) return false;
    auto it = maps.find(i);
    if (hx.dim(i) == 0) continue;
    if (it == maps.end()) return false;
    if (rank(it->second) != hx.dim(i)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Null-homotopy

struct Homotopy {
  std::map<int, PMat> s;  // s_p : X_p -> Y_{p+1}
};

struct HomotopyInfeasible {
  // A linear functional w with w^T (system) = 0 but w^T (rhs) != 0; the
  // indices identify the equations the functional combines.
  std::vector<Scalar> functional;
};

using NullHomotopyResult = std::variant<Homotopy, HomotopyInfeasible>;

/// Verifies f_p = d^Y s_p + s_{p-1} d^X in every degree, symbolically.
inline bool verify_homotopy(const ChainMap& f, const Homotopy& s) {
  const ChainComplex& x = f.source();
  const ChainComplex& y = f.target();
  auto scomp = [&](int p) -> PMat {
    auto it = s.s.find(p);
    if (it != s.s.end()) return it->second;
    return pmat_zero(x.ring(), y.rank(p + 1), x.rank(p));
  };
  for (int p = x.lo() - 1; p <= x.hi() + 1; ++p) {
    PMat lhs = f.component(p);
    PMat rhs = pmat_mul(x.ring(), y.diff(p + 1), scomp(p)) +
               pmat_mul(x.ring(), scomp(p - 1), x.diff(p));
    if (lhs != rhs) return false;
  }
  return true;
}

/// Solves for a homotopy exhibiting a degree-0 chain map as null-homotopic;
/// field coefficients. Returns the homotopy, or a Fredholm-style certificate
/// of infeasibility.
inline NullHomotopyResult solve_null_homotopy(const ChainMap& f) {
  const ChainComplex& x = f.source();
  const ChainComplex& y = f.target();
  const Field& field = x.ring()->field;
  if (f.degree() != 0)
    throw std::invalid_argument("solve_null_homotopy: degree-0 maps only");

  // Unknown layout: for each p, vec(s_p) row-major.
  std::map<int, std::size_t> offset;
  std::size_t nvars = 0;
  for (int p = x.lo(); p <= x.hi(); ++p) {
    offset[p] = nvars;
    nvars += y.rank(p + 1) * x.rank(p);
  }
  auto var = [&](int p, std::size_t i, std::size_t j) {
    return offset.at(p) + i * x.rank(p) + j;
  };

  std::vector<std::vector<Scalar>> rows;
  std::vector<Scalar> rhs;
  for (int p = x.lo(); p <= x.hi(); ++p) {
    SMat fp = to_scalar_matrix(f.component(p), field);
    SMat dy = to_scalar_matrix(y.diff(p + 1), field);
    SMat dx = to_scalar_matrix(x.diff(p), field);
    for (std::size_t r = 0; r < y.rank(p); ++r)
      for (std::size_t c = 0; c < x.rank(p); ++c) {
        std::vector<Scalar> row(nvars, Scalar::zero(field));
        // (d^Y s_p)[r,c] = sum_k dy[r,k] s_p[k,c]
        for (std::size_t k = 0; k < y.rank(p + 1); ++k)
          if (!dy.at(r, k).is_zero()) row[var(p, k, c)] += dy.at(r, k);
        // (s_{p-1} d^X)[r,c] = sum_k s_{p-1}[r,k] dx[k,c]
        if (p - 1 >= x.lo())
          for (std::size_t k = 0; k < x.rank(p - 1); ++k)
            if (!dx.at(k, c).is_zero())
              row[var(p - 1, r, k)] += dx.at(k, c);
        rows.push_back(std::move(row));
        rhs.push_back(fp.at(r, c));
      }
  }

  SMat sys = smat_zero(field, rows.size(), nvars);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < nvars; ++j) sys.at(i, j) = rows[i][j];
  auto res = solve(field, sys, rhs);
  if (!res.solution) return HomotopyInfeasible{std::move(res.certificate)};

  Homotopy h;
  for (int p = x.lo(); p <= x.hi(); ++p) {
    PMat sp = pmat_zero(x.ring(), y.rank(p + 1), x.rank(p));
    for (std::size_t i = 0; i < sp.rows(); ++i)
      for (std::size_t j = 0; j < sp.cols(); ++j)
        sp.at(i, j) = Poly::constant(x.ring(), (*res.solution)[var(p, i, j)]);
    h.s.emplace(p, std::move(sp));
  }
  return h;
}

// ---------------------------------------------------------------------------
// Soft truncation

struct Truncation {
  ChainComplex complex;
  ChainMap projection;  // the natural surjection from the original
};

/// nth soft left truncation: degree n becomes M_n / im(d_{n+1}), lower
/// degrees are unchanged, higher degrees vanish. Requires field coefficients
/// unless the incoming image is zero.
inline Truncation soft_truncate(const ChainComplex& m, int n) {
  PolyRingPtr ring = m.ring();
  if (n >= m.hi()) {
    return Truncation{m, ChainMap::identity(m)};
  }
  if (n < m.lo()) {
    ChainComplex z = ChainComplex::zero_complex(ring);
    return Truncation{z, ChainMap(m, z, 0, {})};
  }

  PMat dn1 = m.diff(n + 1);
  if (pmat_is_zero(dn1)) {
    // Quotient is the identity in degree n; just chop the complex.
    std::vector<std::size_t> ranks;
    std::map<int, PMat> diffs;
    for (int i = m.lo(); i <= n; ++i) {
      ranks.push_back(m.rank(i));
      if (i > m.lo()) diffs.emplace(i, m.diff(i));
    }
    ChainComplex t(ring, m.lo(), std::move(ranks), std::move(diffs));
    std::map<int, PMat> comps;
    for (int i = m.lo(); i <= n; ++i)
      if (m.rank(i)) comps.emplace(i, pmat_identity(ring, m.rank(i)));
    return Truncation{t, ChainMap(m, t, 0, std::move(comps))};
  }

  const Field& field = ring->field;
  SMat d_in = to_scalar_matrix(dn1, field);
  // Column basis B of the image, complement C chosen from standard vectors;
  // [B | C] is then invertible and the projection reads off C-coordinates.
  Rref e = rref(d_in.transpose());
  std::size_t rk = e.pivots.size();
  std::size_t rn = m.rank(n);
  SMat b = smat_zero(field, rn, rk);
  for (std::size_t r = 0; r < rk; ++r)
    for (std::size_t c = 0; c < rn; ++c) b.at(c, r) = e.mat.at(r, c);
  SMat eye = smat_identity(field, rn);
  SMat comp = detail::quotient_representatives(field, b, eye);
  std::size_t q = comp.cols();

  SMat bc = smat_zero(field, rn, rk + q);
  for (std::size_t i = 0; i < rn; ++i) {
    for (std::size_t j = 0; j < rk; ++j) bc.at(i, j) = b.at(i, j);
    for (std::size_t j = 0; j < q; ++j) bc.at(i, rk + j) = comp.at(i, j);
  }
  auto bc_inv = inverse(bc);
  if (!bc_inv) throw std::logic_error("soft_truncate: basis not invertible");
  SMat proj = smat_zero(field, q, rn);  // last q rows of [B|C]^{-1}
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < rn; ++j) proj.at(i, j) = bc_inv->at(rk + i, j);

  std::vector<std::size_t> ranks;
  std::map<int, PMat> diffs;
  for (int i = m.lo(); i < n; ++i) {
    ranks.push_back(m.rank(i));
    if (i > m.lo()) diffs.emplace(i, m.diff(i));
  }
  ranks.push_back(q);
  // Induced differential on representatives: d_n restricted to C.
  if (n > m.lo()) {
    PMat dq = pmat_mul(ring, m.diff(n), to_poly_matrix(comp, ring));
    diffs.emplace(n, std::move(dq));
  }
  ChainComplex t(ring, m.lo(), std::move(ranks), std::move(diffs));

  std::map<int, PMat> comps;
  for (int i = m.lo(); i < n; ++i)
    if (m.rank(i)) comps.emplace(i, pmat_identity(ring, m.rank(i)));
  comps.emplace(n, to_poly_matrix(proj, ring));
  return Truncation{t, ChainMap(m, t, 0, std::move(comps))};
}

}  // namespace dga
