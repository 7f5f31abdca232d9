#pragma once

#include <algorithm>
#include <limits>
#include <optional>

#include "dga/dg_ops.hpp"

namespace dga {

/// One adjoined generator of a semi-free module: its degree, the expansion
/// of its differential over the previously adjoined generators (coordinates
/// in the free module one degree down), and its image in the target.
struct SemifreeGenerator {
  int degree;
  std::vector<Scalar> d_coords;
  std::vector<Scalar> phi_coords;
};

/// A semi-free module built by iterated cycle-killing, together with the
/// comparison morphism to its target. The underlying module is free over
/// the underlying algebra on the listed generators.
class SemifreeResolution {
 public:
  SemifreeResolution(DGAlgebraPtr algebra, DGModule target)
      : algebra_(std::move(algebra)), target_(std::move(target)) {}

  const DGAlgebraPtr& algebra() const { return algebra_; }
  const DGModule& target() const { return target_; }
  const std::vector<SemifreeGenerator>& generators() const { return gens_; }
  int certified_through() const { return certified_through_; }

  std::size_t free_rank(int k) const {
    std::size_t r = 0;
    for (auto& g : gens_) r += algebra_->cx.rank(k - g.degree);
    return r;
  }

  std::size_t pair_index(int k, std::size_t gen, std::size_t a_idx) const {
    std::size_t off = 0;
    for (std::size_t gi = 0; gi < gen; ++gi)
      off += algebra_->cx.rank(k - gens_[gi].degree);
    return off + a_idx;
  }

  int free_lo() const {
    int lo = 0;
    for (auto& g : gens_) lo = std::min(lo, g.degree);
    return gens_.empty() ? 0 : lo;
  }
  int free_hi() const {
    int hi = 0;
    for (auto& g : gens_) hi = std::max(hi, g.degree + algebra_->cx.hi());
    return gens_.empty() ? -1 : hi;
  }

  /// The free module as a chain complex (with its action, see dg_module()).
  ChainComplex free_complex() const {
    PolyRingPtr ring = algebra_->cx.ring();
    if (gens_.empty()) return ChainComplex::zero_complex(ring);
    int lo = free_lo(), hi = free_hi();
    std::vector<std::size_t> ranks;
    std::map<int, std::vector<std::string>> labels;
    for (int k = lo; k <= hi; ++k) {
      ranks.push_back(free_rank(k));
      std::vector<std::string> ls;
      for (std::size_t gi = 0; gi < gens_.size(); ++gi)
        for (std::size_t a = 0; a < algebra_->cx.rank(k - gens_[gi].degree);
             ++a)
          ls.push_back(algebra_->cx.label(k - gens_[gi].degree, a) + ".g" +
                       std::to_string(gi));
      if (!ls.empty()) labels.emplace(k, std::move(ls));
    }
    std::map<int, PMat> diffs;
    for (int k = lo + 1; k <= hi; ++k) {
      PMat d = pmat_zero(ring, free_rank(k - 1), free_rank(k));
      for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
        int di = gens_[gi].degree;
        int adeg = k - di;
        PMat da = algebra_->cx.diff(adeg);
        for (std::size_t a = 0; a < algebra_->cx.rank(adeg); ++a) {
          std::size_t col = pair_index(k, gi, a);
          // d(a) . g
          for (std::size_t b = 0; b < algebra_->cx.rank(adeg - 1); ++b)
            if (!da.at(b, a).is_zero())
              d.at(pair_index(k - 1, gi, b), col) += da.at(b, a);
          // (-1)^{|a|} a . d(g)
          int sign = (adeg % 2 == 0) ? 1 : -1;
          for (std::size_t t = 0; t < gens_[gi].d_coords.size(); ++t) {
            const Scalar& c = gens_[gi].d_coords[t];
            if (c.is_zero()) continue;
            auto [gj, ap] = pair_of(di - 1, t);
            int apdeg = di - 1 - gens_[gj].degree;
            PMat mult = algebra_->mult_matrix(adeg, a, apdeg);
            for (std::size_t b = 0; b < algebra_->cx.rank(adeg + apdeg); ++b)
              if (!mult.at(b, ap).is_zero())
                d.at(pair_index(k - 1, gj, b), col) +=
                    Poly::constant(ring, sign * 1) * mult.at(b, ap) *
                    Poly::constant(ring, c);
          }
        }
      }
      diffs.emplace(k, std::move(d));
    }
    return ChainComplex(ring, lo, std::move(ranks), std::move(diffs),
                        std::move(labels));
  }

  /// The free module as a DG module over the algebra.
  DGModule dg_module() const {
    ChainComplex cx = free_complex();
    PolyRingPtr ring = algebra_->cx.ring();
    StructureTensors action;
    for (int i = 0; i <= algebra_->cx.hi(); ++i) {
      if (!algebra_->cx.rank(i)) continue;
      for (int k = cx.lo(); k <= cx.hi(); ++k) {
        if (!cx.rank(k) || !cx.rank(k + i)) continue;
        std::vector<PMat> mats;
        for (std::size_t p = 0; p < algebra_->cx.rank(i); ++p) {
          PMat m = pmat_zero(ring, cx.rank(k + i), cx.rank(k));
          for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
            int adeg = k - gens_[gi].degree;
            PMat mult = algebra_->mult_matrix(i, p, adeg);
            for (std::size_t a = 0; a < algebra_->cx.rank(adeg); ++a)
              for (std::size_t b = 0; b < algebra_->cx.rank(adeg + i); ++b)
                if (!mult.at(b, a).is_zero())
                  m.at(pair_index(k + i, gi, b), pair_index(k, gi, a)) +=
                      mult.at(b, a);
          }
          mats.push_back(std::move(m));
        }
        action.emplace(DegreePair{i, k}, std::move(mats));
      }
    }
    return DGModule{algebra_, std::move(cx), std::move(action)};
  }

  /// The comparison morphism from the free module onto the target.
  ChainMap phi() const {
    ChainComplex f = free_complex();
    PolyRingPtr ring = algebra_->cx.ring();
    std::map<int, PMat> comps;
    for (int k = f.lo(); k <= f.hi(); ++k) {
      PMat c = pmat_zero(ring, target_.cx.rank(k), f.rank(k));
      for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
        int di = gens_[gi].degree;
        int adeg = k - di;
        for (std::size_t a = 0; a < algebra_->cx.rank(adeg); ++a) {
          PMat act = target_.act_matrix(adeg, a, di);
          std::size_t col = pair_index(k, gi, a);
          for (std::size_t r = 0; r < target_.cx.rank(k); ++r) {
            Poly acc = Poly::zero(ring);
            for (std::size_t s = 0; s < gens_[gi].phi_coords.size(); ++s)
              if (!gens_[gi].phi_coords[s].is_zero())
                acc += act.at(r, s) *
                       Poly::constant(ring, gens_[gi].phi_coords[s]);
            c.at(r, col) += acc;
          }
        }
      }
      comps.emplace(k, std::move(c));
    }
    return ChainMap(f, target_.cx, 0, std::move(comps));
  }

  void adjoin(SemifreeGenerator g) { gens_.push_back(std::move(g)); }
  void set_certified(int d) { certified_through_ = d; }

 private:
  std::pair<std::size_t, std::size_t> pair_of(int k, std::size_t index) const {
    std::size_t off = 0;
    for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
      std::size_t sz = algebra_->cx.rank(k - gens_[gi].degree);
      if (index < off + sz) return {gi, index - off};
      off += sz;
    }
    throw std::logic_error("pair_of: index out of range");
  }

  DGAlgebraPtr algebra_;
  DGModule target_;
  std::vector<SemifreeGenerator> gens_;
  int certified_through_ = std::numeric_limits<int>::min();
};

/// Builds a semi-free resolution by cycle-killing: at each stage d the
/// homology classes of the mapping cone in degree d are struck out by new
/// degree-d generators. Afterwards the comparison morphism induces homology
/// isomorphisms below `cap` and a surjection at `cap`.
inline SemifreeResolution semifree_resolution(
    const DGModule& m, int cap, bool reverse_generator_order = false) {
  if (!m.ring()->is_field())
    throw std::domain_error("semifree_resolution requires field coefficients");
  const Field& f = m.ring()->field;

  HomologyReport hm = homology(m.cx);
  int lowest = m.cx.lo();
  while (lowest <= m.cx.hi() && hm.dim(lowest) == 0) ++lowest;
  if (lowest > m.cx.hi()) {
    // Homologically trivial: the zero module resolves it.
    SemifreeResolution r(m.algebra, m);
    r.set_certified(cap);
    return r;
  }
  if (cap < lowest)
    throw std::invalid_argument(
        "semifree_resolution: cap is below the lowest nonvanishing homology");

  SemifreeResolution r(m.algebra, m);
  for (int d = lowest; d <= cap; ++d) {
    ChainMap comparison = r.phi();
    ChainComplex cone = detail::cone(comparison);
    HomologyReport hc = homology(cone);
    if (hc.dim(d) == 0) continue;
    const HomologyDegree& deg = hc.at(d);
    std::size_t f_rank = r.free_rank(d - 1);
    std::vector<std::size_t> order(deg.representatives.cols());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (reverse_generator_order) std::reverse(order.begin(), order.end());
    for (std::size_t col : order) {
      SemifreeGenerator g;
      g.degree = d;
      for (std::size_t i = 0; i < f_rank; ++i)
        g.d_coords.push_back(deg.representatives.at(i, col));
      for (std::size_t i = 0; i < m.cx.rank(d); ++i)
        g.phi_coords.push_back(-deg.representatives.at(f_rank + i, col));
      r.adjoin(std::move(g));
    }
  }
  r.set_certified(cap);
  return r;
}

/// True when the algebra-span of the candidate elements is a basis of the
/// underlying module: in every degree, the products (algebra basis) x
/// (candidate) are linearly independent and span.
inline bool check_semibasis(
    const DGModule& m,
    const std::vector<std::pair<int, std::vector<Scalar>>>& candidates) {
  const Field& f = m.ring()->field;
  const DGAlgebra& a = *m.algebra;
  for (int k = m.cx.lo(); k <= m.cx.hi(); ++k) {
    std::vector<std::vector<Scalar>> cols;
    for (auto& [deg, vec] : candidates) {
      int adeg = k - deg;
      for (std::size_t p = 0; p < a.cx.rank(adeg); ++p) {
        SMat act = to_scalar_matrix(m.act_matrix(adeg, p, deg), f);
        std::vector<Scalar> col(m.cx.rank(k), Scalar::zero(f));
        for (std::size_t r = 0; r < col.size(); ++r)
          for (std::size_t s = 0; s < vec.size(); ++s)
            col[r] += act.at(r, s) * vec[s];
        cols.push_back(std::move(col));
      }
    }
    SMat mat = smat_zero(f, m.cx.rank(k), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < m.cx.rank(k); ++i)
        mat.at(i, j) = cols[j][i];
    if (rank(mat) != cols.size() || cols.size() != m.cx.rank(k)) return false;
  }
  return true;
}

/// Hom over the algebra out of a semi-free module, assembled directly from
/// generator data: degree k has one basis element per (generator g, basis
/// vector of N in degree |g|+k).
inline ChainComplex semifree_hom(const SemifreeResolution& r,
                                 const DGModule& n) {
  const DGAlgebra& a = *r.algebra();
  PolyRingPtr ring = a.cx.ring();
  const auto& gens = r.generators();
  if (gens.empty()) return ChainComplex::zero_complex(ring);

  int min_gen = gens[0].degree, max_gen = gens[0].degree;
  for (auto& g : gens) {
    min_gen = std::min(min_gen, g.degree);
    max_gen = std::max(max_gen, g.degree);
  }
  int lo = n.cx.lo() - max_gen, hi = n.cx.hi() - min_gen;

  auto dim_at = [&](int k) {
    std::size_t d = 0;
    for (auto& g : gens) d += n.cx.rank(g.degree + k);
    return d;
  };
  auto index_of = [&](int k, std::size_t gen, std::size_t v) {
    std::size_t off = 0;
    for (std::size_t gi = 0; gi < gen; ++gi)
      off += n.cx.rank(gens[gi].degree + k);
    return off + v;
  };
  auto pair_of_free = [&](int fdeg, std::size_t index) {
    std::size_t off = 0;
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      std::size_t sz = a.cx.rank(fdeg - gens[gi].degree);
      if (index < off + sz) return std::make_pair(gi, index - off);
      off += sz;
    }
    throw std::logic_error("semifree_hom: index out of range");
  };

  std::vector<std::size_t> ranks;
  for (int k = lo; k <= hi; ++k) ranks.push_back(dim_at(k));

  std::map<int, PMat> diffs;
  for (int k = lo + 1; k <= hi; ++k) {
    PMat d = pmat_zero(ring, dim_at(k - 1), dim_at(k));
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      int ndeg = gens[gi].degree + k;
      PMat dn = n.cx.diff(ndeg);
      for (std::size_t v = 0; v < n.cx.rank(ndeg); ++v) {
        std::size_t col = index_of(k, gi, v);
        // d^N o f
        for (std::size_t w = 0; w < n.cx.rank(ndeg - 1); ++w)
          if (!dn.at(w, v).is_zero())
            d.at(index_of(k - 1, gi, w), col) += dn.at(w, v);
        // -(-1)^k f o d^F: scan every generator whose differential hits g_i.
        for (std::size_t gj = 0; gj < gens.size(); ++gj) {
          int dj = gens[gj].degree;
          for (std::size_t t = 0; t < gens[gj].d_coords.size(); ++t) {
            const Scalar& c = gens[gj].d_coords[t];
            if (c.is_zero()) continue;
            auto [gt, ap] = pair_of_free(dj - 1, t);
            if (gt != gi) continue;
            int apdeg = dj - 1 - gens[gi].degree;
            // sign: -(-1)^k (-1)^{k |a'|}
            int sign = (k % 2 != 0) ? 1 : -1;
            if (k % 2 != 0 && apdeg % 2 != 0) sign = -sign;
            PMat act = n.act_matrix(apdeg, ap, ndeg);
            for (std::size_t w = 0; w < n.cx.rank(ndeg + apdeg); ++w)
              if (!act.at(w, v).is_zero())
                d.at(index_of(k - 1, gj, w), col) +=
                    Poly::constant(ring, sign) * act.at(w, v) *
                    Poly::constant(ring, c);
          }
        }
      }
    }
    diffs.emplace(k, std::move(d));
  }
  return ChainComplex(ring, lo, std::move(ranks), std::move(diffs));
}

// ---------------------------------------------------------------------------
// Ext

struct ExtTable {
  std::map<int, std::size_t> dims;  // i -> dim Ext^i, 0 <= i <= certified
  int certified_through = -1;
};

namespace detail {

inline ExtTable ext_from_resolution(const SemifreeResolution& r,
                                    const DGModule& n, int cap) {
  ChainComplex h = semifree_hom(r, n);
  HomologyReport hr = homology(h);
  ExtTable t;
  for (int i = 0; i <= cap; ++i)
    t.dims[i] = hr.dim(-i);
  t.certified_through = cap;
  return t;
}

}  // namespace detail

/// Ext_A^i(M, N) = H_{-i} of Hom out of a semi-free resolution of M.
/// Entries are emitted only after a stability recomputation: the table is
/// recomputed from a one-stage-deeper resolution and must agree.
inline ExtTable ext_table(const DGModule& m, const DGModule& n, int cap) {
  if (cap < 0) throw std::invalid_argument("ext_table: negative cap");
  int stages = cap + std::max(0, n.cx.hi()) + 2;
  SemifreeResolution r1 = semifree_resolution(m, stages);
  SemifreeResolution r2 = semifree_resolution(m, stages + 1);
  ExtTable t1 = detail::ext_from_resolution(r1, n, cap);
  ExtTable t2 = detail::ext_from_resolution(r2, n, cap);
  ExtTable out;
  int certified = -1;
  for (int i = 0; i <= cap; ++i) {
    if (t1.dims.at(i) != t2.dims.at(i)) break;
    out.dims[i] = t1.dims.at(i);
    certified = i;
  }
  out.certified_through = certified;
  if (certified < 0)
    throw std::logic_error("ext_table: no entry stabilized at this cap");
  return out;
}

// ---------------------------------------------------------------------------
// Semidualizing checks

struct SemidualizingVerdict {
  bool yes = false;
  int window_lo = 0, window_hi = 0;     // degrees certified by the cap
  std::optional<int> witness_degree;    // first degree where H(chi) fails
};

namespace detail {

/// Quasiisomorphism restricted to a degree window.
inline std::optional<int> quasi_iso_defect_in_window(const ChainMap& f,
                                                     int lo, int hi) {
  if (!f.is_chain_map()) return lo - 1;
  HomologyReport hx = homology(f.source());
  HomologyReport hy = homology(f.target());
  auto maps = induced_on_homology(f);
  for (int i = lo; i <= hi; ++i) {
    if (hx.dim(i) != hy.dim(i)) return i;
    if (hx.dim(i) == 0) continue;
    auto it = maps.find(i);
    if (it == maps.end() || rank(it->second) != hx.dim(i)) return i;
  }
  return std::nullopt;
}

}  // namespace detail

/// Checks whether the homothety into Hom_A(C, C) is a quasiisomorphism in
/// the window certified by the cap, after replacing C by a semi-free
/// resolution F and computing Hom_A(F, C).
inline SemidualizingVerdict is_semidualizing_dg(const DGModule& c, int cap) {
  const Field& f = c.ring()->field;
  const DGAlgebra& a = *c.algebra;
  PolyRingPtr ring = a.cx.ring();

  int stages = cap + std::max(0, c.cx.hi()) + 2;
  SemifreeResolution r = semifree_resolution(c, stages);

  SemidualizingVerdict verdict;
  verdict.window_lo = -cap;
  verdict.window_hi = cap;

  if (r.generators().empty()) {
    // C is homologically trivial; the homothety cannot hit H_0(A) = F... and
    // in fact Hom is zero while A is not.
    verdict.yes = false;
    verdict.witness_degree = 0;
    return verdict;
  }

  ChainComplex hom = semifree_hom(r, c);
  // chi': a |-> (g |-> a . phi(g)), the homothety composed with the
  // comparison quasiisomorphism.
  const auto& gens = r.generators();
  auto index_of = [&](int k, std::size_t gen, std::size_t v) {
    std::size_t off = 0;
    for (std::size_t gi = 0; gi < gen; ++gi)
      off += c.cx.rank(gens[gi].degree + k);
    return off + v;
  };
  std::map<int, PMat> comps;
  for (int i = 0; i <= a.cx.hi(); ++i) {
    if (!a.cx.rank(i) || !hom.rank(i)) continue;
    PMat comp = pmat_zero(ring, hom.rank(i), a.cx.rank(i));
    for (std::size_t p = 0; p < a.cx.rank(i); ++p)
      for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        int dgi = gens[gi].degree;
        SMat act = to_scalar_matrix(c.act_matrix(i, p, dgi), f);
        for (std::size_t w = 0; w < c.cx.rank(dgi + i); ++w) {
          Scalar acc = Scalar::zero(f);
          for (std::size_t s = 0; s < gens[gi].phi_coords.size(); ++s)
            acc += act.at(w, s) * gens[gi].phi_coords[s];
          if (!acc.is_zero())
            comp.at(index_of(i, gi, w), p) = Poly::constant(ring, acc);
        }
      }
    comps.emplace(i, std::move(comp));
  }
  ChainMap chi(a.cx, hom, 0, std::move(comps));
  auto defect = detail::quasi_iso_defect_in_window(chi, -cap, cap);
  verdict.yes = !defect.has_value();
  verdict.witness_degree = defect;
  return verdict;
}

/// The classical check for a module over a degree-0 algebra, routed through
/// the DG machinery: resolve and test the homothety up to the cap.
inline SemidualizingVerdict is_semidualizing_module(const DGModule& c,
                                                    int cap) {
  if (c.algebra->cx.hi() != 0)
    throw std::invalid_argument(
        "is_semidualizing_module expects an algebra concentrated in degree 0");
  return is_semidualizing_dg(c, cap);
}

// ---------------------------------------------------------------------------
// Length bound for local artinian algebras

struct LengthBoundReport {
  std::size_t algebra_length = 0;   // len(R) = dim_F
  std::size_t socle_dimension = 0;  // mu^0
  std::size_t rho = 0;              // len(R) * mu^0
  std::size_t module_length = 0;    // len(C)
  bool bound_holds = false;
};

/// For a commutative algebra concentrated in degree 0: certifies that it is
/// local artinian (nilradical of codimension one, found by the trace form
/// and verified nilpotent), computes mu^0 as the socle dimension by a linear
/// solve, and evaluates the bound len(C) <= len(R) * mu^0.
inline LengthBoundReport semidualizing_length_bound(DGAlgebraPtr alg,
                                                    const DGModule& c) {
  const DGAlgebra& a = *alg;
  if (a.cx.hi() != 0)
    throw std::invalid_argument("length bound expects a degree-0 algebra");
  const Field& f = a.cx.ring()->field;
  std::size_t dim = a.cx.rank(0);

  auto mult_by = [&](const std::vector<Scalar>& v) {
    SMat m = smat_zero(f, dim, dim);
    for (std::size_t p = 0; p < dim; ++p) {
      if (v[p].is_zero()) continue;
      SMat mp = to_scalar_matrix(a.mult_matrix(0, p, 0), f);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
          m.at(i, j) += v[p] * mp.at(i, j);
    }
    return m;
  };

  // Trace-form kernel; over the base fields used here it is the nilradical,
  // and every certificate below is re-verified exactly.
  SMat trace_form = smat_zero(f, dim, dim);
  for (std::size_t p = 0; p < dim; ++p)
    for (std::size_t q = 0; q < dim; ++q) {
      SMat mp = to_scalar_matrix(a.mult_matrix(0, p, 0), f);
      SMat mq = to_scalar_matrix(a.mult_matrix(0, q, 0), f);
      SMat prod = mp * mq;
      Scalar tr = Scalar::zero(f);
      for (std::size_t i = 0; i < dim; ++i) tr += prod.at(i, i);
      trace_form.at(p, q) = tr;
    }
  auto nil = kernel_basis(f, trace_form);

  if (nil.size() + 1 != dim)
    throw std::invalid_argument(
        "algebra is not certified local artinian: radical codimension != 1");
  SMat nil_cols = smat_zero(f, dim, nil.size());
  for (std::size_t j = 0; j < nil.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i) nil_cols.at(i, j) = nil[j][i];
  for (auto& v : nil) {
    SMat m = mult_by(v);
    SMat power = smat_identity(f, dim);
    for (std::size_t t = 0; t < dim; ++t) power = power * m;
    if (!smat_is_zero(power))
      throw std::invalid_argument(
          "algebra is not certified local artinian: non-nilpotent radical "
          "element");
    // Closure under multiplication keeps the kernel an ideal.
    for (std::size_t p = 0; p < dim; ++p) {
      SMat mp = to_scalar_matrix(a.mult_matrix(0, p, 0), f);
      std::vector<Scalar> w(dim, Scalar::zero(f));
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) w[i] += mp.at(i, j) * v[j];
      if (!solve(f, nil_cols, w).solution)
        throw std::invalid_argument(
            "algebra is not certified local artinian: radical is not an "
            "ideal");
    }
  }

  // Socle: simultaneous kernel of multiplication by the radical basis.
  std::size_t mu0;
  if (nil.empty()) {
    mu0 = dim;  // the field itself: Hom(k, R) = R
  } else {
    SMat stacked = smat_zero(f, dim * nil.size(), dim);
    for (std::size_t t = 0; t < nil.size(); ++t) {
      SMat m = mult_by(nil[t]);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
          stacked.at(t * dim + i, j) = m.at(i, j);
    }
    mu0 = kernel_basis(f, stacked).size();
  }

  LengthBoundReport rep;
  rep.algebra_length = dim;
  rep.socle_dimension = mu0;
  rep.rho = dim * mu0;
  rep.module_length = c.cx.total_rank();
  rep.bound_holds = rep.module_length <= rep.rho;
  return rep;
}

}  // namespace dga
