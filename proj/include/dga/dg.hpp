#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dga/complex.hpp"

namespace dga {

using DegreePair = std::pair<int, int>;

/// Structure constants of a graded bilinear pairing. For degrees (i, j),
/// entry p is the matrix of "multiply by the p-th basis element of degree i"
/// as a map from degree j to degree i+j.
using StructureTensors = std::map<DegreePair, std::vector<PMat>>;

struct VerifyReport {
  bool ok = true;
  std::string violation;  // first failing axiom, human-readable

  static VerifyReport pass() { return {}; }
  static VerifyReport fail(std::string what) {
    return {false, std::move(what)};
  }
};

/// A complex concentrated in non-negative degrees with a graded-commutative
/// unital product satisfying the Leibniz rule. Construction is unchecked;
/// see verify_dg_algebra. Library builders always verify what they return.
struct DGAlgebra {
  ChainComplex cx;
  std::size_t unit_index = 0;  // basis index of 1 in degree 0
  StructureTensors products;

  const PolyRingPtr& ring() const { return cx.ring(); }

  PMat mult_matrix(int i, std::size_t p, int j) const {
    auto it = products.find({i, j});
    if (it != products.end() && p < it->second.size()) return it->second[p];
    return pmat_zero(cx.ring(), cx.rank(i + j), cx.rank(j));
  }

  /// Product of homogeneous coordinate vectors, degrees i and j.
  std::vector<Poly> multiply(int i, const std::vector<Poly>& a, int j,
                             const std::vector<Poly>& b) const {
    std::vector<Poly> out(cx.rank(i + j), Poly::zero(cx.ring()));
    for (std::size_t p = 0; p < a.size(); ++p) {
      if (a[p].is_zero()) continue;
      PMat m = mult_matrix(i, p, j);
      for (std::size_t t = 0; t < out.size(); ++t)
        for (std::size_t q = 0; q < b.size(); ++q)
          if (!m.at(t, q).is_zero() && !b[q].is_zero())
            out[t] += a[p] * m.at(t, q) * b[q];
    }
    return out;
  }

  std::vector<Poly> basis_vector(int i, std::size_t p) const {
    std::vector<Poly> v(cx.rank(i), Poly::zero(cx.ring()));
    v[p] = Poly::constant(cx.ring(), 1);
    return v;
  }

  /// d(a) for a homogeneous coordinate vector in degree i.
  std::vector<Poly> differential(int i, const std::vector<Poly>& a) const {
    PMat d = cx.diff(i);
    std::vector<Poly> out(cx.rank(i - 1), Poly::zero(cx.ring()));
    for (std::size_t r = 0; r < out.size(); ++r)
      for (std::size_t c = 0; c < a.size(); ++c)
        if (!d.at(r, c).is_zero() && !a[c].is_zero())
          out[r] += d.at(r, c) * a[c];
    return out;
  }
};

using DGAlgebraPtr = std::shared_ptr<const DGAlgebra>;

/// A complex with a scalar multiplication by a DG algebra.
struct DGModule {
  DGAlgebraPtr algebra;
  ChainComplex cx;
  StructureTensors action;

  const PolyRingPtr& ring() const { return cx.ring(); }

  PMat act_matrix(int i, std::size_t p, int j) const {
    auto it = action.find({i, j});
    if (it != action.end() && p < it->second.size()) return it->second[p];
    return pmat_zero(cx.ring(), cx.rank(i + j), cx.rank(j));
  }

  /// Action of the p-th basis element of A_i composed over an A-coordinate
  /// vector: multiply a general algebra element, degree i, into degree j.
  PMat act_element(int i, const std::vector<Poly>& a, int j) const {
    PMat out = pmat_zero(cx.ring(), cx.rank(i + j), cx.rank(j));
    for (std::size_t p = 0; p < a.size(); ++p)
      if (!a[p].is_zero())
        out = out + pmat_scaled(act_matrix(i, p, j), a[p]);
    return out;
  }
};

// ---------------------------------------------------------------------------
// Axiom verification

namespace detail {

inline bool vec_is_zero(const std::vector<Poly>& v) {
  for (const auto& p : v)
    if (!p.is_zero()) return false;
  return true;
}

inline std::vector<Poly> vec_sub(std::vector<Poly> a,
                                 const std::vector<Poly>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline std::vector<Poly> vec_scale_sign(std::vector<Poly> a, int sign) {
  if (sign == -1)
    for (auto& p : a) p = -p;
  return a;
}

}  // namespace detail

/// Checks every DG algebra axiom on basis elements: positive grading, unit,
/// graded commutativity with odd squares zero, associativity, Leibniz.
/// Reports the first violation found.
inline VerifyReport verify_dg_algebra(const DGAlgebra& a) {
  const ChainComplex& cx = a.cx;
  if (cx.lo() != 0 && cx.rank(cx.lo()) != 0)
    return VerifyReport::fail("not positively graded: lowest degree " +
                              std::to_string(cx.lo()));
  if (cx.rank(0) == 0 || a.unit_index >= cx.rank(0))
    return VerifyReport::fail("no unit basis element in degree 0");

  int top = cx.hi();
  // unital: 1 * b = b and b * 1 = b.
  for (int j = 0; j <= top; ++j) {
    if (!cx.rank(j)) continue;
    PMat left = a.mult_matrix(0, a.unit_index, j);
    if (left != pmat_identity(cx.ring(), cx.rank(j)))
      return VerifyReport::fail("unit does not act as identity on degree " +
                                std::to_string(j));
    for (std::size_t q = 0; q < cx.rank(j); ++q) {
      std::vector<Poly> v =
          a.multiply(j, a.basis_vector(j, q), 0, a.basis_vector(0, a.unit_index));
      v[q] -= Poly::constant(cx.ring(), 1);
      if (!detail::vec_is_zero(v))
        return VerifyReport::fail("right multiplication by the unit fails on " +
                                  cx.label(j, q));
    }
  }
  // graded commutative, with squares of odd elements zero.
  for (int i = 0; i <= top; ++i)
    for (int j = 0; i + j <= top; ++j)
      for (std::size_t p = 0; p < cx.rank(i); ++p)
        for (std::size_t q = 0; q < cx.rank(j); ++q) {
          auto ab = a.multiply(i, a.basis_vector(i, p), j, a.basis_vector(j, q));
          auto ba = a.multiply(j, a.basis_vector(j, q), i, a.basis_vector(i, p));
          int sign = (i % 2 != 0 && j % 2 != 0) ? -1 : 1;
          if (!detail::vec_is_zero(
                  detail::vec_sub(detail::vec_scale_sign(ab, sign), ba)))
            return VerifyReport::fail(
                "graded commutativity fails at degrees (" + std::to_string(i) +
                "," + std::to_string(j) + ") pair (" + cx.label(i, p) + "," +
                cx.label(j, q) + ")");
          if (i % 2 != 0 && i == j && p == q && !detail::vec_is_zero(ab))
            return VerifyReport::fail("odd square nonzero: " + cx.label(i, p));
        }
  // associative.
  for (int i = 0; i <= top; ++i)
    for (int j = 0; i + j <= top; ++j)
      for (int k = 0; i + j + k <= top; ++k)
        for (std::size_t p = 0; p < cx.rank(i); ++p)
          for (std::size_t q = 0; q < cx.rank(j); ++q)
            for (std::size_t r = 0; r < cx.rank(k); ++r) {
              auto ab = a.multiply(i, a.basis_vector(i, p), j,
                                   a.basis_vector(j, q));
              auto abc = a.multiply(i + j, ab, k, a.basis_vector(k, r));
              auto bc = a.multiply(j, a.basis_vector(j, q), k,
                                   a.basis_vector(k, r));
              auto abc2 = a.multiply(i, a.basis_vector(i, p), j + k, bc);
              if (!detail::vec_is_zero(detail::vec_sub(abc, abc2)))
                return VerifyReport::fail(
                    "associativity fails at (" + cx.label(i, p) + "," +
                    cx.label(j, q) + "," + cx.label(k, r) + ")");
            }
  // Leibniz: d(ab) = d(a) b + (-1)^{|a|} a d(b).
  for (int i = 0; i <= top; ++i)
    for (int j = 0; i + j <= top; ++j)
      for (std::size_t p = 0; p < cx.rank(i); ++p)
        for (std::size_t q = 0; q < cx.rank(j); ++q) {
          auto ab = a.multiply(i, a.basis_vector(i, p), j, a.basis_vector(j, q));
          auto lhs = a.differential(i + j, ab);
          auto da = a.differential(i, a.basis_vector(i, p));
          auto db = a.differential(j, a.basis_vector(j, q));
          auto t1 = a.multiply(i - 1, da, j, a.basis_vector(j, q));
          auto t2 = detail::vec_scale_sign(
              a.multiply(i, a.basis_vector(i, p), j - 1, db),
              i % 2 == 0 ? 1 : -1);
          auto rhs = t1;
          for (std::size_t t = 0; t < rhs.size(); ++t) rhs[t] += t2[t];
          if (!detail::vec_is_zero(detail::vec_sub(lhs, rhs)))
            return VerifyReport::fail(
                "Leibniz fails at degree pair (" + std::to_string(i) + "," +
                std::to_string(j) + ") on (" + cx.label(i, p) + "," +
                cx.label(j, q) + ")");
        }
  return VerifyReport::pass();
}

/// Checks the DG module axioms: unital, associative, graded (by storage),
/// Leibniz.
inline VerifyReport verify_dg_module(const DGModule& m) {
  const DGAlgebra& a = *m.algebra;
  const ChainComplex& mx = m.cx;
  int atop = a.cx.hi();

  for (int j = mx.lo(); j <= mx.hi(); ++j) {
    if (!mx.rank(j)) continue;
    if (m.act_matrix(0, a.unit_index, j) != pmat_identity(mx.ring(), mx.rank(j)))
      return VerifyReport::fail("unit does not act as identity on degree " +
                                std::to_string(j));
  }
  // (a b) m = a (b m) for algebra basis pairs, all module degrees at once.
  for (int i = 0; i <= atop; ++i)
    for (int j = 0; i + j <= atop; ++j)
      for (std::size_t p = 0; p < a.cx.rank(i); ++p)
        for (std::size_t q = 0; q < a.cx.rank(j); ++q) {
          auto ab = a.multiply(i, a.basis_vector(i, p), j, a.basis_vector(j, q));
          for (int l = mx.lo(); l <= mx.hi(); ++l) {
            if (!mx.rank(l)) continue;
            PMat lhs = m.act_element(i + j, ab, l);
            PMat rhs = pmat_mul(mx.ring(), m.act_matrix(i, p, j + l),
                                m.act_matrix(j, q, l));
            if (lhs != rhs)
              return VerifyReport::fail(
                  "action associativity fails for (" + a.cx.label(i, p) + "," +
                  a.cx.label(j, q) + ") on module degree " + std::to_string(l));
          }
        }
  // Leibniz: d(a m) = d(a) m + (-1)^{|a|} a d(m).
  for (int i = 0; i <= atop; ++i)
    for (std::size_t p = 0; p < a.cx.rank(i); ++p) {
      auto da = a.differential(i, a.basis_vector(i, p));
      for (int j = mx.lo() - 1; j <= mx.hi() + 1; ++j) {
        PMat lhs = pmat_mul(mx.ring(), mx.diff(i + j), m.act_matrix(i, p, j));
        PMat da_act = pmat_zero(mx.ring(), mx.rank(i + j - 1), mx.rank(j));
        for (std::size_t k = 0; k < da.size(); ++k)
          if (!da[k].is_zero())
            da_act = da_act + pmat_scaled(m.act_matrix(i - 1, k, j), da[k]);
        PMat ad = pmat_mul(mx.ring(), m.act_matrix(i, p, j - 1), mx.diff(j));
        PMat rhs = i % 2 == 0 ? da_act + ad : da_act - ad;
        if (lhs != rhs)
          return VerifyReport::fail("Leibniz fails for " + a.cx.label(i, p) +
                                    " on module degree " + std::to_string(j));
      }
    }
  return VerifyReport::pass();
}

// ---------------------------------------------------------------------------
// Canonical constructions

/// The algebra as a module over itself.
inline DGModule as_module(DGAlgebraPtr a) {
  return DGModule{a, a->cx, a->products};
}

/// A finite-dimensional commutative algebra placed in degree 0. The
/// multiplication table gives mult[p][q] = coefficient vector of b_p * b_q.
inline DGAlgebra algebra_in_degree_zero(
    PolyRingPtr ring, std::size_t dim,
    const std::vector<std::vector<std::vector<Poly>>>& mult,
    std::size_t unit_index, std::vector<std::string> labels = {}) {
  std::map<int, std::vector<std::string>> lab;
  if (!labels.empty()) lab.emplace(0, std::move(labels));
  ChainComplex cx(ring, 0, {dim}, {}, std::move(lab));
  std::vector<PMat> tensors;
  for (std::size_t p = 0; p < dim; ++p) {
    PMat t = pmat_zero(ring, dim, dim);
    for (std::size_t q = 0; q < dim; ++q)
      for (std::size_t r = 0; r < dim; ++r) t.at(r, q) = mult[p][q][r];
    tensors.push_back(std::move(t));
  }
  DGAlgebra a{std::move(cx), unit_index, {{{0, 0}, std::move(tensors)}}};
  VerifyReport rep = verify_dg_algebra(a);
  if (!rep.ok)
    throw std::invalid_argument("algebra_in_degree_zero: " + rep.violation);
  return a;
}

/// Direct sum of DG modules over the same algebra, first summand first.
inline DGModule direct_sum_modules(const DGModule& x, const DGModule& y) {
  ChainComplex cx = direct_sum(x.cx, y.cx);
  StructureTensors action;
  int atop = x.algebra->cx.hi();
  for (int i = 0; i <= atop; ++i) {
    for (int j = cx.lo(); j <= cx.hi(); ++j) {
      if (!x.algebra->cx.rank(i)) continue;
      if (!cx.rank(j) || !cx.rank(i + j)) continue;
      std::vector<PMat> mats;
      for (std::size_t p = 0; p < x.algebra->cx.rank(i); ++p) {
        PMat m = pmat_zero(cx.ring(), cx.rank(i + j), cx.rank(j));
        PMat mx = x.act_matrix(i, p, j), my = y.act_matrix(i, p, j);
        for (std::size_t r = 0; r < mx.rows(); ++r)
          for (std::size_t c = 0; c < mx.cols(); ++c) m.at(r, c) = mx.at(r, c);
        for (std::size_t r = 0; r < my.rows(); ++r)
          for (std::size_t c = 0; c < my.cols(); ++c)
            m.at(x.cx.rank(i + j) + r, x.cx.rank(j) + c) = my.at(r, c);
        mats.push_back(std::move(m));
      }
      action.emplace(DegreePair{i, j}, std::move(mats));
    }
  }
  return DGModule{x.algebra, std::move(cx), std::move(action)};
}

/// Suspension with the sign-twisted action a * m = (-1)^{i|a|} a m.
inline DGModule suspend_dg_module(const DGModule& m, int i) {
  ChainComplex cx = suspend(m.cx, i);
  StructureTensors action;
  for (auto& [key, mats] : m.action) {
    auto [s, j] = key;
    std::vector<PMat> shifted;
    for (auto& mat : mats) {
      PMat mm = mat;
      if (i % 2 != 0 && s % 2 != 0) mm = pmat_neg(mm);
      shifted.push_back(std::move(mm));
    }
    action.emplace(DegreePair{s, j + i}, std::move(shifted));
  }
  DGModule out{m.algebra, std::move(cx), std::move(action)};
  return out;
}

// ---------------------------------------------------------------------------
// Morphisms

/// A chain map between DG algebras respecting products and units.
struct DGAlgebraMorphism {
  DGAlgebraPtr source, target;
  ChainMap map;

  VerifyReport verify() const {
    if (!map.is_chain_map()) return VerifyReport::fail("not a chain map");
    const ChainComplex& sx = source->cx;
    // f(1) = 1.
    std::vector<Poly> unit_img(target->cx.rank(0), Poly::zero(sx.ring()));
    PMat f0 = map.component(0);
    for (std::size_t r = 0; r < unit_img.size(); ++r)
      unit_img[r] = f0.at(r, source->unit_index);
    std::vector<Poly> unit_expect(target->cx.rank(0), Poly::zero(sx.ring()));
    unit_expect[target->unit_index] = Poly::constant(sx.ring(), 1);
    if (!detail::vec_is_zero(detail::vec_sub(unit_img, unit_expect)))
      return VerifyReport::fail("unit not preserved");
    // f(ab) = f(a) f(b) on basis pairs.
    for (int i = 0; i <= sx.hi(); ++i)
      for (int j = 0; i + j <= sx.hi(); ++j)
        for (std::size_t p = 0; p < sx.rank(i); ++p)
          for (std::size_t q = 0; q < sx.rank(j); ++q) {
            auto ab = source->multiply(i, source->basis_vector(i, p), j,
                                       source->basis_vector(j, q));
            auto f_ab = apply(i + j, ab);
            auto fa = apply(i, source->basis_vector(i, p));
            auto fb = apply(j, source->basis_vector(j, q));
            auto fafb = target->multiply(i, fa, j, fb);
            if (!detail::vec_is_zero(detail::vec_sub(f_ab, fafb)))
              return VerifyReport::fail("product not preserved at (" +
                                        sx.label(i, p) + "," + sx.label(j, q) +
                                        ")");
          }
    return VerifyReport::pass();
  }

  std::vector<Poly> apply(int i, const std::vector<Poly>& v) const {
    PMat fi = map.component(i);
    std::vector<Poly> out(target->cx.rank(i), Poly::zero(source->cx.ring()));
    for (std::size_t r = 0; r < out.size(); ++r)
      for (std::size_t c = 0; c < v.size(); ++c)
        if (!fi.at(r, c).is_zero() && !v[c].is_zero())
          out[r] += fi.at(r, c) * v[c];
    return out;
  }
};

/// A chain map between DG modules over the same algebra respecting the
/// scalar multiplication.
struct DGMorphism {
  const DGModule* source = nullptr;
  const DGModule* target = nullptr;
  ChainMap map;

  VerifyReport verify() const {
    if (!map.is_chain_map()) return VerifyReport::fail("not a chain map");
    const DGAlgebra& a = *source->algebra;
    for (int i = 0; i <= a.cx.hi(); ++i)
      for (std::size_t p = 0; p < a.cx.rank(i); ++p)
        for (int j = source->cx.lo(); j <= source->cx.hi(); ++j) {
          PMat lhs = pmat_mul(a.ring(), map.component(i + j),
                              source->act_matrix(i, p, j));
          PMat rhs = pmat_mul(a.ring(), target->act_matrix(i, p, j),
                              map.component(j));
          if (lhs != rhs)
            return VerifyReport::fail(
                "not linear over " + a.cx.label(i, p) + " at module degree " +
                std::to_string(j));
        }
    return VerifyReport::pass();
  }
};

// ---------------------------------------------------------------------------
// Restriction of scalars and base change

/// Pulls a module over the target algebra back along an algebra morphism:
/// a.m := f(a).m. The morphism is verified first.
inline DGModule restrict_scalars(const DGAlgebraMorphism& f,
                                 const DGModule& m) {
  VerifyReport fr = f.verify();
  if (!fr.ok)
    throw std::invalid_argument("restrict_scalars: not a DG algebra morphism: " +
                                fr.violation);
  const DGAlgebra& a = *f.source;
  StructureTensors action;
  for (int i = 0; i <= a.cx.hi(); ++i) {
    if (!a.cx.rank(i)) continue;
    for (int j = m.cx.lo(); j <= m.cx.hi(); ++j) {
      if (!m.cx.rank(j) || !m.cx.rank(i + j)) continue;
      std::vector<PMat> mats;
      for (std::size_t p = 0; p < a.cx.rank(i); ++p) {
        auto fa = f.apply(i, a.basis_vector(i, p));
        mats.push_back(m.act_element(i, fa, j));
      }
      action.emplace(DegreePair{i, j}, std::move(mats));
    }
  }
  DGModule out{f.source, m.cx, std::move(action)};
  VerifyReport rep = verify_dg_module(out);
  if (!rep.ok)
    throw std::logic_error("restrict_scalars produced an invalid module: " +
                           rep.violation);
  return out;
}

/// A (x) X with the action a(b (x) x) = (ab) (x) x.
inline DGModule base_change(DGAlgebraPtr a, const ChainComplex& x) {
  ChainComplex t = tensor_complex(a->cx, x);
  StructureTensors action;
  for (int i = 0; i <= a->cx.hi(); ++i) {
    if (!a->cx.rank(i)) continue;
    for (int n = t.lo(); n <= t.hi(); ++n) {
      if (!t.rank(n) || !t.rank(i + n)) continue;
      std::vector<PMat> mats;
      for (std::size_t p = 0; p < a->cx.rank(i); ++p) {
        PMat m = pmat_zero(t.ring(), t.rank(i + n), t.rank(n));
        auto src = tensor_summands(a->cx, x, n);
        auto dst = tensor_summands(a->cx, x, i + n);
        for (auto& s : src) {
          const SummandIndex* d = nullptr;
          for (auto& cand : dst)
            if (cand.p == s.p + i) d = &cand;
          if (!d) continue;
          std::size_t rx = x.rank(n - s.p);
          PMat mult = a->mult_matrix(i, p, s.p);  // A_{s.p} -> A_{s.p + i}
          for (std::size_t q = 0; q < a->cx.rank(s.p); ++q)
            for (std::size_t tgt = 0; tgt < a->cx.rank(s.p + i); ++tgt) {
              if (mult.at(tgt, q).is_zero()) continue;
              for (std::size_t r = 0; r < rx; ++r)
                m.at(d->offset + tgt * rx + r, s.offset + q * rx + r) +=
                    mult.at(tgt, q);
            }
        }
        mats.push_back(std::move(m));
      }
      action.emplace(DegreePair{i, n}, std::move(mats));
    }
  }
  DGModule out{a, std::move(t), std::move(action)};
  VerifyReport rep = verify_dg_module(out);
  if (!rep.ok)
    throw std::logic_error("base_change produced an invalid module: " +
                           rep.violation);
  return out;
}

}  // namespace dga
