#pragma once

#include "dga/dg.hpp"

namespace dga {

namespace detail {

inline std::vector<Scalar> smat_apply(const Field& f, const SMat& m,
                                      const std::vector<Scalar>& v) {
  std::vector<Scalar> out(m.rows(), Scalar::zero(f));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_zero()) out[i] += m.at(i, j) * v[j];
  return out;
}

inline std::vector<Scalar> smat_column(const SMat& m, std::size_t j,
                                       const Field& f) {
  std::vector<Scalar> out(m.rows(), Scalar::zero(f));
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = m.at(i, j);
  return out;
}

// Express each column of vecs in the column span of basis; throws when a
// column falls outside (the callers' closure invariants would be broken).
inline SMat in_basis(const Field& f, const SMat& basis, const SMat& vecs,
                     const char* what) {
  SMat out = smat_zero(f, basis.cols(), vecs.cols());
  for (std::size_t j = 0; j < vecs.cols(); ++j) {
    auto res = solve(f, basis, smat_column(vecs, j, f));
    if (!res.solution) throw std::logic_error(std::string(what) +
                                              ": vector escapes the subspace");
    for (std::size_t i = 0; i < basis.cols(); ++i)
      out.at(i, j) = (*res.solution)[i];
  }
  return out;
}

}  // namespace detail

/// Hom over the algebra: the subcomplex of A-linear homomorphisms inside the
/// full Hom complex, with the action (a f)(m) = a (f(m)). Field coefficients.
struct HomSubspace {
  DGModule module;
  ChainComplex ambient;
  std::map<int, SMat> embedding;  // per degree, ambient-dim x subspace-dim

  std::vector<Scalar> coordinates(int degree,
                                  const std::vector<Scalar>& ambient_vec) const {
    const Field& f = module.ring()->field;
    auto it = embedding.find(degree);
    if (it == embedding.end() || it->second.cols() == 0) {
      for (auto& s : ambient_vec)
        if (!s.is_zero())
          throw std::logic_error("coordinates: nonzero vector, empty subspace");
      return {};
    }
    auto res = solve(f, it->second, ambient_vec);
    if (!res.solution)
      throw std::logic_error("coordinates: element is not A-linear");
    return *res.solution;
  }
};

inline HomSubspace dg_hom(const DGModule& m, const DGModule& n) {
  if (!m.ring()->is_field())
    throw std::domain_error("dg_hom requires field coefficients");
  const Field& f = m.ring()->field;
  const DGAlgebra& alg = *m.algebra;
  ChainComplex ambient = hom_complex(m.cx, n.cx);

  auto ambient_index = [&](int k, int j, std::size_t r, std::size_t c) {
    // Position of the (target r, source c) matrix unit of Hom(M_j, N_{j+k}).
    for (auto& s : hom_summands(m.cx, n.cx, k))
      if (s.p == j) return s.offset + r * m.cx.rank(j) + c;
    throw std::logic_error("ambient_index: missing summand");
  };

  // A-linearity constraints per ambient degree.
  std::map<int, SMat> embedding;
  for (int k = ambient.lo(); k <= ambient.hi(); ++k) {
    std::size_t dim = ambient.rank(k);
    std::vector<std::vector<Scalar>> rows;
    for (int i = 0; i <= alg.cx.hi(); ++i) {
      int sign = (k % 2 != 0 && i % 2 != 0) ? -1 : 1;  // (-1)^{k i}
      for (std::size_t p = 0; p < alg.cx.rank(i); ++p)
        for (int j = m.cx.lo(); j <= m.cx.hi(); ++j) {
          SMat am = to_scalar_matrix(m.act_matrix(i, p, j), f);
          SMat an = to_scalar_matrix(n.act_matrix(i, p, j + k), f);
          std::size_t rows_n = n.cx.rank(i + j + k);
          for (std::size_t t = 0; t < rows_n; ++t)
            for (std::size_t c = 0; c < m.cx.rank(j); ++c) {
              std::vector<Scalar> row(dim, Scalar::zero(f));
              bool nonzero = false;
              // f_{i+j}(a m): sum_s f_{i+j}[t,s] am[s,c]
              if (m.cx.rank(i + j) && n.cx.rank(i + j + k))
                for (std::size_t s = 0; s < m.cx.rank(i + j); ++s)
                  if (!am.at(s, c).is_zero()) {
                    row[ambient_index(k, i + j, t, s)] += am.at(s, c);
                    nonzero = true;
                  }
              // -(-1)^{ki} a f_j(m): sum_r an[t,r] f_j[r,c]
              if (m.cx.rank(j) && n.cx.rank(j + k))
                for (std::size_t r = 0; r < n.cx.rank(j + k); ++r)
                  if (!an.at(t, r).is_zero()) {
                    Scalar v = an.at(t, r);
                    if (sign == 1) v = -v;
                    row[ambient_index(k, j, r, c)] += v;
                    nonzero = true;
                  }
              if (nonzero) rows.push_back(std::move(row));
            }
        }
    }
    SMat sys = smat_zero(f, rows.size(), dim);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < dim; ++j) sys.at(i, j) = rows[i][j];
    auto kb = kernel_basis(f, sys);
    SMat emb = smat_zero(f, dim, kb.size());
    for (std::size_t j = 0; j < kb.size(); ++j)
      for (std::size_t i = 0; i < dim; ++i) emb.at(i, j) = kb[j][i];
    embedding.emplace(k, std::move(emb));
  }

  // Induced differential on the subspace bases.
  std::vector<std::size_t> ranks;
  std::map<int, PMat> diffs;
  for (int k = ambient.lo(); k <= ambient.hi(); ++k)
    ranks.push_back(embedding.at(k).cols());
  for (int k = ambient.lo() + 1; k <= ambient.hi(); ++k) {
    SMat d = to_scalar_matrix(ambient.diff(k), f);
    SMat img = d * embedding.at(k);
    SMat sub = detail::in_basis(f, embedding.at(k - 1), img,
                                "dg_hom differential");
    diffs.emplace(k, to_poly_matrix(sub, m.ring()));
  }
  ChainComplex sub_cx(m.ring(), ambient.lo(), std::move(ranks),
                      std::move(diffs));

  // Action of A on the subspace: (a f)_j = a o f_j.
  StructureTensors action;
  for (int i = 0; i <= alg.cx.hi(); ++i) {
    if (!alg.cx.rank(i)) continue;
    for (int k = sub_cx.lo(); k <= sub_cx.hi(); ++k) {
      if (!sub_cx.rank(k) || !sub_cx.rank(k + i)) continue;
      std::vector<PMat> mats;
      for (std::size_t p = 0; p < alg.cx.rank(i); ++p) {
        SMat op = smat_zero(f, ambient.rank(k + i), ambient.rank(k));
        for (int j = m.cx.lo(); j <= m.cx.hi(); ++j) {
          if (!m.cx.rank(j) || !n.cx.rank(j + k) || !n.cx.rank(i + j + k))
            continue;
          SMat an = to_scalar_matrix(n.act_matrix(i, p, j + k), f);
          for (std::size_t t = 0; t < n.cx.rank(i + j + k); ++t)
            for (std::size_t r = 0; r < n.cx.rank(j + k); ++r) {
              if (an.at(t, r).is_zero()) continue;
              for (std::size_t c = 0; c < m.cx.rank(j); ++c)
                op.at(ambient_index(k + i, j, t, c),
                      ambient_index(k, j, r, c)) += an.at(t, r);
            }
        }
        SMat img = op * embedding.at(k);
        SMat sub = detail::in_basis(f, embedding.at(k + i), img,
                                    "dg_hom action");
        mats.push_back(to_poly_matrix(sub, m.ring()));
      }
      action.emplace(DegreePair{i, k}, std::move(mats));
    }
  }

  DGModule out{m.algebra, std::move(sub_cx), std::move(action)};
  VerifyReport rep = verify_dg_module(out);
  if (!rep.ok)
    throw std::logic_error("dg_hom produced an invalid module: " +
                           rep.violation);
  return HomSubspace{std::move(out), std::move(ambient),
                     std::move(embedding)};
}

/// Tensor over the algebra: the quotient of the full tensor complex by
/// (a m)(x)n - (-1)^{|a||m|} m(x)(a n). Field coefficients.
struct TensorQuotient {
  DGModule module;
  ChainComplex ambient;
  std::map<int, SMat> projection;       // subspace-dim x ambient-dim
  std::map<int, SMat> representatives;  // ambient-dim x subspace-dim
};

inline TensorQuotient dg_tensor(const DGModule& m, const DGModule& n) {
  if (!m.ring()->is_field())
    throw std::domain_error("dg_tensor requires field coefficients");
  const Field& f = m.ring()->field;
  const DGAlgebra& alg = *m.algebra;
  ChainComplex ambient = tensor_complex(m.cx, n.cx);

  auto ambient_index = [&](int d, int j, std::size_t u, std::size_t v) {
    // Index of (M_j basis u) (x) (N_{d-j} basis v).
    for (auto& s : tensor_summands(m.cx, n.cx, d))
      if (s.p == j) return s.offset + u * n.cx.rank(d - j) + v;
    throw std::logic_error("ambient_index: missing summand");
  };

  std::map<int, SMat> projection, representatives;
  std::vector<std::size_t> ranks;
  for (int d = ambient.lo(); d <= ambient.hi(); ++d) {
    std::size_t dim = ambient.rank(d);
    std::vector<std::vector<Scalar>> rels;
    for (int i = 1; i <= alg.cx.hi(); ++i)  // degree-0 part acts... see below
      for (std::size_t p = 0; p < alg.cx.rank(i); ++p)
        for (int j = m.cx.lo(); j <= m.cx.hi(); ++j) {
          int l = d - i - j;
          if (n.cx.rank(l) == 0 || m.cx.rank(j) == 0) continue;
          SMat am = to_scalar_matrix(m.act_matrix(i, p, j), f);
          SMat an = to_scalar_matrix(n.act_matrix(i, p, l), f);
          int sign = (i % 2 != 0 && j % 2 != 0) ? -1 : 1;
          for (std::size_t u = 0; u < m.cx.rank(j); ++u)
            for (std::size_t v = 0; v < n.cx.rank(l); ++v) {
              std::vector<Scalar> rel(dim, Scalar::zero(f));
              bool nonzero = false;
              for (std::size_t t = 0; t < m.cx.rank(i + j); ++t)
                if (!am.at(t, u).is_zero()) {
                  rel[ambient_index(d, i + j, t, v)] += am.at(t, u);
                  nonzero = true;
                }
              for (std::size_t t = 0; t < n.cx.rank(i + l); ++t)
                if (!an.at(t, v).is_zero()) {
                  Scalar s = an.at(t, v);
                  if (sign == 1) s = -s;
                  rel[ambient_index(d, j, u, t)] += s;
                  nonzero = true;
                }
              if (nonzero) rels.push_back(std::move(rel));
            }
        }
    // Degree-0 non-unit elements also produce relations (am)(x)n - m(x)(an).
    for (std::size_t p = 0; p < alg.cx.rank(0); ++p) {
      if (p == alg.unit_index) continue;
      for (int j = m.cx.lo(); j <= m.cx.hi(); ++j) {
        int l = d - j;
        if (n.cx.rank(l) == 0 || m.cx.rank(j) == 0) continue;
        SMat am = to_scalar_matrix(m.act_matrix(0, p, j), f);
        SMat an = to_scalar_matrix(n.act_matrix(0, p, l), f);
        for (std::size_t u = 0; u < m.cx.rank(j); ++u)
          for (std::size_t v = 0; v < n.cx.rank(l); ++v) {
            std::vector<Scalar> rel(dim, Scalar::zero(f));
            bool nonzero = false;
            for (std::size_t t = 0; t < m.cx.rank(j); ++t)
              if (!am.at(t, u).is_zero()) {
                rel[ambient_index(d, j, t, v)] += am.at(t, u);
                nonzero = true;
              }
            for (std::size_t t = 0; t < n.cx.rank(l); ++t)
              if (!an.at(t, v).is_zero()) {
                rel[ambient_index(d, j, u, t)] -= an.at(t, v);
                nonzero = true;
              }
            if (nonzero) rels.push_back(std::move(rel));
          }
      }
    }

    SMat b = smat_zero(f, dim, rels.size());
    for (std::size_t j = 0; j < rels.size(); ++j)
      for (std::size_t i = 0; i < dim; ++i) b.at(i, j) = rels[j][i];
    SMat eye = smat_identity(f, dim);
    SMat reps = detail::quotient_representatives(f, b, eye);
    std::size_t q = reps.cols();
    // Projection: the C-coordinates in the decomposition span(B) (+) span(C).
    std::size_t rk = dim - q;  // rank of the relation span
    SMat bbasis = detail::quotient_representatives(f, smat_zero(f, dim, 0), b);
    SMat bc = smat_zero(f, dim, rk + q);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < rk; ++j) bc.at(i, j) = bbasis.at(i, j);
      for (std::size_t j = 0; j < q; ++j) bc.at(i, rk + j) = reps.at(i, j);
    }
    SMat proj = smat_zero(f, q, dim);
    if (dim) {
      auto inv = inverse(bc);
      if (!inv) throw std::logic_error("dg_tensor: quotient basis singular");
      for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < dim; ++j)
          proj.at(i, j) = inv->at(rk + i, j);
    }
    ranks.push_back(q);
    projection.emplace(d, std::move(proj));
    representatives.emplace(d, std::move(reps));
  }

  std::map<int, PMat> diffs;
  for (int d = ambient.lo() + 1; d <= ambient.hi(); ++d) {
    SMat dd = to_scalar_matrix(ambient.diff(d), f);
    SMat sub = projection.at(d - 1) * (dd * representatives.at(d));
    diffs.emplace(d, to_poly_matrix(sub, m.ring()));
  }
  ChainComplex sub_cx(m.ring(), ambient.lo(), std::move(ranks),
                      std::move(diffs));

  StructureTensors action;
  for (int i = 0; i <= alg.cx.hi(); ++i) {
    if (!alg.cx.rank(i)) continue;
    for (int d = sub_cx.lo(); d <= sub_cx.hi(); ++d) {
      if (!sub_cx.rank(d) || !sub_cx.rank(d + i)) continue;
      std::vector<PMat> mats;
      for (std::size_t p = 0; p < alg.cx.rank(i); ++p) {
        SMat op = smat_zero(f, ambient.rank(d + i), ambient.rank(d));
        for (int j = m.cx.lo(); j <= m.cx.hi(); ++j) {
          int l = d - j;
          if (!m.cx.rank(j) || !n.cx.rank(l) || !m.cx.rank(i + j)) continue;
          SMat am = to_scalar_matrix(m.act_matrix(i, p, j), f);
          for (std::size_t t = 0; t < m.cx.rank(i + j); ++t)
            for (std::size_t u = 0; u < m.cx.rank(j); ++u) {
              if (am.at(t, u).is_zero()) continue;
              for (std::size_t v = 0; v < n.cx.rank(l); ++v)
                op.at(ambient_index(d + i, i + j, t, v),
                      ambient_index(d, j, u, v)) += am.at(t, u);
            }
        }
        SMat sub = projection.at(d + i) * (op * representatives.at(d));
        mats.push_back(to_poly_matrix(sub, m.ring()));
      }
      action.emplace(DegreePair{i, d}, std::move(mats));
    }
  }

  DGModule out{m.algebra, std::move(sub_cx), std::move(action)};
  VerifyReport rep = verify_dg_module(out);
  if (!rep.ok)
    throw std::logic_error("dg_tensor produced an invalid module: " +
                           rep.violation);
  return TensorQuotient{std::move(out), std::move(ambient),
                        std::move(projection), std::move(representatives)};
}

/// The homothety a -> (x -> a x) as a morphism from the algebra into
/// Hom_A(M, M), with its target returned alongside.
struct HomothetyMorphism {
  HomSubspace hom;    // Hom_A(M, M)
  ChainMap map;       // from the algebra's complex into hom.module.cx
  DGModule algebra_as_module;

  VerifyReport verify() const {
    DGMorphism mor{&algebra_as_module, &hom.module, map};
    return mor.verify();
  }
};

inline HomothetyMorphism homothety_morphism(const DGModule& m) {
  const Field& f = m.ring()->field;
  const DGAlgebra& alg = *m.algebra;
  HomSubspace hom = dg_hom(m, m);

  auto ambient_index = [&](int k, int j, std::size_t r, std::size_t c) {
    for (auto& s : hom_summands(m.cx, m.cx, k))
      if (s.p == j) return s.offset + r * m.cx.rank(j) + c;
    throw std::logic_error("ambient_index: missing summand");
  };

  std::map<int, PMat> comps;
  for (int i = 0; i <= alg.cx.hi(); ++i) {
    if (!alg.cx.rank(i)) continue;
    PMat c = pmat_zero(m.ring(), hom.module.cx.rank(i), alg.cx.rank(i));
    for (std::size_t p = 0; p < alg.cx.rank(i); ++p) {
      std::vector<Scalar> ambient(hom.ambient.rank(i), Scalar::zero(f));
      for (int j = m.cx.lo(); j <= m.cx.hi(); ++j) {
        if (!m.cx.rank(j) || !m.cx.rank(i + j)) continue;
        SMat a = to_scalar_matrix(m.act_matrix(i, p, j), f);
        for (std::size_t r = 0; r < m.cx.rank(i + j); ++r)
          for (std::size_t cc = 0; cc < m.cx.rank(j); ++cc)
            ambient[ambient_index(i, j, r, cc)] = a.at(r, cc);
      }
      auto coords = hom.coordinates(i, ambient);
      for (std::size_t r = 0; r < coords.size(); ++r)
        c.at(r, p) = Poly::constant(m.ring(), coords[r]);
    }
    comps.emplace(i, std::move(c));
  }
  ChainMap map(alg.cx, hom.module.cx, 0, std::move(comps));
  HomothetyMorphism out{std::move(hom), std::move(map),
                        as_module(m.algebra)};
  return out;
}

}  // namespace dga
