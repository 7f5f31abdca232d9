#pragma once

// Shared builders for the recurring test objects: the trivial one-generator
// exterior algebra U = 0 -> Fe -> F1 -> 0 with zero differential, its
// standard resolution-shaped module G, and the residue module F.

#include <memory>

#include "dga/dg_ops.hpp"
#include "dga/koszul.hpp"

namespace fixtures {

using namespace dga;

inline PolyRingPtr field_ring(const Field& f) {
  return make_ring(f, std::vector<std::string>{});
}

/// U = K(0) over a field: basis 1 in degree 0, e in degree 1, e^2 = 0,
/// zero differential.
inline DGAlgebraPtr make_U(const Field& f) {
  auto ring = field_ring(f);
  return std::make_shared<DGAlgebra>(
      koszul_via_exterior({Poly::zero(ring)}));
}

/// The pattern ... -> F1_4 -1-> Fe_3 -0-> F1_2 -1-> Fe_1 -0-> F1_0 -> 0
/// over U, with e.1_{2i} = e_{2i+1} and e.e_{2i+1} = 0, cut at the odd top
/// degree 2m+1 (a genuine DG module, free over the underlying algebra).
inline DGModule make_G(DGAlgebraPtr u, int m) {
  PolyRingPtr ring = u->cx.ring();
  int top = 2 * m + 1;
  std::vector<std::size_t> ranks(static_cast<std::size_t>(top) + 1, 1);
  std::map<int, PMat> diffs;
  std::map<int, std::vector<std::string>> labels;
  for (int i = 0; i <= top; ++i)
    labels.emplace(i, std::vector<std::string>{
                          i % 2 == 0 ? "1_" + std::to_string(i)
                                     : "e_" + std::to_string(i)});
  for (int i = 1; i <= top; ++i)
    diffs.emplace(i, PMat(1, 1, Poly::constant(ring, i % 2 == 0 ? 1 : 0)));
  ChainComplex cx(ring, 0, std::move(ranks), std::move(diffs),
                  std::move(labels));

  StructureTensors action;
  for (int j = 0; j <= top; ++j) {
    action[{0, j}] = {pmat_identity(ring, 1)};
    if (j < top)
      action[{1, j}] = {PMat(1, 1, Poly::constant(ring, j % 2 == 0 ? 1 : 0))};
  }
  DGModule g{std::move(u), std::move(cx), std::move(action)};
  VerifyReport rep = verify_dg_module(g);
  if (!rep.ok) throw std::logic_error("make_G: " + rep.violation);
  return g;
}

/// The residue module: F in degree 0, e acting as zero.
inline DGModule make_residue(DGAlgebraPtr u) {
  PolyRingPtr ring = u->cx.ring();
  ChainComplex cx(ring, 0, {1}, {}, {{0, {"1"}}});
  StructureTensors action;
  action[{0, 0}] = {pmat_identity(ring, 1)};
  DGModule f{std::move(u), std::move(cx), std::move(action)};
  VerifyReport rep = verify_dg_module(f);
  if (!rep.ok) throw std::logic_error("make_residue: " + rep.violation);
  return f;
}

/// F[X]/(X^2) concentrated in degree 0, basis (1, x).
inline DGAlgebraPtr make_dual_numbers_algebra(const Field& f) {
  auto ring = field_ring(f);
  auto c = [&](std::int64_t v) { return Poly::constant(ring, v); };
  std::vector<std::vector<std::vector<Poly>>> mult = {
      {{c(1), c(0)}, {c(0), c(1)}},   // 1*1 = 1, 1*x = x
      {{c(0), c(1)}, {c(0), c(0)}}};  // x*1 = x, x*x = 0
  return std::make_shared<DGAlgebra>(
      algebra_in_degree_zero(ring, 2, mult, 0, {"1", "x"}));
}

/// F[X,Y]/(X,Y)^2 concentrated in degree 0, basis (1, x, y).
inline DGAlgebraPtr make_square_zero_plane(const Field& f) {
  auto ring = field_ring(f);
  auto c = [&](std::int64_t v) { return Poly::constant(ring, v); };
  auto z3 = std::vector<Poly>{c(0), c(0), c(0)};
  std::vector<std::vector<std::vector<Poly>>> mult = {
      {{c(1), c(0), c(0)}, {c(0), c(1), c(0)}, {c(0), c(0), c(1)}},
      {{c(0), c(1), c(0)}, z3, z3},
      {{c(0), c(0), c(1)}, z3, z3}};
  return std::make_shared<DGAlgebra>(
      algebra_in_degree_zero(ring, 3, mult, 0, {"1", "x", "y"}));
}

/// The multiplication map A (x) M -> M as a chain map on the tensor complex.
inline ChainMap multiplication_chain_map(const DGModule& m) {
  const DGAlgebra& a = *m.algebra;
  ChainComplex t = tensor_complex(a.cx, m.cx);
  PolyRingPtr ring = m.ring();
  std::map<int, PMat> comps;
  for (int n = t.lo(); n <= t.hi(); ++n) {
    PMat c = pmat_zero(ring, m.cx.rank(n), t.rank(n));
    for (auto& s : tensor_summands(a.cx, m.cx, n)) {
      std::size_t rm = m.cx.rank(n - s.p);
      for (std::size_t p = 0; p < a.cx.rank(s.p); ++p) {
        PMat act = m.act_matrix(s.p, p, n - s.p);
        for (std::size_t r = 0; r < m.cx.rank(n); ++r)
          for (std::size_t q = 0; q < rm; ++q)
            c.at(r, s.offset + p * rm + q) += act.at(r, q);
      }
    }
    comps.emplace(n, std::move(c));
  }
  return ChainMap(t, m.cx, 0, std::move(comps));
}

struct PerturbationBatch {
  std::vector<DGAlgebra> candidates;   // constructible but axiom-violating
  int rejected_at_construction = 0;    // d o d != 0 already
  int total() const {
    return static_cast<int>(candidates.size()) + rejected_at_construction;
  }
};

/// All 20 single-coefficient perturbations of the two-generator wedge
/// algebra: 13 sign flips of nonzero stored scalars (9 product coefficients
/// plus 4 differential entries), 6 zero-slot injections, and the
/// simultaneous flip of the degree-(1,1) product pair. Each breaks an axiom
/// or the complex condition itself.
inline PerturbationBatch leibniz_data_perturbations(const DGAlgebra& k2) {
  PerturbationBatch batch;
  auto& out = batch.candidates;
  PolyRingPtr ring = k2.ring();

  auto flip_product = [&](int i, int j, std::size_t p, std::size_t row,
                          std::size_t col, const Poly& newval) {
    DGAlgebra a = k2;
    a.products.at({i, j})[p].at(row, col) = newval;
    out.push_back(std::move(a));
  };
  auto with_diff = [&](int deg, std::size_t row, std::size_t col,
                       const Poly& newval) {
    DGAlgebra a = k2;
    std::map<int, PMat> diffs;
    for (int i = 1; i <= k2.cx.hi(); ++i) diffs.emplace(i, k2.cx.diff(i));
    diffs.at(deg).at(row, col) = newval;
    try {
      a.cx = ChainComplex(ring, 0, {1, 2, 1}, std::move(diffs));
    } catch (const std::invalid_argument&) {
      ++batch.rejected_at_construction;
      return;
    }
    out.push_back(std::move(a));
  };
  auto c = [&](std::int64_t v) { return Poly::constant(ring, v); };

  // Sign flips of the 9 nonzero product coefficients.
  flip_product(0, 0, 0, 0, 0, c(-1));  // 1*1
  flip_product(0, 1, 0, 0, 0, c(-1));  // 1*e1
  flip_product(0, 1, 0, 1, 1, c(-1));  // 1*e2
  flip_product(0, 2, 0, 0, 0, c(-1));  // 1*(e1^e2)
  flip_product(1, 0, 0, 0, 0, c(-1));  // e1*1
  flip_product(1, 0, 1, 1, 0, c(-1));  // e2*1
  flip_product(2, 0, 0, 0, 0, c(-1));  // (e1^e2)*1
  flip_product(1, 1, 0, 0, 1, c(-1));  // e1*e2
  flip_product(1, 1, 1, 0, 0, c(1));   // e2*e1 (stored as -1)
  // Sign flips of the 4 nonzero differential entries.
  with_diff(1, 0, 0, Poly::parse(ring, "-x"));
  with_diff(1, 0, 1, Poly::parse(ring, "-y"));
  with_diff(2, 0, 0, Poly::parse(ring, "y"));
  with_diff(2, 1, 0, Poly::parse(ring, "-x"));
  // Zero-slot injections.
  flip_product(0, 1, 0, 1, 0, c(1));  // 1*e1 picks up e2
  flip_product(0, 1, 0, 0, 1, c(1));  // 1*e2 picks up e1
  flip_product(1, 0, 0, 1, 0, c(1));  // e1*1 picks up e2
  flip_product(1, 0, 1, 0, 0, c(1));  // e2*1 picks up e1
  flip_product(1, 1, 0, 0, 0, c(1));  // e1*e1 := e1^e2
  flip_product(1, 1, 1, 0, 1, c(1));  // e2*e2 := e1^e2
  // Simultaneous flip of the (e1,e2)/(e2,e1) pair: graded-commutative but
  // Leibniz fails.
  {
    DGAlgebra a = k2;
    a.products.at({1, 1})[0].at(0, 1) = c(-1);
    a.products.at({1, 1})[1].at(0, 0) = c(1);
    out.push_back(std::move(a));
  }
  return batch;
}

}  // namespace fixtures
