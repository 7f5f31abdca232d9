#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "dga/poly.hpp"

namespace dga {

/// A wedge monomial e_{j_1} ^ ... ^ e_{j_t} with strictly increasing 1-based
/// indices; the empty list is the unit.
struct ExteriorBasisElement {
  std::vector<int> indices;

  std::size_t degree() const { return indices.size(); }

  bool operator<(const ExteriorBasisElement& o) const {
    if (indices.size() != o.indices.size())
      return indices.size() < o.indices.size();
    return indices < o.indices;
  }
  bool operator==(const ExteriorBasisElement& o) const {
    return indices == o.indices;
  }

  std::string str() const {
    if (indices.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < indices.size(); ++i) {
      if (i) s += "^";
      s += "e" + std::to_string(indices[i]);
    }
    return s;
  }
};

inline void validate_basis_element(const ExteriorBasisElement& b, int n) {
  for (std::size_t i = 0; i < b.indices.size(); ++i) {
    if (b.indices[i] < 1 || b.indices[i] > n)
      throw std::out_of_range("wedge index out of range");
    if (i && b.indices[i - 1] >= b.indices[i])
      throw std::invalid_argument("wedge indices must strictly increase");
  }
}

/// Sign and sorted merge of two disjoint increasing index lists; returns
/// false when the lists intersect (the product is then zero).
inline bool merge_wedge_indices(const std::vector<int>& a,
                                const std::vector<int>& b,
                                std::vector<int>& out, int& sign) {
  out.clear();
  out.reserve(a.size() + b.size());
  // Count the transpositions needed to interleave b into a.
  std::size_t inversions = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    if (a[i] < b[j]) {
      out.push_back(a[i++]);
    } else {
      inversions += a.size() - i;
      out.push_back(b[j++]);
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  sign = (inversions % 2 == 0) ? 1 : -1;
  return true;
}

/// An element of the exterior algebra on n generators with polynomial
/// coefficients; no zero coefficients are stored.
class ExteriorElement {
 public:
  ExteriorElement(int n, PolyRingPtr ring) : n_(n), ring_(std::move(ring)) {}

  static ExteriorElement basis(int n, PolyRingPtr ring,
                               ExteriorBasisElement b) {
    validate_basis_element(b, n);
    ExteriorElement e(n, ring);
    e.terms_.emplace(std::move(b), Poly::constant(ring, 1));
    return e;
  }
  static ExteriorElement unit(int n, PolyRingPtr ring) {
    return basis(n, std::move(ring), {});
  }
  static ExteriorElement generator(int n, PolyRingPtr ring, int j) {
    return basis(n, std::move(ring), {{j}});
  }

  int generators() const { return n_; }
  const PolyRingPtr& ring() const { return ring_; }
  const std::map<ExteriorBasisElement, Poly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// True when all terms share one wedge degree (or the element is zero).
  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    std::size_t d = terms_.begin()->first.degree();
    for (auto& [b, c] : terms_)
      if (b.degree() != d) return false;
    return true;
  }

  void add_term(ExteriorBasisElement b, const Poly& c) {
    validate_basis_element(b, n_);
    if (c.is_zero()) return;
    auto it = terms_.find(b);
    if (it == terms_.end()) {
      terms_.emplace(std::move(b), c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  ExteriorElement operator-() const {
    ExteriorElement r(n_, ring_);
    for (auto& [b, c] : terms_) r.terms_.emplace(b, -c);
    return r;
  }

  ExteriorElement& operator+=(const ExteriorElement& o) {
    check(o);
    for (auto& [b, c] : o.terms_) add_term(b, c);
    return *this;
  }
  ExteriorElement& operator-=(const ExteriorElement& o) {
    check(o);
    for (auto& [b, c] : o.terms_) add_term(b, -c);
    return *this;
  }
  friend ExteriorElement operator+(ExteriorElement a,
                                   const ExteriorElement& b) {
    return a += b;
  }
  friend ExteriorElement operator-(ExteriorElement a,
                                   const ExteriorElement& b) {
    return a -= b;
  }

  ExteriorElement scaled(const Poly& c) const {
    ExteriorElement r(n_, ring_);
    for (auto& [b, cf] : terms_) r.add_term(b, cf * c);
    return r;
  }

  bool operator==(const ExteriorElement& o) const {
    return n_ == o.n_ && terms_ == o.terms_;
  }
  bool operator!=(const ExteriorElement& o) const { return !(*this == o); }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto& [b, c] : terms_) {
      if (!s.empty()) s += " + ";
      if (b.indices.empty()) {
        s += c.str();
      } else if (c.is_one()) {
        s += b.str();
      } else {
        s += "(" + c.str() + ") " + b.str();
      }
    }
    return s;
  }

 private:
  void check(const ExteriorElement& o) const {
    if (n_ != o.n_ || *ring_ != *o.ring_)
      throw std::invalid_argument("exterior algebra mismatch");
  }

  int n_;
  PolyRingPtr ring_;
  std::map<ExteriorBasisElement, Poly> terms_;
};

/// Bilinear wedge product. On wedge monomials the index lists are merged
/// with the permutation sign, and repeated indices give zero.
inline ExteriorElement wedge(const ExteriorElement& a,
                             const ExteriorElement& b) {
  if (a.generators() != b.generators() || *a.ring() != *b.ring())
    throw std::invalid_argument("wedge: exterior algebra mismatch");
  ExteriorElement r(a.generators(), a.ring());
  for (auto& [ba, ca] : a.terms())
    for (auto& [bb, cb] : b.terms()) {
      std::vector<int> merged;
      int sign = 1;
      if (!merge_wedge_indices(ba.indices, bb.indices, merged, sign)) continue;
      Poly c = ca * cb;
      if (sign == -1) c = -c;
      r.add_term(ExteriorBasisElement{std::move(merged)}, c);
    }
  return r;
}

/// All increasing k-subsets of 1..n in lexicographic order; this is the
/// basis order of every wedge-degree matrix.
inline std::vector<ExteriorBasisElement> wedge_basis(int n, int k) {
  std::vector<ExteriorBasisElement> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    out.push_back(ExteriorBasisElement{cur});
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - (k - 1 - i)) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

inline std::size_t wedge_basis_index(const std::vector<ExteriorBasisElement>& basis,
                                     const ExteriorBasisElement& b) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i] == b) return i;
  throw std::logic_error("wedge basis element not found");
}

}  // namespace dga
