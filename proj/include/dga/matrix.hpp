#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dga/poly.hpp"

namespace dga {

/// Dense matrix with exact entries, row-major. T is Poly for symbolic work
/// or Scalar for field linear algebra.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix zero(std::size_t rows, std::size_t cols, const T& z) {
    return Matrix(rows, cols, z);
  }
  static Matrix identity(std::size_t n, const T& z, const T& one) {
    Matrix m(n, n, z);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& at(std::size_t i, std::size_t j) {
    check(i, j);
    return data_[i * cols_ + j];
  }
  const T& at(std::size_t i, std::size_t j) const {
    check(i, j);
    return data_[i * cols_ + j];
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix transpose() const {
    Matrix r(cols_, rows_, data_.empty() ? T() : data_[0]);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  /// Submatrix with the given 0-based rows and columns deleted.
  Matrix minor_matrix(const std::set<std::size_t>& drop_rows,
                      const std::set<std::size_t>& drop_cols) const {
    for (auto r : drop_rows)
      if (r >= rows_) throw std::out_of_range("minor: row out of range");
    for (auto c : drop_cols)
      if (c >= cols_) throw std::out_of_range("minor: column out of range");
    Matrix m(rows_ - drop_rows.size(), cols_ - drop_cols.size(),
             data_.empty() ? T() : data_[0]);
    std::size_t ri = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (drop_rows.count(i)) continue;
      std::size_t cj = 0;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (drop_cols.count(j)) continue;
        m.at(ri, cj) = at(i, j);
        ++cj;
      }
      ++ri;
    }
    return m;
  }

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using PMat = Matrix<Poly>;
using SMat = Matrix<Scalar>;

// ---------------------------------------------------------------------------
// Polynomial matrices

inline PMat pmat_zero(PolyRingPtr ring, std::size_t rows, std::size_t cols) {
  return PMat(rows, cols, Poly::zero(ring));
}

inline PMat pmat_identity(PolyRingPtr ring, std::size_t n) {
  return PMat::identity(n, Poly::zero(ring),
                        Poly::constant(ring, Scalar::one(ring->field)));
}

inline PMat operator*(const PMat& a, const PMat& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument(
        "matMul: dimension mismatch (" + std::to_string(a.rows()) + "x" +
        std::to_string(a.cols()) + " times " + std::to_string(b.rows()) +
        "x" + std::to_string(b.cols()) + ")");
  PolyRingPtr ring =
      a.rows() && a.cols() ? a.at(0, 0).ring()
                           : (b.rows() && b.cols() ? b.at(0, 0).ring()
                                                   : PolyRingPtr());
  PMat r(a.rows(), b.cols(), Poly::zero(ring));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Poly& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Poly& bkj = b.at(k, j);
        if (bkj.is_zero()) continue;
        r.at(i, j) += aik * bkj;
      }
    }
  return r;
}

inline PMat operator+(const PMat& a, const PMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix add: shape mismatch");
  PMat r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) += b.at(i, j);
  return r;
}

inline PMat operator-(const PMat& a, const PMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix sub: shape mismatch");
  PMat r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) -= b.at(i, j);
  return r;
}

inline PMat pmat_scaled(const PMat& a, const Poly& c) {
  PMat r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) * c;
  return r;
}

inline PMat pmat_neg(const PMat& a) {
  PMat r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = -a.at(i, j);
  return r;
}

inline bool pmat_is_zero(const PMat& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a.at(i, j).is_zero()) return false;
  return true;
}

namespace detail {

inline Poly det_cofactor(const PMat& a, PolyRingPtr ring) {
  std::size_t n = a.rows();
  if (n == 0) return Poly::constant(ring, 1);
  if (n == 1) return a.at(0, 0);
  Poly acc = Poly::zero(ring);
  for (std::size_t j = 0; j < n; ++j) {
    const Poly& piv = a.at(0, j);
    if (piv.is_zero()) continue;
    Poly sub = det_cofactor(a.minor_matrix({0}, {j}), ring);
    Poly term = piv * sub;
    acc += (j % 2 == 0) ? term : -term;
  }
  return acc;
}

// Bareiss fraction-free elimination; every division is exact in the ring.
inline Poly det_bareiss(PMat a, PolyRingPtr ring) {
  std::size_t n = a.rows();
  if (n == 0) return Poly::constant(ring, 1);
  Poly prev = Poly::constant(ring, 1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k).is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a.at(swap_row, k).is_zero()) ++swap_row;
      if (swap_row == n) return Poly::zero(ring);
      for (std::size_t j = 0; j < n; ++j)
        std::swap(a.at(k, j), a.at(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        a.at(i, j) = num.divide_exact(prev);
      }
    prev = a.at(k, k);
  }
  Poly d = a.at(n - 1, n - 1);
  return sign == 1 ? d : -d;
}

}  // namespace detail

/// Exact determinant. Cofactor expansion below 5x5, fraction-free Bareiss
/// elimination from 5x5 up.
inline Poly det(const PMat& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("det: matrix is not square");
  if (a.rows() == 0) throw std::invalid_argument("det: empty matrix");
  PolyRingPtr ring = a.at(0, 0).ring();
  if (a.rows() < 5) return detail::det_cofactor(a, ring);
  return detail::det_bareiss(a, ring);
}

inline Poly det_cofactor(const PMat& a) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw std::invalid_argument("det: bad shape");
  return detail::det_cofactor(a, a.at(0, 0).ring());
}

inline Poly det_bareiss(const PMat& a) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw std::invalid_argument("det: bad shape");
  return detail::det_bareiss(a, a.at(0, 0).ring());
}

inline bool is_alternating(const PMat& a) {
  if (a.rows() != a.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (!a.at(i, i).is_zero()) return false;
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (a.at(i, j) != -a.at(j, i)) return false;
  }
  return true;
}

/// A square matrix with zero diagonal and entry(i,j) = -entry(j,i),
/// validated on construction.
class AlternatingMatrix {
 public:
  explicit AlternatingMatrix(PMat m) : mat_(std::move(m)) {
    if (!is_alternating(mat_))
      throw std::invalid_argument("matrix is not alternating");
  }

  const PMat& matrix() const { return mat_; }
  std::size_t size() const { return mat_.rows(); }

 private:
  PMat mat_;
};

namespace detail {

inline Poly pfaffian_expand(const PMat& a, PolyRingPtr ring) {
  std::size_t n = a.rows();
  if (n == 0) return Poly::constant(ring, 1);
  // Expansion along the first row; sign normalized so that
  // Pf([[0,x],[-x,0]]) = x.
  Poly acc = Poly::zero(ring);
  for (std::size_t j = 1; j < n; ++j) {
    const Poly& a0j = a.at(0, j);
    if (a0j.is_zero()) continue;
    Poly sub = pfaffian_expand(a.minor_matrix({0, j}, {0, j}), ring);
    Poly term = a0j * sub;
    acc += (j % 2 == 1) ? term : -term;
  }
  return acc;
}

}  // namespace detail

/// Pfaffian of an alternating matrix: 0 for odd size, otherwise the canonical
/// square root of the determinant with Pf([[0,x],[-x,0]]) = x.
inline Poly pfaffian(const AlternatingMatrix& a) {
  PolyRingPtr ring = a.size() ? a.matrix().at(0, 0).ring() : PolyRingPtr();
  if (!ring) throw std::invalid_argument("pfaffian: empty matrix");
  if (a.size() % 2 == 1) return Poly::zero(ring);
  return detail::pfaffian_expand(a.matrix(), ring);
}

/// The list [Pf(A with row i and column i deleted)] for i = 1..n.
inline std::vector<Poly> submaximal_pfaffians(const AlternatingMatrix& a) {
  std::vector<Poly> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out.push_back(
        pfaffian(AlternatingMatrix(a.matrix().minor_matrix({i}, {i}))));
  return out;
}

// ---------------------------------------------------------------------------
// Field linear algebra (Scalar entries)

inline SMat smat_zero(const Field& f, std::size_t rows, std::size_t cols) {
  return SMat(rows, cols, Scalar::zero(f));
}

inline SMat smat_identity(const Field& f, std::size_t n) {
  return SMat::identity(n, Scalar::zero(f), Scalar::one(f));
}

inline SMat operator*(const SMat& a, const SMat& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matrix product: dimension mismatch");
  Field f = a.rows() && a.cols() ? a.at(0, 0).field()
                                 : (b.rows() && b.cols() ? b.at(0, 0).field()
                                                         : Field::rationals());
  SMat r = smat_zero(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        r.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return r;
}

inline SMat operator+(const SMat& a, const SMat& b) {
  SMat r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) += b.at(i, j);
  return r;
}

inline SMat operator-(const SMat& a, const SMat& b) {
  SMat r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) -= b.at(i, j);
  return r;
}

inline bool smat_is_zero(const SMat& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a.at(i, j).is_zero()) return false;
  return true;
}

struct Rref {
  SMat mat;                        // reduced row echelon form
  std::vector<std::size_t> pivots; // pivot column per nonzero row
};

inline Rref rref(SMat a) {
  std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && a.at(sel, c).is_zero()) ++sel;
    if (sel == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a.at(r, j), a.at(sel, j));
    Scalar inv = a.at(r, c).inverse();
    for (std::size_t j = 0; j < cols; ++j) a.at(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a.at(i, c).is_zero()) continue;
      Scalar factor = a.at(i, c);
      for (std::size_t j = 0; j < cols; ++j)
        a.at(i, j) -= factor * a.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return Rref{std::move(a), std::move(pivots)};
}

inline std::size_t rank(const SMat& a) { return rref(a).pivots.size(); }

/// Basis of the right kernel, one column vector per basis element.
inline std::vector<std::vector<Scalar>> kernel_basis(const Field& f,
                                                     const SMat& a) {
  Rref e = rref(a);
  std::size_t cols = a.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<Scalar> v(cols, Scalar::zero(f));
    v[free_col] = Scalar::one(f);
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      v[e.pivots[r]] = -e.mat.at(r, free_col);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves A x = b. Returns x, or nullopt together with a certificate row w
/// such that w^T A = 0 and w^T b != 0 when the system is inconsistent.
struct SolveResult {
  std::optional<std::vector<Scalar>> solution;
  std::vector<Scalar> certificate;  // set when solution is empty
};

inline SolveResult solve(const Field& f, const SMat& a,
                         const std::vector<Scalar>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: rhs size");
  std::size_t rows = a.rows(), cols = a.cols();
  // Augment with b and the identity (to recover an infeasibility witness).
  SMat aug = smat_zero(f, rows, cols + 1 + rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, cols) = b[i];
    aug.at(i, cols + 1 + i) = Scalar::one(f);
  }
  // Eliminate on the A-part only.
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && aug.at(sel, c).is_zero()) ++sel;
    if (sel == rows) continue;
    for (std::size_t j = 0; j < aug.cols(); ++j)
      std::swap(aug.at(r, j), aug.at(sel, j));
    Scalar inv = aug.at(r, c).inverse();
    for (std::size_t j = 0; j < aug.cols(); ++j) aug.at(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || aug.at(i, c).is_zero()) continue;
      Scalar factor = aug.at(i, c);
      for (std::size_t j = 0; j < aug.cols(); ++j)
        aug.at(i, j) -= factor * aug.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (!aug.at(i, cols).is_zero()) {
      std::vector<Scalar> w(rows, Scalar::zero(f));
      for (std::size_t j = 0; j < rows; ++j) w[j] = aug.at(i, cols + 1 + j);
      return SolveResult{std::nullopt, std::move(w)};
    }
  }
  std::vector<Scalar> x(cols, Scalar::zero(f));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, cols);
  return SolveResult{std::move(x), {}};
}

inline std::optional<SMat> inverse(const SMat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: not square");
  std::size_t n = a.rows();
  Field f = n ? a.at(0, 0).field() : Field::rationals();
  SMat aug = smat_zero(f, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = Scalar::one(f);
  }
  Rref e = rref(std::move(aug));
  if (e.pivots.size() != n || e.pivots.back() != n - 1) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i)
    if (e.pivots[i] != i) return std::nullopt;
  SMat inv = smat_zero(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = e.mat.at(i, n + j);
  return inv;
}

// Conversions between symbolic and field matrices.

inline bool pmat_is_constant(const PMat& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a.at(i, j).is_constant()) return false;
  return true;
}

inline SMat to_scalar_matrix(const PMat& a, const Field& f) {
  SMat r = smat_zero(f, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!a.at(i, j).is_constant())
        throw std::domain_error(
            "operation requires field coefficients, found polynomial entry " +
            a.at(i, j).str());
      r.at(i, j) = a.at(i, j).constant_value();
    }
  return r;
}

inline PMat to_poly_matrix(const SMat& a, PolyRingPtr ring) {
  PMat r = pmat_zero(ring, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      r.at(i, j) = Poly::constant(ring, a.at(i, j));
  return r;
}

}  // namespace dga
