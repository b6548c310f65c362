#pragma once

// Small dense complex linear algebra: vectors, row-major matrices, a one-sided
// Jacobi SVD and a cyclic Jacobi Hermitian eigensolver.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

#include "semient/simd/kernels.hpp"

namespace semient {

using cplx = std::complex<double>;
using simd::Isa;

class CVector {
 public:
  CVector() = default;
  explicit CVector(std::size_t dim, cplx fill = {});
  explicit CVector(std::vector<cplx> entries);
  CVector(std::initializer_list<cplx> entries);

  std::size_t dim() const { return data_.size(); }
  cplx& operator[](std::size_t i) { return data_[i]; }
  const cplx& operator[](std::size_t i) const { return data_[i]; }
  std::span<cplx> span() { return data_; }
  std::span<const cplx> span() const { return data_; }
  const std::vector<cplx>& entries() const { return data_; }

  double norm() const;
  bool all_finite() const;

  static CVector unit(std::size_t dim, std::size_t index);

  friend bool operator==(const CVector&, const CVector&) = default;

 private:
  std::vector<cplx> data_;
};

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols, cplx fill = {});
  /// Row-major nested initializer, e.g. {{1, 2}, {3, 4}}.
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const double> d);
  static CMatrix outer(const CVector& a, const CVector& b);  ///< a b^T (no conjugation)

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<cplx> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const cplx> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  CVector column(std::size_t j) const;

  std::span<const cplx> data() const { return data_; }
  std::span<cplx> data() { return data_; }

  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;
  cplx trace() const;

  CMatrix adjoint() const;
  CMatrix transpose() const;
  CMatrix conjugate() const;

  CMatrix& operator*=(cplx s);
  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);
CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CVector operator*(const CMatrix& a, const CVector& x);

/// sqrt(sum |a - b|^2); throws std::invalid_argument on shape mismatch.
double frobenius_distance(const CMatrix& a, const CMatrix& b);
double frobenius_distance(const CVector& a, const CVector& b);

/// max |a_ij - b_ij|
double max_abs_difference(const CMatrix& a, const CMatrix& b);

/// ||U^H U - I||_max
double unitarity_defect(const CMatrix& u);

/// ||H - H^H||_max
double hermiticity_defect(const CMatrix& h);

struct SvdResult {
  CMatrix left_unitary;                ///< U
  std::vector<double> singular_values;  ///< descending
  CMatrix right_unitary;               ///< V, with C = U diag(s) V^H
  int sweeps = 0;
};

struct JacobiOptions {
  double tolerance = 1e-13;
  int max_sweeps = 30;
};

/// One-sided (Hestenes) Jacobi SVD of a square matrix. Ties in the singular
/// values keep the original column order.
SvdResult svd(const CMatrix& c, Isa isa = Isa::Auto, JacobiOptions opts = {});

struct EigenResult {
  std::vector<double> eigenvalues;  ///< descending
  CMatrix eigenvectors;            ///< columns
  int sweeps = 0;
};

/// Cyclic two-sided Jacobi for Hermitian H. Rejects inputs with
/// ||H - H^H||_max > 1e-10 ||H||_max.
EigenResult hermitian_eigen(const CMatrix& h, Isa isa = Isa::Auto);

/// Haar-distributed random unitary (QR of a complex Gaussian matrix with the
/// R-diagonal phases divided out).
CMatrix random_unitary(std::size_t n, std::mt19937_64& rng);

/// Matrix with i.i.d. standard complex Gaussian entries.
CMatrix random_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng);

}  // namespace semient
