#include "semient/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace semient {

// ---------------------------------------------------------------- CVector

CVector::CVector(std::size_t dim, cplx fill) : data_(dim, fill) {}
CVector::CVector(std::vector<cplx> entries) : data_(std::move(entries)) {}
CVector::CVector(std::initializer_list<cplx> entries) : data_(entries) {}

double CVector::norm() const {
  double acc = 0.0;
  for (const cplx& v : data_) acc += std::norm(v);
  return std::sqrt(acc);
}

bool CVector::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

CVector CVector::unit(std::size_t dim, std::size_t index) {
  CVector e(dim);
  e[index] = 1.0;
  return e;
}

// ---------------------------------------------------------------- CMatrix

CMatrix::CMatrix(std::size_t rows, std::size_t cols, cplx fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("CMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> d) {
  CMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

CMatrix CMatrix::outer(const CVector& a, const CVector& b) {
  CMatrix m(a.dim(), b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) m(i, j) = a[i] * b[j];
  return m;
}

CVector CMatrix::column(std::size_t j) const {
  CVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

double CMatrix::frobenius_norm() const {
  double acc = 0.0;
  for (const cplx& v : data_) acc += std::norm(v);
  return std::sqrt(acc);
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool CMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

cplx CMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

CMatrix CMatrix::transpose() const {
  CMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

CMatrix CMatrix::conjugate() const {
  CMatrix m = *this;
  for (cplx& v : m.data_) v = std::conj(v);
  return m;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (cplx& v : data_) v *= s;
  return *this;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("CMatrix +=: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("CMatrix -=: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument(
        fmt::format("matrix product: {}x{} times {}x{}", a.rows(), a.cols(), b.rows(), b.cols()));
  }
  CMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const cplx ail = a(i, l);
      if (ail == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += ail * b(l, j);
    }
  }
  return c;
}

CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }

CVector operator*(const CMatrix& a, const CVector& x) {
  if (a.cols() != x.dim()) throw std::invalid_argument("matrix-vector product: shape mismatch");
  CVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

double frobenius_distance(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(fmt::format("frobenius_distance: shapes {}x{} and {}x{} differ", a.rows(),
                                            a.cols(), b.rows(), b.cols()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) acc += std::norm(a.data()[i] - b.data()[i]);
  return std::sqrt(acc);
}

double frobenius_distance(const CVector& a, const CVector& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument(fmt::format("frobenius_distance: dimensions {} and {} differ", a.dim(), b.dim()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::norm(a[i] - b[i]);
  return std::sqrt(acc);
}

double max_abs_difference(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("max_abs_difference: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

double unitarity_defect(const CMatrix& u) {
  return max_abs_difference(u.adjoint() * u, CMatrix::identity(u.cols()));
}

double hermiticity_defect(const CMatrix& h) {
  if (!h.square()) throw std::invalid_argument("hermiticity_defect: matrix is not square");
  double m = 0.0;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j) m = std::max(m, std::abs(h(i, j) - std::conj(h(j, i))));
  return m;
}

// ---------------------------------------------------------------- Jacobi SVD

namespace {

// Column-major scratch storage so that Jacobi rotations act on contiguous memory.
class ColumnMajor {
 public:
  explicit ColumnMajor(std::size_t n) : n_(n), data_(n * n) {}

  static ColumnMajor from(const CMatrix& m) {
    ColumnMajor c(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = m(i, j);
    return c;
  }
  static ColumnMajor identity(std::size_t n) {
    ColumnMajor c(n);
    for (std::size_t i = 0; i < n; ++i) c(i, i) = 1.0;
    return c;
  }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[j * n_ + i]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[j * n_ + i]; }
  std::span<cplx> col(std::size_t j) { return {data_.data() + j * n_, n_}; }
  std::span<const cplx> col(std::size_t j) const { return {data_.data() + j * n_, n_}; }

 private:
  std::size_t n_;
  std::vector<cplx> data_;
};

void require_square_finite(const CMatrix& m, const char* who) {
  if (m.rows() == 0 || !m.square()) {
    throw std::invalid_argument(fmt::format("{}: expected a non-empty square matrix, got {}x{}", who, m.rows(), m.cols()));
  }
  if (!m.all_finite()) throw std::invalid_argument(fmt::format("{}: input contains NaN or Inf", who));
}

std::vector<std::size_t> descending_order(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  return idx;
}

// Replaces columns [first, n) of u with an orthonormal completion of the
// columns before them (modified Gram-Schmidt on coordinate vectors, run twice).
void complete_orthonormal(CMatrix& u, std::size_t first, const simd::Kernels& k) {
  const std::size_t n = u.rows();
  std::vector<std::vector<cplx>> basis;
  basis.reserve(n);
  for (std::size_t j = 0; j < first; ++j) {
    const CVector c = u.column(j);
    basis.emplace_back(c.entries());
  }
  for (std::size_t e = 0; e < n && basis.size() < n; ++e) {
    std::vector<cplx> cand(n);
    cand[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const cplx proj = k.dotc(b, cand);
        for (std::size_t i = 0; i < n; ++i) cand[i] -= proj * b[i];
      }
    }
    const double nrm = std::sqrt(k.norm_sq(cand));
    if (nrm < 0.5) continue;
    for (cplx& v : cand) v /= nrm;
    basis.push_back(std::move(cand));
  }
  for (std::size_t j = first; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) u(i, j) = basis[j][i];
}

}  // namespace

SvdResult svd(const CMatrix& c, Isa isa, JacobiOptions opts) {
  require_square_finite(c, "svd");
  const simd::Kernels& kern = simd::kernels(isa);
  const std::size_t n = c.rows();
  ColumnMajor a = ColumnMajor::from(c);
  ColumnMajor v = ColumnMajor::identity(n);

  int sweep = 0;
  double worst = 0.0;
  bool converged = (n == 1);
  while (!converged && sweep < opts.max_sweeps) {
    ++sweep;
    worst = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = kern.norm_sq(a.col(p));
        const double beta = kern.norm_sq(a.col(q));
        const cplx gamma = kern.dotc(a.col(p), a.col(q));
        const double g = std::abs(gamma);
        if (g == 0.0 || alpha == 0.0 || beta == 0.0) continue;
        const double rel = g / std::sqrt(alpha * beta);
        worst = std::max(worst, rel);
        if (rel <= opts.tolerance) continue;
        // Rotate column q by conj(gamma)/|gamma| so the pair's Gram entry is
        // real, then apply the real Jacobi rotation that zeroes it.
        const cplx phase = std::conj(gamma) / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = std::copysign(1.0, zeta) / (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        kern.rotate(a.col(p), a.col(q), cs, sn, phase);
        kern.rotate(v.col(p), v.col(q), cs, sn, phase);
      }
    }
    converged = worst <= opts.tolerance;
  }
  if (!converged) {
    throw std::runtime_error(fmt::format(
        "svd: one-sided Jacobi did not converge in {} sweeps (residual: largest relative off-diagonal Gram entry {:.3e})",
        opts.max_sweeps, worst));
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = std::sqrt(kern.norm_sq(a.col(j)));
  const auto order = descending_order(sigma);

  SvdResult out;
  out.sweeps = sweep;
  out.singular_values.resize(n);
  out.left_unitary = CMatrix(n, n);
  out.right_unitary = CMatrix(n, n);
  const double smax = sigma[order[0]];
  const double negligible = smax * static_cast<double>(n) * std::numeric_limits<double>::epsilon();
  std::size_t resolved = n;
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t j = order[r];
    out.singular_values[r] = sigma[j];
    for (std::size_t i = 0; i < n; ++i) out.right_unitary(i, r) = v(i, j);
    if (sigma[j] > negligible && sigma[j] > 0.0) {
      for (std::size_t i = 0; i < n; ++i) out.left_unitary(i, r) = a(i, j) / sigma[j];
    } else if (resolved == n) {
      resolved = r;
    }
  }
  if (resolved < n) complete_orthonormal(out.left_unitary, resolved, kern);
  return out;
}

// ---------------------------------------------------------------- Hermitian Jacobi

EigenResult hermitian_eigen(const CMatrix& h, Isa isa) {
  require_square_finite(h, "hermitian_eigen");
  const double scale = h.max_abs();
  const double defect = hermiticity_defect(h);
  if (defect > 1e-10 * scale) {
    throw std::invalid_argument(
        fmt::format("hermitian_eigen: matrix is not Hermitian (||H - H^H||_max = {:.3e}, ||H||_max = {:.3e})",
                    defect, scale));
  }
  const simd::Kernels& kern = simd::kernels(isa);
  const std::size_t n = h.rows();
  ColumnMajor a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = h(i, i).real();
    for (std::size_t j = 0; j < i; ++j) {
      const cplx s = 0.5 * (h(i, j) + std::conj(h(j, i)));
      a(i, j) = s;
      a(j, i) = std::conj(s);
    }
  }
  ColumnMajor v = ColumnMajor::identity(n);
  const double floor = 1e-18 * h.frobenius_norm();
  constexpr int kMaxSweeps = 60;
  constexpr double kEps = std::numeric_limits<double>::epsilon();

  int sweep = 0;
  bool rotated = true;
  double worst = 0.0;
  while (rotated && sweep < kMaxSweeps) {
    ++sweep;
    rotated = false;
    worst = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx b = a(p, q);
        const double g = std::abs(b);
        worst = std::max(worst, g);
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        if (g <= floor || g <= kEps * std::sqrt(std::fabs(app) * std::fabs(aqq))) continue;
        rotated = true;
        // W = diag(1, e^{-i phi}) R with phi = arg b and R the real Jacobi
        // rotation of the phase-reduced 2x2 block.
        const cplx phase = std::conj(b) / g;
        const double zeta = (aqq - app) / (2.0 * g);
        const double t = std::copysign(1.0, zeta) / (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        kern.rotate(a.col(p), a.col(q), cs, sn, phase);  // A <- A W
        for (std::size_t i = 0; i < n; ++i) {            // A <- W^H A, using Hermiticity
          if (i == p || i == q) continue;
          a(p, i) = std::conj(a(i, p));
          a(q, i) = std::conj(a(i, q));
        }
        a(p, p) = app - t * g;
        a(q, q) = aqq + t * g;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        kern.rotate(v.col(p), v.col(q), cs, sn, phase);
      }
    }
  }
  if (rotated) {
    throw std::runtime_error(fmt::format(
        "hermitian_eigen: Jacobi did not converge in {} sweeps (largest off-diagonal {:.3e})", kMaxSweeps, worst));
  }

  std::vector<double> lambda(n);
  for (std::size_t i = 0; i < n; ++i) lambda[i] = a(i, i).real();
  const auto order = descending_order(lambda);
  EigenResult out;
  out.sweeps = sweep;
  out.eigenvalues.resize(n);
  out.eigenvectors = CMatrix(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    out.eigenvalues[r] = lambda[order[r]];
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, r) = v(i, order[r]);
  }
  return out;
}

// ---------------------------------------------------------------- random

CMatrix random_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const double re = nd(rng);
      const double im = nd(rng);
      m(i, j) = {re, im};
    }
  return m;
}

CMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
  CMatrix z = random_gaussian(n, n, rng);
  // modified Gram-Schmidt on the columns; R's diagonal is positive so the
  // result is Haar-distributed
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t p = 0; p < j; ++p) {
        cplx proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += std::conj(z(i, p)) * z(i, j);
        for (std::size_t i = 0; i < n; ++i) z(i, j) -= proj * z(i, p);
      }
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) nrm += std::norm(z(i, j));
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < n; ++i) z(i, j) /= nrm;
  }
  return z;
}

}  // namespace semient
