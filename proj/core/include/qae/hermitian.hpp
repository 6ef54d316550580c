#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "qae/tolerances.hpp"

namespace qae {

using cplx = std::complex<double>;

// Dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n) : n_(n), a_(n * n, cplx{0.0, 0.0}) {}

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
  static ComplexMatrix diagonal(const std::vector<double>& d) {
    ComplexMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t dim() const { return n_; }
  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return a_[i * n_ + j];
  }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  cplx trace() const;
  double max_abs() const;          // entrywise max modulus
  double herm_defect() const;      // max |M - M^dagger|
  bool all_finite() const;

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(cplx s, const ComplexMatrix& a);

  std::vector<cplx> apply(const std::vector<cplx>& v) const;

 private:
  std::size_t n_ = 0;
  std::vector<cplx> a_;
};

struct Eigensystem {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // orthonormal columns, column i <-> values[i]
};

// Self-adjoint operator with a lazily populated eigensystem cache.
// Immutable after construction.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(ComplexMatrix m, Tolerances tol = {});

  std::size_t dim() const { return m_.dim(); }
  const ComplexMatrix& matrix() const { return m_; }
  const Tolerances& tol() const { return tol_; }

  // Cyclic Jacobi eigendecomposition; eigenvalues descending, eigenvectors
  // orthonormal columns with first-nonzero-component-real-positive phase.
  const Eigensystem& eig() const;

  double min_eigenvalue() const { return eig().values.back(); }
  double max_eigenvalue() const { return eig().values.front(); }
  double quadratic_form(const std::vector<cplx>& psi) const;
  double trace_real() const { return m_.trace().real(); }

 private:
  ComplexMatrix m_;
  Tolerances tol_;
  mutable std::shared_ptr<Eigensystem> cache_;  // single-assignment
};

enum class OffSupport { floor, infinity, zero };

struct OpFuncResult {
  HermitianOperator op;
  // Only meaningful for policy `infinity`: projector onto the support of the
  // input (eigenvalues above psd_tol) and whether an infinite part was cut.
  std::optional<HermitianOperator> support_projector;
  bool infinite_part = false;
};

// f applied to the spectrum in the eigenbasis. For f requiring positive
// eigenvalues (log, inverse powers), policy `floor` clamps small eigenvalues
// to log_floor, `infinity` restricts to the support and flags the rest,
// `zero` maps off-support eigenvalues to 0.
OpFuncResult op_func(const HermitianOperator& h,
                     const std::function<double(double)>& f,
                     OffSupport policy = OffSupport::floor);

// Loewner order: true iff min eigenvalue of (B - A) >= -tol.
bool loewner_leq(const HermitianOperator& a, const HermitianOperator& b,
                 double tol);

// Kronecker product; row index convention i_A * dim(B) + i_B.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

enum class TraceSide { traceY, traceX };

// Partial trace of an operator on H_X (x) H_Y with dims (nx, ny).
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t nx,
                            std::size_t ny, TraceSide side = TraceSide::traceY);

}  // namespace qae
