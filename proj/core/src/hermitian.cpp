#include "qae/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qae {

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r(i, j) = std::conj((*this)(i, j));
  return r;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : a_) m = std::max(m, std::abs(v));
  return m;
}

double ComplexMatrix::herm_defect() const {
  double m = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return m;
}

bool ComplexMatrix::all_finite() const {
  for (const auto& v : a_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matrix dim mismatch");
  ComplexMatrix r(a.dim());
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = a.a_[i] + b.a_[i];
  return r;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matrix dim mismatch");
  ComplexMatrix r(a.dim());
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = a.a_[i] - b.a_[i];
  return r;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matrix dim mismatch");
  std::size_t n = a.dim();
  ComplexMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      cplx aik = a(i, k);
      if (aik == cplx{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

ComplexMatrix operator*(cplx s, const ComplexMatrix& a) {
  ComplexMatrix r(a.dim());
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = s * a.a_[i];
  return r;
}

std::vector<cplx> ComplexMatrix::apply(const std::vector<cplx>& v) const {
  if (v.size() != n_) throw std::invalid_argument("vector dim mismatch");
  std::vector<cplx> r(n_, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r[i] += (*this)(i, j) * v[j];
  return r;
}

HermitianOperator::HermitianOperator(ComplexMatrix m, Tolerances tol)
    : m_(std::move(m)), tol_(tol) {
  tol_.validate();
  if (!m_.all_finite())
    throw std::invalid_argument("HermitianOperator: non-finite entries");
  double scale = std::max(1.0, m_.max_abs());
  if (m_.herm_defect() > tol_.herm_tol * scale)
    throw std::invalid_argument("HermitianOperator: matrix not Hermitian");
}

namespace {

double off_diag_norm(const ComplexMatrix& a) {
  double s = 0.0;
  std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Make the first component of each column with modulus above eps real
// positive; deterministic representative under global phase.
void canonicalize_phases(ComplexMatrix& v) {
  std::size_t n = v.dim();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      double m = std::abs(v(i, j));
      if (m > 1e-12) {
        cplx ph = std::conj(v(i, j)) / m;
        for (std::size_t k = 0; k < n; ++k) v(k, j) *= ph;
        break;
      }
    }
  }
}

}  // namespace

const Eigensystem& HermitianOperator::eig() const {
  if (cache_) return *cache_;

  std::size_t n = dim();
  ComplexMatrix a = m_;
  // Symmetrize exactly so roundoff in the input cannot bias rotations.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
    a(i, i) = cplx{a(i, i).real(), 0.0};
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  double scale = std::max(1.0, a.max_abs()) * double(n);
  const double target = 1e-13 * scale;
  const int max_sweeps = 100;
  int sweep = 0;
  while (off_diag_norm(a) > target) {
    if (++sweep > max_sweeps)
      throw std::runtime_error("eig: Jacobi did not converge in 100 sweeps");
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double r = std::abs(a(p, q));
        if (r <= 1e-300) continue;
        cplx phase = a(p, q) / r;  // a_pq = r * phase
        double app = a(p, p).real();
        double aqq = a(q, q).real();
        double tau = (aqq - app) / (2.0 * r);
        double t = (tau >= 0 ? 1.0 : -1.0) /
                   (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        // Unitary V: V(p,p)=c, V(p,q)=s, V(q,p)=-s*conj(phase),
        // V(q,q)=c*conj(phase); A <- V^dagger A V, eigvecs <- eigvecs V.
        cplx vqp = -s * std::conj(phase);
        cplx vqq = c * std::conj(phase);
        for (std::size_t i = 0; i < n; ++i) {  // right multiply columns p,q
          cplx aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip + vqp * aiq;
          a(i, q) = s * aip + vqq * aiq;
          cplx vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip + vqp * viq;
          v(i, q) = s * vip + vqq * viq;
        }
        for (std::size_t j = 0; j < n; ++j) {  // left multiply rows p,q
          cplx apj = a(p, j), aqj = a(q, j);
          a(p, j) = c * apj + std::conj(vqp) * aqj;
          a(q, j) = s * apj + std::conj(vqq) * aqj;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = cplx{a(p, p).real(), 0.0};
        a(q, q) = cplx{a(q, q).real(), 0.0};
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() > a(j, j).real();
  });

  auto es = std::make_shared<Eigensystem>();
  es->values.resize(n);
  es->vectors = ComplexMatrix(n);
  for (std::size_t j = 0; j < n; ++j) {
    es->values[j] = a(order[j], order[j]).real();
    for (std::size_t i = 0; i < n; ++i) es->vectors(i, j) = v(i, order[j]);
  }
  canonicalize_phases(es->vectors);
  cache_ = std::move(es);
  return *cache_;
}

double HermitianOperator::quadratic_form(const std::vector<cplx>& psi) const {
  if (psi.size() != dim())
    throw std::invalid_argument("quadratic_form: dim mismatch");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j)
      acc += std::conj(psi[i]) * m_(i, j) * psi[j];
  return acc.real();
}

OpFuncResult op_func(const HermitianOperator& h,
                     const std::function<double(double)>& f,
                     OffSupport policy) {
  const Eigensystem& es = h.eig();
  std::size_t n = h.dim();
  const Tolerances& tol = h.tol();

  OpFuncResult res;
  std::vector<double> fv(n, 0.0);
  std::vector<bool> on_support(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    double lam = es.values[i];
    switch (policy) {
      case OffSupport::floor:
        lam = std::max(lam, tol.log_floor);
        fv[i] = f(lam);
        break;
      case OffSupport::infinity:
        if (lam > tol.psd_tol) {
          fv[i] = f(lam);
        } else {
          on_support[i] = false;
          res.infinite_part = true;
          fv[i] = 0.0;
        }
        break;
      case OffSupport::zero:
        if (lam > tol.psd_tol) {
          fv[i] = f(lam);
        } else {
          on_support[i] = false;
          fv[i] = 0.0;
        }
        break;
    }
    if (!std::isfinite(fv[i]))
      throw std::domain_error("op_func: f undefined at an eigenvalue");
  }

  ComplexMatrix out(n);
  ComplexMatrix supp(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx acc = 0.0, sacc = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        cplx w = es.vectors(i, k) * std::conj(es.vectors(j, k));
        acc += fv[k] * w;
        if (on_support[k]) sacc += w;
      }
      out(i, j) = acc;
      supp(i, j) = sacc;
    }

  res.op = HermitianOperator(std::move(out), tol);
  if (policy == OffSupport::infinity)
    res.support_projector = HermitianOperator(std::move(supp), tol);
  return res;
}

bool loewner_leq(const HermitianOperator& a, const HermitianOperator& b,
                 double tol) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("loewner_leq: dim mismatch");
  HermitianOperator diff(b.matrix() - a.matrix(), a.tol());
  return diff.min_eigenvalue() >= -tol;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  std::size_t na = a.dim(), nb = b.dim();
  ComplexMatrix r(na * nb);
  for (std::size_t ia = 0; ia < na; ++ia)
    for (std::size_t ib = 0; ib < nb; ++ib)
      for (std::size_t ja = 0; ja < na; ++ja)
        for (std::size_t jb = 0; jb < nb; ++jb)
          r(ia * nb + ib, ja * nb + jb) = a(ia, ja) * b(ib, jb);
  return r;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t nx,
                            std::size_t ny, TraceSide side) {
  if (m.dim() != nx * ny)
    throw std::invalid_argument("partial_trace: dimension not factorable");
  if (side == TraceSide::traceY) {
    ComplexMatrix r(nx);
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t j = 0; j < nx; ++j) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < ny; ++k) acc += m(i * ny + k, j * ny + k);
        r(i, j) = acc;
      }
    return r;
  }
  ComplexMatrix r(ny);
  for (std::size_t i = 0; i < ny; ++i)
    for (std::size_t j = 0; j < ny; ++j) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < nx; ++k) acc += m(k * ny + i, k * ny + j);
      r(i, j) = acc;
    }
  return r;
}

}  // namespace qae
