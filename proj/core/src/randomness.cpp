#include "qae/randomness.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qae {

TestOperator build_test(const UniversalApprox& ua, const DensityMatrix& rho) {
  if (rho.dim() != ua.dim)
    throw std::invalid_argument("build_test: dim mismatch");
  OpFuncResult inv_sqrt = op_func(
      rho.op(), [](double x) { return 1.0 / std::sqrt(x); },
      OffSupport::infinity);
  const ComplexMatrix& r = inv_sqrt.op.matrix();
  ComplexMatrix raw = r * ua.mu.matrix() * r;
  // symmetrize roundoff before handing to the validating constructor
  ComplexMatrix sym(raw.dim());
  for (std::size_t i = 0; i < raw.dim(); ++i)
    for (std::size_t j = 0; j < raw.dim(); ++j)
      sym(i, j) = 0.5 * (raw(i, j) + std::conj(raw(j, i)));

  TestOperator t;
  t.op = HermitianOperator(std::move(sym), ua.mu.tol());
  t.support_projector = inv_sqrt.support_projector
                            ? *inv_sqrt.support_projector
                            : HermitianOperator(
                                  ComplexMatrix::identity(rho.dim()),
                                  ua.mu.tol());
  t.infinite_off_support = inv_sqrt.infinite_part;

  double tr = (t.op.matrix() * rho.op().matrix()).trace().real();
  if (tr > 1.0 + 1e-9)
    throw std::logic_error("build_test: Tr(T rho) exceeds 1");
  return t;
}

TestValue evaluate_test(const TestOperator& t, const PureState& psi) {
  if (psi.dim() != t.op.dim())
    throw std::invalid_argument("evaluate_test: dim mismatch");
  TestValue v;
  double psd_tol = t.op.tol().psd_tol;
  if (t.infinite_off_support) {
    double on = t.support_projector.quadratic_form(psi.amplitudes());
    if (1.0 - on > psd_tol) {
      v.value = std::numeric_limits<double>::infinity();
      v.deficiency = v.value;
      return v;
    }
  }
  v.value = std::max(t.op.quadratic_form(psi.amplitudes()), 0.0);
  v.deficiency = v.value > 0.0 ? std::log2(v.value)
                               : -std::numeric_limits<double>::infinity();
  return v;
}

double test_value_coordinates(const UniversalApprox& ua,
                              const DensityMatrix& rho, const PureState& psi) {
  std::size_t n = ua.dim;
  if (rho.dim() != n || psi.dim() != n)
    throw std::invalid_argument("test_value_coordinates: dim mismatch");
  const Eigensystem& es = rho.op().eig();
  double psd_tol = rho.op().tol().psd_tol;

  // coordinates of psi and matrix of mu in the eigenbasis of rho
  std::vector<cplx> c(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      c[i] += std::conj(es.vectors(k, i)) * psi[k];

  double off = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (es.values[i] <= psd_tol) off += std::norm(c[i]);
  if (off > psd_tol) return std::numeric_limits<double>::infinity();

  const ComplexMatrix& mu = ua.mu.matrix();
  cplx value = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (es.values[i] <= psd_tol) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (es.values[j] <= psd_tol) continue;
      cplx m_ij = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          m_ij += std::conj(es.vectors(k, i)) * mu(k, l) * es.vectors(l, j);
      value += m_ij / std::sqrt(es.values[i] * es.values[j]) *
               std::conj(c[i]) * c[j];
    }
  }
  return value.real();
}

double martin_lof_term(const UniversalApprox& ua,
                       const std::string& projector_key,
                       const DensityMatrix& rho, const PureState& psi) {
  auto it = ua.table.entries.find(projector_key);
  if (it == ua.table.entries.end() ||
      it->second.representative.kind != MachineOutput::Kind::projector)
    throw std::invalid_argument("martin_lof_term: projector not enumerated");
  if (rho.dim() != ua.dim || psi.dim() != ua.dim)
    throw std::invalid_argument("martin_lof_term: dim mismatch");

  ComplexMatrix p = it->second.representative.projector_matrix();
  double tr_p_rho = (p * rho.op().matrix()).trace().real();
  if (tr_p_rho <= rho.op().tol().psd_tol)
    throw std::domain_error("martin_lof_term: Tr(P rho) vanishes");

  std::vector<cplx> pp = p.apply(psi.amplitudes());
  double q = 0.0;
  for (std::size_t i = 0; i < ua.dim; ++i)
    q += (std::conj(psi[i]) * pp[i]).real();
  if (q <= 0.0) return -std::numeric_limits<double>::infinity();
  return -double(it->second.k_t) + std::log2(q) - std::log2(tr_p_rho);
}

HermitianOperator sum_form_test(const UniversalApprox& ua,
                                const DensityMatrix& rho) {
  if (rho.dim() != ua.dim)
    throw std::invalid_argument("sum_form_test: dim mismatch");
  std::size_t n = ua.dim;
  ComplexMatrix t(n);
  for (const auto& [key, entry] : ua.table.entries) {
    if (entry.representative.kind != MachineOutput::Kind::state) continue;
    PureState phi = normalize(entry.representative.state);
    double denom = rho.op().quadratic_form(phi.amplitudes());
    if (denom <= rho.op().tol().psd_tol)
      throw std::domain_error("sum_form_test: output off the support of rho");
    double w = entry.mass.to_double() / denom;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        t(i, j) += w * phi[i] * std::conj(phi[j]);
  }
  return HermitianOperator(std::move(t), ua.mu.tol());
}

}  // namespace qae
