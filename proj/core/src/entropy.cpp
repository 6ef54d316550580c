#include "qae/entropy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qae {

namespace {

double trace_product(const HermitianOperator& a, const HermitianOperator& b) {
  return (a.matrix() * b.matrix()).trace().real();
}

}  // namespace

DensityMatrix::DensityMatrix(HermitianOperator op, bool semi)
    : op_(std::move(op)), semi_(semi) {
  const Tolerances& tol = op_.tol();
  if (op_.min_eigenvalue() < -tol.psd_tol)
    throw std::invalid_argument("DensityMatrix: not PSD");
  double tr = op_.trace_real();
  if (semi_) {
    if (tr > 1.0 + tol.psd_tol)
      throw std::invalid_argument("DensityMatrix: trace exceeds 1");
  } else if (std::abs(tr - 1.0) > 1e-10) {
    throw std::invalid_argument("DensityMatrix: trace not 1");
  }
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double lam : rho.op().eig().values)
    if (lam > 0.0) s -= lam * std::log2(lam);
  return s;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw std::invalid_argument("relative_entropy: dim mismatch");
  double psd_tol = rho.op().tol().psd_tol;
  const Eigensystem& es = sigma.op().eig();
  std::size_t n = rho.dim();

  // support check: mass of rho on the kernel of sigma
  double kernel_mass = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (es.values[j] > psd_tol) continue;
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = es.vectors(i, j);
    kernel_mass += rho.op().quadratic_form(v);
  }
  if (kernel_mass > psd_tol) return std::numeric_limits<double>::infinity();

  double tr_rho_log_rho = 0.0;
  for (double lam : rho.op().eig().values)
    if (lam > 0.0) tr_rho_log_rho += lam * std::log2(lam);

  double tr_rho_log_sigma = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (es.values[j] <= psd_tol) continue;
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = es.vectors(i, j);
    tr_rho_log_sigma += rho.op().quadratic_form(v) * std::log2(es.values[j]);
  }
  return tr_rho_log_rho - tr_rho_log_sigma;
}

SandwichReport entropy_complexity_sandwich(const UniversalApprox& ua,
                                           const DensityMatrix& rho,
                                           Dyadic w) {
  if (rho.dim() != ua.dim)
    throw std::invalid_argument("sandwich: dim mismatch");
  double wd = w.to_double();
  if (wd <= 0.0) throw std::invalid_argument("sandwich: weight must be > 0");
  {
    HermitianOperator scaled(cplx{wd, 0.0} * rho.op().matrix(),
                             rho.op().tol());
    if (!loewner_leq(scaled, ua.mu, ua.mu.tol().psd_tol * 10))
      throw std::invalid_argument("sandwich: w rho not dominated by mu");
  }

  SandwichReport rep;
  rep.entropy = von_neumann_entropy(rho);
  rep.avg_complexity = trace_product(rho.op(), ua.kappa);
  rep.c_left = -std::log2(ua.mu.trace_real());
  rep.c_right = -std::log2(wd);
  rep.slack_left = rep.avg_complexity - (rep.entropy - rep.c_left);
  rep.slack_right = (rep.entropy + rep.c_right) - rep.avg_complexity;
  rep.ok = rep.slack_left >= -1e-6 && rep.slack_right >= -1e-6;
  return rep;
}

SmallSubspaceBounds small_subspace_upper_bounds(const UniversalApprox& ua,
                                                const std::string& projector_key,
                                                const PureState& psi) {
  auto it = ua.table.entries.find(projector_key);
  if (it == ua.table.entries.end() ||
      it->second.representative.kind != MachineOutput::Kind::projector)
    throw std::invalid_argument(
        "small_subspace_upper_bounds: projector not enumerated");
  const SemimeasureEntry& entry = it->second;

  std::size_t n = ua.dim;
  double d = double(entry.representative.projector_rank());
  ComplexMatrix pm = entry.representative.projector_matrix();
  std::vector<cplx> p_psi = pm.apply(psi.amplitudes());
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    q += (std::conj(psi[i]) * p_psi[i]).real();
  q = std::min(std::max(q, 0.0), 1.0);

  double k_t = double(entry.k_t);
  double mass = entry.mass.to_double();
  double eps = ua.regularizer_mass.to_double();

  SmallSubspaceBounds b;
  b.h_lower_bound =
      q > 0.0 ? k_t + std::log2(d) - std::log2(q)
              : std::numeric_limits<double>::infinity();
  b.h_upper_bound = k_t + std::log2(d) + (1.0 - q) * std::log2(double(n));

  // H_lower: mu >= m(P) P/d termwise, so the bound holds with the gap
  // between K_t and -log2 m(P) as its constant.
  b.c_lower = -std::log2(mass) - k_t;  // <= 0 when several programs hit P
  double hl = h_lower(ua, psi);
  b.ok_lower = hl <= b.h_lower_bound + b.c_lower + 1e-9 ||
               !std::isfinite(b.h_lower_bound);

  // H_upper: mu >= wmin (P/d + (1-P)/N)/2 with wmin = min(m(P), eps), so
  // kappa <= -log2(wmin/2) + (projected spectral bound).
  double wmin = std::min(mass, eps);
  if (wmin > 0.0) {
    double rigorous = -std::log2(wmin) + 1.0 + q * std::log2(d) +
                      (1.0 - q) * std::log2(double(n));
    b.c_upper = rigorous - b.h_upper_bound;
    double hu = h_upper(ua, psi);
    b.ok_upper = hu <= b.h_upper_bound + b.c_upper + 1e-9;
  } else {
    b.c_upper = std::numeric_limits<double>::infinity();
    b.ok_upper = true;  // vacuous without a regularizer
  }
  return b;
}

ProductCheckReport subadditivity_check(const UniversalApprox& ua_x,
                                       const UniversalApprox& ua_y,
                                       const UniversalApprox& ua_xy,
                                       const EnumerationSnapshot& snap_x,
                                       const EnumerationSnapshot& snap_y,
                                       const EnumerationSnapshot& snap_xy,
                                       const PureState& phi,
                                       const PureState& psi, double tol) {
  std::size_t nx = ua_x.dim, ny = ua_y.dim;
  if (nx * ny != ua_xy.dim)
    throw std::invalid_argument("subadditivity_check: dim mismatch");
  int t = tensor_overhead_bits(nx);
  if (snap_xy.budget.max_len < t + snap_x.budget.max_len + snap_y.budget.max_len)
    throw std::invalid_argument(
        "subadditivity_check: XY budget too small for tensor counterparts");
  if (snap_xy.budget.max_steps <
      1 + snap_x.budget.max_steps + snap_y.budget.max_steps)
    throw std::invalid_argument(
        "subadditivity_check: XY step budget too small");

  ProductCheckReport rep;
  double eps = ua_xy.regularizer_mass.to_double();
  rep.domination_constant =
      std::ldexp(1.0, t) + double(nx) + double(ny) + eps;

  ComplexMatrix prod = tensor(ua_x.mu.matrix(), ua_y.mu.matrix());
  HermitianOperator scaled(
      cplx{1.0 / rep.domination_constant, 0.0} * prod, ua_xy.mu.tol());
  rep.operator_ok = loewner_leq(scaled, ua_xy.mu, tol);

  PureState joint = PureState::tensor(phi, psi);
  rep.scalar_slack_h_lower =
      h_lower(ua_xy, joint) - h_lower(ua_x, phi) - h_lower(ua_y, psi);
  rep.scalar_slack_h_upper =
      h_upper(ua_xy, joint) - h_upper(ua_x, phi) - h_upper(ua_y, psi);
  double budget = std::log2(rep.domination_constant);
  rep.scalar_ok = rep.scalar_slack_h_lower <= budget + tol &&
                  rep.scalar_slack_h_upper <= budget * double(nx * ny) + tol;
  return rep;
}

MonotonicityReport monotonicity_check(const UniversalApprox& ua_x,
                                      const UniversalApprox& ua_xy,
                                      const EnumerationSnapshot& snap_x,
                                      const EnumerationSnapshot& snap_xy,
                                      const PureState& phi,
                                      const PureState& psi,
                                      const std::string& psi_key_in_y,
                                      const UniversalApprox& ua_y, double tol) {
  std::size_t nx = ua_x.dim;
  std::size_t ny = ua_xy.dim / nx;
  if (nx * ny != ua_xy.dim)
    throw std::invalid_argument("monotonicity_check: dim mismatch");

  MonotonicityReport rep;
  double eps = ua_x.regularizer_mass.to_double();
  rep.trace_constant = eps / double(nx);

  // lambda_max(Tr_Y A) <= Tr A <= 1, so Tr_Y mu_XY <= I_X <= (N/eps) mu_X.
  ComplexMatrix traced = partial_trace(ua_xy.mu.matrix(), nx, ny);
  HermitianOperator scaled(cplx{rep.trace_constant, 0.0} * traced,
                           ua_x.mu.tol());
  rep.trace_ok = loewner_leq(scaled, ua_x.mu, tol);

  // witness direction: mu_X (x) |psi><psi| <= C2 mu_XY for enumerated psi
  auto it = ua_y.table.entries.find(psi_key_in_y);
  if (it == ua_y.table.entries.end())
    throw std::invalid_argument("monotonicity_check: psi not enumerated in Y");
  int t = tensor_overhead_bits(nx);
  rep.witness_constant =
      std::ldexp(1.0, t + it->second.k_t) + double(ny);
  ComplexMatrix witness = tensor(ua_x.mu.matrix(), psi.projector());
  HermitianOperator wscaled(
      cplx{1.0 / rep.witness_constant, 0.0} * witness, ua_xy.mu.tol());
  rep.witness_ok = loewner_leq(wscaled, ua_xy.mu, tol);

  PureState joint = PureState::tensor(phi, psi);
  rep.scalar_slack_h_lower = h_lower(ua_x, phi) - h_lower(ua_xy, joint);
  rep.scalar_slack_h_upper = h_upper(ua_x, phi) - h_upper(ua_xy, joint);
  double budget = std::log2(rep.witness_constant);
  rep.scalar_ok = rep.scalar_slack_h_lower <= budget + tol &&
                  rep.scalar_slack_h_upper <= budget + tol;
  return rep;
}

ApproximationLemmaResult approximation_lemma_check(const DensityMatrix& rho,
                                                   const PureState& psi,
                                                   double eps) {
  double q = rho.op().quadratic_form(psi.amplitudes());
  if (q < 1.0 - eps - 1e-9)
    throw std::invalid_argument(
        "approximation_lemma_check: <psi|rho|psi> < 1 - eps");
  const Eigensystem& es = rho.op().eig();
  ApproximationLemmaResult r;
  r.p1 = es.values[0];
  cplx ip = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i)
    ip += std::conj(es.vectors(i, 0)) * psi[i];
  r.overlap = std::norm(ip);
  return r;
}

}  // namespace qae
