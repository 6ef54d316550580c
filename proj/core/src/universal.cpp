#include "qae/universal.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qae {

namespace {

const double kLog2e = 1.4426950408889634073599246810019;

void add_output_mass(ComplexMatrix& mu, const MachineOutput& out, double mass) {
  if (out.kind == MachineOutput::Kind::state) {
    PureState psi = normalize(out.state);
    std::size_t n = mu.dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        mu(i, j) += mass * psi[i] * std::conj(psi[j]);
  } else {
    ComplexMatrix p = out.projector_matrix();
    double scale = mass / double(out.projector_rank());
    std::size_t n = mu.dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) mu(i, j) += scale * p(i, j);
  }
}

}  // namespace

UniversalApprox build_mu(const EnumerationSnapshot& snapshot, Dyadic eps_reg,
                         Tolerances tol,
                         const std::vector<InjectedWitness>& injected) {
  Dyadic total = snapshot.kraft_mass + eps_reg;
  for (const auto& w : injected) total += w.mass;
  if (total > Dyadic{1})
    throw std::invalid_argument("build_mu: total mass exceeds 1");

  SemimeasureTable table = semimeasure(snapshot);
  for (const auto& w : injected) {
    std::string key = w.output.canonical_key();
    auto it = table.entries.find(key);
    if (it == table.entries.end()) {
      table.entries.emplace(std::move(key), SemimeasureEntry{w.output, w.mass,
                                                             w.nominal_length});
    } else {
      it->second.mass += w.mass;
      it->second.k_t = std::min(it->second.k_t, w.nominal_length);
    }
    table.total_mass += w.mass;
  }

  std::size_t n = snapshot.dim;
  ComplexMatrix mu(n);
  for (const auto& [key, entry] : table.entries)
    add_output_mass(mu, entry.representative, entry.mass.to_double());
  double reg = eps_reg.to_double() / double(n);
  for (std::size_t i = 0; i < n; ++i) mu(i, i) += reg;

  UniversalApprox ua;
  ua.dim = n;
  ua.mu = HermitianOperator(std::move(mu), tol);
  ua.kappa =
      op_func(ua.mu, [](double x) { return -std::log2(x); }, OffSupport::floor)
          .op;
  std::ostringstream ref;
  ref << "L=" << snapshot.budget.max_len << ",T=" << snapshot.budget.max_steps;
  ua.snapshot_ref = ref.str();
  ua.regularizer_mass = eps_reg;
  ua.table = std::move(table);

  if (ua.mu.min_eigenvalue() < -tol.psd_tol)
    throw std::logic_error("build_mu: mu not PSD");
  if (ua.mu.trace_real() > 1.0 + tol.psd_tol)
    throw std::logic_error("build_mu: trace exceeds 1");
  return ua;
}

UniversalApprox approx_from_operator(HermitianOperator mu, Tolerances tol) {
  UniversalApprox ua;
  ua.dim = mu.dim();
  ua.mu = std::move(mu);
  ua.kappa =
      op_func(ua.mu, [](double x) { return -std::log2(x); }, OffSupport::floor)
          .op;
  ua.snapshot_ref = "constructed";
  ua.table.condition_dim = ua.dim;
  return ua;
}

double h_lower(const UniversalApprox& ua, const PureState& psi) {
  if (psi.dim() != ua.dim) throw std::invalid_argument("h_lower: dim mismatch");
  double q = ua.mu.quadratic_form(psi.amplitudes());
  if (q < 1e-300) q = 1e-300;
  return -std::log2(q);
}

double h_upper(const UniversalApprox& ua, const PureState& psi) {
  if (psi.dim() != ua.dim) throw std::invalid_argument("h_upper: dim mismatch");
  return ua.kappa.quadratic_form(psi.amplitudes());
}

double kq_t(const EnumerationSnapshot& snapshot, const PureState& psi) {
  if (psi.dim() != snapshot.dim)
    throw std::invalid_argument("kq_t: dim mismatch");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : snapshot.entries) {
    if (e.output.kind != MachineOutput::Kind::state) continue;
    PureState phi = normalize(e.output.state);
    double overlap = std::norm(inner(phi, psi));
    if (overlap <= 0.0) continue;
    double val = double(e.bits.size()) - std::log2(overlap);
    if (val < best) best = val;
  }
  return best;
}

EigenProjector eigen_projectors(const UniversalApprox& ua, std::size_t k,
                                double degeneracy_tol) {
  if (k < 1 || k > ua.dim)
    throw std::out_of_range("eigen_projectors: k out of range");
  const Eigensystem& es = ua.mu.eig();
  EigenProjector result;
  result.degenerate_cut =
      k < ua.dim && std::abs(es.values[k - 1] - es.values[k]) < degeneracy_tol;
  std::size_t n = ua.dim;
  ComplexMatrix p(n);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        p(i, j) += es.vectors(i, c) * std::conj(es.vectors(j, c));
  result.projector = HermitianOperator(std::move(p), ua.mu.tol());
  return result;
}

}  // namespace qae
