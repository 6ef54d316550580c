#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qae/hermitian.hpp"
#include "qae/machine.hpp"

namespace qae {

// Extra semimeasure mass granted to an output the enumerator cannot reach at
// desk budgets (e.g. a symmetric-subspace projector). Budgeted inside the
// total mass like any program weight, with a declared nominal length.
struct InjectedWitness {
  MachineOutput output;
  Dyadic mass;
  int nominal_length = 0;
};

// The pair (mu_t, kappa_t) built from a snapshot, plus the semimeasure table
// it came from. Immutable after construction.
struct UniversalApprox {
  std::size_t dim = 0;
  HermitianOperator mu;     // PSD, trace <= 1
  HermitianOperator kappa;  // -log2(mu), floor policy, bits
  std::string snapshot_ref;
  Dyadic regularizer_mass;
  SemimeasureTable table;
};

struct ComplexityReport {
  std::string state_id;
  double h_lower = 0.0;
  double h_upper = 0.0;
  std::optional<double> kq;
  std::optional<int> k_t;
};

struct EigenProjector {
  HermitianOperator projector;
  // E_k is not canonical when mu_k ~ mu_{k+1}; the cut is then made with the
  // deterministic phase/order convention and flagged here.
  bool degenerate_cut = false;
};

// mu = sum_states m(psi)|psi><psi| + sum_projectors m(P) P/rank + eps_reg I/N.
UniversalApprox build_mu(const EnumerationSnapshot& snapshot, Dyadic eps_reg,
                         Tolerances tol = {},
                         const std::vector<InjectedWitness>& injected = {});

// Wrap an explicitly constructed semi-density as a UniversalApprox (used for
// closed-form spectra like the two-eigenvalue gap construction).
UniversalApprox approx_from_operator(HermitianOperator mu, Tolerances tol = {});

// H_lower = -log2 <psi|mu|psi>; finite thanks to the regularizer.
double h_lower(const UniversalApprox& ua, const PureState& psi);

// H_upper = <psi|kappa|psi> in bits; >= h_lower by quantum Jensen.
double h_upper(const UniversalApprox& ua, const PureState& psi);

// min over snapshot state outputs of l(p) - log2 |<phi_p|psi>|^2;
// +infinity when every overlap vanishes.
double kq_t(const EnumerationSnapshot& snapshot, const PureState& psi);

// Rank-k projector onto the top-k eigenvectors of mu.
EigenProjector eigen_projectors(const UniversalApprox& ua, std::size_t k,
                                double degeneracy_tol = 1e-12);

}  // namespace qae
