#pragma once

#include "qae/universal.hpp"

namespace qae {

// PSD operator with trace 1 (density) or trace <= 1 (semi-density).
class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(HermitianOperator op, bool semi = false);

  const HermitianOperator& op() const { return op_; }
  std::size_t dim() const { return op_.dim(); }
  bool semi() const { return semi_; }

 private:
  HermitianOperator op_;
  bool semi_ = false;
};

// S(rho) = -sum lambda_i log2 lambda_i, bits; 0 log 0 = 0.
double von_neumann_entropy(const DensityMatrix& rho);

// S(rho || sigma) = Tr rho (log2 rho - log2 sigma), bits; +infinity when the
// support of rho sticks out of the support of sigma (psd_tol rank).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

// Both directions of the entropy-equals-average-complexity argument with the
// explicit constants the proof provides: c_left from S(rho || mu/Tr mu) >= 0
// and c_right from w rho <= mu plus log monotonicity.
struct SandwichReport {
  double entropy = 0.0;         // S(rho), bits
  double avg_complexity = 0.0;  // Tr(rho kappa), bits
  double c_left = 0.0;          // -log2 Tr mu
  double c_right = 0.0;         // -log2 w
  double slack_left = 0.0;      // avg - (S - c_left), must be >= -tol
  double slack_right = 0.0;     // (S + c_right) - avg, must be >= -tol
  bool ok = false;
};
SandwichReport entropy_complexity_sandwich(const UniversalApprox& ua,
                                           const DensityMatrix& rho, Dyadic w);

// The two small-subspace right-hand sides for an enumerated projector P, plus
// the rigorous slack constants derived from the mass the builder actually
// assigned (m(P) for the H_lower direction, min(m(P), eps_reg) through the
// (P/d + (1-P)/N)/2 witness for the H_upper direction).
struct SmallSubspaceBounds {
  double h_lower_bound = 0.0;  // K_t(P) + log2 d - log2 <psi|P|psi>
  double h_upper_bound = 0.0;  // K_t(P) + log2 d + (1-q) log2 N
  double c_lower = 0.0;        // slack constant for the first bound
  double c_upper = 0.0;        // slack constant for the second bound
  bool ok_lower = false;       // h_lower <= h_lower_bound + c_lower + tol
  bool ok_upper = false;
};
SmallSubspaceBounds small_subspace_upper_bounds(const UniversalApprox& ua,
                                                const std::string& projector_key,
                                                const PureState& psi);

// Operator and scalar subadditivity at a grammar-derived constant:
// (1/C) mu_X (x) mu_Y <= mu_XY with C = 2^t + N_X + N_Y + eps, where t is the
// TENSOR wrapper cost. Requires L_XY >= t + L_X + L_Y so every program pair
// has its tensor counterpart inside the XY snapshot.
struct ProductCheckReport {
  double domination_constant = 0.0;  // the C above (mu_X (x) mu_Y <= C mu_XY)
  bool operator_ok = false;
  double scalar_slack_h_lower = 0.0;  // H(phi (x) psi) - H(phi) - H(psi)
  double scalar_slack_h_upper = 0.0;
  bool scalar_ok = false;
};
ProductCheckReport subadditivity_check(const UniversalApprox& ua_x,
                                       const UniversalApprox& ua_y,
                                       const UniversalApprox& ua_xy,
                                       const EnumerationSnapshot& snap_x,
                                       const EnumerationSnapshot& snap_y,
                                       const EnumerationSnapshot& snap_xy,
                                       const PureState& phi,
                                       const PureState& psi, double tol);

// Monotonicity: c1 Tr_Y mu_XY <= mu_X with the regularizer constant
// c1 = eps/N_X, and the proof witness mu_X (x) |psi><psi| <= C2 mu_XY with
// C2 = 2^t 2^{K_t(psi)} + N_Y for an enumerated psi.
struct MonotonicityReport {
  double trace_constant = 0.0;    // c1
  bool trace_ok = false;
  double witness_constant = 0.0;  // C2
  bool witness_ok = false;
  double scalar_slack_h_lower = 0.0;  // H(phi) - H(phi (x) psi)
  double scalar_slack_h_upper = 0.0;
  bool scalar_ok = false;
};
MonotonicityReport monotonicity_check(const UniversalApprox& ua_x,
                                      const UniversalApprox& ua_xy,
                                      const EnumerationSnapshot& snap_x,
                                      const EnumerationSnapshot& snap_xy,
                                      const PureState& phi,
                                      const PureState& psi,
                                      const std::string& psi_key_in_y,
                                      const UniversalApprox& ua_y, double tol);

// If <psi|rho|psi> >= 1-eps then the top eigenvalue p1 >= 1-eps and the top
// eigenvector catches psi with overlap >= 1-2eps.
struct ApproximationLemmaResult {
  double p1 = 0.0;
  double overlap = 0.0;  // |<top eigenvector|psi>|^2
};
ApproximationLemmaResult approximation_lemma_check(const DensityMatrix& rho,
                                                   const PureState& psi,
                                                   double eps);

}  // namespace qae
