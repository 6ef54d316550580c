#pragma once

#include "qae/entropy.hpp"

namespace qae {

// The universal randomness test against a computable density rho:
// rho^{-1/2} mu rho^{-1/2} restricted to the support of rho. A state with
// mass off the support tests to +infinity.
struct TestOperator {
  HermitianOperator op;
  HermitianOperator support_projector;
  bool infinite_off_support = false;  // rho was rank-deficient
};

struct TestValue {
  double value = 0.0;       // nonnegative or +infinity
  double deficiency = 0.0;  // log2 value, bits
};

TestOperator build_test(const UniversalApprox& ua, const DensityMatrix& rho);

TestValue evaluate_test(const TestOperator& t, const PureState& psi);

// Same value by the coordinate route: sum_ij m_ij (p_i p_j)^{-1/2} c_i* c_j
// in the eigenbasis of rho, with m the matrix of mu in that basis and c the
// coordinates of psi. Independent of evaluate_test, used as its oracle.
double test_value_coordinates(const UniversalApprox& ua,
                              const DensityMatrix& rho, const PureState& psi);

// One Martin-Lof-style term: deficiency of the event "psi lands in the
// enumerated projector P" against rho, i.e.
// log2[ 2^{-K_t(P)} <psi|P|psi> / Tr(P rho) ]. -infinity when psi misses P.
double martin_lof_term(const UniversalApprox& ua,
                       const std::string& projector_key,
                       const DensityMatrix& rho, const PureState& psi);

// Snapshot-restricted sum form sum_phi m(phi) |phi><phi| / <phi|rho|phi>
// over enumerated pure outputs; dominated by the universal test, and only
// used to check that domination.
HermitianOperator sum_form_test(const UniversalApprox& ua,
                                const DensityMatrix& rho);

}  // namespace qae
