#pragma once

#include <cstdint>

#include "qae/rng.hpp"
#include "qae/universal.hpp"

namespace qae {

// binom(a, b) as double (exact for the small arguments used here).
double binom(unsigned a, unsigned b);

// Projector onto the permutation-symmetric subspace of (C^N)^(x)m.
struct SymmetricSubspace {
  std::size_t base_dim = 0;   // N
  std::size_t fold = 0;       // m
  HermitianOperator projector;
  std::size_t dim = 0;        // binom(m+N-1, m)
};

// Total dimension N^m must stay within total_cap (default 2^12).
SymmetricSubspace symmetric_projector(std::size_t n, std::size_t m,
                                      std::size_t total_cap = 4096);

struct TwirlResult {
  HermitianOperator average;  // MC mean of |psi>^m <psi|^m over Haar psi
  double stderr_max = 0.0;    // largest per-entry standard error of the mean
  std::size_t samples = 0;
};

TwirlResult twirl_average(std::size_t n, std::size_t m, std::size_t samples,
                          std::uint64_t seed, std::size_t total_cap = 4096);

// Both directions of the m-fold copying complexity bound, checked by Haar
// sampling against a universal approximation on (C^N)^(x)m whose table
// contains the symmetric projector under `projector_key`.
struct CloningReport {
  double log_dim = 0.0;       // log2 binom(m+N-1, m)
  int k_t = 0;                // table length of the symmetric projector
  bool upper_ok = false;      // every sample within the small-subspace bound
  double upper_worst_slack = 0.0;
  double lower_mean = 0.0;    // MC mean of <psi^m| mu |psi^m>
  double lower_stderr = 0.0;
  bool lower_ok = false;      // mean <= Tr(mu P)/dim + 3 stderr
  std::size_t samples = 0;
};

CloningReport cloning_bounds(const UniversalApprox& ua, std::size_t n,
                             std::size_t m, const std::string& projector_key,
                             std::size_t samples, std::uint64_t seed);

// Exact orthogonal spanning set of the symmetric subspace: one integer
// vector per multiset of single-system indices.
std::vector<ElementaryVector> symmetric_spanning_set(std::size_t n,
                                                     std::size_t m);

// The symmetric projector as an extra semimeasure output with a declared
// nominal program length (its true shortest program exceeds desk budgets).
InjectedWitness symmetric_witness(std::size_t n, std::size_t m,
                                  int nominal_length);

// u(A) = lambda_max(A^dagger A) / Tr(A^dagger A) for symmetric (A^T = A)
// nonzero A; ranges over [1/N, 1].
struct UnevennessResult {
  double u = 0.0;
};

UnevennessResult unevenness(const ComplexMatrix& a, double herm_tol = 1e-10);

// sup over unit phi of |<alpha | phi (x) phi>|^2 with alpha the normalized
// vectorization of A. The explicit factorization witness must achieve u(A);
// the sampled/iterated search must never exceed it.
struct OverlapSupReport {
  double u = 0.0;
  double witness_value = 0.0;
  double search_max = 0.0;
  bool ok = false;
};

OverlapSupReport overlap_sup_check(const ComplexMatrix& a, std::size_t samples,
                                   std::uint64_t seed);

// For random d-dimensional subspaces F of symmetric N x N matrices, the
// worst-case unevenness u(F) = max over the unit sphere of F never drops
// below d / (N(N+1)/2).
struct AlgebraicBoundReport {
  double bound = 0.0;  // d / N'
  double min_u = 0.0;  // smallest u(F) seen
  std::size_t trials = 0;
  bool ok = false;
};

AlgebraicBoundReport algebraic_bound_check(std::size_t n, std::size_t d,
                                           std::size_t trials,
                                           std::uint64_t seed);

}  // namespace qae
