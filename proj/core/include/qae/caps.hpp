#pragma once

#include <cstdint>

#include "qae/machine.hpp"
#include "qae/rng.hpp"

namespace qae {

// Spherical cap on the unit sphere of R^n: all directions within half-angle
// alpha of a pole.
struct CapQuery {
  std::size_t n = 2;   // real dimension, >= 2
  double alpha = 0.0;  // radians in [0, pi]
};

// Frozen multiplicative constants hiding behind the asymptotic inequalities;
// fixed by a one-time sweep and kept in config so regressions surface.
struct CapConstants {
  double cap_bound_c = 1.0;
  double counting_c = 1.0;
};

// s_n(alpha)/s_n by adaptive quadrature of sin^{n-2} with the exact
// Gamma-ratio prefactor; absolute error <= 1e-10.
double cap_fraction_exact(const CapQuery& q);

// The Laplace-method bound C n exp(-n y^2 / 2) at alpha = pi/2 - y, y > 0.
double cap_fraction_bound(const CapQuery& q, const CapConstants& c = {});

struct McEstimate {
  double estimate = 0.0;
  double stderr_est = 0.0;
  std::size_t samples = 0;
};

McEstimate cap_fraction_montecarlo(const CapQuery& q, std::size_t samples,
                                   std::uint64_t seed);

// log of the surface volume s_n of the unit sphere in R^n and of the volume
// b_n of the unit ball (via log-Gamma; used for the s_n = n b_n identities).
double log_sphere_surface(std::size_t n);
double log_ball_volume(std::size_t n);

// Union-bound counting scenario: at most 2^k fixed states in the n-qubit
// space, a Haar state counts as caught when some fixed state overlaps it
// with |<phi|psi>|^2 >= 2^{-m}.
struct CountingScenario {
  std::size_t n = 1;  // qubit count
  std::size_t k = 0;  // log2 of the number of fixed states
  std::size_t m = 1;  // overlap threshold exponent
};

// The caught-fraction bound exp(-2^{n-m} + k ln 2 + n), times the frozen
// constant.
double counting_lemma_fraction(const CountingScenario& sc,
                               const CapConstants& c = {});

// Monte-Carlo companion: fraction of Haar states caught by 2^k Haar-fixed
// states at the scenario's overlap threshold.
McEstimate counting_montecarlo(const CountingScenario& sc, std::size_t samples,
                               std::uint64_t seed);

// Numerical re-enactment of the incompressibility argument at toy scale:
// the orthogonal complement V of all short machine outputs forces every
// state inside it to cost at least the length threshold, and the governing
// exponent -n^2/2 + n(2 ln 2 + 1) - 1 eventually goes negative.
struct KqScenarioReport {
  std::size_t qubits = 0;
  std::size_t dim = 0;
  std::size_t short_outputs = 0;  // distinct state outputs below threshold
  std::size_t v_dim = 0;          // dim of the orthogonal complement
  bool degenerate = false;        // V empty at this budget
  double exponent = 0.0;          // at this n
  std::size_t exponent_negative_from = 0;  // least n with exponent < 0
  double min_kq = 0.0;            // over the sampled states in V
  std::size_t samples = 0;
  bool ok = false;                // min_kq >= n - 1
};

KqScenarioReport kq_lowerbound_scenario(std::size_t qubits,
                                        const EnumerationSnapshot& snapshot,
                                        std::size_t samples,
                                        std::uint64_t seed);

}  // namespace qae
