#include <doctest.h>

#include <cmath>

#include "qae/caps.hpp"

using namespace qae;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("cap fractions with closed forms") {
  // n = 2: the cap is an arc, fraction alpha / pi
  for (double alpha : {0.1, 0.7, 1.5, 3.0})
    CHECK(cap_fraction_exact({2, alpha}) ==
          doctest::Approx(alpha / kPi).epsilon(1e-10));
  // n = 3: fraction (1 - cos alpha) / 2
  for (double alpha : {0.2, kPi / 3.0, kPi / 2.0, 2.5})
    CHECK(cap_fraction_exact({3, alpha}) ==
          doctest::Approx(0.5 * (1.0 - std::cos(alpha))).epsilon(1e-10));
  // degenerate endpoints in every dimension
  for (std::size_t n : {2, 5, 17, 64}) {
    CHECK(cap_fraction_exact({n, 0.0}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cap_fraction_exact({n, kPi / 2.0}) ==
          doctest::Approx(0.5).epsilon(1e-10));
    CHECK(cap_fraction_exact({n, kPi}) == doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK_THROWS_AS(cap_fraction_exact({1, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(cap_fraction_exact({3, -0.1}), std::invalid_argument);
  CHECK_THROWS_AS(cap_fraction_exact({3, 3.2}), std::invalid_argument);
}

TEST_CASE("cap fraction is monotone in the half-angle") {
  for (std::size_t n : {4, 16, 64}) {
    double prev = 0.0;
    for (double alpha = 0.1; alpha < kPi; alpha += 0.1) {
      double f = cap_fraction_exact({n, alpha});
      CHECK(f >= prev - 1e-12);
      prev = f;
    }
  }
}

TEST_CASE("Laplace-style bound dominates the exact fraction") {
  CapConstants c;  // frozen constants
  for (std::size_t n : {4, 8, 16, 32, 64, 128}) {
    for (double y : {0.05, 0.1, 0.2, 0.4, 0.6, 0.8, 1.0}) {
      CapQuery q{n, kPi / 2.0 - y};
      CHECK(cap_fraction_exact(q) <= cap_fraction_bound(q, c) + 1e-12);
    }
  }
  CHECK_THROWS_AS(cap_fraction_bound({4, kPi / 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(cap_fraction_bound({4, -0.1}), std::invalid_argument);
}

TEST_CASE("Monte-Carlo cap fraction agrees with quadrature") {
  CapQuery q{4, kPi / 3.0};
  McEstimate mc = cap_fraction_montecarlo(q, 20000, 11);
  double exact = cap_fraction_exact(q);
  CHECK(std::abs(mc.estimate - exact) <= 4.0 * mc.stderr_est);
  CHECK(mc.samples == 20000);
  // seed determinism
  McEstimate again = cap_fraction_montecarlo(q, 20000, 11);
  CHECK(mc.estimate == again.estimate);
}

TEST_CASE("sphere surface and ball volume identities") {
  CHECK(log_sphere_surface(2) == doctest::Approx(std::log(2.0 * kPi)).epsilon(1e-12));
  CHECK(log_sphere_surface(3) == doctest::Approx(std::log(4.0 * kPi)).epsilon(1e-12));
  CHECK(log_ball_volume(2) == doctest::Approx(std::log(kPi)).epsilon(1e-12));
  CHECK(log_ball_volume(3) ==
        doctest::Approx(std::log(4.0 * kPi / 3.0)).epsilon(1e-12));
  for (std::size_t n = 2; n <= 512; ++n) {
    // s_n = n b_n
    CHECK(log_sphere_surface(n) ==
          doctest::Approx(std::log(double(n)) + log_ball_volume(n))
              .epsilon(1e-12));
    // b_{n-1} < s_n
    CHECK(log_ball_volume(n - 1) < log_sphere_surface(n) + 1e-12);
  }
}

TEST_CASE("union-bound counting fraction") {
  CountingScenario sc{6, 2, 2};
  double expect = std::exp(-std::ldexp(1.0, 4) + 2.0 * std::log(2.0) + 6.0);
  CHECK(counting_lemma_fraction(sc) == doctest::Approx(expect).epsilon(1e-12));
  CHECK_THROWS_AS(counting_lemma_fraction({70, 1, 1}),
                  std::invalid_argument);

  McEstimate mc = counting_montecarlo(sc, 20000, 29);
  CHECK(mc.estimate <= counting_lemma_fraction(sc) + 4.0 * mc.stderr_est);
  CHECK_THROWS_AS(counting_montecarlo({7, 1, 1}, 10, 1),
                  std::invalid_argument);
}

TEST_CASE("incompressible directions cost at least the threshold") {
  EnumerationSnapshot snap = enumerate_programs(8, Budget{12, 1000});
  KqScenarioReport rep = kq_lowerbound_scenario(3, snap, 100, 7);
  CHECK(rep.qubits == 3);
  CHECK(rep.dim == 8);
  CHECK_FALSE(rep.degenerate);
  CHECK(rep.v_dim >= rep.dim - rep.short_outputs);
  CHECK(rep.ok);
  CHECK(rep.min_kq >= 2.0);
  // the governing exponent turns negative early and stays that way
  CHECK(rep.exponent_negative_from == 5);
  CHECK(rep.exponent > 0.0);  // at n = 3 it is still positive

  CHECK_THROWS_AS(kq_lowerbound_scenario(7, snap, 10, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(kq_lowerbound_scenario(2, snap, 10, 1),
                  std::invalid_argument);  // snapshot dim mismatch
}
