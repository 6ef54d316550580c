#include <doctest.h>

#include <cmath>

#include "qae/cloning.hpp"

using namespace qae;

TEST_CASE("binomial coefficients") {
  CHECK(binom(3, 2) == 3.0);
  CHECK(binom(4, 2) == 6.0);
  CHECK(binom(17, 8) == 24310.0);
  CHECK(binom(2, 5) == 0.0);
}

TEST_CASE("symmetric subspace dimensions and projector identities") {
  // dim = binom(m+N-1, m)
  struct Case {
    std::size_t n, m, dim;
  };
  for (Case c : {Case{2, 2, 3}, Case{2, 3, 4}, Case{3, 2, 6}, Case{4, 2, 10}}) {
    SymmetricSubspace s = symmetric_projector(c.n, c.m);
    CHECK(s.dim == c.dim);
    CHECK(s.projector.trace_real() ==
          doctest::Approx(double(c.dim)).epsilon(1e-10));
    const ComplexMatrix& p = s.projector.matrix();
    CHECK((p * p - p).max_abs() <= 1e-9);
    // swap-invariance on a product of distinct basis vectors
    ElementaryVector e12 = ElementaryVector::tensor(basis_state(1, c.n),
                                                    basis_state(2, c.n));
    ElementaryVector e21 = ElementaryVector::tensor(basis_state(2, c.n),
                                                    basis_state(1, c.n));
    if (c.m == 2) {
      std::vector<cplx> a = p.apply(normalize(e12).amplitudes());
      std::vector<cplx> b = p.apply(normalize(e21).amplitudes());
      for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(std::abs(a[i] - b[i]) <= 1e-10);
    }
  }
  CHECK_THROWS_AS(symmetric_projector(8, 8), std::invalid_argument);
}

TEST_CASE("product states live inside the symmetric subspace") {
  SymmetricSubspace s = symmetric_projector(2, 3);
  Rng rng(61);
  for (int t = 0; t < 20; ++t) {
    std::vector<cplx> psi = rng.haar_state(2);
    std::vector<cplx> folded(8);
    for (std::size_t i = 0; i < 8; ++i)
      folded[i] = psi[i & 1] * psi[(i >> 1) & 1] * psi[(i >> 2) & 1];
    CHECK(s.projector.quadratic_form(folded) ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("spanning set covers the symmetric subspace exactly") {
  for (std::size_t n : {2, 3}) {
    for (std::size_t m : {2, 3}) {
      SymmetricSubspace s = symmetric_projector(n, m);
      std::vector<ElementaryVector> span = symmetric_spanning_set(n, m);
      CHECK(span.size() == s.dim);
      for (const auto& v : span) {
        PureState psi = normalize(v);
        CHECK(s.projector.quadratic_form(psi.amplitudes()) ==
              doctest::Approx(1.0).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("Haar twirl concentrates on the normalized projector") {
  std::size_t n = 2, m = 2;
  SymmetricSubspace s = symmetric_projector(n, m);
  TwirlResult tw = twirl_average(n, m, 20000, 77);
  CHECK(tw.samples == 20000);
  ComplexMatrix expect = cplx{1.0 / double(s.dim), 0.0} * s.projector.matrix();
  CHECK((tw.average.matrix() - expect).max_abs() <= 5.0 * tw.stderr_max);
  // reproducible for a fixed seed
  TwirlResult tw2 = twirl_average(n, m, 20000, 77);
  CHECK((tw.average.matrix() - tw2.average.matrix()).max_abs() == 0.0);
}

TEST_CASE("m-fold copies pay for the symmetric subspace") {
  std::size_t n = 2, m = 2;
  EnumerationSnapshot snap = enumerate_programs(n * n, Budget{10, 1000});
  InjectedWitness w = symmetric_witness(n, m, 10);
  UniversalApprox ua =
      build_mu(snap, Dyadic::pow2(-10), Tolerances{}, {w});
  std::string key = w.output.canonical_key();

  CloningReport rep = cloning_bounds(ua, n, m, key, 400, 5);
  CHECK(rep.log_dim == doctest::Approx(std::log2(3.0)).epsilon(1e-12));
  CHECK(rep.k_t == 10);
  CHECK(rep.upper_ok);
  CHECK(rep.lower_ok);
  CHECK(rep.samples == 400);
  // the mean complexity of the pair is at least log2 dim of the subspace
  CHECK(-std::log2(rep.lower_mean + 3.0 * rep.lower_stderr) >=
        rep.log_dim - 0.2);

  CHECK_THROWS_AS(cloning_bounds(ua, n, m, "P:absent", 10, 5),
                  std::invalid_argument);
}

TEST_CASE("unevenness of canonical matrices") {
  std::size_t n = 3;
  UnevennessResult id = unevenness(ComplexMatrix::identity(n));
  CHECK(id.u == doctest::Approx(1.0 / double(n)).epsilon(1e-12));

  // rank one symmetric: u = 1
  ComplexMatrix r1(n);
  std::vector<cplx> v{cplx{0.6, 0.0}, cplx{0.0, 0.8}, cplx{0.0, 0.0}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r1(i, j) = v[i] * v[j];
  CHECK(unevenness(r1).u == doctest::Approx(1.0).epsilon(1e-10));

  // scale invariance
  ComplexMatrix d = ComplexMatrix::diagonal({3.0, 1.0, 0.0});
  CHECK(unevenness(d).u == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(unevenness(cplx{0.0, 2.0} * d).u == doctest::Approx(0.9).epsilon(1e-12));

  ComplexMatrix skew(2);
  skew(0, 1) = 1.0;
  skew(1, 0) = -1.0;
  CHECK_THROWS_AS(unevenness(skew), std::invalid_argument);
  CHECK_THROWS_AS(unevenness(ComplexMatrix(2)), std::invalid_argument);
}

TEST_CASE("overlap supremum matches unevenness with an explicit witness") {
  Rng rng(83);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 2 + std::size_t(rng.uniform() * 3);
    ComplexMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        a(i, j) = rng.complex_normal();
        a(j, i) = a(i, j);
      }
    OverlapSupReport rep = overlap_sup_check(a, 200, 1000 + trial);
    CHECK(rep.ok);
    CHECK(rep.witness_value == doctest::Approx(rep.u).epsilon(1e-7));
    CHECK(rep.search_max <= rep.u + 1e-9);
  }

  // diagonal case where the supremum is obvious
  OverlapSupReport diag =
      overlap_sup_check(ComplexMatrix::diagonal({2.0, 1.0}), 200, 9);
  CHECK(diag.u == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(diag.witness_value == doctest::Approx(0.8).epsilon(1e-9));
}

TEST_CASE("subspace unevenness never drops below the dimension ratio") {
  for (std::size_t n : {2, 3}) {
    std::size_t nprime = n * (n + 1) / 2;
    for (std::size_t d = 1; d < nprime; ++d) {
      AlgebraicBoundReport rep = algebraic_bound_check(n, d, 50, 17 + d);
      CHECK(rep.bound == doctest::Approx(double(d) / double(nprime)));
      CHECK(rep.ok);
      CHECK(rep.min_u >= rep.bound - 1e-6);
      CHECK(rep.trials == 50);
    }
  }
  CHECK_THROWS_AS(algebraic_bound_check(5, 1, 1, 1), std::out_of_range);
  CHECK_THROWS_AS(algebraic_bound_check(2, 3, 1, 1), std::out_of_range);
}
