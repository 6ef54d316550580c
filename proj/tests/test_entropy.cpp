#include <doctest.h>

#include <cmath>
#include <limits>

#include "qae/entropy.hpp"
#include "qae/rng.hpp"

using namespace qae;

namespace {

DensityMatrix diag_density(std::vector<double> d) {
  return DensityMatrix(HermitianOperator(ComplexMatrix::diagonal(d)));
}

DensityMatrix random_density(Rng& rng, std::size_t n) {
  ComplexMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.complex_normal();
  ComplexMatrix h = a * a.adjoint();
  double tr = h.trace().real();
  return DensityMatrix(HermitianOperator(cplx{1.0 / tr, 0.0} * h));
}

}  // namespace

TEST_CASE("density matrix validation") {
  CHECK_THROWS_AS(diag_density({0.7, 0.7}), std::invalid_argument);
  CHECK_THROWS_AS(diag_density({1.5, -0.5}), std::invalid_argument);
  // semi-densities allow trace < 1 but never > 1
  DensityMatrix semi(HermitianOperator(ComplexMatrix::diagonal({0.3, 0.2})),
                     true);
  CHECK(semi.semi());
  CHECK_THROWS_AS(DensityMatrix(HermitianOperator(
                      ComplexMatrix::diagonal({0.7, 0.7})), true),
                  std::invalid_argument);
}

TEST_CASE("von Neumann entropy on known spectra") {
  CHECK(von_neumann_entropy(diag_density({1.0, 0.0})) == 0.0);
  CHECK(von_neumann_entropy(diag_density({0.5, 0.5})) ==
        doctest::Approx(1.0).epsilon(1e-12));
  double expect = -0.25 * std::log2(0.25) - 0.75 * std::log2(0.75);
  CHECK(von_neumann_entropy(diag_density({0.25, 0.75})) ==
        doctest::Approx(expect).epsilon(1e-12));
  CHECK(von_neumann_entropy(diag_density({0.25, 0.25, 0.25, 0.25})) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("relative entropy: known value, positivity, support rule") {
  DensityMatrix rho = diag_density({0.5, 0.5});
  DensityMatrix sigma = diag_density({0.25, 0.75});
  double expect = 0.5 * std::log2(0.5 / 0.25) + 0.5 * std::log2(0.5 / 0.75);
  CHECK(relative_entropy(rho, sigma) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(relative_entropy(rho, rho) == doctest::Approx(0.0).epsilon(1e-12));

  // rho supported on the kernel of sigma diverges
  CHECK(relative_entropy(diag_density({1.0, 0.0}), diag_density({0.0, 1.0})) ==
        std::numeric_limits<double>::infinity());

  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    DensityMatrix a = random_density(rng, 3);
    DensityMatrix b = random_density(rng, 3);
    CHECK(relative_entropy(a, b) >= -1e-9);
  }
}

TEST_CASE("entropy / average-complexity sandwich for enumerated outputs") {
  EnumerationSnapshot snap = enumerate_programs(2, Budget{12, 1000});
  UniversalApprox ua = build_mu(snap, Dyadic::pow2(-10));
  int tested = 0;
  for (const auto& [key, entry] : ua.table.entries) {
    if (entry.representative.kind != MachineOutput::Kind::state) continue;
    PureState psi = normalize(entry.representative.state);
    DensityMatrix rho(HermitianOperator(psi.projector(), ua.mu.tol()));
    SandwichReport rep = entropy_complexity_sandwich(ua, rho, entry.mass);
    CHECK(rep.ok);
    CHECK(rep.entropy == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(rep.c_right == doctest::Approx(-std::log2(entry.mass.to_double()))
                             .epsilon(1e-12));
    ++tested;
  }
  CHECK(tested >= 2);

  // an undominated weight is refused up front
  PureState e1 = normalize(basis_state(1, 2));
  DensityMatrix rho(HermitianOperator(e1.projector(), ua.mu.tol()));
  CHECK_THROWS_AS(entropy_complexity_sandwich(ua, rho, Dyadic{1}),
                  std::invalid_argument);
}

TEST_CASE("small-subspace bounds through an enumerated projector") {
  EnumerationSnapshot snap = enumerate_programs(2, Budget{12, 1000});
  UniversalApprox ua = build_mu(snap, Dyadic::pow2(-10));
  // PROJ(1, e1) is the 7-bit program 110 1 001
  MachineOutput proj = decode("1101001", 2).output.value();
  std::string key = proj.canonical_key();
  REQUIRE(ua.table.entries.count(key) == 1);
  CHECK(ua.table.entries.at(key).k_t == 7);

  PureState e1 = normalize(basis_state(1, 2));
  SmallSubspaceBounds in = small_subspace_upper_bounds(ua, key, e1);
  CHECK(in.h_lower_bound == doctest::Approx(7.0).epsilon(1e-12));  // q = 1
  CHECK(in.ok_lower);
  CHECK(in.ok_upper);

  PureState e2 = normalize(basis_state(2, 2));
  SmallSubspaceBounds out = small_subspace_upper_bounds(ua, key, e2);
  CHECK(out.h_lower_bound == std::numeric_limits<double>::infinity());
  CHECK(out.h_upper_bound == doctest::Approx(8.0).epsilon(1e-12));  // q = 0
  CHECK(out.ok_lower);
  CHECK(out.ok_upper);

  CHECK_THROWS_AS(small_subspace_upper_bounds(ua, "S:not-a-projector", e1),
                  std::invalid_argument);
}

TEST_CASE("subadditivity at the grammar constant") {
  Budget side{8, 1000};
  Budget joint{21, 2001};
  EnumerationSnapshot sx = enumerate_programs(2, side);
  EnumerationSnapshot sy = enumerate_programs(2, side);
  EnumerationSnapshot sxy = enumerate_programs(4, joint);
  Dyadic eps = Dyadic::pow2(-10);
  UniversalApprox ux = build_mu(sx, eps);
  UniversalApprox uy = build_mu(sy, eps);
  UniversalApprox uxy = build_mu(sxy, eps);

  PureState phi = normalize(basis_state(1, 2));
  PureState psi = normalize(basis_state(1, 2) + basis_state(2, 2));
  ProductCheckReport rep =
      subadditivity_check(ux, uy, uxy, sx, sy, sxy, phi, psi, 1e-9);
  CHECK(rep.domination_constant ==
        doctest::Approx(32.0 + 4.0 + eps.to_double()).epsilon(1e-12));
  CHECK(rep.operator_ok);
  CHECK(rep.scalar_ok);

  // precondition: the joint budget must fit tensor counterparts
  EnumerationSnapshot small = enumerate_programs(4, Budget{12, 2001});
  UniversalApprox usmall = build_mu(small, eps);
  CHECK_THROWS_AS(
      subadditivity_check(ux, uy, usmall, sx, sy, small, phi, psi, 1e-9),
      std::invalid_argument);
}

TEST_CASE("monotonicity under partial trace") {
  Budget side{8, 1000};
  EnumerationSnapshot sx = enumerate_programs(2, side);
  EnumerationSnapshot sxy = enumerate_programs(4, Budget{21, 2001});
  Dyadic eps = Dyadic::pow2(-10);
  UniversalApprox ux = build_mu(sx, eps);
  UniversalApprox uy = build_mu(sx, eps);  // Y side identical to X here
  UniversalApprox uxy = build_mu(sxy, eps);

  PureState phi = normalize(basis_state(1, 2) + basis_state(2, 2));
  PureState psi = normalize(basis_state(1, 2));
  std::string psi_key = "S:" + basis_state(1, 2).canonical().encode();
  MonotonicityReport rep = monotonicity_check(ux, uxy, sx, sxy, phi, psi,
                                              psi_key, uy, 1e-9);
  CHECK(rep.trace_constant ==
        doctest::Approx(eps.to_double() / 2.0).epsilon(1e-12));
  CHECK(rep.trace_ok);
  CHECK(rep.witness_constant ==
        doctest::Approx(std::ldexp(1.0, 5 + 3) + 2.0).epsilon(1e-12));
  CHECK(rep.witness_ok);
  CHECK(rep.scalar_ok);

  CHECK_THROWS_AS(monotonicity_check(ux, uxy, sx, sxy, phi, psi,
                                     "S:unknown", uy, 1e-9),
                  std::invalid_argument);
}

TEST_CASE("high-fidelity mixtures pin their top eigenvector") {
  Rng rng(13);
  for (int t = 0; t < 20; ++t) {
    PureState psi(rng.haar_state(3));
    double eps = 0.05;
    ComplexMatrix m = (1.0 - eps) * psi.projector();
    for (std::size_t i = 0; i < 3; ++i) m(i, i) += eps / 3.0;
    DensityMatrix rho{HermitianOperator(m)};
    ApproximationLemmaResult r = approximation_lemma_check(rho, psi, eps);
    CHECK(r.p1 >= 1.0 - eps - 1e-12);
    CHECK(r.overlap >= 1.0 - 2.0 * eps - 1e-12);
  }
  // the hypothesis is enforced
  DensityMatrix mixed = diag_density({0.5, 0.3, 0.2});
  CHECK_THROWS_AS(
      approximation_lemma_check(mixed, normalize(basis_state(1, 3)), 0.05),
      std::invalid_argument);
}
