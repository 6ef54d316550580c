#include "qae/cloning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "qae/entropy.hpp"

namespace qae {

namespace {

std::size_t pow_checked(std::size_t n, std::size_t m, std::size_t cap) {
  std::size_t d = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (d > cap / n) throw std::invalid_argument("total dimension exceeds cap");
    d *= n;
  }
  return d;
}

std::vector<std::size_t> digits_of(std::size_t r, std::size_t n,
                                   std::size_t m) {
  std::vector<std::size_t> d(m);
  for (std::size_t j = m; j-- > 0;) {
    d[j] = r % n;
    r /= n;
  }
  return d;
}

PureState fold_state(const PureState& psi, std::size_t m) {
  PureState out = psi;
  for (std::size_t i = 1; i < m; ++i) out = PureState::tensor(out, psi);
  return out;
}

cplx quadratic(const ComplexMatrix& m, const std::vector<cplx>& phi) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      s += phi[i] * m(i, j) * phi[j];
  return s;
}

std::vector<cplx> top_eigvec(const HermitianOperator& h) {
  const Eigensystem& es = h.eig();
  std::vector<cplx> v(h.dim());
  for (std::size_t i = 0; i < h.dim(); ++i) v[i] = es.vectors(i, 0);
  return v;
}

ComplexMatrix random_symmetric(std::size_t n, Rng& rng, double scale = 1.0) {
  ComplexMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      cplx z = scale * rng.complex_normal();
      a(i, j) = z;
      a(j, i) = z;
    }
  return a;
}

double hs_norm2(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) s += std::norm(a(i, j));
  return s;
}

}  // namespace

double binom(unsigned a, unsigned b) {
  if (b > a) return 0.0;
  double r = 1.0;
  for (unsigned i = 1; i <= b; ++i) r = r * double(a - b + i) / double(i);
  return std::round(r);
}

SymmetricSubspace symmetric_projector(std::size_t n, std::size_t m,
                                      std::size_t total_cap) {
  if (n < 1 || m < 1) throw std::invalid_argument("symmetric_projector: n, m >= 1");
  std::size_t total = pow_checked(n, m, total_cap);

  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  double fact = 1.0;
  for (std::size_t i = 2; i <= m; ++i) fact *= double(i);
  double w = 1.0 / fact;

  ComplexMatrix p(total);
  for (std::size_t r = 0; r < total; ++r) {
    std::vector<std::size_t> d = digits_of(r, n, m);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::size_t rp = 0;
      for (std::size_t j = 0; j < m; ++j) rp = rp * n + d[perm[j]];
      p(rp, r) += w;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  SymmetricSubspace s;
  s.base_dim = n;
  s.fold = m;
  s.dim = std::size_t(binom(unsigned(m + n - 1), unsigned(m)));
  s.projector = HermitianOperator(std::move(p), Tolerances{});

  const ComplexMatrix& pm = s.projector.matrix();
  if ((pm * pm - pm).max_abs() > 1e-9)
    throw std::logic_error("symmetric_projector: not idempotent");
  if (std::abs(s.projector.trace_real() - double(s.dim)) > 1e-8)
    throw std::logic_error("symmetric_projector: trace != dim");
  return s;
}

TwirlResult twirl_average(std::size_t n, std::size_t m, std::size_t samples,
                          std::uint64_t seed, std::size_t total_cap) {
  if (samples == 0) throw std::invalid_argument("twirl_average: samples >= 1");
  std::size_t total = pow_checked(n, m, total_cap);
  Rng rng(seed);

  ComplexMatrix sum(total);
  std::vector<double> sumsq(total * total, 0.0);
  for (std::size_t s = 0; s < samples; ++s) {
    PureState psi(rng.haar_state(n));
    PureState folded = fold_state(psi, m);
    for (std::size_t i = 0; i < total; ++i)
      for (std::size_t j = 0; j < total; ++j) {
        cplx z = folded[i] * std::conj(folded[j]);
        sum(i, j) += z;
        sumsq[i * total + j] += std::norm(z);
      }
  }

  double inv = 1.0 / double(samples);
  ComplexMatrix mean(total);
  double worst = 0.0;
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < total; ++j) {
      mean(i, j) = inv * sum(i, j);
      double var = std::max(
          sumsq[i * total + j] * inv - std::norm(mean(i, j)), 0.0);
      worst = std::max(worst, std::sqrt(var * inv));
    }

  TwirlResult r;
  r.average = HermitianOperator(std::move(mean), Tolerances{});
  r.stderr_max = worst;
  r.samples = samples;
  return r;
}

std::vector<ElementaryVector> symmetric_spanning_set(std::size_t n,
                                                     std::size_t m) {
  std::size_t total = pow_checked(n, m, 4096);
  std::map<std::vector<std::size_t>, ElementaryVector> groups;
  for (std::size_t r = 0; r < total; ++r) {
    std::vector<std::size_t> key = digits_of(r, n, m);
    std::sort(key.begin(), key.end());
    auto [it, fresh] = groups.try_emplace(key, ElementaryVector(total));
    it->second[r] = GaussianRational{1};
  }
  std::vector<ElementaryVector> out;
  out.reserve(groups.size());
  for (auto& [key, v] : groups) out.push_back(std::move(v));
  return out;
}

InjectedWitness symmetric_witness(std::size_t n, std::size_t m,
                                  int nominal_length) {
  InjectedWitness w;
  w.output.kind = MachineOutput::Kind::projector;
  w.output.target_dim = pow_checked(n, m, 4096);
  w.output.projector_basis = symmetric_spanning_set(n, m);
  w.mass = Dyadic::pow2(-nominal_length);
  w.nominal_length = nominal_length;
  return w;
}

CloningReport cloning_bounds(const UniversalApprox& ua, std::size_t n,
                             std::size_t m, const std::string& projector_key,
                             std::size_t samples, std::uint64_t seed) {
  auto it = ua.table.entries.find(projector_key);
  if (it == ua.table.entries.end() ||
      it->second.representative.kind != MachineOutput::Kind::projector)
    throw std::invalid_argument(
        "cloning_bounds: symmetric projector missing from the table");
  std::size_t total = pow_checked(n, m, ua.dim);
  if (total != ua.dim)
    throw std::invalid_argument("cloning_bounds: dim != N^m");

  CloningReport rep;
  rep.log_dim = std::log2(binom(unsigned(m + n - 1), unsigned(m)));
  rep.k_t = it->second.k_t;
  rep.samples = samples;

  Rng rng(seed);
  double mean = 0.0, m2 = 0.0;
  double worst_slack = std::numeric_limits<double>::infinity();
  bool upper_ok = true;
  for (std::size_t s = 0; s < samples; ++s) {
    PureState folded = fold_state(PureState(rng.haar_state(n)), m);
    SmallSubspaceBounds b =
        small_subspace_upper_bounds(ua, projector_key, folded);
    upper_ok = upper_ok && b.ok_upper;
    double slack =
        b.h_upper_bound + b.c_upper - h_upper(ua, folded);
    worst_slack = std::min(worst_slack, slack);

    double q = ua.mu.quadratic_form(folded.amplitudes());
    double delta = q - mean;
    mean += delta / double(s + 1);
    m2 += delta * (q - mean);
  }
  rep.upper_ok = upper_ok;
  rep.upper_worst_slack = worst_slack;
  rep.lower_mean = mean;
  rep.lower_stderr =
      samples > 1 ? std::sqrt(m2 / double(samples - 1) / double(samples)) : 0.0;

  // Haar mean of <psi^m|mu|psi^m> is exactly Tr(mu P_S)/dim <= 1/dim, so the
  // averaged h_lower cannot undercut log2 dim.
  ComplexMatrix p = it->second.representative.projector_matrix();
  double exact_mean = (ua.mu.matrix() * p).trace().real() /
                      double(it->second.representative.projector_rank());
  rep.lower_ok = mean <= exact_mean + 3.0 * rep.lower_stderr + 1e-12;
  return rep;
}

UnevennessResult unevenness(const ComplexMatrix& a, double herm_tol) {
  if ((a - a.transpose()).max_abs() > herm_tol)
    throw std::invalid_argument("unevenness: matrix not symmetric");
  double tr = hs_norm2(a);
  if (tr <= 0.0) throw std::invalid_argument("unevenness: zero matrix");
  HermitianOperator h(a.adjoint() * a, Tolerances{});
  return UnevennessResult{h.max_eigenvalue() / tr};
}

OverlapSupReport overlap_sup_check(const ComplexMatrix& a, std::size_t samples,
                                   std::uint64_t seed) {
  std::size_t n = a.dim();
  double scale = 1.0 / std::sqrt(hs_norm2(a));
  ComplexMatrix m = (cplx{scale, 0.0} * a).conjugate();

  OverlapSupReport rep;
  rep.u = unevenness(a).u;

  // factorization witness: conjugate of the top eigenvector of M M^dagger;
  // for a degenerate top singular value, break the tie with a tiny symmetric
  // perturbation first.
  auto witness_of = [&](const ComplexMatrix& mm) {
    HermitianOperator h(mm * mm.adjoint(), Tolerances{});
    std::vector<cplx> v = top_eigvec(h);
    for (auto& z : v) z = std::conj(z);
    return std::norm(quadratic(mm, v));
  };
  rep.witness_value = witness_of(m);
  Rng rng(seed);
  if (std::abs(rep.witness_value - rep.u) > 1e-8) {
    ComplexMatrix pert = m + random_symmetric(n, rng, 1e-10);
    rep.witness_value = witness_of(pert);
  }

  double best = rep.witness_value;
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<cplx> phi = rng.haar_state(n);
    for (int it = 0; it < 60; ++it) {
      std::vector<cplx> next = m.apply(phi);
      double n2 = 0.0;
      for (auto& z : next) {
        z = std::conj(z);
        n2 += std::norm(z);
      }
      if (n2 < 1e-30) break;
      double inv = 1.0 / std::sqrt(n2);
      for (auto& z : next) z *= inv;
      phi = std::move(next);
    }
    best = std::max(best, std::norm(quadratic(m, phi)));
  }
  rep.search_max = best;
  rep.ok = rep.search_max <= rep.u + 1e-9 &&
           rep.search_max >= rep.u - 1e-6 &&
           std::abs(rep.witness_value - rep.u) <= 1e-8;
  return rep;
}

AlgebraicBoundReport algebraic_bound_check(std::size_t n, std::size_t d,
                                           std::size_t trials,
                                           std::uint64_t seed) {
  std::size_t nprime = n * (n + 1) / 2;
  if (d < 1 || d >= nprime)
    throw std::out_of_range("algebraic_bound_check: need 0 < d < N(N+1)/2");
  if (n > 4)
    throw std::out_of_range("algebraic_bound_check: brute-force regime n <= 4");

  AlgebraicBoundReport rep;
  rep.bound = double(d) / double(nprime);
  rep.trials = trials;
  rep.min_u = 1.0;
  rep.ok = true;
  Rng rng(seed);

  for (std::size_t t = 0; t < trials; ++t) {
    // orthonormal (Hilbert-Schmidt) basis of a random d-dim symmetric subspace
    std::vector<ComplexMatrix> basis;
    while (basis.size() < d) {
      ComplexMatrix b = random_symmetric(n, rng);
      for (const auto& prev : basis) {
        cplx ip = (prev.adjoint() * b).trace();
        b = b - ip * prev;
      }
      double n2 = hs_norm2(b);
      if (n2 < 1e-12) continue;
      basis.push_back(cplx{1.0 / std::sqrt(n2), 0.0} * b);
    }

    double u_f = 0.0;
    for (int restart = 0; restart < 32; ++restart) {
      std::vector<cplx> c = rng.haar_state(d);
      double val = 0.0;
      for (int it = 0; it < 40; ++it) {
        ComplexMatrix a(n);
        for (std::size_t j = 0; j < d; ++j) a = a + c[j] * basis[j];
        HermitianOperator ata(a.adjoint() * a, Tolerances{});
        std::vector<cplx> x = top_eigvec(ata);
        double new_val = ata.max_eigenvalue();

        ComplexMatrix k(d);
        std::vector<std::vector<cplx>> bx(d);
        for (std::size_t j = 0; j < d; ++j) bx[j] = basis[j].apply(x);
        for (std::size_t j = 0; j < d; ++j)
          for (std::size_t l = 0; l < d; ++l) {
            cplx ip = 0.0;
            for (std::size_t i = 0; i < n; ++i)
              ip += std::conj(bx[j][i]) * bx[l][i];
            k(j, l) = ip;
          }
        HermitianOperator kh(std::move(k), Tolerances{});
        c = top_eigvec(kh);
        double cval = kh.max_eigenvalue();
        if (cval - new_val < 1e-12 && new_val - val < 1e-12) {
          val = std::max(cval, new_val);
          break;
        }
        val = std::max(cval, new_val);
      }
      u_f = std::max(u_f, val);
    }
    rep.min_u = std::min(rep.min_u, u_f);
    if (u_f < rep.bound - 1e-6) rep.ok = false;
  }
  return rep;
}

}  // namespace qae
