#include "qae/caps.hpp"

#include <cmath>
#include <stdexcept>

#include "qae/elementary.hpp"
#include "qae/universal.hpp"

namespace qae {

namespace {

const double kPi = 3.14159265358979323846264338327950288;
const double kLn2 = 0.69314718055994530941723212145817657;

double simpson(const std::function<double(double)>& f, double a, double b,
               double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double b,
                double fa, double fm, double fb, double whole, double eps,
                int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(f, a, m, fa, flm, fm);
  double right = simpson(f, m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps)
    return left + right + (left + right - whole) / 15.0;
  return adaptive(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
         adaptive(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double eps) {
  if (b <= a) return 0.0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = simpson(f, a, b, fa, fm, fb);
  return adaptive(f, a, b, fa, fm, fb, whole, eps, 48);
}

double exponent_at(double n) {
  return -0.5 * n * n + n * (2.0 * kLn2 + 1.0) - 1.0;
}

}  // namespace

double log_sphere_surface(std::size_t n) {
  // s_n = 2 pi^{n/2} / Gamma(n/2)
  double h = double(n) / 2.0;
  return std::log(2.0) + h * std::log(kPi) - std::lgamma(h);
}

double log_ball_volume(std::size_t n) {
  // b_n = pi^{n/2} / Gamma(n/2 + 1)
  double h = double(n) / 2.0;
  return h * std::log(kPi) - std::lgamma(h + 1.0);
}

double cap_fraction_exact(const CapQuery& q) {
  if (q.n < 2) throw std::invalid_argument("cap_fraction_exact: n >= 2");
  if (q.alpha < 0.0 || q.alpha > kPi)
    throw std::invalid_argument("cap_fraction_exact: alpha in [0, pi]");
  double p = double(q.n) - 2.0;
  double integral = integrate(
      [p](double x) { return std::pow(std::sin(x), p); }, 0.0, q.alpha, 1e-12);
  // s_{n-1}/s_n = Gamma(n/2) / (sqrt(pi) Gamma((n-1)/2))
  double log_ratio = std::lgamma(double(q.n) / 2.0) -
                     std::lgamma((double(q.n) - 1.0) / 2.0) -
                     0.5 * std::log(kPi);
  double f = std::exp(log_ratio) * integral;
  return std::min(std::max(f, 0.0), 1.0);
}

double cap_fraction_bound(const CapQuery& q, const CapConstants& c) {
  double y = kPi / 2.0 - q.alpha;
  if (y <= 0.0 || y > kPi / 2.0)
    throw std::invalid_argument("cap_fraction_bound: need 0 < pi/2 - alpha <= pi/2");
  double n = double(q.n);
  return c.cap_bound_c * std::exp(-n * y * y / 2.0 + std::log(n));
}

McEstimate cap_fraction_montecarlo(const CapQuery& q, std::size_t samples,
                                   std::uint64_t seed) {
  if (samples == 0)
    throw std::invalid_argument("cap_fraction_montecarlo: samples >= 1");
  Rng rng(seed);
  double threshold = std::cos(q.alpha);
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s)
    if (rng.real_sphere(q.n)[0] >= threshold) ++hits;
  McEstimate e;
  e.samples = samples;
  e.estimate = double(hits) / double(samples);
  e.stderr_est =
      std::sqrt(std::max(e.estimate * (1.0 - e.estimate), 1e-12) /
                double(samples));
  return e;
}

double counting_lemma_fraction(const CountingScenario& sc,
                               const CapConstants& c) {
  if (sc.m > 62 || sc.n > 62)
    throw std::invalid_argument("counting_lemma_fraction: scenario too large");
  double caps = sc.n >= sc.m ? std::ldexp(1.0, int(sc.n - sc.m))
                             : std::ldexp(1.0, -int(sc.m - sc.n));
  return c.counting_c *
         std::exp(-caps + double(sc.k) * kLn2 + double(sc.n));
}

McEstimate counting_montecarlo(const CountingScenario& sc, std::size_t samples,
                               std::uint64_t seed) {
  if (sc.n > 6 || sc.k > 12)
    throw std::invalid_argument("counting_montecarlo: beyond the toy cap");
  std::size_t dim = std::size_t(1) << sc.n;
  std::size_t fixed = std::size_t(1) << sc.k;
  double threshold = std::ldexp(1.0, -int(sc.m));

  Rng rng(seed);
  std::vector<std::vector<cplx>> outputs(fixed);
  for (auto& v : outputs) v = rng.haar_state(dim);

  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<cplx> psi = rng.haar_state(dim);
    for (const auto& phi : outputs) {
      cplx ip = 0.0;
      for (std::size_t i = 0; i < dim; ++i) ip += std::conj(phi[i]) * psi[i];
      if (std::norm(ip) >= threshold) {
        ++hits;
        break;
      }
    }
  }
  McEstimate e;
  e.samples = samples;
  e.estimate = double(hits) / double(samples);
  e.stderr_est =
      std::sqrt(std::max(e.estimate * (1.0 - e.estimate), 1e-12) /
                double(samples));
  return e;
}

KqScenarioReport kq_lowerbound_scenario(std::size_t qubits,
                                        const EnumerationSnapshot& snapshot,
                                        std::size_t samples,
                                        std::uint64_t seed) {
  if (qubits < 1 || qubits > 6)
    throw std::invalid_argument("kq_lowerbound_scenario: 1 <= qubits <= 6");
  std::size_t dim = std::size_t(1) << qubits;
  if (snapshot.dim != dim)
    throw std::invalid_argument("kq_lowerbound_scenario: snapshot dim != 2^n");

  KqScenarioReport rep;
  rep.qubits = qubits;
  rep.dim = dim;
  rep.samples = samples;

  std::vector<PureState> shorts;
  for (const auto& e : snapshot.entries) {
    if (e.output.kind != MachineOutput::Kind::state) continue;
    if (e.bits.size() >= qubits) continue;
    shorts.push_back(normalize(e.output.state));
  }
  std::vector<PureState> span;
  if (!shorts.empty()) span = gram_span(shorts, 1e-10);
  rep.short_outputs = span.size();
  rep.v_dim = dim - span.size();
  rep.degenerate = rep.v_dim == 0;

  rep.exponent = exponent_at(double(qubits));
  std::size_t n0 = 1;
  while (exponent_at(double(n0)) >= 0.0 && n0 < 1000) ++n0;
  rep.exponent_negative_from = n0;

  if (rep.degenerate) return rep;

  Rng rng(seed);
  double min_kq = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<cplx> v;
    double n2 = 0.0;
    do {
      v = rng.haar_state(dim);
      for (const auto& b : span) {
        cplx ip = 0.0;
        for (std::size_t i = 0; i < dim; ++i) ip += std::conj(b[i]) * v[i];
        for (std::size_t i = 0; i < dim; ++i) v[i] -= ip * b[i];
      }
      n2 = 0.0;
      for (const auto& z : v) n2 += std::norm(z);
    } while (n2 < 1e-12);
    min_kq = std::min(min_kq, kq_t(snapshot, PureState(std::move(v))));
  }
  rep.min_kq = min_kq;
  rep.ok = min_kq >= double(qubits) - 1.0 - 1e-9;
  return rep;
}

}  // namespace qae
