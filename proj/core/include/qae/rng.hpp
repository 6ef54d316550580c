#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace qae {

// Deterministic random source: mt19937_64 plus hand-rolled transforms, so a
// (seed, sequence) pair reproduces bit-identically across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {  // [0, 1)
    return double(gen_() >> 11) * 0x1.0p-53;
  }

  double normal() {  // Box-Muller, cached pair
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1, u2;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  std::complex<double> complex_normal() { return {normal(), normal()}; }

  // Haar-uniform unit vector in C^n (normalized complex Gaussian).
  std::vector<std::complex<double>> haar_state(std::size_t n) {
    std::vector<std::complex<double>> v(n);
    double n2 = 0.0;
    do {
      n2 = 0.0;
      for (auto& c : v) {
        c = complex_normal();
        n2 += std::norm(c);
      }
    } while (n2 <= 0.0);
    double inv = 1.0 / std::sqrt(n2);
    for (auto& c : v) c *= inv;
    return v;
  }

  // Uniform unit vector on the real (n-1)-sphere.
  std::vector<double> real_sphere(std::size_t n) {
    std::vector<double> v(n);
    double n2 = 0.0;
    do {
      n2 = 0.0;
      for (auto& x : v) {
        x = normal();
        n2 += x * x;
      }
    } while (n2 <= 0.0);
    double inv = 1.0 / std::sqrt(n2);
    for (auto& x : v) x *= inv;
    return v;
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace qae
