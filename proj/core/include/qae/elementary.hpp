#pragma once

#include <string>
#include <vector>

#include "qae/hermitian.hpp"
#include "qae/rational.hpp"

namespace qae {

// Unnormalized exact vector with Gaussian-rational coefficients. The exact
// layer never normalizes (sqrt(norm2) is irrational in general); conversion
// to floating amplitudes happens once, in normalize().
class ElementaryVector {
 public:
  ElementaryVector() = default;
  explicit ElementaryVector(std::size_t dim)
      : coeffs_(dim, GaussianRational{}) {}
  explicit ElementaryVector(std::vector<GaussianRational> coeffs)
      : coeffs_(std::move(coeffs)) {}

  std::size_t dim() const { return coeffs_.size(); }
  const GaussianRational& operator[](std::size_t i) const { return coeffs_[i]; }
  GaussianRational& operator[](std::size_t i) { return coeffs_[i]; }
  const std::vector<GaussianRational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  Rational norm2() const;  // sum |c_i|^2, exact

  friend ElementaryVector operator+(const ElementaryVector& a,
                                    const ElementaryVector& b);
  friend ElementaryVector operator*(const GaussianRational& s,
                                    const ElementaryVector& v);
  // Exact inner product <a|b> (conjugate-linear in a).
  friend GaussianRational inner(const ElementaryVector& a,
                                const ElementaryVector& b);
  friend bool operator==(const ElementaryVector& a, const ElementaryVector& b);

  // Tensor product, index convention i_a * dim(b) + i_b.
  static ElementaryVector tensor(const ElementaryVector& a,
                                 const ElementaryVector& b);

  // Representative of the nonzero-scalar-multiple class: coefficients divided
  // by the first nonzero one (which becomes exactly 1).
  ElementaryVector canonical() const;

  // Canonical text encoding "N;re_num/re_den+im_num/im_den i,...".
  std::string encode() const;
  static ElementaryVector decode(const std::string& text);

 private:
  std::vector<GaussianRational> coeffs_;
};

// Floating unit vector with first-nonzero-real-positive phase convention.
class PureState {
 public:
  PureState() = default;
  explicit PureState(std::vector<cplx> amplitudes, bool renormalize = true);

  std::size_t dim() const { return amps_.size(); }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }

  ComplexMatrix projector() const;

  friend cplx inner(const PureState& a, const PureState& b);
  static PureState tensor(const PureState& a, const PureState& b);

 private:
  std::vector<cplx> amps_;
};

// Canonical basis vector e_i (1-based), dim N.
ElementaryVector basis_state(std::size_t i, std::size_t n);

// |x> = tensor of qubit basis states; index 1 + binary value of x in dim 2^n.
ElementaryVector bitstring_state(const std::string& x);

// Exact-to-float boundary; throws on the zero vector.
PureState normalize(const ElementaryVector& v);

// Modified Gram-Schmidt; inputs with residual norm below tol are dropped.
std::vector<PureState> gram_span(const std::vector<PureState>& vectors,
                                 double tol);

// Orthonormal basis of the union of column spaces of an increasing PSD
// sequence (the range of the last element, assembled incrementally the way
// the weak-to-strong enumeration argument does), truncated to target_rank.
std::vector<PureState> span_from_psd_approximations(
    const std::vector<HermitianOperator>& sequence, std::size_t target_rank,
    double tol);

}  // namespace qae
