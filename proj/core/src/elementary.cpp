#include "qae/elementary.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qae {

bool ElementaryVector::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

Rational ElementaryVector::norm2() const {
  Rational s;
  for (const auto& c : coeffs_) s += c.norm2();
  return s;
}

ElementaryVector operator+(const ElementaryVector& a,
                           const ElementaryVector& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("ElementaryVector: dim mismatch");
  ElementaryVector r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
  return r;
}

ElementaryVector operator*(const GaussianRational& s,
                           const ElementaryVector& v) {
  ElementaryVector r(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) r[i] = s * v[i];
  return r;
}

GaussianRational inner(const ElementaryVector& a, const ElementaryVector& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("ElementaryVector: dim mismatch");
  GaussianRational s;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i].conj() * b[i];
  return s;
}

bool operator==(const ElementaryVector& a, const ElementaryVector& b) {
  return a.coeffs_ == b.coeffs_;
}

ElementaryVector ElementaryVector::tensor(const ElementaryVector& a,
                                          const ElementaryVector& b) {
  ElementaryVector r(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) r[i * b.dim() + j] = a[i] * b[j];
  return r;
}

ElementaryVector ElementaryVector::canonical() const {
  for (const auto& c : coeffs_) {
    if (!c.is_zero()) {
      ElementaryVector r(dim());
      for (std::size_t i = 0; i < dim(); ++i) r[i] = coeffs_[i] / c;
      return r;
    }
  }
  throw std::invalid_argument("canonical: zero vector");
}

std::string ElementaryVector::encode() const {
  std::ostringstream os;
  os << dim() << ";";
  for (std::size_t i = 0; i < dim(); ++i) {
    if (i) os << ",";
    const auto& c = coeffs_[i];
    os << c.re().num() << "/" << c.re().den() << "+" << c.im().num() << "/"
       << c.im().den() << " i";
  }
  return os.str();
}

ElementaryVector ElementaryVector::decode(const std::string& text) {
  std::size_t semi = text.find(';');
  if (semi == std::string::npos)
    throw std::invalid_argument("ElementaryVector::decode: missing ';'");
  std::size_t n = std::stoull(text.substr(0, semi));
  ElementaryVector v(n);
  std::istringstream is(text.substr(semi + 1));
  std::string tok;
  std::size_t i = 0;
  while (std::getline(is, tok, ',')) {
    if (i >= n) throw std::invalid_argument("decode: too many coefficients");
    long long rn, rd, in, id;
    char slash1, plus, slash2, sp, ii;
    std::istringstream ts(tok);
    if (!(ts >> rn >> slash1 >> rd >> plus >> in >> slash2 >> id >>
          std::noskipws >> sp >> ii) ||
        slash1 != '/' || plus != '+' || slash2 != '/' || sp != ' ' || ii != 'i')
      throw std::invalid_argument("decode: malformed coefficient '" + tok + "'");
    v[i++] = GaussianRational{Rational{rn, rd}, Rational{in, id}};
  }
  if (i != n) throw std::invalid_argument("decode: too few coefficients");
  return v;
}

PureState::PureState(std::vector<cplx> amplitudes, bool renormalize)
    : amps_(std::move(amplitudes)) {
  double n2 = 0.0;
  for (const auto& a : amps_) n2 += std::norm(a);
  if (n2 <= 0.0) throw std::invalid_argument("PureState: zero vector");
  if (renormalize) {
    double inv = 1.0 / std::sqrt(n2);
    for (auto& a : amps_) a *= inv;
  } else if (std::abs(n2 - 1.0) > 1e-12 * amps_.size()) {
    throw std::invalid_argument("PureState: not unit norm");
  }
  // phase convention: first nonzero amplitude real positive
  for (const auto& a : amps_) {
    double m = std::abs(a);
    if (m > 1e-12) {
      cplx ph = std::conj(a) / m;
      for (auto& b : amps_) b *= ph;
      break;
    }
  }
}

ComplexMatrix PureState::projector() const {
  ComplexMatrix p(dim());
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j)
      p(i, j) = amps_[i] * std::conj(amps_[j]);
  return p;
}

cplx inner(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("PureState: dim mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

PureState PureState::tensor(const PureState& a, const PureState& b) {
  std::vector<cplx> amps(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) amps[i * b.dim() + j] = a[i] * b[j];
  return PureState(std::move(amps));
}

ElementaryVector basis_state(std::size_t i, std::size_t n) {
  if (i < 1 || i > n) throw std::out_of_range("basis_state: index out of range");
  ElementaryVector v(n);
  v[i - 1] = GaussianRational{1};
  return v;
}

ElementaryVector bitstring_state(const std::string& x) {
  if (x.empty()) throw std::invalid_argument("bitstring_state: empty string");
  std::size_t idx = 0;
  for (char c : x) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("bitstring_state: non-binary character");
    idx = idx * 2 + (c == '1' ? 1 : 0);
  }
  return basis_state(idx + 1, std::size_t{1} << x.size());
}

PureState normalize(const ElementaryVector& v) {
  Rational n2 = v.norm2();
  if (n2.is_zero()) throw std::invalid_argument("normalize: zero vector");
  double inv = 1.0 / std::sqrt(n2.to_double());
  std::vector<cplx> amps(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i)
    amps[i] = cplx{v[i].re().to_double(), v[i].im().to_double()} * inv;
  return PureState(std::move(amps));
}

std::vector<PureState> gram_span(const std::vector<PureState>& vectors,
                                 double tol) {
  if (vectors.empty()) throw std::invalid_argument("gram_span: empty input");
  std::size_t dim = vectors.front().dim();
  std::vector<std::vector<cplx>> basis;
  for (const auto& v : vectors) {
    if (v.dim() != dim) throw std::invalid_argument("gram_span: dim mismatch");
    std::vector<cplx> w = v.amplitudes();
    for (const auto& b : basis) {
      cplx ip = 0.0;
      for (std::size_t i = 0; i < dim; ++i) ip += std::conj(b[i]) * w[i];
      for (std::size_t i = 0; i < dim; ++i) w[i] -= ip * b[i];
    }
    double n2 = 0.0;
    for (const auto& c : w) n2 += std::norm(c);
    double nrm = std::sqrt(n2);
    if (nrm < tol) continue;
    for (auto& c : w) c /= nrm;
    basis.push_back(std::move(w));
  }
  std::vector<PureState> out;
  out.reserve(basis.size());
  for (auto& b : basis) out.emplace_back(std::move(b));
  return out;
}

std::vector<PureState> span_from_psd_approximations(
    const std::vector<HermitianOperator>& sequence, std::size_t target_rank,
    double tol) {
  if (sequence.empty())
    throw std::invalid_argument("span_from_psd_approximations: empty sequence");
  double psd_tol = sequence.front().tol().psd_tol;
  for (std::size_t k = 1; k < sequence.size(); ++k) {
    if (!loewner_leq(sequence[k - 1], sequence[k], psd_tol))
      throw std::invalid_argument(
          "span_from_psd_approximations: sequence not monotone increasing");
  }
  // Increasing sequence: ranges are nested, so the union is swept up by
  // collecting eigenvectors with nonnegligible eigenvalue in order.
  std::vector<PureState> collected;
  for (const auto& rho : sequence) {
    const Eigensystem& es = rho.eig();
    for (std::size_t j = 0; j < rho.dim(); ++j) {
      if (es.values[j] > tol) {
        std::vector<cplx> col(rho.dim());
        for (std::size_t i = 0; i < rho.dim(); ++i) col[i] = es.vectors(i, j);
        collected.emplace_back(std::move(col));
      }
    }
  }
  if (collected.empty()) return {};
  std::vector<PureState> basis = gram_span(collected, tol);
  if (basis.size() > target_rank) basis.resize(target_rank);
  return basis;
}

}  // namespace qae
