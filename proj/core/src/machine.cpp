#include "qae/machine.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qae {

int gamma_code_length(std::uint64_t v) {
  if (v == 0) throw std::invalid_argument("gamma code: v >= 1 required");
  int bits = 0;
  while (v >>= 1) ++bits;
  return 2 * bits + 1;
}

int tensor_overhead_bits(std::size_t n1) {
  return 2 + gamma_code_length(n1);
}

Dyadic Dyadic::parse(const std::string& s) {
  std::size_t caret = s.find("/2^");
  if (caret == std::string::npos) return Dyadic{std::stoll(s), 0};
  return Dyadic{std::stoll(s.substr(0, caret)),
                std::stoi(s.substr(caret + 3))};
}

namespace {

struct Reject {
  RejectReason reason;
};

// Exact inverse of a k x k Gaussian-rational matrix via Gauss-Jordan.
// Returns false (dependent basis) if the matrix is singular.
bool invert_exact(std::vector<std::vector<GaussianRational>>& g,
                  std::vector<std::vector<GaussianRational>>& inv) {
  std::size_t k = g.size();
  inv.assign(k, std::vector<GaussianRational>(k));
  for (std::size_t i = 0; i < k; ++i) inv[i][i] = GaussianRational{1};
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    while (piv < k && g[piv][col].is_zero()) ++piv;
    if (piv == k) return false;
    std::swap(g[piv], g[col]);
    std::swap(inv[piv], inv[col]);
    GaussianRational d = g[col][col];
    for (std::size_t j = 0; j < k; ++j) {
      g[col][j] = g[col][j] / d;
      inv[col][j] = inv[col][j] / d;
    }
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col || g[r][col].is_zero()) continue;
      GaussianRational f = g[r][col];
      for (std::size_t j = 0; j < k; ++j) {
        g[r][j] -= f * g[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return true;
}

bool exactly_independent(const std::vector<ElementaryVector>& basis) {
  std::size_t k = basis.size();
  std::vector<std::vector<GaussianRational>> gram(
      k, std::vector<GaussianRational>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = inner(basis[i], basis[j]);
  std::vector<std::vector<GaussianRational>> unused;
  return invert_exact(gram, unused);
}

struct Parser {
  const std::string& bits;
  std::size_t pos = 0;
  long steps = 0;
  long max_steps;

  int read_bit() {
    if (pos >= bits.size()) throw Reject{RejectReason::underflow};
    return bits[pos++] == '1' ? 1 : 0;
  }

  std::uint64_t read_gamma() {
    int zeros = 0;
    while (read_bit() == 0)
      if (++zeros > 62) throw Reject{RejectReason::ill_formed};
    std::uint64_t v = 1;
    for (int i = 0; i < zeros; ++i) v = (v << 1) | std::uint64_t(read_bit());
    return v;
  }

  std::int64_t read_int() {  // zigzag over gamma
    std::uint64_t zz = read_gamma() - 1;
    return (zz & 1) ? -std::int64_t((zz + 1) / 2) : std::int64_t(zz / 2);
  }

  Rational read_rational() {
    std::int64_t num = read_int();
    std::uint64_t den = read_gamma();
    if (den > std::uint64_t(INT64_MAX)) throw Reject{RejectReason::ill_formed};
    return Rational{num, std::int64_t(den)};
  }

  GaussianRational read_literal() {
    Rational re = read_rational();
    Rational im = read_rational();
    return GaussianRational{re, im};
  }

  MachineOutput parse(std::size_t dim) {
    if (++steps > max_steps) throw Reject{RejectReason::budget};
    int b0 = read_bit();
    int b1 = read_bit();
    if (b0 == 0 && b1 == 0) {  // BASIS
      std::uint64_t i = read_gamma();
      if (i > dim) throw Reject{RejectReason::ill_formed};
      MachineOutput o;
      o.kind = MachineOutput::Kind::state;
      o.target_dim = dim;
      o.state = basis_state(std::size_t(i), dim);
      return o;
    }
    if (b0 == 0 && b1 == 1) {  // TENSOR
      std::uint64_t n1 = read_gamma();
      if (n1 > dim || dim % n1 != 0) throw Reject{RejectReason::ill_formed};
      MachineOutput o1 = parse(std::size_t(n1));
      MachineOutput o2 = parse(dim / std::size_t(n1));
      return combine_tensor(o1, o2, dim);
    }
    if (b0 == 1 && b1 == 0) {  // WSUM
      GaussianRational a = read_literal();
      GaussianRational b = read_literal();
      MachineOutput o1 = parse(dim);
      MachineOutput o2 = parse(dim);
      if (o1.kind != MachineOutput::Kind::state ||
          o2.kind != MachineOutput::Kind::state)
        throw Reject{RejectReason::ill_formed};
      ElementaryVector w = a * o1.state + b * o2.state;
      if (w.is_zero()) throw Reject{RejectReason::ill_formed};
      MachineOutput o;
      o.kind = MachineOutput::Kind::state;
      o.target_dim = dim;
      o.state = std::move(w);
      return o;
    }
    int b2 = read_bit();
    if (b2 == 0) {  // PROJ
      std::uint64_t k = read_gamma();
      if (k > dim) throw Reject{RejectReason::ill_formed};
      std::vector<ElementaryVector> basis;
      basis.reserve(std::size_t(k));
      for (std::uint64_t i = 0; i < k; ++i) {
        MachineOutput oi = parse(dim);
        if (oi.kind != MachineOutput::Kind::state)
          throw Reject{RejectReason::ill_formed};
        basis.push_back(std::move(oi.state));
      }
      if (!exactly_independent(basis)) throw Reject{RejectReason::ill_formed};
      MachineOutput o;
      o.kind = MachineOutput::Kind::projector;
      o.target_dim = dim;
      o.projector_basis = std::move(basis);
      return o;
    }
    return parse(dim);  // PAD
  }

  static MachineOutput combine_tensor(const MachineOutput& a,
                                      const MachineOutput& b,
                                      std::size_t dim) {
    MachineOutput o;
    o.target_dim = dim;
    if (a.kind == MachineOutput::Kind::state &&
        b.kind == MachineOutput::Kind::state) {
      o.kind = MachineOutput::Kind::state;
      o.state = ElementaryVector::tensor(a.state, b.state);
      return o;
    }
    // At least one projector: result projects onto the tensor of the two
    // ranges (a state counts as its own rank-1 range).
    auto basis_of = [](const MachineOutput& m) {
      return m.kind == MachineOutput::Kind::state
                 ? std::vector<ElementaryVector>{m.state}
                 : m.projector_basis;
    };
    o.kind = MachineOutput::Kind::projector;
    for (const auto& va : basis_of(a))
      for (const auto& vb : basis_of(b))
        o.projector_basis.push_back(ElementaryVector::tensor(va, vb));
    if (!exactly_independent(o.projector_basis))
      throw Reject{RejectReason::ill_formed};
    return o;
  }
};

}  // namespace

std::vector<GaussianRational> MachineOutput::exact_projector() const {
  if (kind != Kind::projector)
    throw std::logic_error("exact_projector: output is a state");
  std::size_t n = target_dim;
  std::size_t k = projector_basis.size();
  std::vector<std::vector<GaussianRational>> gram(
      k, std::vector<GaussianRational>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      gram[i][j] = inner(projector_basis[i], projector_basis[j]);
  std::vector<std::vector<GaussianRational>> ginv;
  if (!invert_exact(gram, ginv))
    throw std::logic_error("exact_projector: dependent basis");
  // P = V Ginv V^dagger with V columns the basis vectors.
  std::vector<GaussianRational> p(n * n);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      const GaussianRational& g = ginv[a][b];
      if (g.is_zero()) continue;
      for (std::size_t i = 0; i < n; ++i) {
        if (projector_basis[a][i].is_zero()) continue;
        GaussianRational left = projector_basis[a][i] * g;
        for (std::size_t j = 0; j < n; ++j)
          p[i * n + j] += left * projector_basis[b][j].conj();
      }
    }
  return p;
}

ComplexMatrix MachineOutput::projector_matrix() const {
  std::vector<GaussianRational> p = exact_projector();
  std::size_t n = target_dim;
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = cplx{p[i * n + j].re().to_double(),
                     p[i * n + j].im().to_double()};
  return m;
}

std::string MachineOutput::canonical_key() const {
  if (kind == Kind::state) return "S:" + state.canonical().encode();
  std::vector<GaussianRational> p = exact_projector();
  std::ostringstream os;
  os << "P:" << target_dim << ";";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) os << ",";
    os << p[i].re().str() << "+" << p[i].im().str() << "i";
  }
  return os.str();
}

DecodeResult decode(const std::string& bits, std::size_t n, long max_steps) {
  DecodeResult res;
  Parser parser{bits, 0, 0, max_steps};
  try {
    MachineOutput out = parser.parse(n);
    if (parser.pos != bits.size()) {
      res.reason = RejectReason::overflow;
      return res;
    }
    res.output = std::move(out);
  } catch (const Reject& r) {
    res.reason = r.reason;
  } catch (const arithmetic_overflow&) {
    res.reason = RejectReason::ill_formed;
  }
  return res;
}

EnumerationSnapshot enumerate_programs(std::size_t n, const Budget& budget,
                                       int hard_len_cap) {
  if (budget.max_len < 1 || budget.max_steps < 1)
    throw std::invalid_argument("enumerate: budget must be positive");
  if (budget.max_len > hard_len_cap)
    throw std::length_error("enumerate: budget exceeds hard length cap");

  EnumerationSnapshot snap;
  snap.dim = n;
  snap.budget = budget;
  for (int len = 1; len <= budget.max_len; ++len) {
    std::string bits(std::size_t(len), '0');
    for (std::uint64_t x = 0; x < (std::uint64_t(1) << len); ++x) {
      for (int b = 0; b < len; ++b)
        bits[std::size_t(b)] = (x >> (len - 1 - b)) & 1 ? '1' : '0';
      DecodeResult r = decode(bits, n, budget.max_steps);
      if (!r.accepted()) continue;
      snap.entries.push_back(
          SnapshotEntry{bits, std::move(*r.output), Dyadic::pow2(-len)});
      snap.kraft_mass += Dyadic::pow2(-len);
    }
  }
  if (snap.kraft_mass > Dyadic{1})
    throw std::logic_error("enumerate: Kraft mass exceeds 1");
  return snap;
}

SemimeasureTable semimeasure(const EnumerationSnapshot& snapshot) {
  SemimeasureTable table;
  table.condition_dim = snapshot.dim;
  for (const auto& e : snapshot.entries) {
    std::string key = e.output.canonical_key();
    auto it = table.entries.find(key);
    if (it == table.entries.end()) {
      table.entries.emplace(
          std::move(key),
          SemimeasureEntry{e.output, e.weight, int(e.bits.size())});
    } else {
      it->second.mass += e.weight;
      // entries arrive sorted by length, so k_t is already minimal
    }
    table.total_mass += e.weight;
  }
  return table;
}

void save_snapshot(const EnumerationSnapshot& snapshot,
                   const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("save_snapshot: cannot open " + path);
  f << "qae-snapshot v1\n";
  f << "dim " << snapshot.dim << "\n";
  f << "budget " << snapshot.budget.max_len << " " << snapshot.budget.max_steps
    << "\n";
  f << "kraft " << snapshot.kraft_mass.str() << "\n";
  f << "entries " << snapshot.entries.size() << "\n";
  for (const auto& e : snapshot.entries) {
    f << e.bits << " "
      << (e.output.kind == MachineOutput::Kind::state ? "state" : "projector")
      << " " << e.output.canonical_key() << "\n";
  }
  if (!f) throw std::runtime_error("save_snapshot: write failed");
}

EnumerationSnapshot load_snapshot(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("load_snapshot: cannot open " + path);
  auto fail = [&](int line, const std::string& what) {
    throw std::runtime_error("load_snapshot: " + path + ":" +
                             std::to_string(line) + ": " + what);
  };

  std::string line;
  int lineno = 1;
  if (!std::getline(f, line) || line != "qae-snapshot v1")
    fail(lineno, "bad header");

  EnumerationSnapshot snap;
  ++lineno;
  if (!std::getline(f, line) || line.rfind("dim ", 0) != 0)
    fail(lineno, "missing dim");
  snap.dim = std::stoull(line.substr(4));

  ++lineno;
  if (!std::getline(f, line) || line.rfind("budget ", 0) != 0)
    fail(lineno, "missing budget");
  {
    std::istringstream is(line.substr(7));
    if (!(is >> snap.budget.max_len >> snap.budget.max_steps))
      fail(lineno, "malformed budget");
  }

  ++lineno;
  if (!std::getline(f, line) || line.rfind("kraft ", 0) != 0)
    fail(lineno, "missing kraft");
  Dyadic declared_kraft = Dyadic::parse(line.substr(6));

  ++lineno;
  if (!std::getline(f, line) || line.rfind("entries ", 0) != 0)
    fail(lineno, "missing entry count");
  std::size_t count = std::stoull(line.substr(8));

  for (std::size_t i = 0; i < count; ++i) {
    ++lineno;
    if (!std::getline(f, line)) fail(lineno, "truncated file");
    std::size_t sp1 = line.find(' ');
    std::size_t sp2 = line.find(' ', sp1 + 1);
    if (sp1 == std::string::npos || sp2 == std::string::npos)
      fail(lineno, "malformed entry");
    std::string bits = line.substr(0, sp1);
    std::string kind = line.substr(sp1 + 1, sp2 - sp1 - 1);
    std::string key = line.substr(sp2 + 1);
    DecodeResult r = decode(bits, snap.dim, snap.budget.max_steps);
    if (!r.accepted()) fail(lineno, "program does not decode");
    bool is_proj = r.output->kind == MachineOutput::Kind::projector;
    if (kind != (is_proj ? "projector" : "state"))
      fail(lineno, "kind mismatch");
    if (r.output->canonical_key() != key)
      fail(lineno, "canonical encoding mismatch");
    snap.entries.push_back(SnapshotEntry{std::move(bits), std::move(*r.output),
                                         Dyadic::pow2(-int(sp1))});
    snap.kraft_mass += snap.entries.back().weight;
  }
  if (snap.kraft_mass != declared_kraft)
    fail(lineno, "kraft mass mismatch vs recomputed");
  return snap;
}

}  // namespace qae
