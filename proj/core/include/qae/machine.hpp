#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qae/elementary.hpp"
#include "qae/rational.hpp"

namespace qae {

// Output of the constructor machine: an elementary state or a projector
// given by an exactly linearly independent basis.
struct MachineOutput {
  enum class Kind { state, projector };

  Kind kind = Kind::state;
  std::size_t target_dim = 0;
  ElementaryVector state;                          // kind == state
  std::vector<ElementaryVector> projector_basis;   // kind == projector

  std::size_t projector_rank() const { return projector_basis.size(); }

  // Exact projector matrix V (V^dagger V)^-1 V^dagger, row-major.
  std::vector<GaussianRational> exact_projector() const;
  ComplexMatrix projector_matrix() const;

  // Key identifying the output up to exact scalar multiples (states) or
  // basis choice (projectors); outputs with equal keys merge in m_t.
  std::string canonical_key() const;
};

enum class RejectReason {
  underflow,   // bits exhausted mid-instruction
  overflow,    // trailing bits after a complete program
  ill_formed,  // zero vector, dependent projector basis, bad index, overflow
  budget,      // instruction budget T exhausted
};

struct DecodeResult {
  std::optional<MachineOutput> output;
  RejectReason reason = RejectReason::ill_formed;
  bool accepted() const { return output.has_value(); }
};

// Budget for the dovetailed enumeration: max program length and max decoded
// instructions per program.
struct Budget {
  int max_len = 12;
  long max_steps = 100000;
};

inline constexpr int kDefaultHardLenCap = 24;

struct SnapshotEntry {
  std::string bits;
  MachineOutput output;
  Dyadic weight;  // 2^-l(bits), exact
};

struct EnumerationSnapshot {
  std::size_t dim = 0;
  Budget budget;
  std::vector<SnapshotEntry> entries;  // sorted by (l(p), p)
  Dyadic kraft_mass;                   // exact sum of weights, <= 1
};

struct SemimeasureEntry {
  MachineOutput representative;
  Dyadic mass;  // m_t, exact sum over programs
  int k_t = 0;  // shortest program length
};

struct SemimeasureTable {
  std::size_t condition_dim = 0;
  std::map<std::string, SemimeasureEntry> entries;  // canonical key -> entry
  Dyadic total_mass;
};

// The prefix-free constructor machine U(p, N). Grammar over opcodes:
//   00  BASIS(i)            i in Elias-gamma code, output e_i
//   01  TENSOR(N1,p1,p2)    N1 in gamma code dividing N; combines outputs
//   10  WSUM(a,b,p1,p2)     Gaussian-rational literals; a*v1 + b*v2
//   110 PROJ(k,p1..pk)      projector from k exactly independent states
//   111 PAD(p)              identity wrapper
// Prefix-freeness holds by construction: a program is accepted only if it
// consumes exactly its own bits.
DecodeResult decode(const std::string& bits, std::size_t n,
                    long max_steps = 1000000);

// Dovetailed enumeration of all programs of length <= L at step budget T,
// in lexicographic-by-length order. Deterministic; kraft_mass exact.
EnumerationSnapshot enumerate_programs(std::size_t n, const Budget& budget,
                                       int hard_len_cap = kDefaultHardLenCap);

// Collapse a snapshot to the semimeasure m_t and shortest lengths K_t.
SemimeasureTable semimeasure(const EnumerationSnapshot& snapshot);

// Line-oriented snapshot persistence; reload re-decodes every program and
// recomputes the Kraft mass, failing on any mismatch.
void save_snapshot(const EnumerationSnapshot& snapshot, const std::string& path);
EnumerationSnapshot load_snapshot(const std::string& path);

// Length of the Elias-gamma code of v >= 1 (2*floor(log2 v) + 1 bits).
int gamma_code_length(std::uint64_t v);

// Bit cost of the TENSOR wrapper at factor split n1 | n: opcode plus the
// gamma code of n1. The subadditivity domination constant comes from this.
int tensor_overhead_bits(std::size_t n1);

}  // namespace qae
