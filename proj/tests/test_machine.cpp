#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "qae/machine.hpp"

using namespace qae;

namespace {

bool is_prefix(const std::string& a, const std::string& b) {
  return a.size() < b.size() && b.compare(0, a.size(), a) == 0;
}

}  // namespace

TEST_CASE("gamma code lengths") {
  CHECK(gamma_code_length(1) == 1);
  CHECK(gamma_code_length(2) == 3);
  CHECK(gamma_code_length(3) == 3);
  CHECK(gamma_code_length(4) == 5);
  CHECK(gamma_code_length(255) == 15);
  CHECK_THROWS_AS(gamma_code_length(0), std::invalid_argument);
  CHECK(tensor_overhead_bits(2) == 5);
  CHECK(tensor_overhead_bits(1) == 3);
}

TEST_CASE("decoding hand-assembled programs") {
  // BASIS: opcode 00, index in gamma code
  DecodeResult e1 = decode("001", 2);
  REQUIRE(e1.accepted());
  CHECK(e1.output->kind == MachineOutput::Kind::state);
  CHECK(e1.output->state == basis_state(1, 2));

  DecodeResult e2 = decode("00010", 2);
  REQUIRE(e2.accepted());
  CHECK(e2.output->state == basis_state(2, 2));

  // PAD wraps any program: opcode 111
  DecodeResult pad = decode("111001", 2);
  REQUIRE(pad.accepted());
  CHECK(pad.output->state == basis_state(1, 2));
  CHECK(pad.output->canonical_key() == e1.output->canonical_key());

  // TENSOR at dim 4 with split 2|4: 01, gamma(2), e1, e1
  DecodeResult t = decode("01010001001", 4);
  REQUIRE(t.accepted());
  CHECK(t.output->state == basis_state(1, 4));

  // e1 (x) e2 lands at index 1 of dim 4 (second basis vector)
  DecodeResult t2 = decode("0101000100010", 4);
  REQUIRE(t2.accepted());
  CHECK(t2.output->state == basis_state(2, 4));

  // WSUM 1*(e1) + 1*(e2): opcode 10, two unit literals, then the programs.
  // Literal 1+0i = zigzag-gamma(1) gamma(1) zigzag-gamma(0) gamma(1)
  DecodeResult w = decode("1001111101111100100010", 2);
  REQUIRE(w.accepted());
  CHECK(w.output->state == basis_state(1, 2) + basis_state(2, 2));

  // PROJ of {e1, e2} at dim 2 is the identity projector
  DecodeResult p = decode("11001000100010", 2);
  REQUIRE(p.accepted());
  CHECK(p.output->kind == MachineOutput::Kind::projector);
  CHECK(p.output->projector_rank() == 2);
  CHECK((p.output->projector_matrix() - ComplexMatrix::identity(2)).max_abs() ==
        0.0);
}

TEST_CASE("rejection reasons") {
  CHECK(decode("00", 2).reason == RejectReason::underflow);
  CHECK(decode("", 2).reason == RejectReason::underflow);
  CHECK(decode("0011", 2).reason == RejectReason::overflow);
  // basis index 3 exceeds dim 2
  CHECK(decode("00011", 2).reason == RejectReason::ill_formed);
  // tensor split 3 does not divide 4
  CHECK(decode("01011001001", 4).reason == RejectReason::ill_formed);
  // WSUM 1*e1 + (-1)*e1 collapses to the zero vector
  CHECK(decode("10011111010111001001", 2).reason == RejectReason::ill_formed);
  // projector basis {e1, e1} is exactly dependent
  CHECK(decode("110010001001", 2).reason == RejectReason::ill_formed);
  // nested PAD exceeds a one-instruction budget
  CHECK(decode("111001", 2, 1).reason == RejectReason::budget);
  CHECK(decode("111001", 2, 2).accepted());
}

TEST_CASE("enumeration is prefix-free with exact Kraft mass") {
  EnumerationSnapshot snap = enumerate_programs(2, Budget{12, 1000});
  CHECK(snap.kraft_mass == Dyadic{199, 10});
  CHECK(snap.entries.size() == 19);

  Dyadic total;
  for (std::size_t i = 0; i < snap.entries.size(); ++i) {
    total += snap.entries[i].weight;
    CHECK(snap.entries[i].weight ==
          Dyadic::pow2(-int(snap.entries[i].bits.size())));
    if (i) CHECK(snap.entries[i - 1].bits.size() <= snap.entries[i].bits.size());
    for (std::size_t j = 0; j < snap.entries.size(); ++j)
      if (i != j) CHECK_FALSE(is_prefix(snap.entries[i].bits, snap.entries[j].bits));
  }
  CHECK(total == snap.kraft_mass);

  EnumerationSnapshot shorter = enumerate_programs(2, Budget{10, 1000});
  CHECK(shorter.kraft_mass == Dyadic{49, 8});
}

TEST_CASE("enumeration guards its budget") {
  CHECK_THROWS_AS(enumerate_programs(2, Budget{0, 1000}),
                  std::invalid_argument);
  CHECK_THROWS_AS(enumerate_programs(2, Budget{kDefaultHardLenCap + 1, 1000}),
                  std::length_error);
}

TEST_CASE("semimeasure merges equivalent outputs") {
  EnumerationSnapshot snap = enumerate_programs(2, Budget{12, 1000});
  SemimeasureTable table = semimeasure(snap);
  CHECK(table.condition_dim == 2);
  CHECK(table.total_mass == snap.kraft_mass);

  std::string key1 = basis_state(1, 2).encode();
  auto it = table.entries.find("S:" + key1);
  REQUIRE(it != table.entries.end());
  CHECK(it->second.k_t == 3);  // "001" is the shortest route
  // at least "001" and the PAD-wrapped "111001" contribute
  CHECK(it->second.mass >= Dyadic::pow2(-3) + Dyadic::pow2(-6));

  Dyadic merged;
  for (const auto& [key, entry] : table.entries) merged += entry.mass;
  CHECK(merged == table.total_mass);
  CHECK(table.entries.size() < snap.entries.size());
}

TEST_CASE("snapshot persistence round trip") {
  EnumerationSnapshot snap = enumerate_programs(2, Budget{12, 1000});
  std::string path = "snapshot_roundtrip.txt";
  save_snapshot(snap, path);
  EnumerationSnapshot back = load_snapshot(path);
  CHECK(back.dim == snap.dim);
  CHECK(back.budget.max_len == snap.budget.max_len);
  CHECK(back.kraft_mass == snap.kraft_mass);
  REQUIRE(back.entries.size() == snap.entries.size());
  for (std::size_t i = 0; i < snap.entries.size(); ++i) {
    CHECK(back.entries[i].bits == snap.entries[i].bits);
    CHECK(back.entries[i].output.canonical_key() ==
          snap.entries[i].output.canonical_key());
  }
  std::remove(path.c_str());
}

TEST_CASE("snapshot loader reports corruption with line numbers") {
  EnumerationSnapshot snap = enumerate_programs(2, Budget{6, 1000});
  std::string path = "snapshot_corrupt.txt";
  save_snapshot(snap, path);

  auto mutate = [&](int lineno, const std::string& replacement) {
    std::ifstream in(path);
    std::string line, all;
    int n = 0;
    while (std::getline(in, line))
      all += (++n == lineno ? replacement : line) + "\n";
    std::ofstream(path) << all;
  };

  mutate(1, "qae-snapshot v0");
  CHECK_THROWS_WITH_AS(load_snapshot(path),
                       doctest::Contains(":1: bad header"), std::runtime_error);

  save_snapshot(snap, path);
  mutate(6, "111 state S:2;1/1+0/1 i,0/1+0/1 i");  // program does not decode
  CHECK_THROWS_WITH_AS(load_snapshot(path), doctest::Contains(":6:"),
                       std::runtime_error);

  save_snapshot(snap, path);
  mutate(4, "kraft 1/2^1");  // wrong declared mass
  CHECK_THROWS_AS(load_snapshot(path), std::runtime_error);

  CHECK_THROWS_AS(load_snapshot("no_such_snapshot_file.txt"),
                  std::runtime_error);
  std::remove(path.c_str());
}
