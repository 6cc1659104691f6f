#include <doctest.h>

#include "codes.hpp"
#include "pauli.hpp"
#include "rng.hpp"
#include "support.hpp"

using namespace aqm;
using aqm::testing::dense_pauli;

namespace {

PauliString random_pauli(Rng& rng, int n) {
  PauliString p(n);
  for (int q = 1; q <= n; ++q) {
    switch (rng.next_u64() & 3) {
      case 1:
        p = p * PauliString::single('X', q, n);
        break;
      case 2:
        p = p * PauliString::single('Y', q, n);
        break;
      case 3:
        p = p * PauliString::single('Z', q, n);
        break;
      default:
        break;
    }
  }
  return p;
}

}  // namespace

TEST_CASE("pauli parsing") {
  const PauliString p = PauliString::from_string("Z2X3X4Z5", 5);
  CHECK(p.x_bits() == 0b01100);
  CHECK(p.z_bits() == 0b10010);
  CHECK(p.phase() == 0);
  CHECK(p.unsigned_str() == "Z2X3X4Z5");

  const PauliString id = PauliString::from_string("", 5);
  CHECK(id.is_identity());
  CHECK(PauliString::from_string("I", 5).is_identity());

  const PauliString x4 = PauliString::from_string("X1X2X3X4", 7);
  CHECK(x4.x_bits() == 0b0001111);
  CHECK(x4.z_bits() == 0);

  CHECK_THROWS_AS(PauliString::from_string("A3", 5), std::invalid_argument);
  CHECK_THROWS_AS(PauliString::from_string("X9", 5), std::invalid_argument);
  CHECK_THROWS_AS(PauliString::from_string("X", 5), std::invalid_argument);
  CHECK_THROWS_AS(PauliString::from_string("X1Z1", 5), std::invalid_argument);
  CHECK_THROWS_AS(PauliString::from_string("X0", 5), std::invalid_argument);
}

TEST_CASE("pauli multiplication convention") {
  const int n = 1;
  const auto x = PauliString::single('X', 1, n);
  const auto z = PauliString::single('Z', 1, n);
  const auto y = PauliString::single('Y', 1, n);

  // X*Z = -i Y under Y = iXZ.
  const auto xz = x * z;
  CHECK(xz.same_unsigned(y));
  CHECK(xz.str() == "-i*Y1");
  CHECK((dense_pauli(xz) -
         std::complex<double>{0, -1} * dense_pauli(y)).norm() == 0.0);

  const auto m = PauliString::from_string("Z2X3X4Z5", 5);
  const auto mm = m * m;
  CHECK(mm.is_identity());

  const auto lhs = PauliString::from_string("Z4Z7Z8", 9) *
                   PauliString::from_string("Z7Z8", 9);
  CHECK(lhs == PauliString::from_string("Z4", 9));
}

TEST_CASE("pauli multiplication matches dense matrices") {
  Rng rng(7, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 5);
    const auto p = random_pauli(rng, n);
    const auto q = random_pauli(rng, n);
    CHECK((dense_pauli(p * q) - dense_pauli(p) * dense_pauli(q)).norm() <
          1e-12);
  }
}

TEST_CASE("pauli commutation") {
  CHECK(PauliString::from_string("X1X2X3X4", 7)
            .commutes_with(PauliString::from_string("Z1Z2Z3Z4", 7)));
  CHECK_FALSE(PauliString::from_string("X1", 7).commutes_with(
      PauliString::from_string("Z1Z2Z3Z4", 7)));
  // Overlap at sites 5 and 8 only: even, so they commute.
  const auto a = PauliString::from_string("Z5Z8", 9);
  const auto b = PauliString::from_string("X4X5X6X7X8X9", 9);
  CHECK(a.commutes_with(b));
  const auto da = dense_pauli(a), db = dense_pauli(b);
  CHECK((da * db - db * da).norm() == 0.0);
}

TEST_CASE("pauli algebra properties") {
  Rng rng(11, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 8);
    const auto p = random_pauli(rng, n);
    const auto q = random_pauli(rng, n);
    const auto r = random_pauli(rng, n);
    CHECK((p * q) * r == p * (q * r));
    CHECK((p * p).bits_zero());
    const auto pq = p * q;
    const auto qp = q * p;
    CHECK(pq.same_unsigned(qp));
    if (p.commutes_with(q)) {
      CHECK(pq.phase() == qp.phase());
    } else {
      CHECK(((pq.phase() - qp.phase()) & 3) == 2);
    }
  }
}

TEST_CASE("symplectic commutation matches dense commutators on catalog codes") {
  for (const auto& name : catalog_names()) {
    const auto& code = catalog_get(name);
    std::vector<PauliString> ops = code.stabilizers;
    ops.insert(ops.end(), code.gauge_generators.begin(),
               code.gauge_generators.end());
    ops.push_back(code.logical_x);
    ops.push_back(code.logical_z);
    for (std::size_t i = 0; i < ops.size(); ++i) {
      for (std::size_t j = i; j < ops.size(); ++j) {
        const auto di = dense_pauli(ops[i]);
        const auto dj = dense_pauli(ops[j]);
        const bool dense_commute = (di * dj - dj * di).norm() < 1e-12;
        CHECK(ops[i].commutes_with(ops[j]) == dense_commute);
      }
    }
  }
}

TEST_CASE("group membership") {
  const auto& bs = catalog_get("bacon_shor_nine");
  CHECK(in_group(PauliString::from_string("Z7Z8", 9), bs.gauge_generators));
  CHECK(in_group(PauliString(9), bs.gauge_generators));

  std::vector<PauliString> harmless = bs.gauge_generators;
  harmless.insert(harmless.end(), bs.stabilizers.begin(), bs.stabilizers.end());
  CHECK_FALSE(in_group(PauliString::from_string("Z5Z8", 9), harmless));
}

TEST_CASE("group membership agrees with exhaustive enumeration") {
  Rng rng(13, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 4 + static_cast<int>(rng.next_u64() % 3);
    const int k = 1 + static_cast<int>(rng.next_u64() % 9);
    std::vector<PauliString> gens;
    for (int g = 0; g < k; ++g) gens.push_back(random_pauli(rng, n));

    // All 2^k unsigned products.
    std::vector<std::uint64_t> members;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      PauliString prod(n);
      for (int g = 0; g < k; ++g) {
        if (mask & (std::uint64_t{1} << g)) prod = prod * gens[g];
      }
      members.push_back(prod.symplectic());
    }
    for (int probe = 0; probe < 40; ++probe) {
      const auto p = random_pauli(rng, n);
      const bool expected = std::find(members.begin(), members.end(),
                                      p.symplectic()) != members.end();
      CHECK(in_group(p, gens) == expected);
    }
    // Every enumerated member must test positive.
    for (int g = 0; g < k; ++g) CHECK(in_group(gens[g], gens));
  }
}
