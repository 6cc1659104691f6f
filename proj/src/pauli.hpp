#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aqm {

// Phase-tracked Pauli string on n qubits in symplectic form.
// Normal form: i^phase * X^x * Z^z (all X factors left of all Z factors),
// with Y = i*X*Z. Qubit q (1-based) lives at bit (q-1) of the masks.
class PauliString {
 public:
  explicit PauliString(int n_qubits);

  // Parses textual notation like "Z2X3X4Z5" (uppercase letter + 1-based
  // index, concatenated). "" and "I" denote the identity. Throws
  // std::invalid_argument on malformed tokens, out-of-range indices, or a
  // repeated index.
  static PauliString from_string(std::string_view spec, int n_qubits);
  static PauliString single(char letter, int qubit, int n_qubits);

  int n_qubits() const { return n_; }
  std::uint64_t x_bits() const { return x_; }
  std::uint64_t z_bits() const { return z_; }
  int phase() const { return phase_; }  // power of i, mod 4

  bool is_identity() const { return x_ == 0 && z_ == 0 && phase_ == 0; }
  bool bits_zero() const { return x_ == 0 && z_ == 0; }
  int weight() const;
  std::vector<int> support() const;  // 1-based, ascending
  char letter_at(int qubit) const;   // 'I', 'X', 'Y' or 'Z'

  PauliString operator*(const PauliString& rhs) const;
  bool commutes_with(const PauliString& rhs) const;
  bool same_unsigned(const PauliString& rhs) const {
    return n_ == rhs.n_ && x_ == rhs.x_ && z_ == rhs.z_;
  }
  bool operator==(const PauliString& rhs) const = default;

  // (x << n) | z, for GF(2) linear algebra.
  std::uint64_t symplectic() const { return (x_ << n_) | z_; }

  // Canonical rendering, ascending qubit index, with a phase prefix
  // ("", "i*", "-", "-i*") when the operator is not a plain letter product.
  std::string str() const;
  // Rendering that drops the overall phase.
  std::string unsigned_str() const;

 private:
  PauliString(int n, std::uint64_t x, std::uint64_t z, int phase)
      : n_(n), x_(x), z_(z), phase_(phase) {}

  int n_;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  int phase_ = 0;
};

// Incremental GF(2) span of symplectic vectors. Phases are ignored
// throughout: membership is about the unsigned operator.
class SymplecticSpan {
 public:
  explicit SymplecticSpan(int n_qubits) : n_(n_qubits) {}
  void add(const PauliString& p);
  bool contains(const PauliString& p) const;
  int rank() const { return static_cast<int>(basis_.size()); }
  int n_qubits() const { return n_; }

 private:
  std::uint64_t reduce(std::uint64_t v) const;
  int n_;
  std::vector<std::uint64_t> basis_;  // kept in echelon form
};

// True iff p equals a product of the generators up to phase.
bool in_group(const PauliString& p, const std::vector<PauliString>& generators);

}  // namespace aqm
