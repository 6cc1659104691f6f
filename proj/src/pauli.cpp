#include "pauli.hpp"

#include <bit>
#include <cctype>
#include <stdexcept>

namespace aqm {

namespace {

int parity64(std::uint64_t v) { return std::popcount(v) & 1; }

void check_qubit_count(int n) {
  if (n < 1 || n > 32) {
    throw std::invalid_argument("qubit count must be in 1..32, got " +
                                std::to_string(n));
  }
}

}  // namespace

PauliString::PauliString(int n_qubits) : n_(n_qubits) {
  check_qubit_count(n_qubits);
}

PauliString PauliString::single(char letter, int qubit, int n_qubits) {
  check_qubit_count(n_qubits);
  if (qubit < 1 || qubit > n_qubits) {
    throw std::invalid_argument("qubit index " + std::to_string(qubit) +
                                " out of range 1.." + std::to_string(n_qubits));
  }
  const std::uint64_t bit = std::uint64_t{1} << (qubit - 1);
  switch (letter) {
    case 'X':
      return PauliString(n_qubits, bit, 0, 0);
    case 'Z':
      return PauliString(n_qubits, 0, bit, 0);
    case 'Y':
      return PauliString(n_qubits, bit, bit, 1);  // Y = i X Z
    default:
      throw std::invalid_argument(std::string("unknown Pauli letter '") +
                                  letter + "'");
  }
}

PauliString PauliString::from_string(std::string_view spec, int n_qubits) {
  check_qubit_count(n_qubits);
  PauliString result(n_qubits);
  if (spec.empty() || spec == "I") return result;

  std::uint64_t seen = 0;
  std::size_t i = 0;
  while (i < spec.size()) {
    const char letter = spec[i];
    if (letter != 'X' && letter != 'Y' && letter != 'Z') {
      throw std::invalid_argument("malformed Pauli token at '" +
                                  std::string(spec.substr(i)) + "'");
    }
    ++i;
    std::size_t start = i;
    while (i < spec.size() && std::isdigit(static_cast<unsigned char>(spec[i])))
      ++i;
    if (start == i) {
      throw std::invalid_argument("missing qubit index after '" +
                                  std::string(1, letter) + "'");
    }
    const int qubit = std::stoi(std::string(spec.substr(start, i - start)));
    if (qubit < 1 || qubit > n_qubits) {
      throw std::invalid_argument("qubit index " + std::to_string(qubit) +
                                  " out of range 1.." +
                                  std::to_string(n_qubits));
    }
    const std::uint64_t bit = std::uint64_t{1} << (qubit - 1);
    if (seen & bit) {
      throw std::invalid_argument("duplicate qubit index " +
                                  std::to_string(qubit));
    }
    seen |= bit;
    result = result * single(letter, qubit, n_qubits);
  }
  return result;
}

int PauliString::weight() const { return std::popcount(x_ | z_); }

std::vector<int> PauliString::support() const {
  std::vector<int> out;
  std::uint64_t bits = x_ | z_;
  for (int q = 1; q <= n_; ++q) {
    if (bits & (std::uint64_t{1} << (q - 1))) out.push_back(q);
  }
  return out;
}

char PauliString::letter_at(int qubit) const {
  const std::uint64_t bit = std::uint64_t{1} << (qubit - 1);
  const bool x = x_ & bit, z = z_ & bit;
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

PauliString PauliString::operator*(const PauliString& rhs) const {
  if (n_ != rhs.n_) {
    throw std::invalid_argument("Pauli size mismatch: " + std::to_string(n_) +
                                " vs " + std::to_string(rhs.n_));
  }
  // (i^p X^x Z^z)(i^q X^u Z^w) = i^(p+q) (-1)^(z.u) X^(x^u) Z^(z^w)
  const int phase = (phase_ + rhs.phase_ + 2 * parity64(z_ & rhs.x_)) & 3;
  return PauliString(n_, x_ ^ rhs.x_, z_ ^ rhs.z_, phase);
}

bool PauliString::commutes_with(const PauliString& rhs) const {
  if (n_ != rhs.n_) {
    throw std::invalid_argument("Pauli size mismatch: " + std::to_string(n_) +
                                " vs " + std::to_string(rhs.n_));
  }
  return parity64(x_ & rhs.z_) == parity64(z_ & rhs.x_);
}

std::string PauliString::str() const {
  // Count the Y sites folded into the stored phase.
  const int y_count = std::popcount(x_ & z_);
  const int residual = ((phase_ - y_count) % 4 + 4) % 4;
  static const char* kPrefix[4] = {"", "i*", "-", "-i*"};
  return kPrefix[residual] + unsigned_str();
}

std::string PauliString::unsigned_str() const {
  if (bits_zero()) return "I";
  std::string out;
  for (int q = 1; q <= n_; ++q) {
    const char letter = letter_at(q);
    if (letter == 'I') continue;
    out += letter;
    out += std::to_string(q);
  }
  return out;
}

std::uint64_t SymplecticSpan::reduce(std::uint64_t v) const {
  for (std::uint64_t b : basis_) {
    const int lead = 63 - std::countl_zero(b);
    if (v & (std::uint64_t{1} << lead)) v ^= b;
  }
  return v;
}

void SymplecticSpan::add(const PauliString& p) {
  if (p.n_qubits() != n_) throw std::invalid_argument("Pauli size mismatch");
  std::uint64_t v = reduce(p.symplectic());
  if (v == 0) return;
  basis_.push_back(v);
  // Restore echelon order (descending leading bit).
  for (std::size_t i = basis_.size(); i-- > 1;) {
    if (basis_[i - 1] < basis_[i]) std::swap(basis_[i - 1], basis_[i]);
  }
}

bool SymplecticSpan::contains(const PauliString& p) const {
  if (p.n_qubits() != n_) throw std::invalid_argument("Pauli size mismatch");
  return reduce(p.symplectic()) == 0;
}

bool in_group(const PauliString& p,
              const std::vector<PauliString>& generators) {
  SymplecticSpan span(p.n_qubits());
  for (const auto& g : generators) span.add(g);
  return span.contains(p);
}

}  // namespace aqm
