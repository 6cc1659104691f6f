#pragma once

// Dense-matrix oracles for the unit and acceptance suites. Everything here
// is built independently of the kernel engine (explicit Kronecker products)
// so matrix-free code can be checked against it.

#include <Eigen/Dense>
#include <complex>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "builder.hpp"
#include "pauli.hpp"

namespace aqm::testing {

using Mat = Eigen::MatrixXcd;
using std::complex;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Mat pauli_site(bool x, bool z) {
  Mat m(2, 2);
  if (x && z) {  // X*Z
    m << 0, -1, 1, 0;
  } else if (x) {
    m << 0, 1, 1, 0;
  } else if (z) {
    m << 1, 0, 0, -1;
  } else {
    m << 1, 0, 0, 1;
  }
  return m;
}

// Qubit 1 is the most significant factor.
inline Mat dense_pauli(const PauliString& p) {
  Mat out = Mat::Identity(1, 1);
  for (int q = 1; q <= p.n_qubits(); ++q) {
    const std::uint64_t bit = std::uint64_t{1} << (q - 1);
    out = kron(out, pauli_site(p.x_bits() & bit, p.z_bits() & bit));
  }
  static const complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return ipow[p.phase() & 3] * out;
}

inline Mat dense_relay_op(RelayOpKind kind) {
  Mat m = Mat::Zero(2, 2);  // basis order |g>=0, |h>=1
  switch (kind) {
    case RelayOpKind::SigmaPlus:
      m(1, 0) = 1;  // |h><g|
      break;
    case RelayOpKind::SigmaMinus:
      m(0, 1) = 1;
      break;
    case RelayOpKind::ProjG:
      m(0, 0) = 1;
      break;
    case RelayOpKind::ProjH:
      m(1, 1) = 1;
      break;
  }
  return m;
}

// Register ⊗ relays, relay 1 the most significant relay factor.
inline Mat dense_term(const ModelTerm& term, int n_register, int n_relays) {
  Mat reg = dense_pauli(term.pauli);
  if (term.identity_sign != 0) {
    const auto dim = reg.rows();
    reg = Mat::Identity(dim, dim) + double(term.identity_sign) * reg;
  }
  Mat out = reg;
  for (int r = 1; r <= n_relays; ++r) {
    Mat factor = Mat::Identity(2, 2);
    for (const auto& rf : term.relays) {
      if (rf.relay == r) factor = dense_relay_op(rf.kind);
    }
    out = kron(out, factor);
  }
  return term.coeff * out;
}

inline Mat dense_lindblad(const LindbladOp& op, int n_register, int n_relays) {
  const auto dim = Eigen::Index(1) << (n_register + n_relays);
  Mat out = Mat::Zero(dim, dim);
  for (const auto& term : op.terms) out += dense_term(term, n_register, n_relays);
  return out;
}

inline Mat dense_hamiltonian(const MemoryModel& model) {
  const auto dim = static_cast<Eigen::Index>(model.dimension());
  Mat out = Mat::Zero(dim, dim);
  for (const auto& term : model.hamiltonian)
    out += dense_term(term, model.n_register, model.n_relays);
  return out;
}

inline std::string read_fixture(const std::string& name) {
  const std::string path = std::string(AQM_FIXTURE_DIR) + "/" + name;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Non-comment lines of a model dump.
inline std::vector<std::string> operator_lines(const std::string& dump) {
  std::vector<std::string> lines;
  std::istringstream in(dump);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

}  // namespace aqm::testing
