#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "builder.hpp"

namespace aqm {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

// One tensor-structured primitive on the joint register⊗relay space:
//   K|i> = coeff * (-1)^popcount(z_mask & i) |i ^ x_mask>
// restricted to inputs with req_one bits set and req_zero bits clear.
// Bit layout: register qubit q -> bit (N + Q - q), relay n -> bit (N - n),
// |g> = 0, |h> = 1 (register most significant, qubit/relay 1 highest).
struct Kernel {
  cplx coeff{0.0, 0.0};
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;
  std::uint64_t req_one = 0;
  std::uint64_t req_zero = 0;

  bool same_masks(const Kernel& o) const {
    return x_mask == o.x_mask && z_mask == o.z_mask && req_one == o.req_one &&
           req_zero == o.req_zero;
  }
};

struct CompiledOp {
  int dim_bits = 0;
  std::vector<Kernel> kernels;
  std::size_t dimension() const { return std::size_t{1} << dim_bits; }
};

std::uint64_t register_bit(int qubit, int n_register, int n_relays);
std::uint64_t relay_bit(int relay, int n_relays);

// A ModelTerm flattens into one kernel (plain Pauli) or two (I ± M).
std::vector<Kernel> compile_term(const ModelTerm& term, int n_register,
                                 int n_relays);
CompiledOp compile_terms(const std::vector<ModelTerm>& terms, int n_register,
                         int n_relays);
CompiledOp compile_lindblad(const LindbladOp& op, int n_register, int n_relays);

Kernel kernel_adjoint(const Kernel& k);
// b applied first, then a; nullopt when the requirement masks conflict.
std::optional<Kernel> kernel_product(const Kernel& a, const Kernel& b);

// Combines kernels with identical masks, collapses Pg/Ph pairs that differ
// only by the condition on one relay bit, and drops negligible terms.
void merge_kernels(std::vector<Kernel>& kernels);

// out += Op * in
void apply_op(const CompiledOp& op, const cvec& in, cvec& out);
// Sum over kernels of |coeff| — an operator-norm bound (each primitive is a
// phase/permutation on its admissible subspace).
double op_norm_bound(const CompiledOp& op);

Eigen::MatrixXcd dense_matrix(const CompiledOp& op);

}  // namespace aqm
