#include "kernels.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace aqm {

namespace {

constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
constexpr double kDropTolerance = 1e-15;

std::uint64_t spread_register_mask(std::uint64_t qubit_mask, int n_register,
                                   int n_relays) {
  std::uint64_t out = 0;
  for (int q = 1; q <= n_register; ++q) {
    if (qubit_mask & (std::uint64_t{1} << (q - 1)))
      out |= register_bit(q, n_register, n_relays);
  }
  return out;
}

}  // namespace

std::uint64_t register_bit(int qubit, int n_register, int n_relays) {
  return std::uint64_t{1} << (n_relays + n_register - qubit);
}

std::uint64_t relay_bit(int relay, int n_relays) {
  return std::uint64_t{1} << (n_relays - relay);
}

std::vector<Kernel> compile_term(const ModelTerm& term, int n_register,
                                 int n_relays) {
  Kernel base;
  base.coeff = term.coeff;
  for (const auto& rf : term.relays) {
    const std::uint64_t bit = relay_bit(rf.relay, n_relays);
    if ((base.req_one | base.req_zero | base.x_mask) & bit)
      throw std::invalid_argument("duplicate relay factor");
    switch (rf.kind) {
      case RelayOpKind::SigmaPlus:  // |h><g|
        base.req_zero |= bit;
        base.x_mask |= bit;
        break;
      case RelayOpKind::SigmaMinus:  // |g><h|
        base.req_one |= bit;
        base.x_mask |= bit;
        break;
      case RelayOpKind::ProjG:
        base.req_zero |= bit;
        break;
      case RelayOpKind::ProjH:
        base.req_one |= bit;
        break;
    }
  }

  Kernel pauli_part = base;
  pauli_part.coeff *= kIPow[term.pauli.phase() & 3];
  pauli_part.x_mask |= spread_register_mask(term.pauli.x_bits(), n_register,
                                            n_relays);
  pauli_part.z_mask |= spread_register_mask(term.pauli.z_bits(), n_register,
                                            n_relays);

  if (term.identity_sign == 0) return {pauli_part};
  if (term.identity_sign < 0) pauli_part.coeff = -pauli_part.coeff;
  return {base, pauli_part};
}

CompiledOp compile_terms(const std::vector<ModelTerm>& terms, int n_register,
                         int n_relays) {
  CompiledOp op;
  op.dim_bits = n_register + n_relays;
  for (const auto& term : terms) {
    for (auto& k : compile_term(term, n_register, n_relays))
      op.kernels.push_back(k);
  }
  return op;
}

CompiledOp compile_lindblad(const LindbladOp& lop, int n_register,
                            int n_relays) {
  return compile_terms(lop.terms, n_register, n_relays);
}

Kernel kernel_adjoint(const Kernel& k) {
  Kernel out = k;
  out.coeff = std::conj(k.coeff);
  if (std::popcount(k.z_mask & k.x_mask) & 1) out.coeff = -out.coeff;
  out.req_one = (k.req_one & ~k.x_mask) | (k.req_zero & k.x_mask);
  out.req_zero = (k.req_zero & ~k.x_mask) | (k.req_one & k.x_mask);
  return out;
}

std::optional<Kernel> kernel_product(const Kernel& a, const Kernel& b) {
  // Requirements of a, transported through b's bit flips.
  const std::uint64_t a_one = (a.req_one & ~b.x_mask) | (a.req_zero & b.x_mask);
  const std::uint64_t a_zero = (a.req_zero & ~b.x_mask) | (a.req_one & b.x_mask);
  const std::uint64_t req_one = b.req_one | a_one;
  const std::uint64_t req_zero = b.req_zero | a_zero;
  if (req_one & req_zero) return std::nullopt;
  Kernel out;
  out.coeff = a.coeff * b.coeff;
  if (std::popcount(a.z_mask & b.x_mask) & 1) out.coeff = -out.coeff;
  out.x_mask = a.x_mask ^ b.x_mask;
  out.z_mask = a.z_mask ^ b.z_mask;
  out.req_one = req_one;
  out.req_zero = req_zero;
  return out;
}

void merge_kernels(std::vector<Kernel>& kernels) {
  bool changed = true;
  while (changed) {
    changed = false;
    // Combine identical masks.
    for (std::size_t i = 0; i < kernels.size(); ++i) {
      for (std::size_t j = i + 1; j < kernels.size();) {
        if (kernels[i].same_masks(kernels[j])) {
          kernels[i].coeff += kernels[j].coeff;
          kernels.erase(kernels.begin() + j);
          changed = true;
        } else {
          ++j;
        }
      }
    }
    // Drop negligible kernels.
    for (std::size_t i = 0; i < kernels.size();) {
      if (std::abs(kernels[i].coeff) < kDropTolerance) {
        kernels.erase(kernels.begin() + i);
        changed = true;
      } else {
        ++i;
      }
    }
    // Collapse Pg/Ph pairs: equal coefficients conditioned oppositely on one
    // bit merge into an unconditioned kernel.
    for (std::size_t i = 0; i < kernels.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < kernels.size(); ++j) {
        Kernel &a = kernels[i], &b = kernels[j];
        if (a.x_mask != b.x_mask || a.z_mask != b.z_mask) continue;
        if (std::abs(a.coeff - b.coeff) > kDropTolerance) continue;
        const std::uint64_t d1 = a.req_one ^ b.req_one;
        const std::uint64_t d0 = a.req_zero ^ b.req_zero;
        if (d1 != d0 || std::popcount(d1) != 1) continue;
        if ((a.req_one & d1) == (b.req_zero & d0) &&
            (a.req_one | a.req_zero) == (b.req_one | b.req_zero)) {
          a.req_one &= ~d1;
          a.req_zero &= ~d0;
          kernels.erase(kernels.begin() + j);
          changed = true;
          break;
        }
      }
    }
  }
}

void apply_op(const CompiledOp& op, const cvec& in, cvec& out) {
  const std::uint64_t dim = std::uint64_t{1} << op.dim_bits;
  for (const auto& k : op.kernels) {
    const std::uint64_t cond = k.req_one | k.req_zero;
    if (cond == 0) {
      if (k.x_mask == 0 && k.z_mask == 0) {
        for (std::uint64_t i = 0; i < dim; ++i) out[i] += k.coeff * in[i];
      } else if (k.x_mask == 0) {
        for (std::uint64_t i = 0; i < dim; ++i) {
          const cplx c =
              (std::popcount(k.z_mask & i) & 1) ? -k.coeff : k.coeff;
          out[i] += c * in[i];
        }
      } else {
        for (std::uint64_t i = 0; i < dim; ++i) {
          const cplx c =
              (std::popcount(k.z_mask & i) & 1) ? -k.coeff : k.coeff;
          out[i ^ k.x_mask] += c * in[i];
        }
      }
    } else {
      const std::uint64_t free = (dim - 1) & ~cond;
      std::uint64_t s = free;
      while (true) {
        const std::uint64_t i = k.req_one | s;
        const cplx c = (std::popcount(k.z_mask & i) & 1) ? -k.coeff : k.coeff;
        out[i ^ k.x_mask] += c * in[i];
        if (s == 0) break;
        s = (s - 1) & free;
      }
    }
  }
}

double op_norm_bound(const CompiledOp& op) {
  double bound = 0.0;
  for (const auto& k : op.kernels) bound += std::abs(k.coeff);
  return bound;
}

Eigen::MatrixXcd dense_matrix(const CompiledOp& op) {
  const auto dim = static_cast<Eigen::Index>(op.dimension());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  cvec basis(dim, cplx{0.0, 0.0});
  cvec column(dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    basis[c] = 1.0;
    std::fill(column.begin(), column.end(), cplx{0.0, 0.0});
    apply_op(op, basis, column);
    for (Eigen::Index r = 0; r < dim; ++r) m(r, c) = column[r];
    basis[c] = 0.0;
  }
  return m;
}

}  // namespace aqm
