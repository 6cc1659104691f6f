#include <doctest.h>

#include "dynamics.hpp"
#include "kernels.hpp"
#include "rng.hpp"
#include "support.hpp"

using namespace aqm;
using aqm::testing::dense_hamiltonian;
using aqm::testing::dense_lindblad;
using aqm::testing::Mat;

namespace {

cvec random_state(Rng& rng, std::size_t dim) {
  cvec v(dim);
  for (auto& a : v) {
    const double re = 2.0 * rng.next_uniform() - 1.0;
    const double im = 2.0 * rng.next_uniform() - 1.0;
    a = {re, im};
  }
  return v;
}

Eigen::VectorXcd to_eigen(const cvec& v) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

MemoryModel lossy_five_qubit() {
  ModelParams params;
  params.omega = 7.0;
  params.alpha = 1.3;
  params.theta = 0.05;
  params.gamma = 0.4;
  params.noise = NoiseKind::Spontaneous;
  params.relay_dephasing = 0.2;
  return assemble_model(catalog_get("five_qubit"), params);
}

}  // namespace

TEST_CASE("matrix-free application agrees with dense matrices") {
  Rng rng(42, 0);
  for (const auto& name : {"bitflip_three", "five_qubit"}) {
    ModelParams params;
    params.omega = 3.0;
    params.alpha = 0.9;
    params.theta = 0.02;
    params.gamma = 0.5;
    params.noise = NoiseKind::Spontaneous;
    const auto model = assemble_model(catalog_get(name), params);
    const std::size_t dim = model.dimension();

    // Hamiltonian.
    const CompiledOp h = compile_terms(model.hamiltonian, model.n_register,
                                       model.n_relays);
    const Mat hd = dense_hamiltonian(model);
    for (int trial = 0; trial < 3; ++trial) {
      const cvec in = random_state(rng, dim);
      cvec out(dim, cplx{0.0, 0.0});
      apply_op(h, in, out);
      const Eigen::VectorXcd expected = hd * to_eigen(in);
      CHECK((to_eigen(out) - expected).norm() <
            1e-12 * std::max(1.0, expected.norm()));
    }

    // Every Lindblad operator.
    for (const auto& lop : model.lindblads) {
      const CompiledOp l = compile_lindblad(lop, model.n_register,
                                            model.n_relays);
      const Mat ld = dense_lindblad(lop, model.n_register, model.n_relays);
      const cvec in = random_state(rng, dim);
      cvec out(dim, cplx{0.0, 0.0});
      apply_op(l, in, out);
      const Eigen::VectorXcd expected = ld * to_eigen(in);
      CHECK((to_eigen(out) - expected).norm() <
            1e-12 * std::max(1.0, expected.norm()));
    }
  }
}

TEST_CASE("bacon-shor operators agree with dense matrices at 2^13") {
  // Spot check the largest register: a handful of random-vector probes per
  // operator class.
  Rng rng(43, 0);
  ModelParams params;
  params.omega = 2.0;
  params.alpha = 1.1;
  params.theta = 0.03;
  params.gamma = 0.2;
  const auto model = assemble_model(catalog_get("bacon_shor_nine"), params);
  const std::size_t dim = model.dimension();

  const CompiledOp h = compile_terms(model.hamiltonian, model.n_register,
                                     model.n_relays);
  const Mat hd = dense_hamiltonian(model);
  const cvec in = random_state(rng, dim);
  cvec out(dim, cplx{0.0, 0.0});
  apply_op(h, in, out);
  CHECK((to_eigen(out) - hd * to_eigen(in)).norm() < 1e-10);

  const auto& probe = model.lindblads[2];
  const CompiledOp l = compile_lindblad(probe, model.n_register, model.n_relays);
  const Mat ld = dense_lindblad(probe, model.n_register, model.n_relays);
  cvec out2(dim, cplx{0.0, 0.0});
  apply_op(l, in, out2);
  CHECK((to_eigen(out2) - ld * to_eigen(in)).norm() < 1e-10);
}

TEST_CASE("kernel adjoint and product match dense algebra") {
  Rng rng(44, 0);
  const auto model = lossy_five_qubit();
  const std::size_t dim = model.dimension();
  std::vector<Kernel> kernels;
  for (const auto& lop : model.lindblads) {
    for (const auto& k :
         compile_lindblad(lop, model.n_register, model.n_relays).kernels)
      kernels.push_back(k);
  }

  auto dense_of = [&](const Kernel& k) {
    CompiledOp op;
    op.dim_bits = model.dimension_bits();
    op.kernels = {k};
    return dense_matrix(op);
  };

  for (int trial = 0; trial < 30; ++trial) {
    const auto& a = kernels[rng.next_u64() % kernels.size()];
    const auto& b = kernels[rng.next_u64() % kernels.size()];
    const Mat da = dense_of(a), db = dense_of(b);
    CHECK((dense_of(kernel_adjoint(a)) - Mat(da.adjoint())).norm() < 1e-12);
    const Mat expected = da * db;
    if (auto prod = kernel_product(a, b)) {
      CHECK((dense_of(*prod) - expected).norm() < 1e-12);
    } else {
      CHECK(expected.norm() < 1e-12);
    }
  }
  (void)dim;
}

TEST_CASE("merged lindblad square equals the dense sum") {
  const auto model = lossy_five_qubit();
  const CompiledModel compiled = compile_model(model);

  Mat expected = Mat::Zero(model.dimension(), model.dimension());
  for (const auto& lop : model.lindblads) {
    const Mat l = dense_lindblad(lop, model.n_register, model.n_relays);
    expected += l.adjoint() * l;
  }
  CHECK((dense_matrix(compiled.ksum) - expected).norm() < 1e-10);

  // The drift is -iH - K/2.
  const Mat h = dense_hamiltonian(model);
  const Mat drift_expected = cplx{0.0, -1.0} * h - 0.5 * expected;
  CHECK((dense_matrix(compiled.drift) - drift_expected).norm() < 1e-10);

  // With probe pairs and scalar noise the merged K stays small.
  CHECK(compiled.ksum.kernels.size() <=
        2 * model.lindblads.size());
  CHECK(compiled.jump_rate_bound >= 4.0 * 1.3 * 1.3 * 4.0);
}
