#include <doctest.h>

#include "builder.hpp"
#include "codes.hpp"
#include "support.hpp"

using namespace aqm;
using aqm::testing::dense_hamiltonian;
using aqm::testing::dense_lindblad;
using aqm::testing::Mat;
using aqm::testing::operator_lines;
using aqm::testing::read_fixture;

namespace {

std::string render_ops(std::vector<LindbladOp> ops) {
  MemoryModel shell;
  for (std::size_t i = 0; i < ops.size(); ++i)
    ops[i].label = "L" + std::to_string(i + 1);
  std::string out;
  shell.lindblads = std::move(ops);
  for (const auto& line : operator_lines(dump_model(shell)))
    out += line + "\n";
  return out;
}

}  // namespace

TEST_CASE("probe lindblads") {
  const auto& steane = catalog_get("steane_seven");
  auto [odd, even] = build_probe_lindblads(steane, 1, 2.0);
  CHECK(odd.terms.size() == 2);
  CHECK(even.terms.size() == 2);
  CHECK(odd.terms[0].pauli == steane.stabilizers[0]);
  CHECK(odd.terms[0].identity_sign == 1);
  CHECK(odd.terms[1].identity_sign == -1);
  CHECK_THROWS_AS(build_probe_lindblads(steane, 7, 1.0), std::out_of_range);

  // On a +1 eigenstate of M tensored with |h>, L_odd gives zero and L_even a
  // multiple of the state.
  const auto& bitflip = catalog_get("bitflip_three");
  auto [o, e] = build_probe_lindblads(bitflip, 1, 0.7);
  Mat lo = dense_lindblad(o, 3, 2);
  Mat le = dense_lindblad(e, 3, 2);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(32);
  psi(0b000'11) = 1.0;  // |000> ⊗ |hh>
  CHECK((lo * psi).norm() < 1e-14);
  Eigen::VectorXcd ev = le * psi;
  CHECK((ev - 2.0 * 0.7 * psi).norm() < 1e-14);
}

TEST_CASE("feedback hamiltonian terms") {
  const auto& steane = catalog_get("steane_seven");
  auto h7 = build_feedback_hamiltonian(steane, 200.0);
  CHECK(h7.size() == 14);
  // The X4 term is conditioned on relays 4,5,6 with pattern g,h,h.
  const auto& x4 = h7[3];
  CHECK(x4.pauli == PauliString::from_string("X4", 7));
  REQUIRE(x4.relays.size() == 3);
  CHECK(x4.relays[0].relay == 4);
  CHECK(x4.relays[0].kind == RelayOpKind::ProjG);
  CHECK(x4.relays[1].kind == RelayOpKind::ProjH);
  CHECK(x4.relays[2].kind == RelayOpKind::ProjH);

  const auto& five = catalog_get("five_qubit");
  auto h5 = build_feedback_hamiltonian(five, 200.0);
  CHECK(h5.size() == 15);
  // Y5 term conditioned on all four relays, all g.
  const auto& y5 = h5.back();
  CHECK(y5.pauli == PauliString::from_string("Y5", 5));
  REQUIRE(y5.relays.size() == 4);
  for (const auto& rf : y5.relays) CHECK(rf.kind == RelayOpKind::ProjG);

  // Subsystem code: one term per gauge class.
  auto hbs = build_feedback_hamiltonian(catalog_get("bacon_shor_nine"), 1.0);
  CHECK(hbs.size() == 6);
  CHECK(hbs[0].pauli == PauliString::from_string("X1", 9));
  CHECK(hbs[3].pauli == PauliString::from_string("Z1", 9));
  CHECK(hbs[4].pauli == PauliString::from_string("Z4", 9));
  CHECK(hbs[5].pauli == PauliString::from_string("Z7", 9));

  CHECK(build_feedback_hamiltonian(catalog_get("bitflip_three"), 1.0).size() ==
        3);
}

TEST_CASE("hamiltonian is hermitian for every catalog code") {
  for (const auto& name : catalog_names()) {
    ModelParams params;
    params.omega = 3.0;
    params.alpha = 1.0;
    const auto model = assemble_model(catalog_get(name), params);
    Mat h = dense_hamiltonian(model);
    CHECK((h - h.adjoint()).norm() < 1e-12);
  }
}

TEST_CASE("decoherence builders") {
  auto bitflip = build_decoherence(NoiseKind::BitFlip, 4.0, 7);
  CHECK(bitflip.size() == 7);
  CHECK(bitflip[0].terms.size() == 1);
  CHECK(bitflip[0].terms[0].coeff == std::complex<double>{2.0, 0.0});

  auto spont = build_decoherence(NoiseKind::Spontaneous, 1.0, 2);
  CHECK(spont.size() == 2);
  CHECK(spont[0].terms.size() == 2);
  // sqrt(Gamma)(X - iY) maps |0> to 2|1> and kills |1>.
  Mat l = dense_lindblad(spont[0], 2, 0);
  Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(4), one = zero;
  zero(0b00) = 1.0;
  one(0b10) = 1.0;  // qubit 1 set
  CHECK((l * zero - 2.0 * one).norm() < 1e-14);
  CHECK((l * one).norm() < 1e-14);

  CHECK_THROWS_AS(build_decoherence(NoiseKind::BitFlip, -1.0, 3),
                  std::invalid_argument);
  CHECK(build_decoherence(NoiseKind::BitFlip, 0.0, 3).size() == 3);
}

TEST_CASE("loss lindblads and display order") {
  const auto gen = PauliString::from_string("Z1Z2Z4Z5Z7Z8", 9);
  auto naive = build_loss_lindblads(gen, {8, 5, 2, 1, 4, 7}, 1.0, 0.1);
  CHECK(naive.size() == 6);
  CHECK(render_ops(naive) == read_fixture("loss_bacon_shor_naive.txt"));

  auto optimal = build_loss_lindblads(gen, {8, 7, 4, 5, 2, 1}, 1.0, 0.1);
  CHECK(render_ops(optimal) == read_fixture("loss_bacon_shor_optimal.txt"));

  const auto m1 = PauliString::from_string("Z2X3X4Z5", 5);
  auto five = build_loss_lindblads(m1, {5, 4, 3, 2}, 1.0, 0.1);
  CHECK(render_ops(five) == read_fixture("loss_five_qubit_m1.txt"));
  CHECK(five.back().terms[0].pauli.same_unsigned(m1));

  // Loss term count equals the support size; invalid orders are rejected.
  CHECK_THROWS_AS(build_loss_lindblads(gen, {8, 5, 2}, 1.0, 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_loss_lindblads(gen, {8, 5, 2, 1, 4, 9}, 1.0, 0.1),
                  std::invalid_argument);
}

TEST_CASE("assembled models match the transcribed fixtures") {
  ModelParams steane_params;
  steane_params.omega = 200.0;
  steane_params.alpha = 1.0;
  steane_params.gamma = 1.0;
  steane_params.noise = NoiseKind::BitFlip;
  const auto steane = assemble_model(catalog_get("steane_seven"), steane_params);
  CHECK(steane.lindblads.size() == 19);  // 12 probes + 7 noise
  {
    std::string joined;
    for (const auto& line : operator_lines(dump_model(steane)))
      joined += line + "\n";
    CHECK(joined == read_fixture("model_steane_seven.txt"));
  }

  ModelParams five_params;
  five_params.omega = 200.0;
  five_params.alpha = 1.0;
  five_params.gamma = 0.0;
  const auto five = assemble_model(catalog_get("five_qubit"), five_params);
  CHECK(five.lindblads.size() == 8);
  {
    std::string joined;
    for (const auto& line : operator_lines(dump_model(five)))
      joined += line + "\n";
    CHECK(joined == read_fixture("model_five_qubit.txt"));
  }

  ModelParams bitflip_params;
  bitflip_params.alpha = 1.0;
  const auto small = assemble_model(catalog_get("bitflip_three"), bitflip_params);
  CHECK(small.dimension() == 32);

  // theta > 0 appends one loss operator per support site per stabilizer.
  ModelParams lossy = five_params;
  lossy.theta = 0.01;
  const auto five_lossy = assemble_model(catalog_get("five_qubit"), lossy);
  CHECK(five_lossy.lindblads.size() == 8 + 16);

  // Omega = 0 drops the H section from the dump.
  ModelParams quiet = five_params;
  quiet.omega = 0.0;
  const auto dump = dump_model(assemble_model(catalog_get("five_qubit"), quiet));
  CHECK(dump.find("H =") == std::string::npos);
}

TEST_CASE("encoded state with all relays latched is stationary at zero noise") {
  for (const auto& name : catalog_names()) {
    // Dense check is affordable for the two smallest codes only.
    if (name != "bitflip_three" && name != "five_qubit") continue;
    const auto& code = catalog_get(name);
    ModelParams params;
    params.omega = 5.0;
    params.alpha = 1.5;
    const auto model = assemble_model(code, params);

    const auto dim = static_cast<Eigen::Index>(model.dimension());
    const auto relay_dim = Eigen::Index(1) << model.n_relays;
    Mat proj = Mat::Identity(Eigen::Index(1) << code.n_qubits,
                             Eigen::Index(1) << code.n_qubits);
    for (const auto& factor : logical_projector(code, "zero")) {
      proj = proj * 0.5 *
             (Mat::Identity(proj.rows(), proj.rows()) +
              double(factor.sign) * aqm::testing::dense_pauli(factor.op));
    }
    Eigen::VectorXcd reg = proj.col(0);
    reg.normalize();
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    for (Eigen::Index r = 0; r < reg.size(); ++r)
      psi(r * relay_dim + (relay_dim - 1)) = reg(r);

    Mat h = dense_hamiltonian(model);
    CHECK((h * psi).norm() < 1e-12);
    for (const auto& lop : model.lindblads) {
      Mat l = dense_lindblad(lop, model.n_register, model.n_relays);
      Eigen::VectorXcd image = l * psi;
      const std::complex<double> overlap = psi.adjoint() * image;
      CHECK((image - overlap * psi).norm() < 1e-10);
    }
  }
}
