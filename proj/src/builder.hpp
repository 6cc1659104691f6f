#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "codes.hpp"
#include "pauli.hpp"

namespace aqm {

// Relays are two-level controllers with basis {g, h}; h latches the +1
// stabilizer value.
enum class RelayOpKind { SigmaPlus, SigmaMinus, ProjG, ProjH };

struct RelayFactor {
  int relay;  // 1-based
  RelayOpKind kind;
};

// coeff * pauli ⊗ relay-operators, or coeff * (I ± pauli) ⊗ relay-operators
// when identity_sign is ±1.
struct ModelTerm {
  std::complex<double> coeff{1.0, 0.0};
  PauliString pauli{1};
  int identity_sign = 0;  // 0: pauli alone; +1/-1: (I ± pauli)
  std::vector<RelayFactor> relays;
};

struct LindbladOp {
  std::string label;   // "L1", "L2", ... assigned by assemble_model
  double scale = 1.0;  // |coefficient| common to all terms
  std::string scale_label;  // "alpha", "sqrt(Gamma)", "alpha*theta", ...
  std::vector<ModelTerm> terms;
  // For loss operators: single-qubit factors in most-recently-scattered-first
  // order, used for display.
  std::vector<std::pair<char, int>> display_factors;
};

enum class NoiseKind { None, BitFlip, Spontaneous };
NoiseKind noise_kind_from_string(const std::string& s);
const char* noise_kind_name(NoiseKind kind);

struct ModelParams {
  double omega = 0.0;   // feedback strength
  double alpha = 0.0;   // probe amplitude
  double theta = 0.0;   // loss per waveguide segment
  double gamma = 0.0;   // register decoherence rate
  NoiseKind noise = NoiseKind::BitFlip;
  double relay_dephasing = 0.0;  // kappa, optional controller noise
};

struct MemoryModel {
  std::string code_name;
  int n_register = 0;
  int n_relays = 0;
  std::vector<ModelTerm> hamiltonian;
  std::vector<LindbladOp> lindblads;
  ModelParams params;
  std::vector<std::vector<int>> routes;  // scattering order per stabilizer

  int dimension_bits() const { return n_register + n_relays; }
  std::size_t dimension() const { return std::size_t{1} << dimension_bits(); }
};

// The two probe Lindblads for stabilizer M_n:
//   L_odd  = alpha( sigma+ (I + M) - Pg (I - M) )
//   L_even = alpha( sigma- (I - M) + Ph (I + M) )
std::pair<LindbladOp, LindbladOp> build_probe_lindblads(
    const StabilizerCode& code, int stab_index, double alpha);

// One term omega * E * (relay projector pattern of E's syndrome) per
// corrected error; h ↔ +1, g ↔ -1. Separable codes condition X (Z) terms on
// their locating stabilizer subset only; subsystem codes emit one term per
// gauge class. Throws if two inequivalent designed errors share a syndrome.
std::vector<ModelTerm> build_feedback_hamiltonian(const StabilizerCode& code,
                                                  double omega);

std::vector<LindbladOp> build_decoherence(NoiseKind kind, double gamma,
                                          int n_qubits);

// k loss Lindblads for a generator probed in the given scattering order;
// the j-th is alpha*theta times the product of the first j scattered
// factors, the k-th is the full generator.
std::vector<LindbladOp> build_loss_lindblads(const PauliString& generator,
                                             const std::vector<int>& order,
                                             double alpha, double theta);

// Full model: 2N probe Lindblads, Q noise Lindblads, sum(k_n) loss
// Lindblads plus the feedback Hamiltonian. Empty routes → naive routes.
MemoryModel assemble_model(const StabilizerCode& code, const ModelParams& params,
                           std::vector<std::vector<int>> routes = {});

// Deterministic symbolic serialization; zero-coefficient sections are
// omitted (Omega=0 drops H, Gamma=0 the noise lines, theta=0 the loss
// lines). Lines starting with '#' are informational.
std::string dump_model(const MemoryModel& model);

}  // namespace aqm
