#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "builder.hpp"
#include "kernels.hpp"
#include "metrics.hpp"

namespace aqm {

// Initial state: (projected register state) ⊗ |h...h>. The register factor
// is kept separately for the strict fidelity metric.
struct InitialState {
  cvec full;             // dimension 2^(Q+N)
  cvec register_factor;  // dimension 2^Q, unit norm
};

InitialState encode_initial_state(const StabilizerCode& code,
                                  const std::string& logical_state,
                                  int n_relays);

// Model compiled for matrix-free evolution. `drift` is -iH - K/2 with
// K = sum_i L_i^dagger L_i merged symbolically.
struct CompiledModel {
  int n_register = 0;
  int n_relays = 0;
  int dim_bits = 0;
  CompiledOp drift;
  CompiledOp hamiltonian;
  CompiledOp ksum;
  std::vector<CompiledOp> lindblads;
  double jump_rate_bound = 0.0;  // operator-norm bound on K
  double h_norm_bound = 0.0;
  std::size_t dimension() const { return std::size_t{1} << dim_bits; }
  // Largest step compatible with the jump-rate and Hamiltonian bounds.
  double default_dt() const;
};

CompiledModel compile_model(const MemoryModel& model);

struct MetricRequest {
  std::vector<std::string> kinds;  // "strict" and/or "subsystem", ordered
  std::vector<double> taus;        // F* windows over the first kind
  std::string logical_state = "zero";
};

// Quantum-jump (Monte Carlo wavefunction) evolution with the waiting-time
// algorithm: RK4 drift of the unnormalized state, jump when |psi|^2 crosses
// a pre-drawn uniform threshold, channel chosen with probability
// proportional to |L_i psi|^2. Metrics sampled on the uniform grid from the
// normalized state.
TrajectoryRecord run_trajectory(const CompiledModel& model,
                                const InitialState& initial,
                                const StabilizerCode& code,
                                const MetricRequest& metrics, double t_final,
                                double dt, double sample_dt, std::uint64_t seed,
                                std::uint64_t stream, bool record_jumps);

// n independent trajectories with per-trajectory streams derived from
// (seed, index); reduction order is fixed by trajectory index, so results
// are identical for any worker count. dt <= 0 selects the default step.
EnsembleResult run_ensemble(const CompiledModel& model,
                            const InitialState& initial,
                            const StabilizerCode& code,
                            const MetricRequest& metrics, double t_final,
                            double dt, double sample_dt, int n_trajectories,
                            std::uint64_t seed, int workers);

// Dense RK4 integration of the master equation
//   rho' = -i[H,rho] + sum_i ( L_i rho L_i^+ - 1/2 {L_i^+ L_i, rho} ).
// Returns rho at the sample times 0, sample_dt, ..., t_final. Enforces
// Hermiticity by symmetrization each step and checks trace preservation.
std::vector<Eigen::MatrixXcd> integrate_master_equation(
    const MemoryModel& model, const Eigen::MatrixXcd& rho0, double t_final,
    double dt, double sample_dt);

}  // namespace aqm
