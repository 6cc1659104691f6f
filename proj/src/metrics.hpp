#pragma once

#include <string>
#include <vector>

#include "codes.hpp"
#include "kernels.hpp"

namespace aqm {

// Overlap with the initial register state, relays traced out:
// <psi| (|reg0><reg0| ⊗ I_relays) |psi>.
double fidelity_strict(const cvec& psi, const cvec& register_factor,
                       int n_relays);

// Gauge-invariant variant: expectation of the logical-state projector
// (identity on the gauge subsystem) ⊗ I_relays. Precompiled because it is
// evaluated at every sample time.
class SubsystemProjector {
 public:
  SubsystemProjector(const StabilizerCode& code, const std::string& logical_state,
                     int n_relays);
  double expectation(const cvec& psi) const;
  // proj = P |psi| applied in place of scratch buffers; exposed for tests.
  void apply(const cvec& psi, cvec& out) const;

 private:
  std::vector<Kernel> factors_;  // each (I + k)/2 applied in sequence
  int dim_bits_;
};

// Sliding-window maximum F*_tau[i] = max trace[j] over t_j in [t_i, t_i+tau];
// output covers t_i in [0, T - tau] only. Linear time.
std::vector<double> f_star(const std::vector<double>& trace, double sample_dt,
                           double tau);

struct TrajectoryRecord {
  double sample_dt = 0.0;
  // One trace per metric kind, all on the same uniform grid.
  std::vector<std::vector<double>> metric_traces;
  std::vector<std::pair<double, int>> jumps;  // (time, 1-based channel)
};

struct ResultColumn {
  std::string name;
  std::vector<double> mean;
  std::vector<double> std_error;
};

struct EnsembleResult {
  double sample_dt = 0.0;
  int n_samples = 0;
  int n_trajectories = 0;
  std::uint64_t seed = 0;
  std::vector<ResultColumn> columns;
};

// Pointwise mean and standard error (sample stdev / sqrt(n)), reduced in
// trajectory order. F*_tau columns are computed per trajectory from the
// first metric's trace before averaging.
EnsembleResult ensemble_average(const std::vector<TrajectoryRecord>& records,
                                const std::vector<std::string>& metric_names,
                                const std::vector<double>& taus);

std::string format_tau(double tau);

}  // namespace aqm
