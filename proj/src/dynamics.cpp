#include "dynamics.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "rng.hpp"

namespace aqm {

namespace {

constexpr double kRatePerStep = 0.05;  // (max total jump rate) * dt bound
constexpr double kNormFloor = 1e-300;

double norm2(const cvec& v) {
  double s = 0.0;
  for (const auto& a : v) s += std::norm(a);
  return s;
}

void scale(cvec& v, double s) {
  for (auto& a : v) a *= s;
}

}  // namespace

InitialState encode_initial_state(const StabilizerCode& code,
                                  const std::string& logical_state,
                                  int n_relays) {
  const std::size_t reg_dim = std::size_t{1} << code.n_qubits;
  const auto factors = logical_projector(code, logical_state);

  // Project successive fiducial basis states until one survives.
  CompiledOp op;
  op.dim_bits = code.n_qubits;
  op.kernels.resize(1);
  cvec reg, scratch(reg_dim);
  double nrm = 0.0;
  for (std::size_t fiducial = 0; fiducial < reg_dim; ++fiducial) {
    reg.assign(reg_dim, cplx{0.0, 0.0});
    reg[fiducial] = 1.0;
    for (const auto& factor : factors) {
      ModelTerm term;
      term.coeff = factor.sign;
      term.pauli = factor.op;
      op.kernels[0] = compile_term(term, code.n_qubits, 0).front();
      std::fill(scratch.begin(), scratch.end(), cplx{0.0, 0.0});
      apply_op(op, reg, scratch);
      for (std::size_t i = 0; i < reg_dim; ++i)
        reg[i] = 0.5 * (reg[i] + scratch[i]);
    }
    nrm = std::sqrt(norm2(reg));
    if (nrm > 1e-9) break;
  }
  if (nrm <= 1e-9)
    throw std::runtime_error("logical projector annihilates every basis state");
  scale(reg, 1.0 / nrm);

  InitialState out;
  out.register_factor = reg;
  const std::size_t relay_dim = std::size_t{1} << n_relays;
  out.full.assign(reg_dim * relay_dim, cplx{0.0, 0.0});
  const std::size_t all_h = relay_dim - 1;
  for (std::size_t r = 0; r < reg_dim; ++r)
    out.full[r * relay_dim + all_h] = reg[r];
  return out;
}

double CompiledModel::default_dt() const {
  double dt = 1.0;
  if (jump_rate_bound > 0.0) dt = std::min(dt, kRatePerStep / jump_rate_bound);
  if (h_norm_bound > 0.0) dt = std::min(dt, 0.5 / h_norm_bound);
  return dt;
}

CompiledModel compile_model(const MemoryModel& model) {
  CompiledModel cm;
  cm.n_register = model.n_register;
  cm.n_relays = model.n_relays;
  cm.dim_bits = model.dimension_bits();

  cm.hamiltonian = compile_terms(model.hamiltonian, cm.n_register, cm.n_relays);
  merge_kernels(cm.hamiltonian.kernels);

  cm.ksum.dim_bits = cm.dim_bits;
  for (const auto& lop : model.lindblads) {
    CompiledOp cl = compile_lindblad(lop, cm.n_register, cm.n_relays);
    merge_kernels(cl.kernels);
    // K += L^dagger L, symbolically.
    for (const auto& ka : cl.kernels) {
      const Kernel adj = kernel_adjoint(ka);
      for (const auto& kb : cl.kernels) {
        if (auto prod = kernel_product(adj, kb)) cm.ksum.kernels.push_back(*prod);
      }
    }
    cm.lindblads.push_back(std::move(cl));
  }
  merge_kernels(cm.ksum.kernels);

  cm.drift.dim_bits = cm.dim_bits;
  for (const auto& k : cm.hamiltonian.kernels) {
    Kernel d = k;
    d.coeff *= cplx{0.0, -1.0};
    cm.drift.kernels.push_back(d);
  }
  for (const auto& k : cm.ksum.kernels) {
    Kernel d = k;
    d.coeff *= -0.5;
    cm.drift.kernels.push_back(d);
  }
  merge_kernels(cm.drift.kernels);

  cm.jump_rate_bound = op_norm_bound(cm.ksum);
  cm.h_norm_bound = op_norm_bound(cm.hamiltonian);
  return cm;
}

namespace {

// RK4 work area sized once per trajectory.
struct Rk4Scratch {
  cvec k1, k2, k3, k4, stage, out;
  explicit Rk4Scratch(std::size_t dim)
      : k1(dim), k2(dim), k3(dim), k4(dim), stage(dim), out(dim) {}
};

void drift_rhs(const CompiledOp& drift, const cvec& psi, cvec& dpsi) {
  std::fill(dpsi.begin(), dpsi.end(), cplx{0.0, 0.0});
  apply_op(drift, psi, dpsi);
}

// One RK4 step of width h for psi' = D psi; result written to out.
void rk4_step(const CompiledOp& drift, const cvec& psi, double h,
              Rk4Scratch& s, cvec& out) {
  const std::size_t dim = psi.size();
  drift_rhs(drift, psi, s.k1);
  for (std::size_t i = 0; i < dim; ++i)
    s.stage[i] = psi[i] + 0.5 * h * s.k1[i];
  drift_rhs(drift, s.stage, s.k2);
  for (std::size_t i = 0; i < dim; ++i)
    s.stage[i] = psi[i] + 0.5 * h * s.k2[i];
  drift_rhs(drift, s.stage, s.k3);
  for (std::size_t i = 0; i < dim; ++i) s.stage[i] = psi[i] + h * s.k3[i];
  drift_rhs(drift, s.stage, s.k4);
  for (std::size_t i = 0; i < dim; ++i) {
    out[i] = psi[i] +
             (h / 6.0) * (s.k1[i] + 2.0 * s.k2[i] + 2.0 * s.k3[i] + s.k4[i]);
  }
}

class MetricEvaluator {
 public:
  MetricEvaluator(const CompiledModel& model, const InitialState& initial,
                  const StabilizerCode& code, const MetricRequest& request)
      : n_relays_(model.n_relays), register_factor_(initial.register_factor) {
    for (const auto& kind : request.kinds) {
      if (kind == "strict") {
        kinds_.push_back(Kind::Strict);
      } else if (kind == "subsystem") {
        kinds_.push_back(Kind::Subsystem);
        if (!subsystem_) {
          subsystem_.emplace(code, request.logical_state, model.n_relays);
        }
      } else {
        throw std::invalid_argument("unknown metric kind '" + kind + "'");
      }
    }
    if (kinds_.empty()) throw std::invalid_argument("no metrics requested");
  }

  std::size_t count() const { return kinds_.size(); }

  void sample(const cvec& psi_normalized, std::vector<std::vector<double>>& out,
              std::size_t sample_index) const {
    for (std::size_t m = 0; m < kinds_.size(); ++m) {
      double value = 0.0;
      switch (kinds_[m]) {
        case Kind::Strict:
          value = fidelity_strict(psi_normalized, register_factor_, n_relays_);
          break;
        case Kind::Subsystem:
          value = subsystem_->expectation(psi_normalized);
          break;
      }
      out[m][sample_index] = value;
    }
  }

 private:
  enum class Kind { Strict, Subsystem };
  int n_relays_;
  cvec register_factor_;
  std::vector<Kind> kinds_;
  mutable std::optional<SubsystemProjector> subsystem_;
};

struct JumpContext {
  const CompiledModel& model;
  Rng& rng;
  std::vector<std::pair<double, int>>* jump_log;
  cvec scratch;
  explicit JumpContext(const CompiledModel& m, Rng& r,
                       std::vector<std::pair<double, int>>* log)
      : model(m), rng(r), jump_log(log), scratch(m.dimension()) {}
};

// <psi|K|psi> — the total jump rate at psi (not normalized).
double total_jump_weight(const CompiledModel& model, const cvec& psi,
                         cvec& scratch) {
  std::fill(scratch.begin(), scratch.end(), cplx{0.0, 0.0});
  apply_op(model.ksum, psi, scratch);
  double w = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i)
    w += (std::conj(psi[i]) * scratch[i]).real();
  return w;
}

// Applies one jump at time t: selects the channel with probability
// proportional to |L_i psi|^2, replaces psi by the normalized jumped state.
void apply_jump(JumpContext& ctx, cvec& psi, double t) {
  const double total = total_jump_weight(ctx.model, psi, ctx.scratch);
  if (!(total > 0.0) || !std::isfinite(total))
    throw std::runtime_error("zero total jump weight at a triggered jump");
  const double target = ctx.rng.next_uniform() * total;

  double cumulative = 0.0;
  int chosen = -1;
  double chosen_norm2 = 0.0;
  for (std::size_t i = 0; i < ctx.model.lindblads.size(); ++i) {
    std::fill(ctx.scratch.begin(), ctx.scratch.end(), cplx{0.0, 0.0});
    apply_op(ctx.model.lindblads[i], psi, ctx.scratch);
    const double w = norm2(ctx.scratch);
    cumulative += w;
    if (w > 0.0) {
      chosen = static_cast<int>(i);
      chosen_norm2 = w;
    }
    if (cumulative >= target && w > 0.0) break;
  }
  if (chosen < 0)
    throw std::runtime_error("zero total jump weight at a triggered jump");

  // scratch holds L_chosen psi (the loop exits right after computing it,
  // or falls through with the last nonzero channel recomputed below).
  if (cumulative < target) {
    std::fill(ctx.scratch.begin(), ctx.scratch.end(), cplx{0.0, 0.0});
    apply_op(ctx.model.lindblads[chosen], psi, ctx.scratch);
    chosen_norm2 = norm2(ctx.scratch);
  }
  psi = ctx.scratch;
  scale(psi, 1.0 / std::sqrt(chosen_norm2));
  if (ctx.jump_log) ctx.jump_log->emplace_back(t, chosen + 1);
}

}  // namespace

TrajectoryRecord run_trajectory(const CompiledModel& model,
                                const InitialState& initial,
                                const StabilizerCode& code,
                                const MetricRequest& metrics, double t_final,
                                double dt, double sample_dt, std::uint64_t seed,
                                std::uint64_t stream, bool record_jumps) {
  if (dt <= 0.0) dt = model.default_dt();
  if (sample_dt <= 0.0 || t_final <= 0.0)
    throw std::invalid_argument("t_final and sample_dt must be > 0");
  if (dt > sample_dt) dt = sample_dt;
  const auto steps_per_sample =
      static_cast<std::size_t>(std::ceil(sample_dt / dt - 1e-9));
  dt = sample_dt / static_cast<double>(steps_per_sample);
  const auto n_intervals =
      static_cast<std::size_t>(std::llround(t_final / sample_dt));
  if (std::abs(n_intervals * sample_dt - t_final) >
      1e-9 * std::max(1.0, t_final))
    throw std::invalid_argument("sample_dt must divide t_final");

  const std::size_t dim = model.dimension();
  if (initial.full.size() != dim)
    throw std::invalid_argument("initial state dimension mismatch");

  MetricEvaluator evaluator(model, initial, code, metrics);
  TrajectoryRecord record;
  record.sample_dt = sample_dt;
  record.metric_traces.assign(evaluator.count(),
                              std::vector<double>(n_intervals + 1, 0.0));

  Rng rng(seed, stream);
  JumpContext jump_ctx(model, rng,
                       record_jumps ? &record.jumps : nullptr);
  Rk4Scratch rk(dim);
  cvec psi = initial.full;
  cvec normalized(dim), trial(dim), refine(dim);

  double threshold = rng.next_uniform();
  evaluator.sample(psi, record.metric_traces, 0);

  for (std::size_t interval = 0; interval < n_intervals; ++interval) {
    for (std::size_t step = 0; step < steps_per_sample; ++step) {
      double t = (interval * steps_per_sample + step) * dt;
      double h = dt;
      // Integrate [t, t+h], processing as many jumps as trigger inside.
      while (h > 1e-15 * dt) {
        rk4_step(model.drift, psi, h, rk, trial);
        const double s_end = norm2(trial);
        if (!std::isfinite(s_end))
          throw std::runtime_error(
              "integration blow-up (non-finite amplitudes); dt too large");
        if (s_end > threshold) {
          psi.swap(trial);
          t += h;
          h = 0.0;
          break;
        }
        // The threshold is crossed inside (t, t+h]: locate the crossing
        // with a cubic-Hermite guess refined by bisection, re-integrating
        // from the step start each probe.
        const double s_start = norm2(psi);
        const double sp_start = -total_jump_weight(model, psi, jump_ctx.scratch);
        double lo = 0.0, hi = h;
        double tau = hi;
        // Hermite guess using s(0), s'(0), s(h).
        {
          const double drop = s_start - s_end;
          if (drop > 0.0) {
            const double linear = (s_start - threshold) / drop * h;
            tau = std::min(std::max(linear, 1e-3 * h), h);
            if (sp_start < 0.0) {
              const double exp_guess =
                  std::log(s_start / threshold) / (-sp_start / s_start);
              if (std::isfinite(exp_guess) && exp_guess > 0.0 && exp_guess < h)
                tau = 0.5 * (tau + exp_guess);
            }
          }
        }
        for (int iter = 0; iter < 40; ++iter) {
          rk4_step(model.drift, psi, tau, rk, refine);
          const double s_tau = norm2(refine);
          if (s_tau > threshold) {
            lo = tau;
          } else {
            hi = tau;
          }
          if (hi - lo <= 1e-4 * h) break;
          tau = 0.5 * (lo + hi);
        }
        // Land just past the crossing so the state is at or below threshold.
        rk4_step(model.drift, psi, hi, rk, refine);
        psi.swap(refine);
        if (norm2(psi) < kNormFloor)
          throw std::runtime_error("state norm underflow before jump");
        t += hi;
        h -= hi;
        apply_jump(jump_ctx, psi, t);
        threshold = rng.next_uniform();
      }
    }
    const double nrm = std::sqrt(norm2(psi));
    normalized = psi;
    scale(normalized, 1.0 / nrm);
    evaluator.sample(normalized, record.metric_traces, interval + 1);
  }
  return record;
}

EnsembleResult run_ensemble(const CompiledModel& model,
                            const InitialState& initial,
                            const StabilizerCode& code,
                            const MetricRequest& metrics, double t_final,
                            double dt, double sample_dt, int n_trajectories,
                            std::uint64_t seed, int workers) {
  if (n_trajectories < 1)
    throw std::invalid_argument("n_trajectories must be >= 1");
  if (workers <= 0)
    workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min(workers, n_trajectories);

  std::vector<TrajectoryRecord> records(n_trajectories);
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto work = [&]() {
    while (true) {
      const int index = next.fetch_add(1);
      if (index >= n_trajectories) break;
      try {
        records[index] =
            run_trajectory(model, initial, code, metrics, t_final, dt,
                           sample_dt, seed, static_cast<std::uint64_t>(index),
                           /*record_jumps=*/false);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(n_trajectories);
        break;
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  EnsembleResult result = ensemble_average(records, metrics.kinds, metrics.taus);
  result.seed = seed;
  return result;
}

std::vector<Eigen::MatrixXcd> integrate_master_equation(
    const MemoryModel& model, const Eigen::MatrixXcd& rho0, double t_final,
    double dt, double sample_dt) {
  if (model.dimension_bits() > 10)
    throw std::invalid_argument("dense integration limited to dimension 2^10");
  const auto dim = static_cast<Eigen::Index>(model.dimension());
  if (rho0.rows() != dim || rho0.cols() != dim)
    throw std::invalid_argument("rho0 dimension mismatch");

  const CompiledModel cm = compile_model(model);
  const Eigen::MatrixXcd h_dense = dense_matrix(cm.hamiltonian);
  std::vector<Eigen::MatrixXcd> ls, ls_dag;
  for (const auto& l : cm.lindblads) {
    ls.push_back(dense_matrix(l));
    ls_dag.push_back(ls.back().adjoint());
  }
  Eigen::MatrixXcd kdense = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t i = 0; i < ls.size(); ++i) kdense += ls_dag[i] * ls[i];

  auto liouvillian = [&](const Eigen::MatrixXcd& rho) {
    Eigen::MatrixXcd drho = cplx{0.0, -1.0} * (h_dense * rho - rho * h_dense);
    for (std::size_t i = 0; i < ls.size(); ++i)
      drho += ls[i] * rho * ls_dag[i];
    drho -= 0.5 * (kdense * rho + rho * kdense);
    return drho;
  };

  const auto steps_per_sample =
      static_cast<std::size_t>(std::ceil(sample_dt / dt - 1e-9));
  const double h = sample_dt / static_cast<double>(steps_per_sample);
  const auto n_intervals =
      static_cast<std::size_t>(std::llround(t_final / sample_dt));
  if (std::abs(n_intervals * sample_dt - t_final) >
      1e-9 * std::max(1.0, t_final))
    throw std::invalid_argument("sample_dt must divide t_final");

  std::vector<Eigen::MatrixXcd> samples;
  Eigen::MatrixXcd rho = rho0;
  samples.push_back(rho);
  for (std::size_t interval = 0; interval < n_intervals; ++interval) {
    for (std::size_t step = 0; step < steps_per_sample; ++step) {
      const Eigen::MatrixXcd q1 = liouvillian(rho);
      const Eigen::MatrixXcd q2 = liouvillian(rho + 0.5 * h * q1);
      const Eigen::MatrixXcd q3 = liouvillian(rho + 0.5 * h * q2);
      const Eigen::MatrixXcd q4 = liouvillian(rho + h * q3);
      rho += (h / 6.0) * (q1 + 2.0 * q2 + 2.0 * q3 + q4);
      rho = 0.5 * (rho + rho.adjoint().eval());
      const double trace_drift = std::abs(rho.trace().real() - 1.0);
      if (trace_drift > 1e-8)
        throw std::runtime_error("trace drift beyond tolerance; dt too large");
    }
    samples.push_back(rho);
  }
  return samples;
}

}  // namespace aqm
