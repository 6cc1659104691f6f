#include "metrics.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <stdexcept>

namespace aqm {

double fidelity_strict(const cvec& psi, const cvec& register_factor,
                       int n_relays) {
  const std::size_t relay_dim = std::size_t{1} << n_relays;
  if (register_factor.size() * relay_dim != psi.size())
    throw std::invalid_argument("state/register dimension mismatch");
  double total = 0.0;
  for (std::size_t c = 0; c < relay_dim; ++c) {
    cplx overlap{0.0, 0.0};
    for (std::size_t r = 0; r < register_factor.size(); ++r) {
      overlap += std::conj(register_factor[r]) * psi[r * relay_dim + c];
    }
    total += std::norm(overlap);
  }
  return total;
}

SubsystemProjector::SubsystemProjector(const StabilizerCode& code,
                                       const std::string& logical_state,
                                       int n_relays) {
  dim_bits_ = code.n_qubits + n_relays;
  for (const auto& factor : logical_projector(code, logical_state)) {
    ModelTerm term;
    term.coeff = factor.sign;
    term.pauli = factor.op;
    auto kernels = compile_term(term, code.n_qubits, n_relays);
    factors_.push_back(kernels.front());
  }
}

void SubsystemProjector::apply(const cvec& psi, cvec& out) const {
  out = psi;
  cvec scratch(psi.size());
  CompiledOp op;
  op.dim_bits = dim_bits_;
  op.kernels.resize(1);
  for (const auto& k : factors_) {
    // out <- (out + k out) / 2
    std::fill(scratch.begin(), scratch.end(), cplx{0.0, 0.0});
    op.kernels[0] = k;
    apply_op(op, out, scratch);
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = 0.5 * (out[i] + scratch[i]);
  }
}

double SubsystemProjector::expectation(const cvec& psi) const {
  cvec projected;
  apply(psi, projected);
  double value = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i)
    value += (std::conj(psi[i]) * projected[i]).real();
  return value;
}

std::vector<double> f_star(const std::vector<double>& trace, double sample_dt,
                           double tau) {
  if (tau < 0.0) throw std::invalid_argument("tau must be >= 0");
  if (trace.empty()) return {};
  const double horizon = sample_dt * static_cast<double>(trace.size() - 1);
  if (tau > horizon + 1e-12)
    throw std::invalid_argument("tau exceeds the trace horizon");
  const std::size_t window =
      static_cast<std::size_t>(std::floor(tau / sample_dt + 1e-9));
  const std::size_t n_out = trace.size() - window;

  std::vector<double> out(n_out);
  std::deque<std::size_t> candidates;  // indices with decreasing values
  for (std::size_t j = 0; j < trace.size(); ++j) {
    while (!candidates.empty() && trace[candidates.back()] <= trace[j])
      candidates.pop_back();
    candidates.push_back(j);
    if (j + 1 >= window + 1) {
      const std::size_t i = j - window;
      while (candidates.front() < i) candidates.pop_front();
      out[i] = trace[candidates.front()];
    }
  }
  return out;
}

std::string format_tau(double tau) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", tau);
  return buf;
}

EnsembleResult ensemble_average(const std::vector<TrajectoryRecord>& records,
                                const std::vector<std::string>& metric_names,
                                const std::vector<double>& taus) {
  if (records.empty()) throw std::invalid_argument("no trajectory records");
  const double sample_dt = records.front().sample_dt;
  const std::size_t n_samples = records.front().metric_traces.front().size();
  for (const auto& rec : records) {
    if (rec.sample_dt != sample_dt ||
        rec.metric_traces.size() != metric_names.size())
      throw std::invalid_argument("trajectory grids do not match");
    for (const auto& trace : rec.metric_traces) {
      if (trace.size() != n_samples)
        throw std::invalid_argument("trajectory grids do not match");
    }
  }

  EnsembleResult result;
  result.sample_dt = sample_dt;
  result.n_samples = static_cast<int>(n_samples);
  result.n_trajectories = static_cast<int>(records.size());

  auto reduce = [&](const std::string& name,
                    auto&& trace_of) {  // trace_of(record) -> vector<double>
    ResultColumn col;
    col.name = name;
    std::vector<std::vector<double>> traces;
    traces.reserve(records.size());
    for (const auto& rec : records) traces.push_back(trace_of(rec));
    const std::size_t len = traces.front().size();
    col.mean.assign(len, 0.0);
    col.std_error.assign(len, 0.0);
    for (const auto& t : traces) {
      for (std::size_t i = 0; i < len; ++i) col.mean[i] += t[i];
    }
    const double n = static_cast<double>(traces.size());
    for (std::size_t i = 0; i < len; ++i) col.mean[i] /= n;
    if (traces.size() > 1) {
      for (const auto& t : traces) {
        for (std::size_t i = 0; i < len; ++i) {
          const double d = t[i] - col.mean[i];
          col.std_error[i] += d * d;
        }
      }
      for (std::size_t i = 0; i < len; ++i)
        col.std_error[i] = std::sqrt(col.std_error[i] / (n - 1.0) / n);
    }
    result.columns.push_back(std::move(col));
  };

  for (std::size_t m = 0; m < metric_names.size(); ++m) {
    reduce(metric_names[m],
           [m](const TrajectoryRecord& rec) { return rec.metric_traces[m]; });
  }
  for (double tau : taus) {
    reduce("Fstar_" + format_tau(tau), [&](const TrajectoryRecord& rec) {
      return f_star(rec.metric_traces.front(), sample_dt, tau);
    });
  }
  return result;
}

}  // namespace aqm
