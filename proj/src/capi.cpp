#include "aqm/aqm.h"

#include <cstring>
#include <sstream>
#include <string>

#include "builder.hpp"
#include "codes.hpp"
#include "dynamics.hpp"
#include "metrics.hpp"
#include "routing.hpp"

using namespace aqm;

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

aqm_status fail(aqm_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
aqm_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    return fail(AQM_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(AQM_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(AQM_ERR_RUNTIME, e.what());
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::vector<int>> parse_routes(const StabilizerCode& code,
                                           const std::string& spec) {
  std::vector<std::vector<int>> routes;
  if (spec.empty() || spec == "naive") {
    return code.naive_routes;
  }
  if (spec == "optimal") {
    for (int n = 1; n <= code.n_stabilizers(); ++n)
      routes.push_back(optimize_route(code, n, RouteStrategy::Exhaustive).order);
    return routes;
  }
  for (const auto& group : split(spec, ';')) {
    std::vector<int> order;
    for (const auto& token : split(group, ',')) order.push_back(std::stoi(token));
    routes.push_back(std::move(order));
  }
  if (static_cast<int>(routes.size()) != code.n_stabilizers())
    throw std::invalid_argument("routes must list one order per stabilizer");
  return routes;
}

}  // namespace

struct aqm_code {
  const StabilizerCode* code;
};

struct aqm_model {
  MemoryModel model;
  const StabilizerCode* code;
};

struct aqm_result {
  EnsembleResult ensemble;
  std::vector<std::pair<double, int>> jumps;
};

extern "C" {

const char* aqm_version(void) { return "1.0.0"; }

const char* aqm_status_name(aqm_status status) {
  switch (status) {
    case AQM_OK:
      return "ok";
    case AQM_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case AQM_ERR_UNKNOWN_NAME:
      return "unknown name";
    case AQM_ERR_DIMENSION:
      return "dimension error";
    case AQM_ERR_RUNTIME:
      return "runtime error";
  }
  return "?";
}

const char* aqm_last_error(void) { return g_last_error.c_str(); }

void aqm_string_free(char* s) { std::free(s); }

aqm_status aqm_code_list(char** out) {
  return guarded([&]() {
    if (!out) return fail(AQM_ERR_INVALID_ARGUMENT, "null output");
    std::string joined;
    for (const auto& name : catalog_names()) {
      if (!joined.empty()) joined += ",";
      joined += name;
    }
    *out = dup_string(joined);
    return AQM_OK;
  });
}

aqm_status aqm_code_open(const char* name, aqm_code** out) {
  if (!name || !out) return fail(AQM_ERR_INVALID_ARGUMENT, "null argument");
  try {
    const StabilizerCode& code = catalog_get(name);
    *out = new aqm_code{&code};
    return AQM_OK;
  } catch (const std::exception& e) {
    return fail(AQM_ERR_UNKNOWN_NAME, e.what());
  }
}

void aqm_code_close(aqm_code* code) { delete code; }

int aqm_code_n_qubits(const aqm_code* code) {
  return code ? code->code->n_qubits : 0;
}

int aqm_code_n_stabilizers(const aqm_code* code) {
  return code ? code->code->n_stabilizers() : 0;
}

int aqm_code_n_gauge(const aqm_code* code) {
  return code ? static_cast<int>(code->code->gauge_generators.size()) : 0;
}

aqm_status aqm_code_stabilizer(const aqm_code* code, int index, char** out) {
  return guarded([&]() {
    if (!code || !out) return fail(AQM_ERR_INVALID_ARGUMENT, "null argument");
    if (index < 1 || index > code->code->n_stabilizers())
      return fail(AQM_ERR_INVALID_ARGUMENT, "stabilizer index out of range");
    *out = dup_string(code->code->stabilizers[index - 1].unsigned_str());
    return AQM_OK;
  });
}

aqm_status aqm_code_syndrome(const aqm_code* code, const char* error_op,
                             int* out) {
  return guarded([&]() {
    if (!code || !error_op || !out)
      return fail(AQM_ERR_INVALID_ARGUMENT, "null argument");
    const PauliString error =
        PauliString::from_string(error_op, code->code->n_qubits);
    const SyndromeVector s = syndrome(*code->code, error);
    for (std::size_t i = 0; i < s.values.size(); ++i) out[i] = s.values[i];
    return AQM_OK;
  });
}

aqm_status aqm_code_syndrome_table(const aqm_code* code, char** out) {
  return guarded([&]() {
    if (!code || !out) return fail(AQM_ERR_INVALID_ARGUMENT, "null argument");
    *out = dup_string(render_syndrome_table(*code->code));
    return AQM_OK;
  });
}

aqm_status aqm_code_classify(const aqm_code* code, const char* op, char** out) {
  return guarded([&]() {
    if (!code || !op || !out)
      return fail(AQM_ERR_INVALID_ARGUMENT, "null argument");
    const PauliString p = PauliString::from_string(op, code->code->n_qubits);
    const ErrorClass cls = classify_operator(*code->code, p);
    std::string line = error_tag_name(cls.tag);
    if (cls.tag == ErrorTag::Correctable && cls.factorization) {
      line += "  (= " + cls.factorization->first.unsigned_str() + " * gauge[" +
              cls.factorization->second.unsigned_str() + "])";
    }
    *out = dup_string(line);
    return AQM_OK;
  });
}

aqm_status aqm_route_score(const aqm_code* code, int stab_index,
                           const int* order, int k, char** report,
                           int counts_out[3]) {
  return guarded([&]() {
    if (!code) return fail(AQM_ERR_INVALID_ARGUMENT, "null code");
    std::vector<int> order_vec;
    if (order) {
      order_vec.assign(order, order + k);
    } else {
      order_vec = naive_route(*code->code, stab_index);
    }
    const RouteReport rep = score_route(*code->code, stab_index, order_vec);
    if (report) *report = dup_string(render_route_report(rep));
    if (counts_out) {
      counts_out[0] = rep.counts.harmless;
      counts_out[1] = rep.counts.correctable;
      counts_out[2] = rep.counts.uncorrectable;
    }
    return AQM_OK;
  });
}

aqm_status aqm_route_optimize(const aqm_code* code, int stab_index,
                              const char* strategy, int* order_out, int* k_out,
                              char** report, int counts_out[3]) {
  return guarded([&]() {
    if (!code || !strategy)
      return fail(AQM_ERR_INVALID_ARGUMENT, "null argument");
    const RouteReport rep = optimize_route(
        *code->code, stab_index, route_strategy_from_string(strategy));
    if (order_out) {
      for (std::size_t i = 0; i < rep.order.size() && i < 16; ++i)
        order_out[i] = rep.order[i];
    }
    if (k_out) *k_out = static_cast<int>(rep.order.size());
    if (report) *report = dup_string(render_route_report(rep));
    if (counts_out) {
      counts_out[0] = rep.counts.harmless;
      counts_out[1] = rep.counts.correctable;
      counts_out[2] = rep.counts.uncorrectable;
    }
    return AQM_OK;
  });
}

aqm_status aqm_model_build(const aqm_code* code, const aqm_model_params* params,
                           const char* routes, aqm_model** out) {
  return guarded([&]() {
    if (!code || !params || !out)
      return fail(AQM_ERR_INVALID_ARGUMENT, "null argument");
    ModelParams mp;
    mp.omega = params->omega;
    mp.alpha = params->alpha;
    mp.theta = params->theta;
    mp.gamma = params->gamma;
    mp.noise = noise_kind_from_string(params->noise ? params->noise : "bit_flip");
    mp.relay_dephasing = params->relay_dephasing;
    auto route_vec = parse_routes(*code->code, routes ? routes : "naive");
    auto* handle = new aqm_model{
        assemble_model(*code->code, mp, std::move(route_vec)), code->code};
    *out = handle;
    return AQM_OK;
  });
}

void aqm_model_close(aqm_model* model) { delete model; }

int aqm_model_dimension_bits(const aqm_model* model) {
  return model ? model->model.dimension_bits() : 0;
}

int aqm_model_n_lindblads(const aqm_model* model) {
  return model ? static_cast<int>(model->model.lindblads.size()) : 0;
}

aqm_status aqm_model_dump(const aqm_model* model, char** out) {
  return guarded([&]() {
    if (!model || !out) return fail(AQM_ERR_INVALID_ARGUMENT, "null argument");
    *out = dup_string(dump_model(model->model));
    return AQM_OK;
  });
}

aqm_status aqm_simulate(const aqm_model* model, const aqm_sim_params* params,
                        aqm_result** out) {
  return guarded([&]() {
    if (!model || !params || !out)
      return fail(AQM_ERR_INVALID_ARGUMENT, "null argument");
    MetricRequest request;
    request.logical_state =
        params->logical_state ? params->logical_state : "zero";
    const std::string metric_spec = params->metrics ? params->metrics : "strict";
    for (const auto& kind : split(metric_spec, ',')) request.kinds.push_back(kind);
    if (params->taus) {
      request.taus.assign(params->taus, params->taus + params->n_taus);
    }

    const CompiledModel compiled = compile_model(model->model);
    const InitialState initial = encode_initial_state(
        *model->code, request.logical_state, model->model.n_relays);

    auto* result = new aqm_result;
    if (params->n_trajectories == 1 && params->record_jumps) {
      TrajectoryRecord rec = run_trajectory(
          compiled, initial, *model->code, request, params->t_final, params->dt,
          params->sample_dt, params->seed, 0, /*record_jumps=*/true);
      result->jumps = rec.jumps;
      result->ensemble =
          ensemble_average({rec}, request.kinds, request.taus);
      result->ensemble.seed = params->seed;
    } else {
      result->ensemble = run_ensemble(
          compiled, initial, *model->code, request, params->t_final, params->dt,
          params->sample_dt, params->n_trajectories, params->seed,
          params->workers);
    }
    *out = result;
    return AQM_OK;
  });
}

void aqm_result_close(aqm_result* result) { delete result; }

int aqm_result_n_samples(const aqm_result* result) {
  return result ? result->ensemble.n_samples : 0;
}

double aqm_result_sample_dt(const aqm_result* result) {
  return result ? result->ensemble.sample_dt : 0.0;
}

int aqm_result_n_columns(const aqm_result* result) {
  return result ? static_cast<int>(result->ensemble.columns.size()) : 0;
}

aqm_status aqm_result_column_name(const aqm_result* result, int column,
                                  char** out) {
  return guarded([&]() {
    if (!result || !out) return fail(AQM_ERR_INVALID_ARGUMENT, "null argument");
    if (column < 0 || column >= aqm_result_n_columns(result))
      return fail(AQM_ERR_INVALID_ARGUMENT, "column out of range");
    *out = dup_string(result->ensemble.columns[column].name);
    return AQM_OK;
  });
}

int aqm_result_column_length(const aqm_result* result, int column) {
  if (!result || column < 0 || column >= aqm_result_n_columns(result)) return 0;
  return static_cast<int>(result->ensemble.columns[column].mean.size());
}

aqm_status aqm_result_mean(const aqm_result* result, int column, double* out) {
  return guarded([&]() {
    if (!result || !out) return fail(AQM_ERR_INVALID_ARGUMENT, "null argument");
    if (column < 0 || column >= aqm_result_n_columns(result))
      return fail(AQM_ERR_INVALID_ARGUMENT, "column out of range");
    const auto& mean = result->ensemble.columns[column].mean;
    std::memcpy(out, mean.data(), mean.size() * sizeof(double));
    return AQM_OK;
  });
}

aqm_status aqm_result_std_error(const aqm_result* result, int column,
                                double* out) {
  return guarded([&]() {
    if (!result || !out) return fail(AQM_ERR_INVALID_ARGUMENT, "null argument");
    if (column < 0 || column >= aqm_result_n_columns(result))
      return fail(AQM_ERR_INVALID_ARGUMENT, "column out of range");
    const auto& se = result->ensemble.columns[column].std_error;
    std::memcpy(out, se.data(), se.size() * sizeof(double));
    return AQM_OK;
  });
}

int aqm_result_n_jumps(const aqm_result* result) {
  return result ? static_cast<int>(result->jumps.size()) : 0;
}

aqm_status aqm_result_jumps(const aqm_result* result, double* times,
                            int* channels) {
  return guarded([&]() {
    if (!result || !times || !channels)
      return fail(AQM_ERR_INVALID_ARGUMENT, "null argument");
    for (std::size_t i = 0; i < result->jumps.size(); ++i) {
      times[i] = result->jumps[i].first;
      channels[i] = result->jumps[i].second;
    }
    return AQM_OK;
  });
}

aqm_status aqm_fstar(const double* trace, int n, double sample_dt, double tau,
                     double* out, int* out_n) {
  return guarded([&]() {
    if (!trace || !out || !out_n || n < 1)
      return fail(AQM_ERR_INVALID_ARGUMENT, "null argument");
    const std::vector<double> in(trace, trace + n);
    const std::vector<double> result = f_star(in, sample_dt, tau);
    std::memcpy(out, result.data(), result.size() * sizeof(double));
    *out_n = static_cast<int>(result.size());
    return AQM_OK;
  });
}

}  // extern "C"
