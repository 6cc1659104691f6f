#include "builder.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace aqm {

namespace {

using std::complex;

constexpr complex<double> kI{0.0, 1.0};

void check_stab_index(const StabilizerCode& code, int stab_index) {
  if (stab_index < 1 || stab_index > code.n_stabilizers())
    throw std::out_of_range("stabilizer index " + std::to_string(stab_index) +
                            " out of range 1.." +
                            std::to_string(code.n_stabilizers()));
}

// Groups the designed errors of one letter into gauge classes and returns
// the lowest-index representative of each class, ascending.
std::vector<PauliString> gauge_class_representatives(
    const StabilizerCode& code, char letter, const SymplecticSpan& harmless) {
  std::vector<PauliString> reps;
  for (const auto& e : code.correctable_errors) {
    if (e.letter_at(e.support().front()) != letter || e.weight() != 1) continue;
    bool equivalent_seen = false;
    for (const auto& r : reps) {
      if (harmless.contains(e * r)) {
        equivalent_seen = true;
        break;
      }
    }
    if (!equivalent_seen) reps.push_back(e);
  }
  return reps;
}

std::vector<RelayFactor> projector_pattern(const SyndromeVector& s,
                                           const std::vector<int>& relays) {
  std::vector<RelayFactor> out;
  for (int r : relays) {
    out.push_back(
        {r, s.values[r - 1] > 0 ? RelayOpKind::ProjH : RelayOpKind::ProjG});
  }
  return out;
}

}  // namespace

NoiseKind noise_kind_from_string(const std::string& s) {
  if (s == "bit_flip") return NoiseKind::BitFlip;
  if (s == "spontaneous") return NoiseKind::Spontaneous;
  if (s == "none") return NoiseKind::None;
  throw std::invalid_argument("unknown noise kind '" + s + "'");
}

const char* noise_kind_name(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::None:
      return "none";
    case NoiseKind::BitFlip:
      return "bit_flip";
    case NoiseKind::Spontaneous:
      return "spontaneous";
  }
  return "?";
}

std::pair<LindbladOp, LindbladOp> build_probe_lindblads(
    const StabilizerCode& code, int stab_index, double alpha) {
  check_stab_index(code, stab_index);
  const PauliString& m = code.stabilizers[stab_index - 1];

  LindbladOp odd;
  odd.scale = alpha;
  odd.scale_label = "alpha";
  odd.terms.push_back(
      {alpha, m, +1, {{stab_index, RelayOpKind::SigmaPlus}}});
  odd.terms.push_back({-alpha, m, -1, {{stab_index, RelayOpKind::ProjG}}});

  LindbladOp even;
  even.scale = alpha;
  even.scale_label = "alpha";
  even.terms.push_back(
      {alpha, m, -1, {{stab_index, RelayOpKind::SigmaMinus}}});
  even.terms.push_back({alpha, m, +1, {{stab_index, RelayOpKind::ProjH}}});

  return {odd, even};
}

std::vector<ModelTerm> build_feedback_hamiltonian(const StabilizerCode& code,
                                                  double omega) {
  const SymplecticSpan harmless = harmless_group_span(code);
  const auto partition = is_separable(code);

  // Which letters carry feedback terms, and which relays condition them.
  std::vector<std::pair<char, std::vector<int>>> sectors;
  if (partition) {
    if (!partition->x_locating.empty()) sectors.push_back({'X', partition->x_locating});
    if (!partition->z_locating.empty()) sectors.push_back({'Z', partition->z_locating});
  } else {
    std::vector<int> all;
    for (int r = 1; r <= code.n_stabilizers(); ++r) all.push_back(r);
    sectors = {{'X', all}, {'Z', all}, {'Y', all}};
  }

  std::vector<ModelTerm> terms;
  for (const auto& [letter, relays] : sectors) {
    std::map<std::vector<int>, PauliString> seen_syndromes;
    for (const auto& e : gauge_class_representatives(code, letter, harmless)) {
      const SyndromeVector s = syndrome(code, e);
      std::vector<int> restricted;
      for (int r : relays) restricted.push_back(s.values[r - 1]);
      auto [it, inserted] = seen_syndromes.emplace(restricted, e);
      if (!inserted) {
        throw std::logic_error(code.name + ": ambiguous syndrome for " +
                               e.unsigned_str() + " and " +
                               it->second.unsigned_str());
      }
      terms.push_back({omega, e, 0, projector_pattern(s, relays)});
    }
  }
  return terms;
}

std::vector<LindbladOp> build_decoherence(NoiseKind kind, double gamma,
                                          int n_qubits) {
  if (gamma < 0.0) throw std::invalid_argument("decoherence rate must be >= 0");
  std::vector<LindbladOp> ops;
  if (kind == NoiseKind::None) return ops;
  const double scale = std::sqrt(gamma);
  for (int q = 1; q <= n_qubits; ++q) {
    LindbladOp op;
    op.scale = scale;
    op.scale_label = "sqrt(Gamma)";
    if (kind == NoiseKind::BitFlip) {
      op.terms.push_back({scale, PauliString::single('X', q, n_qubits), 0, {}});
    } else {  // sqrt(Gamma) (X - iY)
      op.terms.push_back({scale, PauliString::single('X', q, n_qubits), 0, {}});
      op.terms.push_back(
          {-kI * scale, PauliString::single('Y', q, n_qubits), 0, {}});
    }
    ops.push_back(std::move(op));
  }
  return ops;
}

std::vector<LindbladOp> build_loss_lindblads(const PauliString& generator,
                                             const std::vector<int>& order,
                                             double alpha, double theta) {
  auto support = generator.support();
  if (order.size() != support.size())
    throw std::invalid_argument("scattering order must cover the support");
  {
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != support)
      throw std::invalid_argument(
          "scattering order is not a permutation of the support");
  }

  std::vector<LindbladOp> ops;
  const int n = generator.n_qubits();
  PauliString prefix(n);
  std::vector<std::pair<char, int>> factors;
  for (int q : order) {
    const char letter = generator.letter_at(q);
    prefix = prefix * PauliString::single(letter, q, n);
    factors.insert(factors.begin(), {letter, q});
    LindbladOp op;
    op.scale = alpha * theta;
    op.scale_label = "alpha*theta";
    op.terms.push_back({alpha * theta, prefix, 0, {}});
    op.display_factors = factors;
    ops.push_back(std::move(op));
  }
  return ops;
}

MemoryModel assemble_model(const StabilizerCode& code, const ModelParams& params,
                           std::vector<std::vector<int>> routes) {
  if (params.alpha < 0 || params.theta < 0 || params.gamma < 0 ||
      params.relay_dephasing < 0)
    throw std::invalid_argument("rates must be >= 0");
  if (routes.empty()) routes = code.naive_routes;
  if (routes.size() != code.stabilizers.size())
    throw std::invalid_argument("routes must cover every stabilizer");

  MemoryModel model;
  model.code_name = code.name;
  model.n_register = code.n_qubits;
  model.n_relays = code.n_stabilizers();
  model.params = params;
  model.routes = routes;
  model.hamiltonian = build_feedback_hamiltonian(code, params.omega);

  for (int n = 1; n <= code.n_stabilizers(); ++n) {
    auto [odd, even] = build_probe_lindblads(code, n, params.alpha);
    model.lindblads.push_back(std::move(odd));
    model.lindblads.push_back(std::move(even));
  }
  if (params.gamma > 0.0) {
    for (auto& op :
         build_decoherence(params.noise, params.gamma, code.n_qubits))
      model.lindblads.push_back(std::move(op));
  }
  if (params.theta > 0.0) {
    for (int n = 1; n <= code.n_stabilizers(); ++n) {
      for (auto& op : build_loss_lindblads(code.stabilizers[n - 1],
                                           routes[n - 1], params.alpha,
                                           params.theta))
        model.lindblads.push_back(std::move(op));
    }
  }
  if (params.relay_dephasing > 0.0) {
    const double scale = std::sqrt(params.relay_dephasing);
    for (int r = 1; r <= code.n_stabilizers(); ++r) {
      LindbladOp op;
      op.scale = scale;
      op.scale_label = "sqrt(kappa)";
      op.terms.push_back(
          {scale, PauliString(code.n_qubits), 0, {{r, RelayOpKind::ProjH}}});
      op.terms.push_back(
          {-scale, PauliString(code.n_qubits), 0, {{r, RelayOpKind::ProjG}}});
      model.lindblads.push_back(std::move(op));
    }
  }
  for (std::size_t i = 0; i < model.lindblads.size(); ++i)
    model.lindblads[i].label = "L" + std::to_string(i + 1);
  return model;
}

namespace {

std::string render_relay_factors(const std::vector<RelayFactor>& relays) {
  std::string out;
  for (const auto& rf : relays) {
    if (!out.empty()) out += "*";
    switch (rf.kind) {
      case RelayOpKind::SigmaPlus:
        out += "sigma+";
        break;
      case RelayOpKind::SigmaMinus:
        out += "sigma-";
        break;
      case RelayOpKind::ProjG:
        out += "Pg";
        break;
      case RelayOpKind::ProjH:
        out += "Ph";
        break;
    }
    out += "[R" + std::to_string(rf.relay) + "]";
  }
  return out;
}

// Sign/phase of coeff relative to the op scale: "", "-", "i*", "-i*".
std::string relative_sign(complex<double> coeff, double scale) {
  const complex<double> rel = coeff / scale;
  if (std::abs(rel - 1.0) < 1e-12) return "";
  if (std::abs(rel + 1.0) < 1e-12) return "-";
  if (std::abs(rel - kI) < 1e-12) return "i*";
  if (std::abs(rel + kI) < 1e-12) return "-i*";
  throw std::logic_error("term coefficient is not ±scale or ±i*scale");
}

std::string render_term_body(const ModelTerm& term) {
  std::string out = render_relay_factors(term.relays);
  if (term.identity_sign != 0) {
    if (!out.empty()) out += "*";
    out += "(I ";
    out += term.identity_sign > 0 ? '+' : '-';
    out += " " + term.pauli.unsigned_str() + ")";
  } else if (!term.pauli.bits_zero()) {
    std::string pauli = term.pauli.unsigned_str();
    if (out.empty()) {
      out = pauli;
    } else {
      out = pauli + "*" + out;
    }
  } else if (out.empty()) {
    out = "I";
  }
  return out;
}

std::string render_lindblad(const LindbladOp& op) {
  std::string body;
  for (std::size_t i = 0; i < op.terms.size(); ++i) {
    const auto& term = op.terms[i];
    std::string sign = relative_sign(term.coeff, op.scale);
    std::string rendered;
    if (!op.display_factors.empty()) {
      for (const auto& [letter, q] : op.display_factors)
        rendered += letter + std::to_string(q);
    } else {
      rendered = render_term_body(term);
    }
    if (i == 0) {
      body += sign + rendered;
    } else {
      if (sign.rfind('-', 0) == 0) {
        body += " - " + sign.substr(1) + rendered;
      } else {
        body += " + " + sign + rendered;
      }
    }
  }
  return op.label + " = " + op.scale_label + "*( " + body + " )";
}

}  // namespace

std::string dump_model(const MemoryModel& model) {
  std::string out = "# model " + model.code_name +
                    "  Q=" + std::to_string(model.n_register) +
                    "  N=" + std::to_string(model.n_relays) +
                    "  dim=" + std::to_string(model.dimension()) + "\n";
  if (model.params.omega != 0.0 && !model.hamiltonian.empty()) {
    out += "H = Omega*( ";
    for (std::size_t i = 0; i < model.hamiltonian.size(); ++i) {
      if (i) out += " + ";
      out += render_term_body(model.hamiltonian[i]);
    }
    out += " )\n";
  }
  for (const auto& op : model.lindblads) {
    if (op.scale == 0.0) continue;
    out += render_lindblad(op) + "\n";
  }
  return out;
}

}  // namespace aqm
