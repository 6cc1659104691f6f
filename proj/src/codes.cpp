#include "codes.hpp"

#include <map>
#include <stdexcept>

namespace aqm {

namespace {

PauliString P(const std::string& spec, int n) {
  return PauliString::from_string(spec, n);
}

std::vector<PauliString> all_single_qubit_errors(int n) {
  std::vector<PauliString> out;
  for (char letter : {'X', 'Z', 'Y'}) {
    for (int q = 1; q <= n; ++q) out.push_back(PauliString::single(letter, q, n));
  }
  return out;
}

void validate(const StabilizerCode& code) {
  for (std::size_t i = 0; i < code.stabilizers.size(); ++i) {
    for (std::size_t j = i + 1; j < code.stabilizers.size(); ++j) {
      if (!code.stabilizers[i].commutes_with(code.stabilizers[j]))
        throw std::logic_error(code.name + ": stabilizers do not commute");
    }
  }
  for (const auto& g : code.gauge_generators) {
    for (const auto& m : code.stabilizers) {
      if (!g.commutes_with(m))
        throw std::logic_error(code.name + ": gauge generator anticommutes");
    }
  }
  for (const auto& m : code.stabilizers) {
    if (!code.logical_x.commutes_with(m) || !code.logical_z.commutes_with(m))
      throw std::logic_error(code.name + ": logical operator anticommutes");
  }
  for (const auto& g : code.gauge_generators) {
    if (!code.logical_x.commutes_with(g) || !code.logical_z.commutes_with(g))
      throw std::logic_error(code.name + ": logical operator not bare");
  }
  if (code.logical_x.commutes_with(code.logical_z))
    throw std::logic_error(code.name + ": logical X and Z commute");
  if (code.naive_routes.size() != code.stabilizers.size())
    throw std::logic_error(code.name + ": naive route count mismatch");
  for (std::size_t i = 0; i < code.stabilizers.size(); ++i) {
    if (code.naive_routes[i].size() != code.stabilizers[i].support().size())
      throw std::logic_error(code.name + ": naive route does not cover support");
  }
}

std::vector<int> descending_support(const PauliString& p) {
  auto s = p.support();
  return {s.rbegin(), s.rend()};
}

StabilizerCode make_bitflip_three() {
  StabilizerCode code;
  code.name = "bitflip_three";
  code.n_qubits = 3;
  code.stabilizers = {P("Z1Z2", 3), P("Z2Z3", 3)};
  code.logical_x = P("X1X2X3", 3);
  code.logical_z = P("Z1Z2Z3", 3);
  for (int q = 1; q <= 3; ++q)
    code.correctable_errors.push_back(PauliString::single('X', q, 3));
  for (const auto& m : code.stabilizers)
    code.naive_routes.push_back(descending_support(m));
  return code;
}

StabilizerCode make_five_qubit() {
  StabilizerCode code;
  code.name = "five_qubit";
  code.n_qubits = 5;
  code.stabilizers = {P("Z2X3X4Z5", 5), P("Z1Z3X4X5", 5), P("X1Z2Z4X5", 5),
                      P("X1X2Z3Z5", 5)};
  code.logical_x = P("X1X2X3X4X5", 5);
  code.logical_z = P("Z1Z2Z3Z4Z5", 5);
  code.correctable_errors = all_single_qubit_errors(5);
  for (const auto& m : code.stabilizers)
    code.naive_routes.push_back(descending_support(m));
  return code;
}

StabilizerCode make_steane_seven() {
  StabilizerCode code;
  code.name = "steane_seven";
  code.n_qubits = 7;
  code.stabilizers = {P("X1X2X3X4", 7), P("X1X2X5X6", 7), P("X1X3X5X7", 7),
                      P("Z1Z2Z3Z4", 7), P("Z1Z2Z5Z6", 7), P("Z1Z3Z5Z7", 7)};
  code.logical_x = P("X1X2X3X4X5X6X7", 7);
  code.logical_z = P("Z1Z2Z3Z4Z5Z6Z7", 7);
  code.correctable_errors = all_single_qubit_errors(7);
  for (const auto& m : code.stabilizers)
    code.naive_routes.push_back(descending_support(m));
  return code;
}

StabilizerCode make_bacon_shor_nine() {
  // Qubits on a 3x3 grid, rows {1,2,3},{4,5,6},{7,8,9}.
  StabilizerCode code;
  code.name = "bacon_shor_nine";
  code.n_qubits = 9;
  code.stabilizers = {P("X1X2X3X4X5X6", 9), P("X4X5X6X7X8X9", 9),
                      P("Z1Z2Z4Z5Z7Z8", 9), P("Z2Z3Z5Z6Z8Z9", 9)};
  code.gauge_generators = {
      P("Z1Z2", 9), P("Z2Z3", 9), P("Z4Z5", 9),
      P("Z5Z6", 9), P("Z7Z8", 9), P("Z8Z9", 9),
      P("X1X4", 9), P("X4X7", 9), P("X2X5", 9),
      P("X5X8", 9), P("X3X6", 9), P("X6X9", 9),
  };
  code.logical_x = P("X1X2X3", 9);
  code.logical_z = P("Z1Z4Z7", 9);
  code.correctable_errors = all_single_qubit_errors(9);
  // Serpentine grid paths: the Z probes snake through column pairs, the X
  // probes through row pairs.
  code.naive_routes = {
      {6, 5, 4, 1, 2, 3},
      {9, 8, 7, 4, 5, 6},
      {8, 5, 2, 1, 4, 7},
      {9, 6, 3, 2, 5, 8},
  };
  return code;
}

const std::map<std::string, StabilizerCode>& catalog() {
  static const std::map<std::string, StabilizerCode> instance = [] {
    std::map<std::string, StabilizerCode> m;
    for (auto&& code : {make_bitflip_three(), make_five_qubit(),
                        make_steane_seven(), make_bacon_shor_nine()}) {
      validate(code);
      m.emplace(code.name, std::move(code));
    }
    return m;
  }();
  return instance;
}

}  // namespace

const char* error_tag_name(ErrorTag tag) {
  switch (tag) {
    case ErrorTag::Harmless:
      return "HARMLESS";
    case ErrorTag::Correctable:
      return "CORRECTABLE";
    case ErrorTag::Uncorrectable:
      return "UNCORRECTABLE";
  }
  return "?";
}

const StabilizerCode& catalog_get(const std::string& name) {
  const auto& m = catalog();
  auto it = m.find(name);
  if (it == m.end())
    throw std::invalid_argument("unknown code '" + name + "'");
  return it->second;
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const auto& [name, code] : catalog()) names.push_back(name);
  return names;
}

SyndromeVector syndrome(const StabilizerCode& code, const PauliString& error) {
  if (error.n_qubits() != code.n_qubits)
    throw std::invalid_argument("error size does not match code register");
  SyndromeVector s;
  s.values.reserve(code.stabilizers.size());
  for (const auto& m : code.stabilizers)
    s.values.push_back(error.commutes_with(m) ? +1 : -1);
  return s;
}

std::vector<SyndromeRow> syndrome_table(const StabilizerCode& code) {
  std::vector<SyndromeRow> rows;
  for (char letter : {'X', 'Z', 'Y'}) {
    for (int q = 1; q <= code.n_qubits; ++q) {
      PauliString e = PauliString::single(letter, q, code.n_qubits);
      rows.push_back({letter + std::to_string(q), syndrome(code, e)});
    }
  }
  return rows;
}

std::string render_syndrome_table(const StabilizerCode& code) {
  std::string out;
  for (const auto& row : syndrome_table(code)) {
    out += row.label;
    for (int v : row.syndrome.values) {
      out += (v > 0) ? " +" : " -";
    }
    out += '\n';
  }
  return out;
}

std::optional<SeparabilityPartition> is_separable(const StabilizerCode& code) {
  SeparabilityPartition part;
  for (int i = 0; i < code.n_stabilizers(); ++i) {
    const auto& m = code.stabilizers[i];
    const bool pure_x = m.z_bits() == 0;
    const bool pure_z = m.x_bits() == 0;
    if (pure_z) {
      part.x_locating.push_back(i + 1);  // Z-type generators see X errors
    } else if (pure_x) {
      part.z_locating.push_back(i + 1);
    } else {
      return std::nullopt;
    }
  }
  return part;
}

SymplecticSpan harmless_group_span(const StabilizerCode& code) {
  SymplecticSpan span(code.n_qubits);
  for (const auto& g : code.gauge_generators) span.add(g);
  for (const auto& m : code.stabilizers) span.add(m);
  return span;
}

ErrorClass classify_operator(const StabilizerCode& code, const PauliString& p) {
  return classify_operator(code, p, harmless_group_span(code));
}

ErrorClass classify_operator(const StabilizerCode& code, const PauliString& p,
                             const SymplecticSpan& harmless_span) {
  if (p.n_qubits() != code.n_qubits)
    throw std::invalid_argument("operator size does not match code register");
  ErrorClass result;
  if (harmless_span.contains(p)) {
    result.tag = ErrorTag::Harmless;
    result.factorization = {{PauliString(code.n_qubits), p}};
    return result;
  }
  for (const auto& e : code.correctable_errors) {
    const PauliString remainder = p * e;
    if (harmless_span.contains(remainder)) {
      result.tag = ErrorTag::Correctable;
      result.factorization = {{e, remainder}};
      return result;
    }
  }
  result.tag = ErrorTag::Uncorrectable;
  return result;
}

std::vector<ProjectorFactor> logical_projector(const StabilizerCode& code,
                                               const std::string& logical_state) {
  std::vector<ProjectorFactor> factors;
  for (const auto& m : code.stabilizers) factors.push_back({m, +1});
  if (logical_state == "zero") {
    factors.push_back({code.logical_z, +1});
  } else if (logical_state == "one") {
    factors.push_back({code.logical_z, -1});
  } else if (logical_state == "plus") {
    factors.push_back({code.logical_x, +1});
  } else if (logical_state == "minus") {
    factors.push_back({code.logical_x, -1});
  } else {
    throw std::invalid_argument("unknown logical state '" + logical_state +
                                "'");
  }
  return factors;
}

}  // namespace aqm
