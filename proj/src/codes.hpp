#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pauli.hpp"

namespace aqm {

// A stabilizer (or subsystem) code from the catalog. Stabilizer order is
// load-bearing: relay n is permanently associated with stabilizers[n-1].
struct StabilizerCode {
  std::string name;
  int n_qubits = 0;
  std::vector<PauliString> stabilizers;
  std::vector<PauliString> gauge_generators;  // empty for non-subsystem codes
  PauliString logical_x{1};
  PauliString logical_z{1};
  // Designed single-qubit error set (all of X/Y/Z per qubit except for
  // codes that protect against fewer error types).
  std::vector<PauliString> correctable_errors;
  // Default "geometrically simple" probe scattering order per stabilizer.
  std::vector<std::vector<int>> naive_routes;

  int n_stabilizers() const { return static_cast<int>(stabilizers.size()); }
};

struct SyndromeVector {
  std::vector<int> values;  // entries are +1 or -1, one per stabilizer
  bool operator==(const SyndromeVector&) const = default;
};

enum class ErrorTag { Harmless, Correctable, Uncorrectable };

struct ErrorClass {
  ErrorTag tag = ErrorTag::Uncorrectable;
  // (single-qubit error, gauge/stabilizer remainder); the remainder alone
  // for HARMLESS, absent for UNCORRECTABLE.
  std::optional<std::pair<PauliString, PauliString>> factorization;
};

const char* error_tag_name(ErrorTag tag);

// Catalog access. Returned references are to immutable singletons.
const StabilizerCode& catalog_get(const std::string& name);
std::vector<std::string> catalog_names();

SyndromeVector syndrome(const StabilizerCode& code, const PauliString& error);

struct SyndromeRow {
  std::string label;
  SyndromeVector syndrome;
};

// Rows X1..XQ, Z1..ZQ, Y1..YQ.
std::vector<SyndromeRow> syndrome_table(const StabilizerCode& code);

// One row per line, "X1 + + + - - -".
std::string render_syndrome_table(const StabilizerCode& code);

// S_X = stabilizer indices (1-based) whose syndromes locate X errors (the
// Z-type generators); S_Z analogously. Empty optional if some stabilizer
// mixes X and Z factors.
struct SeparabilityPartition {
  std::vector<int> x_locating;  // S_X
  std::vector<int> z_locating;  // S_Z
};
std::optional<SeparabilityPartition> is_separable(const StabilizerCode& code);

ErrorClass classify_operator(const StabilizerCode& code, const PauliString& p);
// Variant reusing a prebuilt span of gauge ∪ stabilizer generators.
ErrorClass classify_operator(const StabilizerCode& code, const PauliString& p,
                             const SymplecticSpan& harmless_span);
SymplecticSpan harmless_group_span(const StabilizerCode& code);

// Symbolic projector: product of (I + sign*op)/2 factors over the
// stabilizers plus one logical factor. Identity on the gauge subsystem.
struct ProjectorFactor {
  PauliString op;
  int sign;  // +1 or -1
};
std::vector<ProjectorFactor> logical_projector(const StabilizerCode& code,
                                               const std::string& logical_state);

}  // namespace aqm
