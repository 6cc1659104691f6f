#pragma once

#include <string>
#include <vector>

#include "codes.hpp"
#include "pauli.hpp"

namespace aqm {

struct RouteCounts {
  int harmless = 0;
  int correctable = 0;
  int uncorrectable = 0;
  bool operator==(const RouteCounts&) const = default;
};

struct RouteReport {
  int stabilizer_index = 0;  // 1-based
  std::vector<int> order;    // scattering order over the support
  std::vector<std::pair<PauliString, ErrorClass>> per_prefix;
  RouteCounts counts;
};

// Prefix products of the generator's single-qubit factors in scattering
// order; the last element is the full generator.
std::vector<PauliString> prefix_operators(const PauliString& generator,
                                          const std::vector<int>& order);

RouteReport score_route(const StabilizerCode& code, int stab_index,
                        const std::vector<int>& order);

enum class RouteStrategy { Exhaustive, Greedy };
RouteStrategy route_strategy_from_string(const std::string& s);

// Order minimizing (uncorrectable, correctable) lexicographically, ties
// broken by lexicographically smallest order. Exhaustive enumerates all k!
// permutations (k <= 12); greedy extends by the best-classified next factor.
RouteReport optimize_route(const StabilizerCode& code, int stab_index,
                           RouteStrategy strategy);

// The catalog's "geometrically simple" default order.
std::vector<int> naive_route(const StabilizerCode& code, int stab_index);

// One line per prefix: "Z4Z7Z8  CORRECTABLE  (= Z4 * gauge[Z7Z8])".
std::string render_route_report(const RouteReport& report);

}  // namespace aqm
