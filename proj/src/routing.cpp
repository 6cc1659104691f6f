#include "routing.hpp"

#include <algorithm>
#include <stdexcept>

namespace aqm {

namespace {

void check_stab_index(const StabilizerCode& code, int stab_index) {
  if (stab_index < 1 || stab_index > code.n_stabilizers())
    throw std::out_of_range("stabilizer index " + std::to_string(stab_index) +
                            " out of range 1.." +
                            std::to_string(code.n_stabilizers()));
}

RouteReport score_with_span(const StabilizerCode& code, int stab_index,
                            const std::vector<int>& order,
                            const SymplecticSpan& harmless) {
  RouteReport report;
  report.stabilizer_index = stab_index;
  report.order = order;
  for (const auto& prefix :
       prefix_operators(code.stabilizers[stab_index - 1], order)) {
    ErrorClass cls = classify_operator(code, prefix, harmless);
    switch (cls.tag) {
      case ErrorTag::Harmless:
        ++report.counts.harmless;
        break;
      case ErrorTag::Correctable:
        ++report.counts.correctable;
        break;
      case ErrorTag::Uncorrectable:
        ++report.counts.uncorrectable;
        break;
    }
    report.per_prefix.emplace_back(prefix, std::move(cls));
  }
  return report;
}

bool better(const RouteReport& a, const RouteReport& b) {
  if (a.counts.uncorrectable != b.counts.uncorrectable)
    return a.counts.uncorrectable < b.counts.uncorrectable;
  if (a.counts.correctable != b.counts.correctable)
    return a.counts.correctable < b.counts.correctable;
  return a.order < b.order;
}

}  // namespace

std::vector<PauliString> prefix_operators(const PauliString& generator,
                                          const std::vector<int>& order) {
  auto support = generator.support();
  {
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != support)
      throw std::invalid_argument(
          "scattering order is not a permutation of the support");
  }
  std::vector<PauliString> prefixes;
  PauliString prefix(generator.n_qubits());
  for (int q : order) {
    prefix = prefix * PauliString::single(generator.letter_at(q), q,
                                          generator.n_qubits());
    prefixes.push_back(prefix);
  }
  return prefixes;
}

RouteStrategy route_strategy_from_string(const std::string& s) {
  if (s == "exhaustive") return RouteStrategy::Exhaustive;
  if (s == "greedy") return RouteStrategy::Greedy;
  throw std::invalid_argument("unknown routing strategy '" + s + "'");
}

RouteReport score_route(const StabilizerCode& code, int stab_index,
                        const std::vector<int>& order) {
  check_stab_index(code, stab_index);
  return score_with_span(code, stab_index, order, harmless_group_span(code));
}

std::vector<int> naive_route(const StabilizerCode& code, int stab_index) {
  check_stab_index(code, stab_index);
  return code.naive_routes[stab_index - 1];
}

RouteReport optimize_route(const StabilizerCode& code, int stab_index,
                           RouteStrategy strategy) {
  check_stab_index(code, stab_index);
  const SymplecticSpan harmless = harmless_group_span(code);
  const PauliString& generator = code.stabilizers[stab_index - 1];
  auto support = generator.support();
  const std::size_t k = support.size();

  if (strategy == RouteStrategy::Exhaustive) {
    if (k > 12)
      throw std::invalid_argument("support too large for exhaustive search");
    std::vector<int> order = support;  // ascending = lexicographically first
    RouteReport best;
    bool have_best = false;
    do {
      RouteReport candidate = score_with_span(code, stab_index, order, harmless);
      if (!have_best || better(candidate, best)) {
        best = std::move(candidate);
        have_best = true;
      }
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
  }

  // Greedy: extend the order one factor at a time, preferring the prefix
  // class HARMLESS < CORRECTABLE < UNCORRECTABLE, smallest qubit on ties.
  std::vector<int> order;
  std::vector<int> remaining = support;
  PauliString prefix(generator.n_qubits());
  while (!remaining.empty()) {
    int best_q = -1;
    int best_rank = 99;
    PauliString best_prefix(generator.n_qubits());
    for (int q : remaining) {
      PauliString candidate =
          prefix *
          PauliString::single(generator.letter_at(q), q, generator.n_qubits());
      const ErrorClass cls = classify_operator(code, candidate, harmless);
      const int rank = cls.tag == ErrorTag::Harmless       ? 0
                       : cls.tag == ErrorTag::Correctable  ? 1
                                                           : 2;
      if (rank < best_rank) {
        best_rank = rank;
        best_q = q;
        best_prefix = candidate;
      }
    }
    prefix = best_prefix;
    order.push_back(best_q);
    remaining.erase(std::find(remaining.begin(), remaining.end(), best_q));
  }
  return score_with_span(code, stab_index, order, harmless);
}

std::string render_route_report(const RouteReport& report) {
  std::string out = "stabilizer M" + std::to_string(report.stabilizer_index) +
                    "  order";
  for (std::size_t i = 0; i < report.order.size(); ++i) {
    out += (i == 0 ? " " : "->") + std::to_string(report.order[i]);
  }
  out += "\n";
  for (const auto& [prefix, cls] : report.per_prefix) {
    out += prefix.unsigned_str();
    out += "  ";
    out += error_tag_name(cls.tag);
    if (cls.tag == ErrorTag::Correctable && cls.factorization) {
      out += "  (= " + cls.factorization->first.unsigned_str() + " * gauge[" +
             cls.factorization->second.unsigned_str() + "])";
    } else if (cls.tag == ErrorTag::Harmless) {
      out += "  (gauge/stabilizer element)";
    }
    out += "\n";
  }
  out += "counts: harmless " + std::to_string(report.counts.harmless) +
         ", correctable " + std::to_string(report.counts.correctable) +
         ", uncorrectable " + std::to_string(report.counts.uncorrectable) +
         "\n";
  return out;
}

}  // namespace aqm
