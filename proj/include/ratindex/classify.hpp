#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ratindex/cnf.hpp"
#include "ratindex/grammar.hpp"

namespace ratindex {

/// Every body has at most one nonterminal.
bool is_linear(const Grammar& g);

/// Largest set N_L whose members have only linear bodies u B v or u
/// (u, v terminal strings, B in N_L). Computed as a greatest fixpoint.
std::vector<bool> superlinear_core(const Grammar& g);

/// Checks the two superlinear conditions against `core`: nonterminals outside
/// N_L may only use A -> B C with B in N_L, or A -> αB | Bα | α with B in N_L
/// and α a terminal string.
bool satisfies_superlinear(const Grammar& g, const std::vector<bool>& core);

/// satisfies_superlinear with the greatest N_L. Any valid N_L is contained in
/// the greatest one, and growing N_L only relaxes the conditions.
bool is_superlinear(const Grammar& g);

struct UltralinearVerdict {
  bool ultralinear = false;
  bool reduced = false;
  std::size_t levels = 0;   // number of blocks N_0 … N_k
  std::string reason;       // first violated clause, empty when ultralinear
};

/// Checks a user-supplied decomposition {N_0, …, N_k}, given as name lists
/// with the start symbol's block last. Throws ErrorCode::MalformedPartition
/// when blocks overlap, name an unknown nonterminal, or miss one.
UltralinearVerdict verify_ultralinear(const Grammar& g,
                                      const std::vector<std::vector<std::string>>& partition);

/// Parses "A B; S" into blocks (';' separates levels, lowest first).
std::vector<std::vector<std::string>> parse_partition(std::string_view text);

/// Nonterminals A with a derivation A ⇒* u A v A w, on the useful part of
/// `g`. Sorted by nonterminal id of `g`.
std::vector<NonterminalId> expansive_nonterminals(const Grammar& g);

struct SamplingEvidence {
  std::size_t samples = 0;
  unsigned max_dimension = 0;
  unsigned max_oscillation = 0;
};

/// Dimension and oscillation maxima over trees sampled from the CNF grammar.
SamplingEvidence sample_tree_metrics(const CnfGrammar& g, std::size_t samples, std::uint64_t seed);

struct ClassificationReport {
  bool is_linear = false;
  bool is_superlinear = false;
  std::vector<std::string> superlinear_core;
  std::optional<UltralinearVerdict> ultralinear;
  std::vector<std::string> expansive;
  SamplingEvidence evidence;
};

ClassificationReport classify(const Grammar& g,
                              const std::optional<std::vector<std::vector<std::string>>>& partition,
                              std::size_t samples, std::uint64_t seed);

/// `key: value` lines.
std::string format_report(const ClassificationReport& r);

}  // namespace ratindex
