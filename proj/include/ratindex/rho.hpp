#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "ratindex/cnf.hpp"
#include "ratindex/error.hpp"
#include "ratindex/graph.hpp"

namespace ratindex {

/// p + q states: an a-cycle c0 … c_{p-1} entered at the initial state c0, a
/// b-edge from c0 into a b-cycle d0 … d_{q-1}, and d0 accepting. The bridge
/// lands on d_{1 mod q} so that it counts as one step of the b-cycle.
Nfa two_cycle_family(unsigned p, unsigned q);

struct ExhaustiveStrategy {};
struct RandomStrategy {
  std::uint64_t count = 1000;
  std::uint64_t seed = 0;
  double density = 0.3;  // probability of each transition
};
struct FamilyStrategy {
  unsigned p = 1;
  unsigned q = 1;
};
using RhoStrategy = std::variant<ExhaustiveStrategy, RandomStrategy, FamilyStrategy>;

struct RhoOptions {
  unsigned workers = 1;
  std::uint64_t budget = 5'000'000;   // automata per call
  unsigned exhaustive_max_states = 3;
  unsigned exhaustive_max_alphabet = 2;
};

struct RhoEstimate {
  unsigned n = 0;
  std::uint64_t value = 0;            // meaningful when witness_word is set
  std::optional<Nfa> witness_automaton;
  std::optional<Word> witness_word;
  std::string automaton_id;
  std::uint64_t tested_count = 0;
  std::uint64_t nonempty_count = 0;
  bool exhaustive = false;
};

/// Raised when the automaton budget runs out; carries what was measured so
/// far, marked non-exhaustive.
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(RhoEstimate partial)
      : Error(ErrorCode::BudgetExceeded, "automaton budget exhausted"), partial_(std::move(partial)) {}
  const RhoEstimate& partial() const { return partial_; }

 private:
  RhoEstimate partial_;
};

/// Max over the tested n-state automata K (NFA semantics) with L ∩ K ≠ ∅ of
/// the shortest word length in L ∩ K. A lower bound on the rational index at
/// n, exact for the exhaustive strategy. For the family strategy n is p + q.
///
/// The result does not depend on the worker count: ties on the value go to
/// the automaton that comes first in enumeration order.
RhoEstimate measure_rho(const CnfGrammar& g, unsigned n, const RhoStrategy& strategy,
                        const RhoOptions& options = {});

/// Automaton encoded by an exhaustive-enumeration code (see automaton ids
/// "x<code>" in RhoEstimate).
Nfa decode_automaton(const CnfGrammar& g, unsigned n, std::uint64_t code);

}  // namespace ratindex
