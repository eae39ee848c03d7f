#include "ratindex/rho.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <thread>
#include <vector>

#include "ratindex/intersection.hpp"

namespace ratindex {

Nfa two_cycle_family(unsigned p, unsigned q) {
  if (p == 0 || q == 0) throw Error(ErrorCode::InvalidArgument, "cycle lengths must be positive");
  Nfa a;
  LabeledGraph& g = a.graph;
  for (unsigned i = 0; i < p; ++i) g.add_node("c" + std::to_string(i));
  for (unsigned j = 0; j < q; ++j) g.add_node("d" + std::to_string(j));
  LabelId la = g.add_label("a");
  LabelId lb = g.add_label("b");
  for (unsigned i = 0; i < p; ++i) g.add_edge(i, la, (i + 1) % p);
  for (unsigned j = 0; j < q; ++j) g.add_edge(p + j, lb, p + (j + 1) % q);
  g.add_edge(0, lb, p + (1 % q));
  a.initial = {0};
  a.accepting = {p};
  return a;
}

namespace {

struct CodeLayout {
  unsigned n;
  unsigned sigma;
  unsigned transition_bits() const { return n * n * sigma; }
  unsigned total_bits() const { return transition_bits() + 2 * n; }
  unsigned transition_bit(unsigned src, unsigned label, unsigned dst) const {
    return (src * sigma + label) * n + dst;
  }
  unsigned initial_bit(unsigned q) const { return transition_bits() + q; }
  unsigned accepting_bit(unsigned q) const { return transition_bits() + n + q; }
};

std::uint64_t permute(const CodeLayout& l, std::uint64_t code, const std::vector<unsigned>& pi) {
  std::uint64_t out = 0;
  for (unsigned s = 0; s < l.n; ++s) {
    for (unsigned a = 0; a < l.sigma; ++a)
      for (unsigned d = 0; d < l.n; ++d)
        if (code >> l.transition_bit(s, a, d) & 1) out |= std::uint64_t{1} << l.transition_bit(pi[s], a, pi[d]);
    if (code >> l.initial_bit(s) & 1) out |= std::uint64_t{1} << l.initial_bit(pi[s]);
    if (code >> l.accepting_bit(s) & 1) out |= std::uint64_t{1} << l.accepting_bit(pi[s]);
  }
  return out;
}

bool has_state_set(const CodeLayout& l, std::uint64_t code, unsigned first_bit) {
  return (code >> first_bit) & ((std::uint64_t{1} << l.n) - 1);
}

/// Nonempty Q₀ and F, and minimal among all state relabelings.
bool canonical(const CodeLayout& l, std::uint64_t code, const std::vector<std::vector<unsigned>>& perms) {
  if (!has_state_set(l, code, l.initial_bit(0)) || !has_state_set(l, code, l.accepting_bit(0))) return false;
  for (const auto& pi : perms)
    if (permute(l, code, pi) < code) return false;
  return true;
}

Nfa empty_automaton(const CnfGrammar& g, unsigned n) {
  Nfa a;
  for (unsigned q = 0; q < n; ++q) a.graph.add_node("q" + std::to_string(q));
  for (TerminalId t = 0; t < g.terminal_count(); ++t) a.graph.add_label(g.grammar().terminal_name(t));
  return a;
}

Nfa random_automaton(const CnfGrammar& g, unsigned n, const RandomStrategy& s, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  // top 53 bits as a double in [0, 1); identical on every platform
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  Nfa a = empty_automaton(g, n);
  for (NodeId src = 0; src < n; ++src)
    for (LabelId l = 0; l < a.graph.label_count(); ++l)
      for (NodeId dst = 0; dst < n; ++dst)
        if (unit() < s.density) a.graph.add_edge(src, l, dst);
  for (NodeId q = 0; q < n; ++q) {
    if (rng() & 1) a.initial.push_back(q);
    if (rng() & 1) a.accepting.push_back(q);
  }
  if (a.initial.empty()) a.initial.push_back(static_cast<NodeId>(rng() % n));
  if (a.accepting.empty()) a.accepting.push_back(static_cast<NodeId>(rng() % n));
  return a;
}

struct Outcome {
  bool nonempty = false;
  std::uint64_t value = 0;
  Word word;
};

Outcome evaluate(const CnfGrammar& g, const Nfa& a) {
  TripleGrammar tg = bar_hillel(g, a);
  auto best = shortest_in_intersection(tg, shortest_words(tg));
  if (!best) return {};
  return {true, best->length, best->witness.word};
}

struct Best {
  bool found = false;
  std::uint64_t value = 0;
  std::uint64_t job = 0;
  Word word;
  std::uint64_t tested = 0;
  std::uint64_t nonempty = 0;

  void offer(std::uint64_t job_index, Outcome&& o) {
    ++tested;
    if (!o.nonempty) return;
    ++nonempty;
    if (!found || o.value > value || (o.value == value && job_index < job)) {
      found = true;
      value = o.value;
      job = job_index;
      word = std::move(o.word);
    }
  }

  void merge(Best&& other) {
    tested += other.tested;
    nonempty += other.nonempty;
    if (!other.found) return;
    if (!found || other.value > value || (other.value == value && other.job < job)) {
      found = true;
      value = other.value;
      job = other.job;
      word = std::move(other.word);
    }
  }
};

/// Runs `job(i)` for i in [0, count) on `workers` threads.
template <class Job>
Best sweep(std::uint64_t count, unsigned workers, Job job) {
  workers = std::max(1u, workers);
  if (workers == 1 || count < 2) {
    Best b;
    for (std::uint64_t i = 0; i < count; ++i) b.offer(i, job(i));
    return b;
  }
  std::atomic<std::uint64_t> next{0};
  constexpr std::uint64_t kChunk = 32;
  std::vector<Best> partial(workers);
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> failures(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        while (true) {
          std::uint64_t begin = next.fetch_add(kChunk);
          if (begin >= count) break;
          std::uint64_t end = std::min(count, begin + kChunk);
          for (std::uint64_t i = begin; i < end; ++i) partial[w].offer(i, job(i));
        }
      } catch (...) {
        failures[w] = std::current_exception();
        next.store(count);
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);
  Best b;
  for (auto& p : partial) b.merge(std::move(p));
  return b;
}

}  // namespace

Nfa decode_automaton(const CnfGrammar& g, unsigned n, std::uint64_t code) {
  CodeLayout l{n, static_cast<unsigned>(g.terminal_count())};
  Nfa a = empty_automaton(g, n);
  for (unsigned s = 0; s < n; ++s) {
    for (unsigned t = 0; t < l.sigma; ++t)
      for (unsigned d = 0; d < n; ++d)
        if (code >> l.transition_bit(s, t, d) & 1) a.graph.add_edge(s, t, d);
  }
  for (unsigned q = 0; q < n; ++q) {
    if (code >> l.initial_bit(q) & 1) a.initial.push_back(q);
    if (code >> l.accepting_bit(q) & 1) a.accepting.push_back(q);
  }
  return a;
}

RhoEstimate measure_rho(const CnfGrammar& g, unsigned n, const RhoStrategy& strategy,
                        const RhoOptions& options) {
  RhoEstimate est;
  est.n = n;
  bool over_budget = false;

  if (const auto* fam = std::get_if<FamilyStrategy>(&strategy)) {
    est.n = fam->p + fam->q;
    Nfa a = two_cycle_family(fam->p, fam->q);
    Best b = sweep(1, 1, [&](std::uint64_t) { return evaluate(g, a); });
    est.tested_count = b.tested;
    est.nonempty_count = b.nonempty;
    if (b.found) {
      est.value = b.value;
      est.witness_word = std::move(b.word);
      est.witness_automaton = std::move(a);
      est.automaton_id = "two_cycle(" + std::to_string(fam->p) + "," + std::to_string(fam->q) + ")";
    }
    return est;
  }

  if (n == 0) throw Error(ErrorCode::InvalidArgument, "automata need at least one state");

  if (const auto* rnd = std::get_if<RandomStrategy>(&strategy)) {
    std::uint64_t count = rnd->count;
    if (count > options.budget) {
      count = options.budget;
      over_budget = true;
    }
    Best b = sweep(count, options.workers,
                   [&](std::uint64_t i) { return evaluate(g, random_automaton(g, n, *rnd, i)); });
    est.tested_count = b.tested;
    est.nonempty_count = b.nonempty;
    if (b.found) {
      est.value = b.value;
      est.witness_word = std::move(b.word);
      est.witness_automaton = random_automaton(g, n, *rnd, b.job);
      est.automaton_id = "r" + std::to_string(rnd->seed) + "-" + std::to_string(b.job);
    }
  } else {
    if (n > options.exhaustive_max_states)
      throw Error(ErrorCode::CapExceeded, "exhaustive enumeration is limited to " +
                                              std::to_string(options.exhaustive_max_states) + " states");
    if (g.terminal_count() > options.exhaustive_max_alphabet)
      throw Error(ErrorCode::CapExceeded, "exhaustive enumeration is limited to alphabets of " +
                                              std::to_string(options.exhaustive_max_alphabet) + " letters");
    CodeLayout l{n, static_cast<unsigned>(g.terminal_count())};
    if (l.total_bits() >= 63) throw Error(ErrorCode::CapExceeded, "automaton code does not fit 64 bits");

    std::vector<unsigned> identity(n);
    std::iota(identity.begin(), identity.end(), 0u);
    std::vector<std::vector<unsigned>> perms;
    for (auto pi = identity; std::next_permutation(pi.begin(), pi.end());) perms.push_back(pi);

    std::vector<std::uint64_t> codes;
    const std::uint64_t limit = std::uint64_t{1} << l.total_bits();
    for (std::uint64_t code = 0; code < limit; ++code) {
      if (!canonical(l, code, perms)) continue;
      if (codes.size() == options.budget) {
        over_budget = true;
        break;
      }
      codes.push_back(code);
    }
    Best b = sweep(codes.size(), options.workers,
                   [&](std::uint64_t i) { return evaluate(g, decode_automaton(g, n, codes[i])); });
    est.tested_count = b.tested;
    est.nonempty_count = b.nonempty;
    est.exhaustive = !over_budget;
    if (b.found) {
      est.value = b.value;
      est.witness_word = std::move(b.word);
      est.witness_automaton = decode_automaton(g, n, codes[b.job]);
      est.automaton_id = "x" + std::to_string(codes[b.job]);
    }
  }

  if (over_budget) {
    est.exhaustive = false;
    throw BudgetExceeded(std::move(est));
  }
  return est;
}

}  // namespace ratindex
