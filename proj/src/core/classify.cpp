#include "ratindex/classify.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_map>

#include "ratindex/error.hpp"
#include "ratindex/nested_word.hpp"
#include "ratindex/parse_tree.hpp"

namespace ratindex {

namespace {

std::size_t nonterminal_occurrences(const Production& p) {
  return static_cast<std::size_t>(
      std::count_if(p.rhs.begin(), p.rhs.end(), [](Symbol s) { return s.is_nonterminal(); }));
}

}  // namespace

bool is_linear(const Grammar& g) {
  return std::all_of(g.productions().begin(), g.productions().end(),
                     [](const Production& p) { return nonterminal_occurrences(p) <= 1; });
}

std::vector<bool> superlinear_core(const Grammar& g) {
  std::vector<bool> core(g.nonterminal_count(), true);
  for (const Production& p : g.productions())
    if (nonterminal_occurrences(p) > 1) core[p.lhs] = false;
  for (bool changed = true; changed;) {
    changed = false;
    for (const Production& p : g.productions()) {
      if (!core[p.lhs]) continue;
      for (Symbol s : p.rhs) {
        if (s.is_nonterminal() && !core[s.id]) {
          core[p.lhs] = false;
          changed = true;
          break;
        }
      }
    }
  }
  return core;
}

bool satisfies_superlinear(const Grammar& g, const std::vector<bool>& core) {
  for (const Production& p : g.productions()) {
    const auto& w = p.rhs;
    if (core[p.lhs]) {
      // linear body over N_L
      if (nonterminal_occurrences(p) > 1) return false;
      for (Symbol s : w)
        if (s.is_nonterminal() && !core[s.id]) return false;
      continue;
    }
    std::size_t count = nonterminal_occurrences(p);
    if (count == 0) continue;  // α
    if (w.size() == 2 && w[0].is_nonterminal() && w[1].is_nonterminal() && core[w[0].id]) continue;
    if (count == 1) {
      auto it = std::find_if(w.begin(), w.end(), [](Symbol s) { return s.is_nonterminal(); });
      bool at_edge = it == w.begin() || it + 1 == w.end();
      if (at_edge && core[it->id]) continue;
    }
    return false;
  }
  return true;
}

bool is_superlinear(const Grammar& g) { return satisfies_superlinear(g, superlinear_core(g)); }

std::vector<std::vector<std::string>> parse_partition(std::string_view text) {
  std::vector<std::vector<std::string>> blocks(1);
  std::string current;
  auto flush = [&] {
    if (!current.empty()) blocks.back().push_back(std::move(current));
    current.clear();
  };
  for (char c : text) {
    if (c == ';') {
      flush();
      blocks.emplace_back();
    } else if (c == ' ' || c == '\t' || c == ',' || c == '\n') {
      flush();
    } else {
      current.push_back(c);
    }
  }
  flush();
  return blocks;
}

UltralinearVerdict verify_ultralinear(const Grammar& g,
                                      const std::vector<std::vector<std::string>>& partition) {
  if (partition.empty()) throw Error(ErrorCode::MalformedPartition, "partition has no blocks");
  std::vector<int> level(g.nonterminal_count(), -1);
  for (std::size_t i = 0; i < partition.size(); ++i) {
    for (const std::string& name : partition[i]) {
      auto a = g.find_nonterminal(name);
      if (!a) throw Error(ErrorCode::MalformedPartition, "partition names unknown nonterminal '" + name + "'");
      if (level[*a] != -1)
        throw Error(ErrorCode::MalformedPartition, "nonterminal '" + name + "' appears in two blocks");
      level[*a] = static_cast<int>(i);
    }
  }
  for (NonterminalId a = 0; a < g.nonterminal_count(); ++a)
    if (level[a] == -1)
      throw Error(ErrorCode::MalformedPartition,
                  "nonterminal '" + g.nonterminal_name(a) + "' is in no block");

  UltralinearVerdict v;
  v.levels = partition.size();
  const int top = static_cast<int>(partition.size()) - 1;
  auto describe = [&](const Production& p) {
    std::string s = g.nonterminal_name(p.lhs) + " ->";
    for (Symbol x : p.rhs) s += " " + g.symbol_name(x);
    return s;
  };

  if (level[g.start()] != top) {
    v.reason = "start symbol is not in the last block";
    return v;
  }
  for (const Production& p : g.productions()) {
    int i = level[p.lhs];
    std::size_t count = nonterminal_occurrences(p);
    bool same_level_linear =
        count == 1 && std::all_of(p.rhs.begin(), p.rhs.end(),
                                  [&](Symbol s) { return s.is_terminal() || level[s.id] == i; });
    bool lower_only = std::all_of(p.rhs.begin(), p.rhs.end(),
                                  [&](Symbol s) { return s.is_terminal() || level[s.id] < i; });
    if (!same_level_linear && !lower_only) {
      v.reason = "production '" + describe(p) + "' mixes levels";
      return v;
    }
  }
  v.ultralinear = true;

  // reduced form
  if (partition.back().size() != 1) return v;
  for (const Production& p : g.productions()) {
    for (Symbol s : p.rhs)
      if (s.is_nonterminal() && s.id == g.start()) return v;
  }
  for (const Production& p : g.productions()) {
    const auto& w = p.rhs;
    int i = level[p.lhs];
    if (w.empty() && p.lhs == g.start()) continue;
    bool ok = false;
    if (w.size() == 1) {
      ok = w[0].is_terminal();
    } else if (w.size() == 2) {
      if (w[0].is_nonterminal() && w[1].is_terminal()) ok = level[w[0].id] == i;
      else if (w[0].is_terminal() && w[1].is_nonterminal()) ok = level[w[1].id] == i;
      else if (w[0].is_nonterminal() && w[1].is_nonterminal()) ok = level[w[0].id] < i && level[w[1].id] < i;
    }
    if (!ok) return v;
  }
  v.reduced = true;
  return v;
}

std::vector<NonterminalId> expansive_nonterminals(const Grammar& g) {
  Grammar t = trim_grammar(g);
  const std::size_t n = t.nonterminal_count();
  if (n == 0) return {};
  // reach[x][y]: x ⇒* a form containing y (reflexive)
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t x = 0; x < n; ++x) reach[x][x] = true;
  for (const Production& p : t.productions())
    for (Symbol s : p.rhs)
      if (s.is_nonterminal()) reach[p.lhs][s.id] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;

  std::vector<bool> expansive(n, false);
  for (const Production& p : t.productions()) {
    std::vector<NonterminalId> occ;
    for (Symbol s : p.rhs)
      if (s.is_nonterminal()) occ.push_back(s.id);
    if (occ.size() < 2) continue;
    for (std::size_t a = 0; a < n; ++a) {
      if (expansive[a] || !reach[a][p.lhs]) continue;
      std::size_t hits = 0;
      for (NonterminalId x : occ)
        if (reach[x][a]) ++hits;
      if (hits >= 2) expansive[a] = true;
    }
  }

  std::vector<NonterminalId> out;
  for (std::size_t a = 0; a < n; ++a)
    if (expansive[a]) out.push_back(*g.find_nonterminal(t.nonterminal_name(static_cast<NonterminalId>(a))));
  std::sort(out.begin(), out.end());
  return out;
}

SamplingEvidence sample_tree_metrics(const CnfGrammar& g, std::size_t samples, std::uint64_t seed) {
  SamplingEvidence e;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    ParseTree t = sample_parse_tree(g, rng);
    e.max_dimension = std::max(e.max_dimension, dimension(t));
    e.max_oscillation = std::max(e.max_oscillation, oscillation(alpha_of_tree(t)));
    ++e.samples;
  }
  return e;
}

ClassificationReport classify(const Grammar& g,
                              const std::optional<std::vector<std::vector<std::string>>>& partition,
                              std::size_t samples, std::uint64_t seed) {
  ClassificationReport r;
  r.is_linear = is_linear(g);
  auto core = superlinear_core(g);
  r.is_superlinear = satisfies_superlinear(g, core);
  for (NonterminalId a = 0; a < g.nonterminal_count(); ++a)
    if (core[a]) r.superlinear_core.push_back(g.nonterminal_name(a));
  if (partition) r.ultralinear = verify_ultralinear(g, *partition);
  for (NonterminalId a : expansive_nonterminals(g)) r.expansive.push_back(g.nonterminal_name(a));
  try {
    r.evidence = sample_tree_metrics(to_cnf(g), samples, seed);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EmptyLanguage) throw;
  }
  return r;
}

std::string format_report(const ClassificationReport& r) {
  auto join = [](const std::vector<std::string>& xs) {
    std::string s;
    for (const auto& x : xs) s += (s.empty() ? "" : " ") + x;
    return s;
  };
  std::ostringstream os;
  os << std::boolalpha;
  os << "linear: " << r.is_linear << '\n';
  os << "superlinear: " << r.is_superlinear << '\n';
  os << "superlinear_core: " << join(r.superlinear_core) << '\n';
  if (r.ultralinear) {
    os << "ultralinear: " << r.ultralinear->ultralinear << '\n';
    os << "reduced_form: " << r.ultralinear->reduced << '\n';
    os << "levels: " << r.ultralinear->levels << '\n';
    if (!r.ultralinear->reason.empty()) os << "ultralinear_violation: " << r.ultralinear->reason << '\n';
  }
  os << "expansive: " << join(r.expansive) << '\n';
  os << "sampled_trees: " << r.evidence.samples << '\n';
  os << "max_observed_dimension: " << r.evidence.max_dimension << '\n';
  os << "max_observed_oscillation: " << r.evidence.max_oscillation << '\n';
  return os.str();
}

}  // namespace ratindex
