// ratindex command-line driver. Talks to the library only through ratindex.h.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ratindex/ratindex.h"

namespace {

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

LogLevel log_level() {
  const char* env = std::getenv("RATINDEX_LOG");
  if (!env) return LogLevel::Warn;
  std::string v(env);
  if (v == "error") return LogLevel::Error;
  if (v == "info") return LogLevel::Info;
  if (v == "debug") return LogLevel::Debug;
  return LogLevel::Warn;
}

void log(LogLevel level, const std::string& msg) {
  static const LogLevel current = log_level();
  static const char* names[] = {"error", "warn", "info", "debug"};
  if (level <= current) std::cerr << "[" << names[static_cast<int>(level)] << "] " << msg << '\n';
}

/// Non-zero library status, reported to stderr by main.
struct Failure {
  rx_status status;
  std::string message;
};

void check(rx_status s) {
  if (s != RX_OK) throw Failure{s, rx_last_error()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{RX_ERR_IO, "cannot read '" + path + "'"};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct CString {
  char* p = nullptr;
  ~CString() { rx_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Free(p); }
};
using Grammar = Handle<rx_grammar, rx_grammar_free>;
using Cnf = Handle<rx_cnf, rx_cnf_free>;
using Graph = Handle<rx_graph, rx_graph_free>;
using Relation = Handle<rx_relation, rx_relation_free>;
using Program = Handle<rx_program, rx_program_free>;

void load_grammar(const std::string& path, Grammar& g) { check(rx_grammar_parse(read_file(path).c_str(), &g.p)); }

void load_cnf(const std::string& path, Cnf& c) {
  Grammar g;
  load_grammar(path, g);
  check(rx_grammar_to_cnf(g.p, &c.p));
}

std::pair<unsigned, unsigned> parse_pair(const std::string& s) {
  auto sep = s.find_first_of(":,");
  if (sep == std::string::npos) throw CLI::ValidationError("pair", "expected p:q, got '" + s + "'");
  try {
    return {static_cast<unsigned>(std::stoul(s.substr(0, sep))), static_cast<unsigned>(std::stoul(s.substr(sep + 1)))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("pair", "expected p:q, got '" + s + "'");
  }
}

std::size_t node_index(const Graph& g, const std::string& name) {
  size_t q = 0;
  check(rx_graph_find_node(g.p, name.c_str(), &q));
  return q;
}

std::string node_name(const Graph& g, size_t q) {
  const char* s = nullptr;
  check(rx_graph_node_name(g.p, q, &s));
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational index and CFL-reachability toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  std::size_t cap_osc_brute = 20;
  unsigned cap_exhaustive_n = 3;
  unsigned workers = 1;
  app.add_option("--seed", seed, "Seed for randomized commands")->capture_default_str();
  app.add_option("--cap-osc-brute", cap_osc_brute, "Longest word checked by brute-force oscillation")
      ->capture_default_str();
  app.add_option("--cap-exhaustive-n", cap_exhaustive_n, "Largest n for exhaustive automaton enumeration")
      ->capture_default_str();
  app.add_option("--workers", workers, "Worker threads for measure-rho")->capture_default_str()->check(CLI::PositiveNumber);

  std::string grammar_path, graph_path, nfa_path, program_path, word;

  // cnf
  auto* cnf = app.add_subcommand("cnf", "Print the Chomsky normal form of a grammar");
  cnf->add_option("--grammar", grammar_path, "Grammar file")->required();

  // member
  bool want_tree = false;
  auto* member = app.add_subcommand("member", "CYK membership test");
  member->add_option("--grammar", grammar_path, "Grammar file")->required();
  member->add_option("--word", word, "Word to test")->required();
  member->add_flag("--tree", want_tree, "Also print a parse tree");

  // intersect / shortest
  std::string two_cycle;
  bool want_witness = false;
  auto* intersect = app.add_subcommand("intersect", "Realizable triples of the Bar-Hillel product");
  auto* shortest = app.add_subcommand("shortest", "Shortest word of L(G) ∩ L(A)");
  for (auto* sub : {intersect, shortest}) {
    sub->add_option("--grammar", grammar_path, "Grammar file")->required();
    auto* g = sub->add_option("--graph", graph_path, "Graph file (every node initial and accepting)");
    auto* a = sub->add_option("--nfa", nfa_path, "Automaton file");
    g->excludes(a);
    if (sub == shortest) {
      auto* t = sub->add_option("--two-cycle", two_cycle, "Use two_cycle(p,q), written p:q");
      t->excludes(g)->excludes(a);
      sub->add_flag("--witness", want_witness, "Print path, tree and height report");
    }
  }

  // reach
  std::string source, target;
  bool all_facts = false;
  auto* reach = app.add_subcommand("reach", "All-pairs CFL-reachability");
  reach->add_option("--grammar", grammar_path, "Grammar file")->required();
  reach->add_option("--graph", graph_path, "Graph file")->required();
  reach->add_option("--source", source, "Only facts from this node");
  reach->add_option("--target", target, "Only facts to this node");
  reach->add_flag("--all", all_facts, "Print facts of every nonterminal");
  reach->add_flag("--witness", want_witness, "Print a witness path (needs --source and --target)");

  // tree-metrics
  std::string nested;
  int harmonic_k = -1;
  bool verbose = false;
  auto* metrics = app.add_subcommand("tree-metrics", "Dimension and oscillation");
  metrics->add_option("--grammar", grammar_path, "Grammar file");
  auto* word_opt = metrics->add_option("--word", word, "Word whose CYK tree is measured");
  auto* nested_opt = metrics->add_option("--nested", nested, "Well-nested word (ā/a or parentheses)");
  auto* harm_opt = metrics->add_option("--harmonic", harmonic_k, "Print harmonic h_k");
  word_opt->excludes(nested_opt)->excludes(harm_opt);
  nested_opt->excludes(harm_opt);
  metrics->add_flag("--verbose", verbose, "Also print sizes, α(t) and the tree");

  // classify
  std::string partition;
  std::size_t samples = 1000;
  auto* classify = app.add_subcommand("classify", "Structural classification report");
  classify->add_option("--grammar", grammar_path, "Grammar file")->required();
  classify->add_option("--partition", partition, "Ultralinear decomposition, blocks separated by ';', lowest first");
  classify->add_option("--samples", samples, "Parse trees sampled for dimension/oscillation evidence")
      ->capture_default_str();

  // measure-rho
  std::string strategy = "exhaustive";
  unsigned n_min = 1, n_max = 1, n_single = 0;
  std::uint64_t count = 1000, budget = 5'000'000;
  double density = 0.3;
  std::vector<std::string> pairs;
  bool fit = false;
  auto* rho = app.add_subcommand("measure-rho", "Empirical rational index, CSV output");
  rho->add_option("--grammar", grammar_path, "Grammar file")->required();
  rho->add_option("--strategy", strategy, "exhaustive | random | family")
      ->check(CLI::IsMember({"exhaustive", "random", "family"}))
      ->capture_default_str();
  rho->add_option("--n", n_single, "Single automaton size");
  rho->add_option("--n-min", n_min, "Smallest automaton size")->capture_default_str();
  rho->add_option("--n-max", n_max, "Largest automaton size")->capture_default_str();
  rho->add_option("--count", count, "Random automata per n")->capture_default_str();
  rho->add_option("--density", density, "Random transition probability")->capture_default_str();
  rho->add_option("--budget", budget, "Automata per n before giving up")->capture_default_str();
  rho->add_option("--pairs", pairs, "two_cycle parameters p:q (family strategy)")->delimiter(',');
  rho->add_flag("--fit", fit, "Report the log-log growth slope on stderr");

  // bounds
  std::string bound_class = "linear";
  std::uint64_t nonterminals = 1, constant = 1;
  unsigned k = 1, d = 1;
  std::vector<std::uint64_t> ns;
  auto* bounds = app.add_subcommand("bounds", "Evaluate a bound formula, CSV output");
  bounds->add_option("--class", bound_class,
                     "linear | dimension | oscillation | superlinear | ultralinear | ultralinear-dimension")
      ->capture_default_str();
  bounds->add_option("--nonterminals", nonterminals, "|N|")->capture_default_str();
  bounds->add_option("--k", k, "Oscillation bound or number of levels")->capture_default_str();
  bounds->add_option("--d", d, "Dimension bound")->capture_default_str();
  bounds->add_option("--c", constant, "Calibration constant")->capture_default_str();
  bounds->add_option("--n", ns, "Values of n")->delimiter(',');
  bounds->add_option("--n-min", n_min, "Smallest n")->capture_default_str();
  bounds->add_option("--n-max", n_max, "Largest n")->capture_default_str();

  // datalog-eval
  auto* datalog = app.add_subcommand("datalog-eval", "Evaluate a chain Datalog query over a graph");
  datalog->add_option("--program", program_path, "Datalog file")->required();
  datalog->add_option("--graph", graph_path, "Graph file")->required();
  bool show_grammar = false;
  datalog->add_flag("--grammar", show_grammar, "Print the translated grammar instead of facts");

  auto* selftest = app.add_subcommand("selftest", "Known-answer checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto started = std::chrono::steady_clock::now();
  try {
    if (app.got_subcommand(cnf)) {
      Cnf c;
      load_cnf(grammar_path, c);
      CString s;
      check(rx_cnf_format(c.p, &s.p));
      std::cout << s.str();
    } else if (app.got_subcommand(member)) {
      Cnf c;
      load_cnf(grammar_path, c);
      int accepted = 0;
      CString tree;
      check(rx_member(c.p, word.c_str(), &accepted, want_tree ? &tree.p : nullptr));
      std::cout << (accepted ? "true" : "false") << '\n';
      if (accepted && want_tree) std::cout << tree.str() << '\n';
    } else if (app.got_subcommand(intersect) || app.got_subcommand(shortest)) {
      Cnf c;
      load_cnf(grammar_path, c);
      Graph g;
      int graph_semantics = 0;
      if (!two_cycle.empty()) {
        auto [p, q] = parse_pair(two_cycle);
        check(rx_two_cycle(p, q, &g.p));
      } else if (!nfa_path.empty()) {
        check(rx_graph_parse(read_file(nfa_path).c_str(), 1, &g.p));
      } else if (!graph_path.empty()) {
        check(rx_graph_parse(read_file(graph_path).c_str(), 0, &g.p));
        graph_semantics = 1;
      } else {
        std::cerr << "error: one of --graph, --nfa" << (app.got_subcommand(shortest) ? ", --two-cycle" : "")
                  << " is required\n";
        return 2;
      }
      if (app.got_subcommand(intersect)) {
        CString s;
        check(rx_intersect(c.p, g.p, graph_semantics, &s.p));
        std::cout << s.str();
      } else {
        rx_shortest_result r{};
        rx_status st = rx_shortest(c.p, g.p, graph_semantics, &r);
        std::unique_ptr<rx_shortest_result, void (*)(rx_shortest_result*)> guard(&r, rx_shortest_result_clear);
        check(st);
        if (!r.nonempty) {
          std::cout << "empty\n";
        } else {
          std::cout << r.length << '\t' << r.word << '\n';
          if (want_witness) {
            std::cout << "path\t" << r.path << '\n';
            std::cout << "tree\t" << r.tree << '\n';
            std::cout << "height\t" << r.height << "\tbound\t" << r.height_bound << '\t'
                      << (r.height_violated ? "violated" : "ok") << '\n';
          }
        }
      }
    } else if (app.got_subcommand(reach)) {
      Cnf c;
      load_cnf(grammar_path, c);
      Graph g;
      check(rx_graph_parse(read_file(graph_path).c_str(), 0, &g.p));
      Relation rel;
      check(rx_reach(c.p, g.p, &rel.p));
      std::optional<size_t> src, dst;
      if (!source.empty()) src = node_index(g, source);
      if (!target.empty()) dst = node_index(g, target);
      if (want_witness) {
        if (!src || !dst) {
          std::cerr << "error: --witness needs --source and --target\n";
          return 2;
        }
        size_t* nodes = nullptr;
        size_t length = 0;
        check(rx_witness_path(rel.p, *src, *dst, &nodes, &length));
        std::unique_ptr<size_t, void (*)(size_t*)> guard(nodes, rx_array_free);
        for (size_t i = 0; i < length; ++i) std::cout << (i ? "\t" : "") << node_name(g, nodes[i]);
        std::cout << '\n';
      } else if (all_facts) {
        CString s;
        check(rx_relation_format_all(rel.p, &s.p));
        std::istringstream lines(s.str());
        for (std::string line; std::getline(lines, line);) {
          std::string a = line.substr(0, line.find('\t'));
          std::string rest = line.substr(line.find('\t') + 1);
          std::string b = rest.substr(0, rest.find('\t'));
          if ((src && a != source) || (dst && b != target)) continue;
          std::cout << line << '\n';
        }
      } else {
        for (size_t i = 0; i < rx_relation_size(rel.p); ++i) {
          size_t a = 0, b = 0;
          check(rx_relation_fact(rel.p, i, &a, &b));
          if ((src && a != *src) || (dst && b != *dst)) continue;
          std::cout << node_name(g, a) << '\t' << node_name(g, b) << '\n';
        }
      }
    } else if (app.got_subcommand(metrics)) {
      if (harmonic_k >= 0) {
        CString s;
        check(rx_harmonic(static_cast<unsigned>(harmonic_k), 20, &s.p));
        std::cout << s.str() << '\n';
      } else if (!nested.empty()) {
        CString pairs_text;
        unsigned osc = 0;
        int brute = -1;
        check(rx_nested_metrics(nested.c_str(), cap_osc_brute, &pairs_text.p, &osc, &brute));
        std::cout << "pairs=" << pairs_text.str() << " osc=" << osc;
        if (brute >= 0) std::cout << " osc_brute=" << brute;
        std::cout << '\n';
      } else {
        if (grammar_path.empty() || word_opt->count() == 0) {
          std::cerr << "error: tree-metrics needs --grammar with --word, or --nested, or --harmonic\n";
          return 2;
        }
        Cnf c;
        load_cnf(grammar_path, c);
        rx_tree_metrics m{};
        rx_status st = rx_tree_metrics_of_word(c.p, word.c_str(), cap_osc_brute, &m);
        std::unique_ptr<rx_tree_metrics, void (*)(rx_tree_metrics*)> guard(&m, rx_tree_metrics_clear);
        check(st);
        std::cout << "dim=" << m.dimension << " osc=" << m.oscillation << '\n';
        if (verbose) {
          std::cout << "nodes=" << m.nodes << " leaves=" << m.leaves << " height=" << m.height;
          if (m.oscillation_bruteforce >= 0) std::cout << " osc_brute=" << m.oscillation_bruteforce;
          std::cout << '\n' << "alpha=" << m.alpha << '\n' << "tree=" << m.tree << '\n';
        }
      }
    } else if (app.got_subcommand(classify)) {
      Grammar g;
      load_grammar(grammar_path, g);
      CString report;
      check(rx_classify(g.p, partition.empty() ? nullptr : partition.c_str(), samples, seed, &report.p));
      std::cout << report.str();
    } else if (app.got_subcommand(rho)) {
      Cnf c;
      load_cnf(grammar_path, c);
      rx_rho_options o;
      rx_rho_options_init(&o);
      o.workers = workers;
      o.budget = budget;
      o.max_exhaustive_states = cap_exhaustive_n;
      o.count = count;
      o.seed = seed;
      o.density = density;
      std::vector<std::pair<unsigned, unsigned>> jobs;  // (n, 0) or (p, q)
      if (strategy == "family") {
        o.strategy = RX_RHO_FAMILY;
        if (pairs.empty()) {
          std::cerr << "error: the family strategy needs --pairs\n";
          return 2;
        }
        for (const auto& s : pairs) jobs.push_back(parse_pair(s));
      } else {
        o.strategy = strategy == "random" ? RX_RHO_RANDOM : RX_RHO_EXHAUSTIVE;
        if (n_single) n_min = n_max = n_single;
        for (unsigned n = n_min; n <= n_max; ++n) jobs.emplace_back(n, 0);
      }
      std::vector<double> fit_n, fit_v;
      std::cout << "n,value,exhaustive,witness_word,automaton_id\n";
      for (auto [a, b] : jobs) {
        if (o.strategy == RX_RHO_FAMILY) {
          o.p = a;
          o.q = b;
        } else {
          o.n = a;
        }
        rx_rho_result r{};
        rx_status st = rx_measure_rho(c.p, &o, &r);
        std::unique_ptr<rx_rho_result, void (*)(rx_rho_result*)> guard(&r, rx_rho_result_clear);
        if (st != RX_OK && st != RX_ERR_BUDGET_EXCEEDED) check(st);
        std::cout << r.n << ',';
        if (r.has_witness) std::cout << r.value;
        std::cout << ',' << (r.exhaustive ? "true" : "false") << ',' << r.witness_word << ',' << r.automaton_id
                  << '\n';
        log(LogLevel::Info, "n=" + std::to_string(r.n) + " tested=" + std::to_string(r.tested) +
                                " nonempty=" + std::to_string(r.nonempty));
        if (st == RX_ERR_BUDGET_EXCEEDED) check(st);
        if (r.has_witness && r.value > 0) {
          fit_n.push_back(r.n);
          fit_v.push_back(static_cast<double>(r.value));
        }
      }
      if (fit) {
        double slope = 0;
        // the CSV is already out; a fit that cannot be made is only a warning
        if (rx_fit_growth(fit_n.data(), fit_v.data(), fit_n.size(), &slope) == RX_OK)
          std::cerr << "slope=" << slope << '\n';
        else
          std::cerr << "warning: no fit: " << rx_last_error() << '\n';
      }
    } else if (app.got_subcommand(bounds)) {
      if (ns.empty())
        for (std::uint64_t n = n_min; n <= n_max; ++n) ns.push_back(n);
      std::cout << "n,bound\n";
      for (std::uint64_t n : ns) {
        CString v;
        check(rx_bound_value(bound_class.c_str(), nonterminals, k, d, constant, n, &v.p));
        std::cout << n << ',' << v.str() << '\n';
      }
    } else if (app.got_subcommand(datalog)) {
      Program p;
      check(rx_program_parse(read_file(program_path).c_str(), &p.p));
      if (show_grammar) {
        Grammar g;
        check(rx_program_to_grammar(p.p, &g.p));
        CString s;
        check(rx_grammar_format(g.p, &s.p));
        std::cout << s.str();
      } else {
        Graph g;
        check(rx_graph_parse(read_file(graph_path).c_str(), 0, &g.p));
        CString s;
        check(rx_datalog_eval(p.p, g.p, &s.p));
        std::cout << s.str();
      }
    } else if (app.got_subcommand(selftest)) {
      CString report;
      int ok = 0;
      check(rx_selftest(&report.p, &ok));
      std::cout << report.str();
      return ok ? 0 : 1;
    }
  } catch (const Failure& f) {
    std::cout.flush();
    std::cerr << "error: " << rx_status_name(f.status) << ": " << f.message << '\n';
    return 1;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  log(LogLevel::Debug, "elapsed " + std::to_string(elapsed) + " s");
  return 0;
}
