/* ratindex C interface. Handles are opaque; every fallible call returns an
 * rx_status and leaves a message for rx_last_error() on failure. Strings and
 * arrays handed out by the library are released with rx_string_free and
 * rx_array_free. */
#ifndef RATINDEX_RATINDEX_H
#define RATINDEX_RATINDEX_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(RATINDEX_BUILDING_LIBRARY)
#    define RX_API __declspec(dllexport)
#  else
#    define RX_API __declspec(dllimport)
#  endif
#else
#  define RX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rx_status {
  RX_OK = 0,
  RX_ERR_SYNTAX = 1,
  RX_ERR_UNDECLARED_SYMBOL = 2,
  RX_ERR_DUPLICATE_SYMBOL = 3,
  RX_ERR_EMPTY_LANGUAGE = 4,
  RX_ERR_ALPHABET = 5,
  RX_ERR_UNBALANCED = 6,
  RX_ERR_CAP_EXCEEDED = 7,
  RX_ERR_NOT_REACHABLE = 8,
  RX_ERR_UNREALIZABLE = 9,
  RX_ERR_MALFORMED_PARTITION = 10,
  RX_ERR_NON_CHAIN_RULE = 11,
  RX_ERR_NON_BINARY_PREDICATE = 12,
  RX_ERR_UNKNOWN_EDB_LABEL = 13,
  RX_ERR_BUDGET_EXCEEDED = 14,
  RX_ERR_DEGENERATE_INPUT = 15,
  RX_ERR_INVALID_ARGUMENT = 16,
  RX_ERR_IO = 17,
  RX_ERR_INTERNAL = 18
} rx_status;

typedef struct rx_grammar rx_grammar;
typedef struct rx_cnf rx_cnf;
typedef struct rx_graph rx_graph;
typedef struct rx_relation rx_relation;
typedef struct rx_program rx_program;

RX_API const char* rx_version(void);
RX_API const char* rx_status_name(rx_status status);
/* Message of the last failure on the calling thread ("" if none). */
RX_API const char* rx_last_error(void);
RX_API void rx_string_free(char* s);
RX_API void rx_array_free(size_t* a);

/* ---- grammars ---- */

RX_API rx_status rx_grammar_parse(const char* text, rx_grammar** out);
RX_API void rx_grammar_free(rx_grammar* g);
RX_API rx_status rx_grammar_format(const rx_grammar* g, char** out);
RX_API rx_status rx_grammar_is_linear(const rx_grammar* g, int* out);
RX_API rx_status rx_grammar_is_superlinear(const rx_grammar* g, int* out);
/* Space-separated expansive nonterminals. */
RX_API rx_status rx_grammar_expansive(const rx_grammar* g, char** out);

RX_API rx_status rx_grammar_to_cnf(const rx_grammar* g, rx_cnf** out);
RX_API void rx_cnf_free(rx_cnf* c);
RX_API rx_status rx_cnf_format(const rx_cnf* c, char** out);
RX_API rx_status rx_cnf_counts(const rx_cnf* c, size_t* nonterminals, size_t* terminals,
                               int* epsilon_at_start);

/* CYK membership; `tree` may be NULL, otherwise receives the bracketed parse
 * tree (or NULL when rejected). */
RX_API rx_status rx_member(const rx_cnf* c, const char* word, int* accepted, char** tree);

/* ---- graphs and automata ---- */

/* `automaton` != 0 parses the NFA format (initial:/accepting: headers). */
RX_API rx_status rx_graph_parse(const char* text, int automaton, rx_graph** out);
RX_API rx_status rx_two_cycle(unsigned p, unsigned q, rx_graph** out);
RX_API void rx_graph_free(rx_graph* g);
RX_API rx_status rx_graph_format(const rx_graph* g, char** out);
RX_API rx_status rx_graph_node_count(const rx_graph* g, size_t* out);
/* Borrowed pointer, valid while the graph lives. */
RX_API rx_status rx_graph_node_name(const rx_graph* g, size_t node, const char** out);
RX_API rx_status rx_graph_find_node(const rx_graph* g, const char* name, size_t* out);

/* ---- intersection ---- */

/* TSV lines `nonterminal  source  target  length  word`, one per realizable
 * triple. `graph_semantics` != 0 treats every node as initial and accepting. */
RX_API rx_status rx_intersect(const rx_cnf* c, const rx_graph* g, int graph_semantics, char** out);

typedef struct rx_shortest_result {
  int nonempty;
  uint64_t length;
  char* word;          /* formatted word */
  char* tree;          /* bracketed witness tree */
  char* path;          /* space-separated node names */
  size_t height;
  uint64_t height_bound;
  int height_violated;
} rx_shortest_result;

RX_API rx_status rx_shortest(const rx_cnf* c, const rx_graph* g, int graph_semantics,
                             rx_shortest_result* out);
RX_API void rx_shortest_result_clear(rx_shortest_result* r);

/* ---- reachability ---- */

RX_API rx_status rx_reach(const rx_cnf* c, const rx_graph* g, rx_relation** out);
RX_API void rx_relation_free(rx_relation* r);
/* Start-symbol facts, sorted by (source, target). */
RX_API size_t rx_relation_size(const rx_relation* r);
RX_API rx_status rx_relation_fact(const rx_relation* r, size_t index, size_t* source, size_t* target);
/* Every fact as TSV `source  target  nonterminal` (node names). */
RX_API rx_status rx_relation_format_all(const rx_relation* r, char** out);
RX_API rx_status rx_witness_path(const rx_relation* r, size_t source, size_t target, size_t** nodes,
                                 size_t* length);

/* ---- tree metrics ---- */

typedef struct rx_tree_metrics {
  size_t nodes;
  size_t leaves;
  size_t height;
  unsigned dimension;
  unsigned oscillation;
  int oscillation_bruteforce; /* -1 when the word exceeds the cap */
  char* alpha;                /* α(t) written with ā/a */
  char* tree;
} rx_tree_metrics;

/* Metrics of the CYK parse tree of `word`; RX_ERR_INVALID_ARGUMENT when the
 * word is not in the language. */
RX_API rx_status rx_tree_metrics_of_word(const rx_cnf* c, const char* word, size_t brute_cap,
                                         rx_tree_metrics* out);
RX_API void rx_tree_metrics_clear(rx_tree_metrics* m);

/* Matching pairs as "(i,j)(k,l)…", oscillation, and brute-force oscillation
 * (-1 over the cap) of a well-nested word written with ā/a or ( ). */
RX_API rx_status rx_nested_metrics(const char* word, size_t brute_cap, char** pairs, unsigned* osc,
                                   int* osc_brute);
RX_API rx_status rx_harmonic(unsigned k, unsigned cap, char** out);

/* ---- lab ---- */

/* `partition` may be NULL; otherwise blocks separated by ';', lowest first. */
RX_API rx_status rx_classify(const rx_grammar* g, const char* partition, size_t samples, uint64_t seed,
                             char** report);

typedef enum rx_rho_strategy { RX_RHO_EXHAUSTIVE = 0, RX_RHO_RANDOM = 1, RX_RHO_FAMILY = 2 } rx_rho_strategy;

typedef struct rx_rho_options {
  rx_rho_strategy strategy;
  unsigned n;                 /* states (ignored for the family) */
  uint64_t count;             /* random: automata to draw */
  uint64_t seed;              /* random */
  double density;             /* random: transition probability */
  unsigned p, q;              /* family: two_cycle(p, q) */
  unsigned workers;
  uint64_t budget;
  unsigned max_exhaustive_states;
} rx_rho_options;

typedef struct rx_rho_result {
  unsigned n;
  int has_witness;
  uint64_t value;
  int exhaustive;
  uint64_t tested;
  uint64_t nonempty;
  char* witness_word;
  char* automaton_id;
  char* automaton;            /* witness NFA in the automaton file format */
} rx_rho_result;

RX_API void rx_rho_options_init(rx_rho_options* o);
/* On RX_ERR_BUDGET_EXCEEDED `out` holds the partial, non-exhaustive result. */
RX_API rx_status rx_measure_rho(const rx_cnf* c, const rx_rho_options* o, rx_rho_result* out);
RX_API void rx_rho_result_clear(rx_rho_result* r);

/* kind: linear | dimension | oscillation | superlinear | ultralinear |
 * ultralinear-dimension. The value is written in decimal. */
RX_API rx_status rx_bound_value(const char* kind, uint64_t nonterminals, unsigned k, unsigned d,
                                uint64_t constant, uint64_t n, char** out);
RX_API rx_status rx_fit_growth(const double* n, const double* values, size_t count, double* slope);

/* ---- datalog ---- */

RX_API rx_status rx_program_parse(const char* text, rx_program** out);
RX_API void rx_program_free(rx_program* p);
RX_API rx_status rx_program_query(const rx_program* p, const char** out);
RX_API rx_status rx_program_to_grammar(const rx_program* p, rx_grammar** out);
/* TSV `x  y` per query fact (node names), sorted by node order. */
RX_API rx_status rx_datalog_eval(const rx_program* p, const rx_graph* g, char** out);

/* ---- selftest ---- */

/* One `PASS|FAIL  name  detail` line per check. */
RX_API rx_status rx_selftest(char** report, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* RATINDEX_RATINDEX_H */
