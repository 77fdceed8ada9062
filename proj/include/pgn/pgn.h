/*
 * C interface to the parametric geometry of numbers toolkit.
 *
 * Every call returns a pgn_status. On failure pgn_last_error() holds a
 * message for the calling thread until its next failing call. Objects are
 * opaque handles released with the matching *_free function; strings handed
 * out through char** parameters are released with pgn_string_free.
 *
 * Exact quantities (times, template values, averages) travel as rational
 * strings "p/q". Report-style results are JSON documents.
 */
#ifndef PGN_PGN_H
#define PGN_PGN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(PGN_BUILDING_LIBRARY)
#define PGN_API __attribute__((visibility("default")))
#else
#define PGN_API
#endif

typedef enum pgn_status {
  PGN_OK = 0,
  PGN_ERR_INVALID_ARGUMENT = 1, /* null pointer, bad size */
  PGN_ERR_DOMAIN = 2,           /* argument outside the operation's domain */
  PGN_ERR_INVALID_TEMPLATE = 3, /* template axioms or score preconditions */
  PGN_ERR_BUDGET = 4,           /* minima search exceeded its node budget */
  PGN_ERR_RANGE = 5,            /* flow time beyond the safe bound */
  PGN_ERR_INVARIANT = 6,        /* unimodularity, Minkowski bounds */
  PGN_ERR_PARSE = 7,            /* malformed JSON, CSV or number */
  PGN_ERR_INTERNAL = 99
} pgn_status;

typedef struct pgn_template pgn_template;
typedef struct pgn_lattice pgn_lattice;
typedef struct pgn_trace pgn_trace;

PGN_API const char* pgn_version(void);
PGN_API const char* pgn_status_name(pgn_status status);
PGN_API const char* pgn_last_error(void);
PGN_API void pgn_string_free(char* s);

/* ---- templates ---------------------------------------------------------- */

/* Phi^iterates(f^(1)) on [0, horizon]; iterates = 0 gives f^(1). */
PGN_API pgn_status pgn_template_build(int m, int n, int iterates, const char* horizon, pgn_template** out);
PGN_API pgn_status pgn_template_standard_block(int m, int n, pgn_template** out);
PGN_API pgn_status pgn_template_from_json(const char* text, pgn_template** out);
PGN_API pgn_status pgn_template_to_json(const pgn_template* t, char** out);
/* Breakpoints as CSV "t,f_1,...,f_d" in doubles, for plotting. */
PGN_API pgn_status pgn_template_to_csv(const pgn_template* t, char** out);
PGN_API pgn_status pgn_template_dims(const pgn_template* t, int* m, int* n);
PGN_API pgn_status pgn_template_end(const pgn_template* t, char** rational);
/* values receives d doubles (exact values rounded toward zero). */
PGN_API pgn_status pgn_template_eval(const pgn_template* t, const char* time, double* values);
/* *passed is 1 or 0; report is JSON listing every violated axiom. */
PGN_API pgn_status pgn_template_validate(const pgn_template* t, int* passed, char** report);
/* Score report over [0, horizon]; horizon NULL means the whole domain.
 * PGN_ERR_INVALID_TEMPLATE if the path fails validation. */
PGN_API pgn_status pgn_template_score(const pgn_template* t, const char* horizon, char** report);
PGN_API pgn_status pgn_template_average_delta(const pgn_template* t, const char* horizon, char** rational);
PGN_API pgn_status pgn_closed_form_delta(int m, int n, char** rational);
PGN_API void pgn_template_free(pgn_template* t);

/* ---- lattices ----------------------------------------------------------- */

PGN_API pgn_status pgn_lattice_identity(int m, int n, pgn_lattice** out);
/* basis: d*d doubles, row-major, columns generate the lattice. */
PGN_API pgn_status pgn_lattice_from_basis(int m, int n, const double* basis, pgn_lattice** out);
/* x_A for A given as m*n strings, row-major. Each entry is a decimal, "p/q",
 * "golden", "cf:a0,a1,..." or "pow2:N". */
PGN_API pgn_status pgn_lattice_from_A(int m, int n, const char* const* entries, pgn_lattice** out);
PGN_API pgn_status pgn_lattice_random(int m, int n, uint64_t seed, pgn_lattice** out);
PGN_API pgn_status pgn_lattice_from_json(const char* text, pgn_lattice** out);
PGN_API pgn_status pgn_lattice_to_json(const pgn_lattice* x, char** out);
PGN_API pgn_status pgn_lattice_dims(const pgn_lattice* x, int* m, int* n);
PGN_API pgn_status pgn_lattice_flow(const pgn_lattice* x, double t, pgn_lattice** out);
/* Premultiplies by [[a, 0], [h, b]]: h is n*m, a is m*m, b is n*n, row-major. */
PGN_API pgn_status pgn_lattice_perturb(const pgn_lattice* x, const double* h, const double* a, const double* b,
                                       pgn_lattice** out);
/* lambda receives d doubles. */
PGN_API pgn_status pgn_lattice_minima(const pgn_lattice* x, double* lambda);
/* bound <= 0 selects the sufficient bound. */
PGN_API pgn_status pgn_lattice_minima_oracle(const pgn_lattice* x, long bound, double* lambda);
PGN_API void pgn_lattice_free(pgn_lattice* x);

/* ---- traces and diagnostics --------------------------------------------- */

/* Samples t = 0, dt, ..., round(t_max / dt) dt. */
PGN_API pgn_status pgn_trace_simulate(const pgn_lattice* x, double t_max, double dt, pgn_trace** out);
PGN_API pgn_status pgn_trace_from_csv(const char* text, pgn_trace** out);
PGN_API pgn_status pgn_trace_to_csv(const pgn_trace* tr, char** out);
PGN_API pgn_status pgn_trace_size(const pgn_trace* tr, size_t* samples, int* d);
/* log_minima receives d doubles. */
PGN_API pgn_status pgn_trace_sample(const pgn_trace* tr, size_t index, double* t, double* log_minima);
PGN_API pgn_status pgn_trace_as_template(const pgn_trace* tr, int m, int n, pgn_template** out);
PGN_API pgn_status pgn_trace_compare(const pgn_trace* tr, const pgn_template* f, double window, char** report);
PGN_API void pgn_trace_free(pgn_trace* tr);

PGN_API pgn_status pgn_occupation(const pgn_lattice* x, double horizon, double threshold, double dt, char** report);
/* theta: m strings in the same syntax as pgn_lattice_from_A. */
PGN_API pgn_status pgn_probe_singular(const char* const* theta, size_t m, uint64_t q_max, int per_decade,
                                      char** report);

#ifdef __cplusplus
}
#endif

#endif /* PGN_PGN_H */
