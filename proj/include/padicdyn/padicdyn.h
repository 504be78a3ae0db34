#ifndef PADICDYN_H
#define PADICDYN_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PADICDYN_API __declspec(dllexport)
#else
#define PADICDYN_API __attribute__((visibility("default")))
#endif

typedef enum padicdyn_status {
  PADICDYN_OK = 0,
  PADICDYN_ERR_PRECISION_EXHAUSTED = 1,
  PADICDYN_ERR_DIVISION_BY_ZERO = 2,
  PADICDYN_ERR_UNDECIDABLE = 3,
  PADICDYN_ERR_AMBIGUOUS_VALUATION = 4,
  PADICDYN_ERR_NOT_A_CRITICAL_POINT = 5,
  PADICDYN_ERR_DOMAIN = 6,
  PADICDYN_ERR_PARSE = 7,
  PADICDYN_ERR_INVALID_ARGUMENT = 8,
  PADICDYN_ERR_INTERNAL = 99
} padicdyn_status;

typedef enum padicdyn_pcb { PADICDYN_PCB = 0, PADICDYN_NOT_PCB = 1, PADICDYN_PCB_UNKNOWN = 2 } padicdyn_pcb;

typedef enum padicdyn_color {
  PADICDYN_BLACK = 0,
  PADICDYN_WHITE = 1,
  PADICDYN_GRAY = 2,
  PADICDYN_UNKNOWN = 3
} padicdyn_color;

typedef enum padicdyn_format { PADICDYN_TEXT = 0, PADICDYN_JSON = 1 } padicdyn_format;

typedef struct padicdyn_family padicdyn_family;
typedef struct padicdyn_tree padicdyn_tree;

typedef struct padicdyn_orbit_options {
  long precision;
  long max_iter;
  int union_search;
} padicdyn_orbit_options;

typedef struct padicdyn_explore_options {
  padicdyn_orbit_options orbit;
  long depth;         /* tree levels, root included */
  long node_max_iter; /* 0: max(50, 2 * depth of the node) */
  unsigned threads;   /* 0: hardware concurrency */
} padicdyn_explore_options;

PADICDYN_API const char* padicdyn_version(void);
PADICDYN_API const char* padicdyn_status_name(padicdyn_status status);
/* Message of the last failed call on this thread; "" when none. */
PADICDYN_API const char* padicdyn_last_error(void);
/* Frees every string the library hands out. */
PADICDYN_API void padicdyn_string_free(char* s);

PADICDYN_API padicdyn_orbit_options padicdyn_orbit_options_default(void);
PADICDYN_API padicdyn_explore_options padicdyn_explore_options_default(void);

/* Families: "cubic2", "cubic<p>", "quadratic<p>". */
PADICDYN_API padicdyn_status padicdyn_family_builtin(const char* name, padicdyn_family** out);
PADICDYN_API void padicdyn_family_free(padicdyn_family* family);
PADICDYN_API unsigned long padicdyn_family_prime(const padicdyn_family* family);
PADICDYN_API padicdyn_status padicdyn_family_describe(const padicdyn_family* family, char** out);

/* Classifies f_t for a scalar literal t ("a/b" or "u + O(p^n)"). The report
   lists the verdict and every critical orbit with its trace. */
PADICDYN_API padicdyn_status padicdyn_classify_parameter(const padicdyn_family* family, const char* t,
                                                         const padicdyn_orbit_options* opts,
                                                         padicdyn_format format, padicdyn_pcb* verdict,
                                                         char** report);

/* Whole-disk verdict for D(center, p^radius_exp): Black, White or Unknown. */
PADICDYN_API padicdyn_status padicdyn_classify_disk(const padicdyn_family* family, const char* center,
                                                    long radius_exp, const padicdyn_orbit_options* opts,
                                                    padicdyn_color* color, char** detail);

PADICDYN_API padicdyn_status padicdyn_explore(const padicdyn_family* family, const char* center,
                                              long radius_exp, const padicdyn_explore_options* opts,
                                              padicdyn_tree** out);
PADICDYN_API void padicdyn_tree_free(padicdyn_tree* tree);
/* format: "ascii", "dot" or "json". */
PADICDYN_API padicdyn_status padicdyn_tree_emit(const padicdyn_tree* tree, const char* format, char** out);
PADICDYN_API padicdyn_status padicdyn_tree_stats(const padicdyn_tree* tree, char** out);
PADICDYN_API padicdyn_status padicdyn_tree_parse_json(const char* text, unsigned long p, padicdyn_tree** out);
/* Colour of the node with this label at this depth; INVALID_ARGUMENT when absent. */
PADICDYN_API padicdyn_status padicdyn_tree_color_at(const padicdyn_tree* tree, const char* label, long depth,
                                                    padicdyn_color* color);

/* "Exact 1 (Theorem d/2<p<d)" and the like. */
PADICDYN_API padicdyn_status padicdyn_radius(long d, unsigned long p, char** out);
PADICDYN_API padicdyn_status padicdyn_radius_table(long dmax, unsigned long pmax, padicdyn_format format,
                                                   char** out);
/* The witness map and the outcome of its three identities. */
PADICDYN_API padicdyn_status padicdyn_witness(long d, unsigned long p, int* verified, char** report);
/* Newton polygon of comma-separated coefficients, low to high. */
PADICDYN_API padicdyn_status padicdyn_newton(unsigned long p, const char* coefficients, padicdyn_format format,
                                             char** out);

PADICDYN_API unsigned long long padicdyn_default_seed(void);
/* Suite names: newton, disk, pto1, radius, witness, bdry. */
PADICDYN_API padicdyn_status padicdyn_verify(const char* suite, unsigned long long seed, int* passed,
                                             char** report);

#ifdef __cplusplus
}
#endif

#endif
