/* C interface to the string-net correlation-space simulator.
 *
 * Every object is an opaque handle created by an snc_*_create/parse/compile
 * call and released with the matching snc_*_free. Functions return SNC_OK on
 * success; on any other status the output parameters are left untouched and
 * snc_last_error() describes what went wrong (thread local, valid until the
 * next failing call on the same thread).
 *
 * Result payloads come back as JSON in malloc'd strings; release them with
 * snc_string_free. Keys are emitted in sorted order, so equal inputs produce
 * byte-identical output, which the tests rely on.
 */

#ifndef SNC_H
#define SNC_H

#ifdef __cplusplus
extern "C" {
#endif

#ifndef SNC_API
#define SNC_API
#endif

typedef enum snc_status {
  SNC_OK = 0,
  SNC_ERR_INVALID_ARGUMENT = 1, /* bad value passed by the caller */
  SNC_ERR_RANGE = 2,            /* index out of range */
  SNC_ERR_RESOURCE_LIMIT = 3,   /* would exceed a hard cap */
  SNC_ERR_PARSE = 4,            /* circuit text rejected; see snc_last_error */
  SNC_ERR_CAPACITY = 5,         /* circuit does not fit on the patch */
  SNC_ERR_IMPOSSIBLE_OUTCOME = 6,
  SNC_ERR_VERIFICATION = 7, /* a numerical cross-check failed */
  SNC_ERR_INTERNAL = 8
} snc_status;

typedef struct snc_patch snc_patch;       /* brick-wall lattice patch */
typedef struct snc_circuit snc_circuit;   /* parsed logical circuit */
typedef struct snc_schedule snc_schedule; /* measurement schedule */

SNC_API const char* snc_version(void);
SNC_API const char* snc_status_name(snc_status status);
SNC_API const char* snc_last_error(void); /* "" when nothing failed yet */
SNC_API void snc_string_free(char* str);

/* --- lattice ----------------------------------------------------------- */

SNC_API snc_status snc_patch_create(int rows, int cols, snc_patch** out);
SNC_API void snc_patch_free(snc_patch* patch);
/* geometry summary; pass NULL for any counter you do not need */
SNC_API snc_status snc_patch_stats(const snc_patch* patch, int* vertices, int* edges, int* sites,
                                   int* wires, int* gate_cells, int* cycle_rank);
/* vertices, edges, wire layout; indent < 0 for compact output */
SNC_API snc_status snc_patch_describe_json(const snc_patch* patch, int indent, char** out);

/* Ground-state diagnostics on the full statevector: term-by-term energies
 * and the amplitude profile. Only patches with at most `qubit_cap` sites
 * (26 when qubit_cap <= 0) fit; beyond that: SNC_ERR_RESOURCE_LIMIT. */
SNC_API snc_status snc_resource_report_json(const snc_patch* patch, int qubit_cap, int indent,
                                            char** out);

/* --- circuits ---------------------------------------------------------- */

/* Line-oriented source: "wires N", then "rz q angle" | "rx q angle" |
 * "cz q q'" | "id q"; '#' comments. Angles are pi fractions ("3pi/4") or
 * decimals. Rejections carry "line L, column C" in snc_last_error(). */
SNC_API snc_status snc_circuit_parse(const char* text, snc_circuit** out);
SNC_API void snc_circuit_free(snc_circuit* circuit);
SNC_API snc_status snc_circuit_wires(const snc_circuit* circuit, int* out);
SNC_API snc_status snc_circuit_gate_count(const snc_circuit* circuit, int* out);
/* canonical source text (parse of the output reproduces the circuit) */
SNC_API snc_status snc_circuit_text(const snc_circuit* circuit, char** out);
/* distribution of the circuit run on |0...0> by dense matrix simulation */
SNC_API snc_status snc_ideal_distribution_json(const snc_circuit* circuit, int indent, char** out);

/* --- compilation ------------------------------------------------------- */

/* mode: "live" measures with entanglers applied on the fly, "precoupled"
 * bakes them into the resource state. SNC_ERR_CAPACITY when the circuit
 * needs more wires or gate cells than the patch offers. */
SNC_API snc_status snc_compile(const snc_patch* patch, const snc_circuit* circuit,
                               const char* mode, snc_schedule** out);
SNC_API void snc_schedule_free(snc_schedule* schedule);
SNC_API snc_status snc_schedule_json(const snc_schedule* schedule, int indent, char** out);

/* --- execution --------------------------------------------------------- */

/* Every measurement branch, grouped into outcome classes: distribution over
 * decoded logical bitstrings, per-class probabilities, Pauli frames. */
SNC_API snc_status snc_run_exhaustive_json(const snc_patch* patch, const snc_schedule* schedule,
                                           int indent, char** out);
/* Monte Carlo outcome sampling; equal seeds give equal counts. */
SNC_API snc_status snc_run_sampled_json(const snc_patch* patch, const snc_schedule* schedule,
                                        long shots, unsigned long long seed, int indent,
                                        char** out);
/* Compile + exhaustive run + dense reference in one go; reports the total
 * variation distance between the two distributions. */
SNC_API snc_status snc_check_against_ideal_json(const snc_patch* patch, const snc_circuit* circuit,
                                                const char* mode, int indent, char** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SNC_H */
