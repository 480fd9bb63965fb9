#ifndef DELDYN_H
#define DELDYN_H

/*
 * C interface to the Deligne-Dynkin diagram library.
 *
 * Every function returns a status code; on failure the message is kept per
 * thread and readable through deldyn_last_error().  Report functions write a
 * heap string to *out (JSON when as_json is nonzero, plain text otherwise);
 * release it with deldyn_string_free().
 */

#ifdef __cplusplus
extern "C" {
#endif

#define DELDYN_OK 0
#define DELDYN_ERR_INPUT 1    /* malformed or semantically invalid input */
#define DELDYN_ERR_INTERNAL 2 /* a library invariant failed; report a bug */

/* A parsed and validated diagram file (components, action, mu, and the
 * optional cover/phi blocks). */
typedef struct deldyn_diagram deldyn_diagram;

/* Message of the last failure on the calling thread; never NULL. */
const char* deldyn_last_error(void);

void deldyn_string_free(char* s);

int deldyn_diagram_parse(const char* text, deldyn_diagram** out);
void deldyn_diagram_free(deldyn_diagram* d);
int deldyn_diagram_serialize(const deldyn_diagram* d, char** out);

/* Special-node label table for every type of rank <= max_rank. */
int deldyn_table(int max_rank, int as_json, char** out);

/* Validity, irreducibility/population/symplecticity, type, the symplectic
 * set S, the determining set U, and the identity-component automorphism
 * count, plus the same data per irreducible piece. */
int deldyn_classify(const deldyn_diagram* d, int as_json, char** out);

/* Special nodes of one simple type, e.g. "D5". */
int deldyn_special(const char* type, int as_json, char** out);

/* Opposition involution of one simple type, with the brute-force
 * cross-check at small rank. */
int deldyn_oppinv(const char* type, int as_json, char** out);

/* Equivariant mu-isomorphism search over every equivariant component map.
 * local_cycles, when non-NULL, is a permutation of the first diagram's nodes
 * in cycle notation; the search is then restricted to the cyclic subgroup it
 * generates inside the joint action.  *out_found is set to 0 or 1. */
int deldyn_isom(const deldyn_diagram* d1, const deldyn_diagram* d2, const char* local_cycles,
                int as_json, char** out, int* out_found);

/* Abelian-variety dimension pipeline.  Runs once when the file pins a cover
 * and phi, otherwise over every valid choice.  *out_ok is set to 0 when any
 * run violated a pipeline invariant. */
int deldyn_deligne(const deldyn_diagram* d, long long multiplicity, int as_json, char** out,
                   int* out_ok);

/* Adjoint iteration chain of an object spec such as "A1+A1+T2:8"
 * (simple factors, optional central torus T<k>, then ':' and dimension). */
int deldyn_hyperadjoint(const char* spec, int as_json, char** out);

/* Goursat decomposition sweep over the named-group zoo, orders <= max_order.
 * *out_ok is set to 0 when any decomposition failed to re-verify. */
int deldyn_goursat(int max_order, int as_json, char** out, int* out_ok);

typedef void (*deldyn_progress_fn)(long long frames_done, long long frames_total, void* user);

/* Local-global verification campaign over all instances within the bounds.
 * types is a subset of "ABCD".  *out_found_counterexample is set to 0 or 1. */
int deldyn_campaign(long long max_group_order, int max_rank, const char* types,
                    int max_components, int jobs, deldyn_progress_fn progress, void* user,
                    int as_json, char** out, int* out_found_counterexample);

#ifdef __cplusplus
}
#endif

#endif /* DELDYN_H */
