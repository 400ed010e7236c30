/* C interface of the arbor library. All documents are UTF-8 JSON strings.
 * Strings returned through `char**` are owned by the caller and released
 * with arbor_string_free. Handles are released with their *_free function;
 * passing NULL to a *_free function is a no-op. */
#ifndef ARBOR_H
#define ARBOR_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define ARBOR_API __declspec(dllexport)
#else
#define ARBOR_API __attribute__((visibility("default")))
#endif

typedef enum arbor_status {
  ARBOR_OK = 0,
  ARBOR_NEGATIVE = 1,       /* the query was answered and the answer is "no" */
  ARBOR_INPUT_ERROR = 2,    /* malformed or inconsistent input */
  ARBOR_INTERNAL_ERROR = 3, /* self-check failure or unexpected exception */
  ARBOR_UNSUPPORTED = 4     /* instance exceeds a documented size limit */
} arbor_status;

typedef struct arbor_arch arbor_arch;
typedef struct arbor_dfa arbor_dfa;
typedef struct arbor_automaton arbor_automaton;
typedef struct arbor_controller arbor_controller;
typedef struct arbor_game arbor_game;

ARBOR_API const char* arbor_version(void);
/* Message of the last failing call on this thread ("" if none). */
ARBOR_API const char* arbor_last_error(void);
ARBOR_API void arbor_string_free(char* s);

/* Architectures (alphabet + tree). */
ARBOR_API arbor_status arbor_arch_parse(const char* json, arbor_arch** out);
ARBOR_API void arbor_arch_free(arbor_arch* a);
ARBOR_API arbor_status arbor_arch_to_json(const arbor_arch* a, char** out);
/* NEGATIVE when the architecture is not tree-like; the report names the
 * failing letters (with a path witness) and uncovered edges. */
ARBOR_API arbor_status arbor_arch_validate(const arbor_arch* a, char** report);

/* DFAs over the alphabet of an architecture. */
ARBOR_API arbor_status arbor_dfa_parse(const char* json, const arbor_arch* alphabet, arbor_dfa** out);
ARBOR_API void arbor_dfa_free(arbor_dfa* d);
ARBOR_API arbor_status arbor_dfa_to_json(const arbor_dfa* d, char** out);
/* NEGATIVE when the DFA is not I-diamond; the report gives a witness. */
ARBOR_API arbor_status arbor_dfa_check_diamond(const arbor_dfa* d, char** report);

/* Asynchronous automata, plants included. */
ARBOR_API arbor_status arbor_automaton_parse(const char* json, arbor_automaton** out);
ARBOR_API void arbor_automaton_free(arbor_automaton* a);
/* Distributions are materialized over their reachable states. */
ARBOR_API arbor_status arbor_automaton_to_json(const arbor_automaton* a, char** out);
ARBOR_API arbor_status arbor_distribute(const arbor_dfa* d, const arbor_arch* arch, arbor_automaton** out);
/* Runs a space-separated word; NEGATIVE when rejected or blocked. */
ARBOR_API arbor_status arbor_simulate(const arbor_automaton* a, const char* word, char** report);
/* Compares a distribution with its DFA on all words up to max_len. */
ARBOR_API arbor_status arbor_equiv(const arbor_automaton* dist, size_t max_len, char** report);
/* Checks the view invariants on every prefix of the word. */
ARBOR_API arbor_status arbor_invariants(const arbor_automaton* dist, const char* word, char** report);

/* Triangulated dependence graph document -> architecture document.
 * NEGATIVE when not triangulated (the report carries a chordless cycle). */
ARBOR_API arbor_status arbor_chordal_to_tca(const char* graph_json, char** out);

/* Control. NEGATIVE from synthesize means uncontrollable. */
ARBOR_API arbor_status arbor_synthesize(const arbor_automaton* plant, int verify_stages, arbor_controller** out,
                                        char** report);
ARBOR_API arbor_status arbor_controller_parse(const char* json, const arbor_automaton* plant, arbor_controller** out);
ARBOR_API void arbor_controller_free(arbor_controller* c);
ARBOR_API arbor_status arbor_controller_to_json(const arbor_controller* c, char** out);
/* NEGATIVE when the controller is not a valid covering controller or not winning. */
ARBOR_API arbor_status arbor_verify(const arbor_automaton* plant, const arbor_controller* c, char** report);

/* Parity games. NEGATIVE from solve means Environment wins the initial position. */
ARBOR_API arbor_status arbor_game_parse(const char* json, arbor_game** out);
ARBOR_API void arbor_game_free(arbor_game* g);
ARBOR_API arbor_status arbor_game_solve(const arbor_game* g, char** report);

#ifdef __cplusplus
}
#endif

#endif
