/* Exercises the C interface from plain C. */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "arbor/arbor.h"

#ifndef ARBOR_DATA_DIR
#define ARBOR_DATA_DIR "data"
#endif

static int failures = 0;

#define EXPECT(cond)                                                  \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                     \
    }                                                                 \
  } while (0)

static char* slurp(const char* name) {
  char path[512];
  snprintf(path, sizeof path, "%s/%s", ARBOR_DATA_DIR, name);
  FILE* f = fopen(path, "rb");
  if (!f) {
    fprintf(stderr, "cannot open %s\n", path);
    exit(2);
  }
  fseek(f, 0, SEEK_END);
  long n = ftell(f);
  fseek(f, 0, SEEK_SET);
  char* buf = malloc((size_t)n + 1);
  size_t got = fread(buf, 1, (size_t)n, f);
  buf[got] = '\0';
  fclose(f);
  return buf;
}

static void test_arch(void) {
  char* text = slurp("tree5.json");
  arbor_arch* a = NULL;
  EXPECT(arbor_arch_parse(text, &a) == ARBOR_OK);
  char* report = NULL;
  EXPECT(arbor_arch_validate(a, &report) == ARBOR_OK);
  arbor_string_free(report);

  char* once = NULL;
  EXPECT(arbor_arch_to_json(a, &once) == ARBOR_OK);
  arbor_arch* b = NULL;
  EXPECT(arbor_arch_parse(once, &b) == ARBOR_OK);
  char* twice = NULL;
  EXPECT(arbor_arch_to_json(b, &twice) == ARBOR_OK);
  EXPECT(strcmp(once, twice) == 0);
  arbor_string_free(once);
  arbor_string_free(twice);
  arbor_arch_free(b);

  char* dtext = slurp("tree5_dfa.json");
  arbor_dfa* d = NULL;
  EXPECT(arbor_dfa_parse(dtext, a, &d) == ARBOR_OK);
  EXPECT(arbor_dfa_check_diamond(d, NULL) == ARBOR_OK);
  arbor_automaton* dist = NULL;
  EXPECT(arbor_distribute(d, a, &dist) == ARBOR_OK);
  report = NULL;
  EXPECT(arbor_equiv(dist, 4, &report) == ARBOR_OK);
  EXPECT(report && strstr(report, "\"equal\": true"));
  arbor_string_free(report);
  EXPECT(arbor_invariants(dist, "a1 a2 a1", NULL) == ARBOR_OK);
  EXPECT(arbor_simulate(dist, "nosuchletter", NULL) == ARBOR_INPUT_ERROR);
  EXPECT(strlen(arbor_last_error()) > 0);
  arbor_automaton_free(dist);
  arbor_dfa_free(d);
  free(dtext);
  arbor_arch_free(a);
  free(text);

  text = slurp("tree5_broken.json");
  EXPECT(arbor_arch_parse(text, &a) == ARBOR_OK);
  EXPECT(arbor_arch_validate(a, NULL) == ARBOR_NEGATIVE);
  arbor_arch_free(a);
  free(text);
}

static void test_errors(void) {
  arbor_arch* a = NULL;
  EXPECT(arbor_arch_parse(NULL, &a) == ARBOR_INPUT_ERROR);
  EXPECT(arbor_arch_parse("{", &a) == ARBOR_INPUT_ERROR);
  EXPECT(arbor_arch_parse("{\"processes\": 3}", &a) == ARBOR_INPUT_ERROR);
  EXPECT(arbor_last_error()[0] == '/');
  arbor_arch_free(NULL);
  arbor_string_free(NULL);
  EXPECT(strlen(arbor_version()) > 0);
}

static void test_chordal(void) {
  char* text = slurp("path_graph.json");
  char* out = NULL;
  EXPECT(arbor_chordal_to_tca(text, &out) == ARBOR_OK);
  arbor_arch* a = NULL;
  EXPECT(arbor_arch_parse(out, &a) == ARBOR_OK);
  EXPECT(arbor_arch_validate(a, NULL) == ARBOR_OK);
  arbor_arch_free(a);
  arbor_string_free(out);
  free(text);

  text = slurp("c4_graph.json");
  out = NULL;
  EXPECT(arbor_chordal_to_tca(text, &out) == ARBOR_NEGATIVE);
  EXPECT(out && strstr(out, "chordlessCycle"));
  arbor_string_free(out);
  free(text);
}

static void test_control(void) {
  char* text = slurp("server_client.json");
  arbor_automaton* plant = NULL;
  EXPECT(arbor_automaton_parse(text, &plant) == ARBOR_OK);
  free(text);

  text = slurp("server_client_naive.json");
  arbor_controller* naive = NULL;
  EXPECT(arbor_controller_parse(text, plant, &naive) == ARBOR_OK);
  free(text);
  char* report = NULL;
  EXPECT(arbor_verify(plant, naive, &report) == ARBOR_NEGATIVE);
  EXPECT(report && strstr(report, "counterexample"));
  arbor_string_free(report);
  arbor_controller_free(naive);

  arbor_controller* c = NULL;
  report = NULL;
  EXPECT(arbor_synthesize(plant, 0, &c, &report) == ARBOR_OK);
  arbor_string_free(report);
  EXPECT(arbor_verify(plant, c, NULL) == ARBOR_OK);
  arbor_controller_free(c);
  arbor_automaton_free(plant);
}

static void test_game(void) {
  char* text = slurp("small_game.json");
  arbor_game* g = NULL;
  EXPECT(arbor_game_parse(text, &g) == ARBOR_OK);
  char* report = NULL;
  EXPECT(arbor_game_solve(g, &report) == ARBOR_OK);
  arbor_string_free(report);
  arbor_game_free(g);
  free(text);
}

int main(void) {
  test_errors();
  test_arch();
  test_chordal();
  test_control();
  test_game();
  if (failures) fprintf(stderr, "%d check(s) failed\n", failures);
  else printf("capi: all checks passed\n");
  return failures ? 1 : 0;
}
