#include <stdio.h>
#include <string.h>

#include "padicdyn/padicdyn.h"

static int failures = 0;

static void expect(int cond, const char* what) {
  if (!cond) {
    fprintf(stderr, "FAIL %s: %s\n", what, padicdyn_last_error());
    ++failures;
  }
}

int main(void) {
  padicdyn_family* f = NULL;
  expect(padicdyn_family_builtin("cubic2", &f) == PADICDYN_OK, "family");

  padicdyn_pcb v = PADICDYN_PCB_UNKNOWN;
  char* report = NULL;
  expect(padicdyn_classify_parameter(f, "1", NULL, PADICDYN_TEXT, &v, &report) == PADICDYN_OK, "classify");
  expect(v == PADICDYN_PCB, "t=1 is PCB");
  expect(report != NULL && strstr(report, "verdict: PCB") != NULL, "report");
  padicdyn_string_free(report);

  padicdyn_color c = PADICDYN_UNKNOWN;
  expect(padicdyn_classify_disk(f, "17", -5, NULL, &c, NULL) == PADICDYN_OK, "disk");
  expect(c == PADICDYN_WHITE, "D(17, 2^-5) is white");

  char* r = NULL;
  expect(padicdyn_radius(3, 2, &r) == PADICDYN_OK, "radius");
  expect(r != NULL && strcmp(r, "Exact 1 (Theorem d/2<p<d)") == 0, "radius text");
  padicdyn_string_free(r);

  expect(padicdyn_classify_parameter(f, "abc", NULL, PADICDYN_TEXT, &v, NULL) == PADICDYN_ERR_PARSE, "parse error");
  padicdyn_family_free(f);

  printf("%s\n", failures == 0 ? "ok" : "failed");
  return failures == 0 ? 0 : 1;
}
