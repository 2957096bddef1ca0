#include <math.h>
#include <stdio.h>
#include <string.h>

#include "gt_hypergeo.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      failures++;                                                      \
    }                                                                  \
  } while (0)

int main(void) {
  double lambda[2] = {1.0, 0.0};
  double s[2] = {0.0, 0.0};
  GthoEvalResult r;
  EXPECT(gtho_eval(GTHO_FUNCTION_BESSEL, lambda, s, 2, 2.0, 24, 1, &r) == GTHO_STATUS_OK);
  EXPECT(fabs(r.value - 1.0) < 1e-8);

  double mu[1] = {0.4};
  GthoUnitary *u = NULL;
  EXPECT(gtho_unitary_new(mu, lambda, 2, false, &u) == GTHO_STATUS_OK);
  double residual = 1.0;
  EXPECT(gtho_unitary_residual(u, &residual) == GTHO_STATUS_OK);
  EXPECT(residual < 1e-12);
  gtho_unitary_free(u);

  double bad_mu[1] = {2.0};
  u = NULL;
  EXPECT(gtho_unitary_new(bad_mu, lambda, 2, false, &u) == GTHO_STATUS_INTERLACING);
  EXPECT(u == NULL);
  EXPECT(gtho_last_error_message() != NULL);

  int partition[1] = {2};
  GthoMacdonald *p = NULL;
  EXPECT(gtho_macdonald_new(partition, 1, 2, "1/2", "1/4", &p) == GTHO_STATUS_OK);
  size_t terms = 0;
  EXPECT(gtho_macdonald_term_count(p, &terms) == GTHO_STATUS_OK);
  EXPECT(terms == 2);
  int monomial[2];
  char text[64];
  size_t needed = 0;
  EXPECT(gtho_macdonald_term(p, 1, monomial, 2, text, sizeof text, &needed) == GTHO_STATUS_OK);
  EXPECT(strcmp(text, "25/21") == 0);
  EXPECT(monomial[0] == 1 && monomial[1] == 1);
  gtho_macdonald_free(p);

  if (failures == 0) {
    printf("ok\n");
  }
  return failures == 0 ? 0 : 1;
}
