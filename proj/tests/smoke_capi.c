/* Compiled as plain C99: proves the public header needs no C++ to use. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "qbox/qbox.h"

static int failures = 0;

#define CHECK(cond)                                                  \
  do {                                                               \
    if (!(cond)) {                                                   \
      ++failures;                                                    \
      fprintf(stderr, "FAIL %s:%d: %s\n", __FILE__, __LINE__, #cond); \
    }                                                                \
  } while (0)

int main(void) {
  size_t size = 0;
  double value = 0.0;
  qbx_resonance two_one;
  qbx_thresholds thresholds;
  qbx_classical_state start;
  qbx_classical_state final_state;
  qbx_trajectory* traj = NULL;
  qbx_coverage coverage;

  CHECK(qbx_version() != NULL);
  CHECK(strlen(qbx_version()) > 0);

  CHECK(qbx_basis_size(100, &size) == QBX_OK);
  CHECK(size == 4950);

  CHECK(qbx_matrix_element(1, 2, 1, 3, &value) == QBX_OK);
  CHECK(value > 2.3 && value < 2.4);

  two_one.p = 2;
  two_one.q = 1;
  CHECK(qbx_prob_grey(two_one, 0.0, 1.0, &value) == QBX_OK);
  CHECK(fabs(value - 2.0 / 3.0) < 1e-12);

  CHECK(qbx_chaos_thresholds(44.5, 0.5, 1.0, 1.0, 1.0, &thresholds) == QBX_OK);
  CHECK(thresholds.eps_first > 0.0);
  CHECK(thresholds.eps_no_gaps_refined > thresholds.eps_first);

  start.x1 = 0.2;
  start.x2 = 0.5;
  start.v1 = 1.0;
  start.v2 = 0.0;
  start.m1 = 1.0;
  start.m2 = 3.0;
  start.box_l = 1.0;
  start.t = 0.0;
  CHECK(qbx_evolve_events(&start, 1000, 0, &traj) == QBX_OK);
  CHECK(qbx_trajectory_final(traj, &final_state) == QBX_OK);
  CHECK(final_state.x1 >= 0.0 && final_state.x1 <= final_state.x2);
  CHECK(qbx_trajectory_drift(traj, &value) == QBX_OK);
  CHECK(value < 1e-10);
  qbx_trajectory_free(traj);

  CHECK(qbx_coverage_scan_quantum(0.02, 44.5, 0.5, 16, &coverage) == QBX_OK);
  CHECK(coverage.fraction >= 0.0 && coverage.fraction <= 1.0);

  /* error path: bad argument reports a code and a message */
  CHECK(qbx_basis_size(0, &size) == QBX_ERR_INVALID_ARGUMENT);
  CHECK(strlen(qbx_last_error()) > 0);

  if (failures == 0) {
    printf("smoke_capi: all checks passed\n");
    return EXIT_SUCCESS;
  }
  fprintf(stderr, "smoke_capi: %d checks failed\n", failures);
  return EXIT_FAILURE;
}
