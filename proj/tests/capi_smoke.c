/*
 * Copyright 2026 The FrameKit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* The public header must compile as C and link against the shared library. */

#include <math.h>
#include <stdio.h>

#include "framekit/framekit.h"

int main(void) {
  fk_frame* f = NULL;
  fk_bounds b;
  if (fk_frame_fixture("F2", &f) != FK_OK) {
    fprintf(stderr, "fixture: %s\n", fk_last_error());
    return 1;
  }
  if (fk_frame_bounds(f, &b) != FK_OK || fabs(b.lower - 2.0) > 1e-12 || fabs(b.upper - 2.0) > 1e-12) {
    fprintf(stderr, "bounds: %s\n", fk_last_error());
    fk_frame_destroy(f);
    return 1;
  }
  fk_frame_destroy(f);
  if (fk_frame_fixture("F0", &f) != FK_ERR_INVALID_ARGUMENT) return 1;
  printf("capi_smoke ok (%s)\n", fk_version());
  return 0;
}
