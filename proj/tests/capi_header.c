/*
 * Copyright 2026 The Snakeforge Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* The public header must stay consumable from plain C. */
#include <stdio.h>

#include "snakeforge/snakeforge.h"

int main(void)
{
  sf_assembly * assembly = NULL;
  char * report = NULL;
  double volume = 0.0;
  if (sf_assembly_load_file(NULL, &assembly) != SF_OK) {
    fprintf(stderr, "%s\n", sf_last_error());
    return 1;
  }
  if (sf_buoyancy_report(assembly, 1.0, 1.0, &report) != SF_OK) {
    sf_assembly_free(assembly);
    return 1;
  }
  sf_string_free(report);
  sf_assembly_free(assembly);
  if (sf_torus_volume(0.16, 0.0602, &volume) != SF_OK || volume <= 0.0) {
    return 1;
  }
  return 0;
}
