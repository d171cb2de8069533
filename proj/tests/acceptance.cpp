/*
 * Copyright (C) 2026 The tarrylab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Runs the acceptance battery and prints one line per criterion. Exits
// nonzero when a gating criterion fails. Optional arguments select criteria
// by id, e.g. `tarry_acceptance 4 5 7`.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "tarry/oracles.hpp"

int main(int argc, char** argv) {
  tarry::BatteryOptions opts;
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::stoi(argv[i]));
  if (ids.empty()) {
    for (int id = 1; id <= tarry::kCriterionCount; ++id) ids.push_back(id);
  }
  int gating_failures = 0;
  for (int id : ids) {
    const tarry::CriterionResult r = tarry::run_criterion(id, opts);
    std::cout << tarry::format_criterion(r) << std::endl;
    if (r.gating && !r.passed) ++gating_failures;
  }
  std::cout << (gating_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED")
            << " (" << gating_failures << " gating failures)" << std::endl;
  return gating_failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
