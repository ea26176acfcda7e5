// Copyright 2026 The dimarket Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runs acceptance criteria A1..A9 and prints one line per criterion.
//
//   dim_acceptance [--jobs N] [--seed S] [ID...]

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "dim/verify.hpp"

int main(int argc, char** argv) {
  dim::verify::SuiteOptions options;
  std::vector<std::string> ids;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--jobs" && i + 1 < argc) {
      options.jobs = static_cast<unsigned>(std::stoul(argv[++i]));
    } else if (arg == "--seed" && i + 1 < argc) {
      options.seed = std::stoull(argv[++i]);
    } else {
      ids.push_back(arg);
    }
  }
  if (ids.empty()) ids = dim::verify::suite_ids();

  dim::verify::EquilibriumTally tally;
  options.tally = &tally;
  int failed = 0;
  for (const auto& id : ids) {
    dim::verify::SuiteReport report;
    try {
      report = dim::verify::run_suite(id, options);
    } catch (const std::exception& e) {
      std::printf("[FAIL] %s: %s\n", id.c_str(), e.what());
      ++failed;
      continue;
    }
    std::printf("[%s] %s %s: %zu/%zu cases passed (%.1fs)%s%s\n", report.passed() ? "PASS" : "FAIL",
                report.id.c_str(), report.title.c_str(), report.cases - report.failed, report.cases,
                report.seconds, report.note.empty() ? "" : "; ", report.note.c_str());
    for (const auto& msg : report.failures) std::printf("    %s\n", msg.c_str());
    std::fflush(stdout);
    failed += !report.passed();
  }
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
