// Acceptance suite runner: executes every acceptance criterion at its pinned
// tolerance and prints one PASS/FAIL line per criterion. Exit code 0 only if
// all pass.

#include <cstdio>

#include "simlearn/harness.hpp"

int main() {
  const auto results = simlearn::run_selftest("acceptance-");
  bool all_pass = true;
  for (const auto& check : results) {
    std::printf("%s  %s  (%s)\n", check.pass ? "PASS" : "FAIL", check.name.c_str(),
                check.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && check.pass;
  }
  std::printf("%s: %zu criteria\n", all_pass ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
              results.size());
  return all_pass ? 0 : 1;
}
