// Acceptance suite: runs every validation criterion at its pinned
// tolerance and prints one pass/fail line per criterion.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <iostream>

#include "qdarwin/validate.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 424242;
  unsigned workers = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
      seed = std::strtoull(argv[++i], nullptr, 10);
    } else if (std::strcmp(argv[i], "--workers") == 0 && i + 1 < argc) {
      workers = static_cast<unsigned>(std::strtoul(argv[++i], nullptr, 10));
    }
  }
  auto results = qdarwin::run_acceptance(seed, workers);
  std::cout << qdarwin::format_acceptance(results);
  return qdarwin::all_passed(results) ? 0 : 1;
}
