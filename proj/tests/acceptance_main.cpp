#include <cstdlib>
#include <iostream>
#include <string>

#include "acceptance.hpp"

// acceptance [criterion...]
int main(int argc, char** argv) {
  std::uint64_t seed = acceptance::kDefaultSeed;
  if (const char* s = std::getenv("BAWB_SEED")) seed = std::stoull(s);
  bool all = true;
  if (argc == 1) {
    for (const auto& r : acceptance::run_all(seed, &std::cout)) all = all && r.pass();
  } else {
    for (int i = 1; i < argc; ++i) {
      auto r = acceptance::run(std::stoi(argv[i]), seed);
      std::cout << acceptance::format_line(r);
      all = all && r.pass();
    }
  }
  return all ? 0 : 1;
}
