// Acceptance gate: runs every validation check and prints one line per
// criterion. Exits nonzero if any check fails.

#include <iostream>

#include "bec2/commands.hpp"

int main() {
  return bec2::run_validate(std::nullopt, std::cout);
}
