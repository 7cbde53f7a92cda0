#include <iostream>

#include "srlab/acceptance.hpp"

int main() {
  const bool ok = srlab::acceptance::run_all(std::cout);
  return ok ? 0 : 1;
}
