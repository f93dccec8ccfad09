#include <iostream>

#include "acceptance_suite.hpp"

int main() {
  const auto results = gradlab::acceptance::run_all(std::cout);
  return gradlab::acceptance::all_passed(results) ? 0 : 1;
}
