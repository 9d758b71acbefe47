// Builds an OMD(16,2) by composition, prints it as a grid and re-checks it.

#include <iostream>

#include "omd/omd.hpp"

int main() {
  const auto c = omd::construct(16, 2);
  std::cout << "construction: " << c.path << "\n";
  std::cout << omd::to_grid(c.design);

  const auto report = omd::verify(c.design);
  std::cout << "verified: " << std::boolalpha << report.passed << ", blocks: " << report.nonempty << "\n";
  if (c.transversal)
    std::cout << "transversal certified: " << omd::verify_transversal(c.design, *c.transversal).passed << "\n";
  return report.passed ? 0 : 1;
}
