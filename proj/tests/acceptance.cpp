// Acceptance suite: one pass/fail line per criterion, transcript optional.
//
//   acceptance [transcript.json]

#include <fstream>
#include <iostream>

#include "abyss/selftest.hpp"

int main(int argc, char** argv) {
  abyss::selftest::Report report = abyss::selftest::run();
  for (const auto& c : report.criteria)
    std::cout << (c.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << '\n';
  if (argc > 1) std::ofstream(argv[1]) << report.transcript().dump(2) << '\n';
  std::cout << (report.all_pass() ? "all criteria pass" : "some criteria FAIL") << '\n';
  return report.all_pass() ? 0 : 1;
}
