#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace qcsp {

struct AcceptanceOptions {
  // Smaller iteration counts for a fast smoke run.
  bool quick = false;
  // Adds the m=5 conjecture check.
  bool full = false;
  unsigned threads = 1;
  std::uint64_t seed = 20240501;
  // Criteria to run; empty runs all of 1..11.
  std::set<int> only;
  // Receives detail lines as they are produced.
  std::function<void(const std::string&)> log;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts);

// "PASS 3 relativisation (checked 10000, ...) 1.2s"
std::string format_result(const CriterionResult& r);

// The hand-completed seed shipped with the polymorphism criterion.
std::string_view maroti_seed_text();

}  // namespace qcsp
