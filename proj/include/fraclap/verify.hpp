// Property suites behind `fraclap verify`.
#pragma once

#include "fraclap/xreal.hpp"

#include <string>
#include <vector>

namespace fraclap {

struct CheckResult {
  std::string suite;
  std::string check;
  bool pass = false;
  std::string detail;
};

const std::vector<std::string>& suite_names();  // theorem2, lemmas, invariants, tables

/// Throws DomainError for an unknown suite.
std::vector<CheckResult> run_suite(const std::string& suite, Precision precision);

}  // namespace fraclap
