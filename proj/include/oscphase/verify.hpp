#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace oscphase {

// One checked quantity: passed when measured < limit (measured <= limit for slopes).
struct VerifyCase {
  std::string suite;
  std::string name;
  double measured = 0.0;
  double limit = 0.0;
  bool passed = false;
};

struct VerifyReport {
  std::string suite;
  std::vector<VerifyCase> cases;
  bool passed() const;
};

// fresnel, three_path, gamma_p1, beta, continuation, remainder, all.
const std::vector<std::string>& verify_suite_names();

// DomainError for an unknown suite name.
VerifyReport run_verify_suite(std::string_view name);

}  // namespace oscphase
