#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "oscphase/errors.hpp"

namespace oscphase::cli {

// Malformed command line: unknown token, unparsable number, missing parameter.
class UsageError : public Error {
 public:
  using Error::Error;
};

enum class OutputFormat { json, csv, human };

// One invocation: subcommand (fresnel, oscint, expand, verify, sweep), raw
// parameter strings keyed by option name without dashes, output format.
struct RunSpec {
  std::string subcommand;
  std::map<std::string, std::string> params;
  OutputFormat format = OutputFormat::json;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int verification_failed = 1;
inline constexpr int usage = 2;
inline constexpr int domain = 3;
inline constexpr int numerical = 4;
}  // namespace exit_code

// Validates every parameter, then computes and writes the report to out.
// Diagnostics go to err. Returns the process exit code.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

// Parses argv into a RunSpec and calls run.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace oscphase::cli
