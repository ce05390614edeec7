#pragma once

#include <string>
#include <vector>

namespace rhdt {

enum class Severity { Error, Warning };

struct ParseDiagnostic {
  int line = 1;    // 1-based
  int column = 1;  // 1-based, in code points
  Severity severity = Severity::Error;
  std::string message;
};

// "line:col severity message"
std::string format_diagnostic(const ParseDiagnostic& d);

bool has_errors(const std::vector<ParseDiagnostic>& diagnostics);

}  // namespace rhdt
