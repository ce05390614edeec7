#include "rhdt/diagnostic.hpp"

#include <algorithm>

namespace rhdt {

std::string format_diagnostic(const ParseDiagnostic& d) {
  return std::to_string(d.line) + ":" + std::to_string(d.column) + " " +
         (d.severity == Severity::Error ? "error" : "warning") + " " +
         d.message;
}

bool has_errors(const std::vector<ParseDiagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const ParseDiagnostic& d) {
                       return d.severity == Severity::Error;
                     });
}

}  // namespace rhdt
