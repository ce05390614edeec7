#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace rhdt::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFindings = 1;
inline constexpr int kExitUsage = 2;

struct RunOptions {
  std::filesystem::path scenario;
  std::optional<std::filesystem::path> out;  // canonical graph
  std::optional<std::filesystem::path> log;  // JSON Lines
  std::optional<std::int64_t> until;
};

int cmd_validate(const std::filesystem::path& path, std::ostream& out,
                 std::ostream& err);
int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);
// `cls` is a class id ("HC9") or a class IRI / CURIE.
int cmd_query(const std::filesystem::path& graph, const std::string& cls,
              bool subclasses, std::ostream& out, std::ostream& err);
int cmd_chain(const std::filesystem::path& graph, const std::string& from,
              std::ostream& out, std::ostream& err);

}  // namespace rhdt::cli
