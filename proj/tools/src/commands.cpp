#include "commands.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include "rhdt/error.hpp"
#include "rhdt/graph.hpp"
#include "rhdt/runtime.hpp"
#include "rhdt/serialization.hpp"

namespace rhdt::cli {

namespace {

std::shared_ptr<const Registry> seed() {
  static const auto registry = std::make_shared<const Registry>(Registry::load_seed());
  return registry;
}

std::optional<std::string> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return ss.str();
}

bool write_file(const std::filesystem::path& path, const std::string& text,
                std::ostream& err) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.flush();
  if (!out) {
    err << "error: cannot write " << path.string() << "\n";
    return false;
  }
  return true;
}

// Loads a graph for query/chain. Returns an exit code on failure.
std::variant<Graph, int> load_graph(const std::filesystem::path& path,
                                    std::ostream& err) {
  const auto text = read_file(path);
  if (!text) {
    err << "error: cannot read " << path.string() << "\n";
    return kExitUsage;
  }
  auto parsed = parse_graph(*text, seed());
  for (const auto& d : parsed.diagnostics) err << format_diagnostic(d) << "\n";
  if (!parsed.ok()) return kExitFindings;
  return std::move(*parsed.graph);
}

std::optional<ClassId> resolve_class(const Registry& reg, const PrefixMap& prefixes,
                                     const std::string& text) {
  if (reg.has_class(text)) return text;
  if (const auto iri = prefixes.resolve(text)) return reg.class_for_iri(*iri);
  return std::nullopt;
}

}  // namespace

int cmd_validate(const std::filesystem::path& path, std::ostream& out,
                 std::ostream& err) {
  const auto text = read_file(path);
  if (!text) {
    err << "error: cannot read " << path.string() << "\n";
    return kExitUsage;
  }
  const auto parsed = parse_graph(*text, seed());
  std::size_t errors = 0;
  for (const auto& d : parsed.diagnostics) {
    err << format_diagnostic(d) << "\n";
    if (d.severity == Severity::Error) ++errors;
  }
  out << errors << " violations\n";
  return errors == 0 ? kExitOk : kExitFindings;
}

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  if (options.until && *options.until < 0) {
    err << "error: --until must be >= 0\n";
    return kExitUsage;
  }
  RunResult result{Graph(seed()), {}, 0, std::nullopt};
  try {
    const auto config = load_scenario_file(options.scenario);
    result = run_scenario(config, options.until);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitUsage;
  }

  bool written = true;
  if (options.out) written &= write_file(*options.out, emit_graph(result.graph), err);
  if (options.log) {
    written &= write_file(*options.log, render_log(result.log, result.error), err);
  }
  if (!written) return kExitUsage;

  if (result.error) err << "error: " << *result.error << "\n";
  out << format_summary(summarize(result.log, result.ticks)) << "\n";
  return result.error ? kExitFindings : kExitOk;
}

int cmd_query(const std::filesystem::path& graph, const std::string& cls,
              bool subclasses, std::ostream& out, std::ostream& err) {
  auto loaded = load_graph(graph, err);
  if (const auto* code = std::get_if<int>(&loaded)) return *code;
  const auto& g = std::get<Graph>(loaded);

  const auto id = resolve_class(g.registry(), g.prefixes(), cls);
  if (!id) {
    err << "error: unknown class '" << cls << "'\n";
    return kExitUsage;
  }
  for (const auto& iri : instances_of(g, *id, subclasses)) out << iri.str() << "\n";
  return kExitOk;
}

int cmd_chain(const std::filesystem::path& graph, const std::string& from,
              std::ostream& out, std::ostream& err) {
  auto loaded = load_graph(graph, err);
  if (const auto* code = std::get_if<int>(&loaded)) return *code;
  const auto& g = std::get<Graph>(loaded);

  const auto start = g.prefixes().resolve(from);
  if (!start) {
    err << "error: cannot resolve '" << from << "'\n";
    return kExitUsage;
  }
  std::vector<Statement> chain;
  try {
    chain = provenance_chain(g, *start);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitUsage;
  }
  const auto& p = g.prefixes();
  for (const auto& s : chain) {
    out << p.compact(s.subject) << " --" << s.property << "--> "
        << p.compact(std::get<Iri>(s.object)) << "\n";
  }
  return kExitOk;
}

}  // namespace rhdt::cli
