#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "rhdt/ontology.hpp"

int main(int argc, char** argv) {
  using namespace rhdt::cli;

  CLI::App app{"Reactive heritage digital twin graphs: validate, run, query, chain"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rhdt::Registry::kSeedVersion));

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Parse and validate a graph file");
  validate->add_option("path", validate_path, "Graph file (.rht.ttl)")->required();

  RunOptions run_opts;
  std::string run_path, out_path, log_path;
  std::int64_t until = 0;
  auto* run = app.add_subcommand("run", "Run a scenario and write its graph and event log");
  run->add_option("scenario", run_path, "Scenario JSON file")->required();
  auto* out_opt = run->add_option("--out", out_path, "Write the canonical graph here");
  auto* log_opt = run->add_option("--log", log_path, "Write the JSON Lines event log here");
  auto* until_opt = run->add_option("--until", until, "Stop before this tick");

  std::string query_path, query_class;
  bool subclasses = false;
  auto* query = app.add_subcommand("query", "List instances of a class, one IRI per line");
  query->add_option("graph", query_path, "Graph file (.rht.ttl)")->required();
  query->add_option("--instances-of", query_class, "Class id, CURIE or IRI")->required();
  query->add_flag("--subclasses", subclasses, "Include instances of subclasses");

  std::string chain_path, chain_from;
  auto* chain = app.add_subcommand("chain", "Print the provenance chain of a node");
  chain->add_option("graph", chain_path, "Graph file (.rht.ttl)")->required();
  chain->add_option("--from", chain_from,
                    "Activation event, signal or measurement (CURIE or IRI)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (validate->parsed()) return cmd_validate(validate_path, std::cout, std::cerr);
  if (run->parsed()) {
    run_opts.scenario = run_path;
    if (*out_opt) run_opts.out = out_path;
    if (*log_opt) run_opts.log = log_path;
    if (*until_opt) run_opts.until = until;
    return cmd_run(run_opts, std::cout, std::cerr);
  }
  if (query->parsed()) {
    return cmd_query(query_path, query_class, subclasses, std::cout, std::cerr);
  }
  return cmd_chain(chain_path, chain_from, std::cout, std::cerr);
}
