#include <iostream>

#include <CLI11.hpp>

#include "knot/cli.hpp"

int main(int argc, char** argv) {
  knot::RunConfig cfg;
  CLI::App app{"Knot census: enumerate, reduce and tell apart knot diagrams"};
  app.require_subcommand(1);

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Output directory")->capture_default_str();
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  };

  auto* census = app.add_subcommand("census", "Run the census and write counts, knots and the state journal");
  census->add_option("--max-crossings", cfg.max_crossings, "Crossing cutoff")->check(CLI::Range(0, 14))->capture_default_str();
  census->add_option("--state", cfg.state, "State journal (default <out>/census.journal)");
  census->add_flag("--resume", cfg.resume, "Continue from the state journal");
  census->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::Range(1, 256))->capture_default_str();
  add_output(census);

  auto* inv = app.add_subcommand("invariants", "Characteristics and colouring responses for a knot list");
  inv->add_option("--knots", cfg.knots, "Knots file written by census (csv or json)");
  inv->add_option("--state", cfg.state, "Census state journal, used when --knots is absent");
  inv->add_option("--max-crossings", cfg.max_crossings, "Cutoff the journal was written for")->capture_default_str();
  inv->add_option("--linear-max", cfg.linear_max, "Largest linear modulus k")
      ->check(CLI::Range(3, 99))
      ->check([](const std::string& v) { return std::stoi(v) % 2 ? std::string() : std::string("k must be odd"); })
      ->capture_default_str();
  inv->add_option("--tables", cfg.tables, "Table tests")->check(CLI::IsMember({"builtin", "none"}))->capture_default_str();
  inv->add_option("--workers", cfg.workers, "Accepted for symmetry; invariants run on one thread")->check(CLI::Range(1, 256));
  add_output(inv);

  auto* red = app.add_subcommand("reduce", "Print the irreducible names reachable from a name");
  red->add_option("name", cfg.name, "Name such as {(1,4),(3,6),(5,2)}")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? knot::kExitOk : knot::kExitUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return knot::run_command(cfg, std::cout, std::cerr);
}
