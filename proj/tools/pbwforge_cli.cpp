#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pbwforge/commands.hpp"
#include "pbwforge/io.hpp"

using nlohmann::json;
using namespace pbw;

namespace {

json load_document(const std::string& path) {
  if (path.empty()) throw InputError("input", "an input file is required");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, "cannot open input file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pbwforge: PBW-deformation checks for N-Koszul algebras"};
  app.require_subcommand(1);
  CommandOptions opt;
  std::string input, out;
  std::vector<std::string> sets;

  auto common = [&](CLI::App* sub, bool needs_input) {
    if (needs_input) sub->add_option("input", input, "input JSON document")->required();
    sub->add_option("--out", out, "write the report here (atomically) instead of stdout");
    sub->add_option("--set", sets, "bind a parameter, name=value");
  };
  auto dims_opts = [&](CLI::App* sub) {
    sub->add_option("--maxdeg", opt.maxdeg, "highest degree compared")->capture_default_str()->check(CLI::Range(0u, 24u));
    sub->add_option("--margin", opt.margin, "extra truncation degrees (default N+2)");
  };

  std::map<std::string, std::function<CommandResult()>> commands;
  auto* verify = app.add_subcommand("verify", "J1, J2 and the dimension comparison");
  common(verify, true);
  dims_opts(verify);
  commands["verify"] = [&] { return run_verify(load_document(input), opt); };

  auto* hilbert = app.add_subcommand("hilbert", "graded dims of A and filtered dims of U");
  common(hilbert, true);
  dims_opts(hilbert);
  commands["hilbert"] = [&] { return run_hilbert(load_document(input), opt); };

  auto* ainf = app.add_subcommand("ainf-check", "both A-infinity axiom suites on the Yoneda algebra");
  common(ainf, true);
  ainf->add_option("--degbound", opt.degbound, "W-length truncation (default 2N+2)");
  commands["ainf-check"] = [&] { return run_ainf_check(load_document(input), opt); };

  auto* solve = app.add_subcommand("solve-as", "solve an Artin-Schelter family");
  solve->add_option("--family,family", opt.family, "E, H, A, S1, S1_alpha1, S1_alpha1_aMinus2, S2, S2_plus1, "
                                                   "S2_minus1 or S2prime");
  solve->add_option("--out", out, "write the table here (atomically) instead of stdout");
  commands["solve-as"] = [&] { return run_solve_as(opt); };

  auto* wedge = app.add_subcommand("build-wedge", "alpha maps from a bracket and alternating forms");
  wedge->add_option("input", input, "structure JSON (omit for random data)");
  wedge->add_option("--out", out, "write the report here (atomically) instead of stdout");
  wedge->add_option("--v", opt.v, "dimension of V for random data");
  wedge->add_option("--N", opt.N, "relation degree for random data");
  wedge->add_option("--seed", opt.seed, "seed for random data")->capture_default_str();
  dims_opts(wedge);
  commands["build-wedge"] = [&] {
    if (input.empty()) return run_build_wedge(nullptr, opt);
    const json doc = load_document(input);
    return run_build_wedge(&doc, opt);
  };

  auto* self = app.add_subcommand("selftest", "quick end-to-end checks");
  self->add_option("--out", out, "write the report here (atomically) instead of stdout");
  commands["selftest"] = [] { return run_selftest(); };

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  const CommandResult result = run_reporting(name, [&] {
    opt.bindings = parse_bindings(sets);
    return commands.at(name)();
  });
  if (result.exit_code == kExitInputError && result.report.contains("error"))
    std::cerr << "pbwforge " << name << ": " << result.report["error"]["message"].get<std::string>() << "\n";
  try {
    if (out.empty()) std::cout << result.text();
    else write_atomically(out, result.text());
  } catch (const std::exception& e) {
    std::cerr << "pbwforge " << name << ": " << e.what() << "\n";
    return kExitInputError;
  }
  return result.exit_code;
}
