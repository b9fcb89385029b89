#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pbwforge/commands.hpp"
#include "pbwforge/io.hpp"

namespace py = pybind11;
using namespace pbw;

namespace {

// (exit code, report text); documents arrive as JSON text.
using Returned = std::pair<int, std::string>;

Returned finish(const std::string& command, const std::function<CommandResult()>& body) {
  CommandResult r;
  {
    py::gil_scoped_release release;
    r = run_reporting(command, body);
  }
  return {r.exit_code, r.text()};
}

CommandOptions options(unsigned maxdeg, std::optional<unsigned> margin, std::map<std::string, std::string> bindings) {
  CommandOptions opt;
  opt.maxdeg = maxdeg;
  opt.margin = margin;
  opt.bindings = std::move(bindings);
  return opt;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact PBW-deformation checks for N-Koszul algebras";

  m.def(
      "verify",
      [](const std::string& doc, unsigned maxdeg, std::optional<unsigned> margin,
         std::map<std::string, std::string> bindings) {
        const CommandOptions opt = options(maxdeg, margin, std::move(bindings));
        return finish("verify", [&] { return run_verify(parse_json_text(doc), opt); });
      },
      py::arg("doc"), py::arg("maxdeg") = 6, py::arg("margin") = py::none(),
      py::arg("bindings") = std::map<std::string, std::string>{});

  m.def(
      "hilbert",
      [](const std::string& doc, unsigned maxdeg, std::optional<unsigned> margin,
         std::map<std::string, std::string> bindings) {
        const CommandOptions opt = options(maxdeg, margin, std::move(bindings));
        return finish("hilbert", [&] { return run_hilbert(parse_json_text(doc), opt); });
      },
      py::arg("doc"), py::arg("maxdeg") = 6, py::arg("margin") = py::none(),
      py::arg("bindings") = std::map<std::string, std::string>{});

  m.def(
      "ainf_check",
      [](const std::string& doc, std::optional<unsigned> degbound, std::map<std::string, std::string> bindings) {
        CommandOptions opt = options(6, std::nullopt, std::move(bindings));
        opt.degbound = degbound;
        return finish("ainf-check", [&] { return run_ainf_check(parse_json_text(doc), opt); });
      },
      py::arg("doc"), py::arg("degbound") = py::none(), py::arg("bindings") = std::map<std::string, std::string>{});

  m.def(
      "solve_as",
      [](const std::string& family) {
        CommandOptions opt;
        opt.family = family;
        return finish("solve-as", [&] { return run_solve_as(opt); });
      },
      py::arg("family"));

  m.def(
      "build_wedge",
      [](std::optional<std::string> doc, std::optional<int> v, std::optional<unsigned> N, std::uint64_t seed,
         unsigned maxdeg, std::optional<unsigned> margin) {
        CommandOptions opt = options(maxdeg, margin, {});
        opt.v = v;
        opt.N = N;
        opt.seed = seed;
        return finish("build-wedge", [&] {
          if (!doc) return run_build_wedge(nullptr, opt);
          const nlohmann::json parsed = parse_json_text(*doc);
          return run_build_wedge(&parsed, opt);
        });
      },
      py::arg("doc") = py::none(), py::arg("v") = py::none(), py::arg("N") = py::none(), py::arg("seed") = 1,
      py::arg("maxdeg") = 6, py::arg("margin") = py::none());

  m.def("selftest", [] { return finish("selftest", [] { return run_selftest(); }); });
}
