#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "pbwforge/catalog.hpp"
#include "pbwforge/commands.hpp"
#include "pbwforge/io.hpp"
#include "pbwforge/wedgedef.hpp"

using namespace pbw;
using nlohmann::json;

namespace {

std::string where_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.where();
  }
  return "no error";
}

json sl2_doc() { return deformation_json(sl2_deformation(), "hef"); }

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("deformation documents round trip") {
    const auto& F3 = CyclotomicField::of(3);
    const auto zero = FieldElement::zero(F3);
    for (const auto& data : {sl2_deformation(), nonkoszul_deformation(),
                             type_e_deformation(zero, FieldElement::generator(F3), zero, FieldElement::one(F3))}) {
      const auto back = parse_deformation(parse_json_text(deformation_json(data).dump()));
      CHECK(back.data.v == data.v);
      CHECK(back.data.N == data.N);
      CHECK(back.data.field == data.field);
      CHECK(back.data.gens == data.gens);
      for (unsigned i = 1; i <= data.N; ++i) CHECK(back.data.alpha_map(i) == data.alpha_map(i));
    }
    CHECK(parse_deformation(sl2_doc()).letters == "hef");
  }

  TEST_CASE("syntax errors carry line and column") {
    CHECK(where_of([] { parse_json_text("{\n  \"v\": 3,\n  \"N\" 2\n}"); }) == "line 3, column 7");
    CHECK(where_of([] { parse_json_text(""); }).rfind("line 1", 0) == 0);
  }

  TEST_CASE("semantic errors carry a JSON pointer") {
    auto doc = sl2_doc();
    doc["alpha"][0]["matrix"][2].erase(0);
    CHECK(where_of([&] { parse_deformation(doc); }) == "/alpha/0/matrix/2");
    doc = sl2_doc();
    doc["relations"][1] = json{{"hq", "1"}};
    CHECK(where_of([&] { parse_deformation(doc); }).rfind("/relations/1", 0) == 0);
    doc = sl2_doc();
    doc["alpha"][0]["matrix"][0][1] = "2 +* h";
    CHECK(where_of([&] { parse_deformation(doc); }) == "/alpha/0/matrix/0/1");
    doc = sl2_doc();
    doc.erase("v");
    CHECK(where_of([&] { parse_deformation(doc); }) != "no error");
    doc = sl2_doc();
    doc["alpha"][0]["degree_drop"] = 3;
    CHECK(where_of([&] { parse_deformation(doc); }).rfind("/alpha/0", 0) == 0);
  }

  TEST_CASE("parameters: values, overrides and missing bindings") {
    auto doc = sl2_doc();
    doc["parameters"] = {"t"};
    doc["alpha"][0]["matrix"][0][1] = "2*t";
    CHECK(where_of([&] { parse_deformation(doc); }) == "/parameters");
    doc["values"] = {{"t", "1"}};
    CHECK(parse_deformation(doc).data.alpha_map(1) == sl2_deformation().alpha_map(1));
    // --set takes precedence over the document's values.
    const auto scaled = parse_deformation(doc, {{"t", "3"}});
    CHECK(scaled.data.alpha[0][0] == NumVec{{1, FieldElement(CyclotomicField::of(1), 6)}});
    CHECK(where_of([&] { parse_deformation(doc, {{"s", "1"}}); }) == "--set s");
    CHECK(parse_bindings({"a=1", "b=z^2"}) == std::map<std::string, std::string>{{"a", "1"}, {"b", "z^2"}});
    CHECK(where_of([] { parse_bindings({"=1"}); }) == "--set");
  }

  TEST_CASE("exterior maps round trip") {
    std::mt19937_64 rng(3);
    const auto& Q = CyclotomicField::of(1);
    for (auto [p, r] : {std::pair{2u, 1u}, std::pair{2u, 0u}, std::pair{3u, 0u}, std::pair{0u, 0u}}) {
      const ExtForm f = random_ext_map(5, p, r, Q, rng);
      CHECK(parse_ext_map(ext_map_json(f), 5, p, r, Q, "/f").rows == f.rows);
    }
    CHECK(where_of([&] { parse_ext_map(json{{"1,0", {{"2", "1"}}}}, 3, 2, 1, Q, "/L"); }).rfind("/L", 0) == 0);
    CHECK(where_of([&] { parse_ext_map(json{{"0,1", {{"7", "1"}}}}, 3, 2, 1, Q, "/L"); }).rfind("/L", 0) == 0);
  }

  TEST_CASE("atomic writes replace the whole file") {
    const auto dir = std::filesystem::temp_directory_path() / "pbwforge_io_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "report.json").string();
    write_atomically(path, "first\n");
    write_atomically(path, "second\n");
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "second\n");
    std::size_t leftovers = 0;
    for (const auto& e : std::filesystem::directory_iterator(dir)) leftovers += e.path().filename() != "report.json";
    CHECK(leftovers == 0);
    CHECK_THROWS(write_atomically((dir / "missing" / "x.json").string(), "x"));
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("command results") {
    CommandOptions opt;
    const auto ok = run_reporting("verify", [&] { return run_verify(sl2_doc(), opt); });
    CHECK(ok.exit_code == kExitPass);
    CHECK(ok.report["command"] == "verify");
    CHECK(ok.report["options"]["margin"] == 4);
    opt.maxdeg = 40;
    const auto bad = run_reporting("verify", [&] { return run_verify(sl2_doc(), opt); });
    CHECK(bad.exit_code == kExitInputError);
    CHECK(bad.report["error"]["where"] == "--maxdeg");
    opt = {};
    opt.family = "H";
    const auto table = run_solve_as(opt);
    CHECK(table.canonical.has_value());
    CHECK(table.text() == *table.canonical);
    CHECK(table.report["verdict"] == "pass");
  }
}
