#include "pbwforge/commands.hpp"

#include <random>

#include "pbwforge/artinschelter.hpp"
#include "pbwforge/catalog.hpp"
#include "pbwforge/io.hpp"
#include "pbwforge/wedgedef.hpp"
#include "pbwforge/yoneda.hpp"

namespace pbw {

using nlohmann::json;

namespace {

void check_range(const char* name, unsigned value, unsigned lo, unsigned hi) {
  if (value < lo || value > hi)
    throw InputError(std::string("--") + name,
                     "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " + std::to_string(value));
}

CommandResult outcome(json doc, int code) { return {std::move(doc), code, std::nullopt}; }

void check_common(const CommandOptions& opt) { check_range("maxdeg", opt.maxdeg, 0, 24); }

unsigned margin_for(const CommandOptions& opt, unsigned N) {
  const unsigned m = opt.margin.value_or(N + 2);
  check_range("margin", m, 0, 32);
  return m;
}

struct WedgeInput {
  int v = 0;
  unsigned N = 0;
  const CyclotomicField* field = nullptr;
  std::optional<ExtForm> l, L, top;
  std::map<unsigned, ExtForm> forms;
  WedgeOptions options;
};

WedgeInput wedge_from_json(const json& doc) {
  WedgeInput w;
  if (!doc.is_object()) throw InputError("/", "expected a JSON object");
  auto need = [&](const char* key) -> const json& {
    if (!doc.contains(key)) throw InputError("/", std::string("missing field \"") + key + "\"");
    return doc.at(key);
  };
  const json& f = need("field");
  if (!f.is_object() || !f.contains("conductor") || !f["conductor"].is_number_integer())
    throw InputError("/field/conductor", "expected an integer");
  w.field = &CyclotomicField::of(f["conductor"].get<unsigned>());
  if (!need("v").is_number_integer() || doc["v"].get<int>() < 1 || doc["v"].get<int>() > 12)
    throw InputError("/v", "expected an integer in [1, 12]");
  if (!need("N").is_number_integer() || doc["N"].get<int>() < 2 || doc["N"].get<int>() > 8)
    throw InputError("/N", "expected an integer in [2, 8]");
  w.v = doc["v"].get<int>();
  w.N = doc["N"].get<unsigned>();
  if (doc.contains("l")) w.l = parse_ext_map(doc["l"], w.v, 1, 0, *w.field, "/l");
  if (doc.contains("L")) w.L = parse_ext_map(doc["L"], w.v, 2, 1, *w.field, "/L");
  if (doc.contains("top")) w.top = parse_ext_map(doc["top"], w.v, w.N, 0, *w.field, "/top");
  if (doc.contains("forms")) {
    if (!doc["forms"].is_object()) throw InputError("/forms", "expected an object degree: form");
    for (const auto& [deg, form] : doc["forms"].items()) {
      unsigned d = 0;
      try {
        d = static_cast<unsigned>(std::stoul(deg));
      } catch (const std::exception&) {
        throw InputError("/forms/" + deg, "degree must be an integer");
      }
      w.forms[d] = parse_ext_map(form, w.v, d, 0, *w.field, "/forms/" + deg);
    }
  }
  if (doc.contains("allow_small_v")) w.options.allow_small_v = doc["allow_small_v"].get<bool>();
  return w;
}

// Random odd data, or an abelian bracket with random forms for even N.
WedgeInput wedge_random(const CommandOptions& opt) {
  if (!opt.v || !opt.N) throw InputError("--v/--N", "build-wedge needs an input file or both --v and --N");
  check_range("N", *opt.N, 2, 8);
  check_range("v", static_cast<unsigned>(*opt.v), 1, 12);
  WedgeInput w;
  w.v = *opt.v;
  w.N = *opt.N;
  w.field = &CyclotomicField::of(1);
  std::mt19937_64 rng(opt.seed);
  if (w.N % 2) w.l = random_ext_map(w.v, 1, 0, *w.field, rng);
  else w.L = zero_ext_map(w.v, 2, 1);
  for (unsigned d = 2; d < w.N; d += 2) w.forms[d] = random_ext_map(w.v, d, 0, *w.field, rng);
  return w;
}

}  // namespace

std::map<std::string, std::string> parse_bindings(const std::vector<std::string>& sets) {
  std::map<std::string, std::string> out;
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("--set", "expected name=value, got \"" + s + "\"");
    out[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return out;
}

std::string CommandResult::text() const { return canonical ? *canonical : report.dump(2) + "\n"; }

CommandResult run_verify(const json& input, const CommandOptions& opt) {
  check_common(opt);
  const auto in = parse_deformation(input, opt.bindings);
  const unsigned margin = margin_for(opt, in.data.N);
  const PbwReport rep = pbw_verify(in.data, opt.maxdeg, margin);
  json doc = pbw_report_json(in.data, rep, in.letters);
  doc["options"] = {{"maxdeg", opt.maxdeg}, {"margin", margin}};
  return outcome(doc, rep.pass() ? kExitPass : kExitFail);
}

CommandResult run_hilbert(const json& input, const CommandOptions& opt) {
  check_common(opt);
  const auto in = parse_deformation(input, opt.bindings);
  const unsigned margin = margin_for(opt, in.data.N);
  const auto dims_A = graded_dims_A(in.data.relations(), opt.maxdeg);
  const auto dims_U = filtered_dims_U(in.data, opt.maxdeg, margin);
  std::vector<std::uint64_t> cumulative;
  std::uint64_t s = 0;
  for (auto d : dims_A) cumulative.push_back(s += d);
  std::optional<unsigned> diverge;
  for (unsigned d = 0; d <= opt.maxdeg; ++d)
    if (dims_U.dims_recheck[d] != cumulative[d]) {
      diverge = d;
      break;
    }
  json doc;
  doc["rows"] = {{"A", dims_A}, {"A_cumulative", cumulative}, {"U", dims_U.dims}, {"U_recheck", dims_U.dims_recheck}};
  doc["stable"] = dims_U.stable;
  doc["warning"] = !dims_U.stable;
  doc["marked_rows"] = dims_U.stable ? json::array() : json::array({"U"});
  doc["first_divergence"] = diverge ? json(*diverge) : json(nullptr);
  doc["options"] = {{"maxdeg", opt.maxdeg}, {"margin", margin}, {"bound", dims_U.bound}};
  doc["verdict"] = diverge ? "fail" : "pass";
  return outcome(doc, diverge ? kExitFail : kExitPass);
}

CommandResult run_ainf_check(const json& input, const CommandOptions& opt) {
  const auto in = parse_deformation(input, opt.bindings);
  const NumericDeformation& data = in.data;
  const unsigned degbound = opt.degbound.value_or(2 * data.N + 2);
  check_range("degbound", degbound, data.N, 24);
  json doc;
  doc["options"] = {{"degbound", degbound}};
  const Subspace O = overlap_space(data.relations());
  if (!check_J1(data, O).pass) {
    doc["error"] = "J1 fails, so d does not descend to B";
    doc["verdict"] = "fail";
    return outcome(doc, kExitFail);
  }
  if (!data.augmented()) {
    doc["error"] = "alpha_N is nonzero; the correspondence covers augmented deformations only";
    doc["verdict"] = "fail";
    return outcome(doc, kExitFail);
  }
  const YonedaAlgebra B(data.relations(), degbound);
  const AInfStructure m(data, B);
  const AxiomReport a1 = m.check_axiom_1();
  const AxiomReport a2 = m.check_axiom_2();
  const DescentReport descent = m.check_descent();
  json dims = json::object();
  for (unsigned b = 0; B.piece_length(b) <= degbound; ++b) dims[std::to_string(b)] = B.dim_B(b);
  json linear = json::object();
  bool all_zero = true;
  for (unsigned p = 1; p < data.N; ++p) {
    const bool z = m.linear_matrix(p).is_zero();
    linear[std::to_string(p)] = z;
    all_zero = all_zero && z;
  }
  doc["dims_B"] = dims;
  doc["axiom_1"] = axiom_report_json(a1);
  doc["axiom_2"] = axiom_report_json(a2);
  doc["descent"] = {{"pass", descent.pass}, {"offending", descent.offending}};
  doc["linear_products_zero"] = linear;
  doc["deformable_products_zero"] = all_zero;
  const bool pass = a1.pass() && a2.pass() && descent.pass;
  doc["verdict"] = pass ? "pass" : "fail";
  return outcome(doc, pass ? kExitPass : kExitFail);
}

CommandResult run_solve_as(const CommandOptions& opt) {
  if (opt.family.empty()) throw InputError("--family", "a family tag is required");
  const auto tag = parse_as_tag(opt.family);
  if (!tag) throw InputError("--family", "unknown family \"" + opt.family + "\"");
  const ASFamily fam = family_data(*tag);
  const SolvedTable table = staged_solve(fam);
  const TableVerdict verdict = verify_table(fam, table);
  const bool pass = verdict.pass && table.consistent();
  const std::string text = table_document(fam, table, verdict);
  return {json::parse(text), pass ? kExitPass : kExitFail, text};
}

CommandResult run_build_wedge(const json* input, const CommandOptions& opt) {
  check_common(opt);
  const WedgeInput w = input ? wedge_from_json(*input) : wedge_random(opt);
  const unsigned margin = margin_for(opt, w.N);
  json structure{{"v", w.v}, {"N", w.N}, {"field", {{"conductor", w.field->conductor()}}}};
  json forms = json::object();
  for (const auto& [d, f] : w.forms) forms[std::to_string(d)] = ext_map_json(f);
  structure["forms"] = forms;
  if (w.l) structure["l"] = ext_map_json(*w.l);
  if (w.L) structure["L"] = ext_map_json(*w.L);
  if (w.top) structure["top"] = ext_map_json(*w.top);
  json doc;
  doc["structure"] = structure;
  doc["options"] = {{"maxdeg", opt.maxdeg}, {"seed", opt.seed}};
  WedgeBuild built;
  try {
    if (w.N % 2) {
      if (!w.l) throw InputError("/l", "odd N needs the linear form l");
      built = build_alpha_odd(OddNData{w.v, w.N, w.field, *w.l, w.forms}, w.options);
    } else {
      if (!w.L) throw InputError("/L", "even N needs the bracket L");
      built = build_alpha_even(EvenNData{w.v, w.N, w.field, *w.L, w.forms, w.top}, w.options);
    }
  } catch (const WedgeConditionError& e) {
    doc["refusal"] = {{"kind", e.kind()}, {"degree", e.degree()}, {"message", e.what()}};
    doc["verdict"] = "refused";
    return outcome(doc, kExitFail);
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    // v = N+1 and, without allow_small_v, v <= N lie outside the construction.
    doc["refusal"] = {{"kind", "scope"}, {"degree", w.N}, {"message", e.what()}};
    doc["verdict"] = "refused";
    return outcome(doc, kExitFail);
  }
  doc["options"]["margin"] = margin;
  const PbwReport rep = pbw_verify(built.data, opt.maxdeg, margin);
  doc["deformation"] = deformation_json(built.data);
  doc["report"] = pbw_report_json(built.data, rep);
  doc["warnings"] = built.warnings;
  doc["verdict"] = rep.pass() ? "pass" : "fail";
  return outcome(doc, rep.pass() ? kExitPass : kExitFail);
}

CommandResult run_selftest() {
  json checks = json::object();
  {
    const ASFamily fam = family_data(ASTag::E);
    const SolvedTable t = staged_solve(fam);
    checks["type_E_table"] = verify_table(fam, t).pass && compare_tables(fam, t, reference_table(ASTag::E)).equivalent();
  }
  checks["so3_pbw"] = pbw_verify(so3_deformation(), 6, 4).pass();
  {
    const PbwReport rep = pbw_verify(nonkoszul_deformation(), 8, 4);
    checks["counterexample_detected"] = rep.j1.pass && rep.j2.all_pass() && !rep.dims_pass();
  }
  {
    const auto zero = FieldElement::zero(CyclotomicField::of(3));
    const auto data = type_e_deformation(zero, zero, zero, FieldElement::one(CyclotomicField::of(3)));
    const YonedaAlgebra B(data.relations(), 8);
    const AInfStructure m(data, B);
    checks["type_E_axioms"] = m.check_axiom_1().pass() && m.check_axiom_2().pass();
  }
  bool pass = true;
  for (const auto& [k, v] : checks.items()) pass = pass && v.get<bool>();
  return outcome(json{{"checks", checks}, {"verdict", pass ? "pass" : "fail"}}, pass ? kExitPass : kExitFail);
}

CommandResult run_reporting(const std::string& command, const std::function<CommandResult()>& body) {
  CommandResult result;
  try {
    result = body();
  } catch (const InputError& e) {
    result = {json{{"verdict", "input_error"}, {"error", {{"where", e.where()}, {"message", e.what()}}}},
              kExitInputError, std::nullopt};
  } catch (const std::exception& e) {
    result = {json{{"verdict", "error"}, {"error", {{"message", e.what()}}}}, kExitInputError, std::nullopt};
  }
  if (!result.canonical) result.report["command"] = command;
  return result;
}

}  // namespace pbw
