#include "pbwforge/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pbwforge/poly.hpp"

namespace pbw {

using nlohmann::json;

namespace {

std::string location(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const json& field_of(const json& doc, const std::string& key, const std::string& where) {
  if (!doc.is_object() || !doc.contains(key)) throw InputError(where, "missing field \"" + key + "\"");
  return doc.at(key);
}

long integer_of(const json& x, const std::string& where, long lo, long hi) {
  if (!x.is_number_integer()) throw InputError(where, "expected an integer");
  const long v = x.get<long>();
  if (v < lo || v > hi)
    throw InputError(where, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
  return v;
}

std::string subset_key(const std::vector<int>& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out;
}

std::vector<int> parse_subset(const std::string& key, int v, unsigned size, const std::string& where) {
  std::vector<int> out;
  std::stringstream ss(key);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int i = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(i);
    } catch (const std::exception&) {
      throw InputError(where, "bad index subset \"" + key + "\"");
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i] < 0 || out[i] >= v || (i && out[i] <= out[i - 1]))
      throw InputError(where, "subset \"" + key + "\" must be increasing indices below v");
  if (out.size() != size)
    throw InputError(where, "subset \"" + key + "\" must have " + std::to_string(size) + " elements");
  return out;
}

// Scalars in the parameter ring, evaluated at the bound values.
class ScalarReader {
 public:
  ScalarReader(const CyclotomicField& field, std::vector<std::string> params)
      : ring_(PolyRing::make(field.conductor(), std::move(params))) {}

  void set(const std::string& name, const json& value, const std::string& where) {
    if (!ring_->index_of(name)) throw InputError(where, "\"" + name + "\" is not a declared parameter");
    values_[name] = RationalFunction::constant(ring_, read(value, where));
  }

  FieldElement read(const json& x, const std::string& where) const {
    std::string text;
    if (x.is_number_integer()) text = std::to_string(x.get<long long>());
    else if (x.is_string()) text = x.get<std::string>();
    else throw InputError(where, "scalar must be a string or an integer");
    try {
      RationalFunction r = parse_expression(ring_, text);
      if (!values_.empty()) r = substitute(r, values_);
      if (!r.is_constant()) throw InputError(where, "scalar \"" + text + "\" depends on an unbound parameter");
      return r.constant_value();
    } catch (const InputError&) {
      throw;
    } catch (const std::exception& e) {
      throw InputError(where, "cannot read scalar \"" + text + "\": " + e.what());
    }
  }

  void require_bound(const std::string& where) const {
    for (const auto& n : ring_->vars())
      if (!values_.count(n)) throw InputError(where, "parameter \"" + n + "\" has no value");
  }

 private:
  RingPtr ring_;
  Bindings values_;
};

}  // namespace

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(location(text, e.byte == 0 ? 0 : e.byte - 1), "invalid JSON");
  }
}

DeformationInput parse_deformation(const json& doc, const std::map<std::string, std::string>& overrides) {
  if (!doc.is_object()) throw InputError("/", "expected a JSON object");
  const json& fdoc = field_of(doc, "field", "/");
  const long conductor = integer_of(field_of(fdoc, "conductor", "/field"), "/field/conductor", 1, 1000);
  const CyclotomicField& field = CyclotomicField::of(static_cast<unsigned>(conductor));
  const int v = static_cast<int>(integer_of(field_of(doc, "v", "/"), "/v", 1, 26));
  const unsigned N = static_cast<unsigned>(integer_of(field_of(doc, "N", "/"), "/N", 1, 16));

  DeformationInput out;
  if (doc.contains("letters")) {
    if (!doc["letters"].is_string()) throw InputError("/letters", "expected a string");
    out.letters = doc["letters"].get<std::string>();
  }
  std::unique_ptr<Alphabet> A;
  try {
    A = std::make_unique<Alphabet>(v, out.letters);
  } catch (const std::exception& e) {
    throw InputError("/letters", e.what());
  }
  if (A->symbols().empty()) throw InputError("/letters", "v > 26 needs explicit letters");

  std::vector<std::string> params;
  if (doc.contains("parameters")) {
    if (!doc["parameters"].is_array()) throw InputError("/parameters", "expected an array of names");
    for (std::size_t i = 0; i < doc["parameters"].size(); ++i) {
      const json& p = doc["parameters"][i];
      if (!p.is_string()) throw InputError("/parameters/" + std::to_string(i), "expected a name");
      params.push_back(p.get<std::string>());
    }
  }
  ScalarReader scalars(field, params);
  if (doc.contains("values")) {
    if (!doc["values"].is_object()) throw InputError("/values", "expected an object");
    for (const auto& [name, val] : doc["values"].items()) scalars.set(name, val, "/values/" + name);
  }
  for (const auto& [name, val] : overrides) scalars.set(name, json(val), "--set " + name);
  scalars.require_bound("/parameters");

  const json& rels = field_of(doc, "relations", "/");
  if (!rels.is_array() || rels.empty()) throw InputError("/relations", "expected a nonempty array");
  std::vector<NumVec> gens;
  for (std::size_t j = 0; j < rels.size(); ++j) {
    const std::string where = "/relations/" + std::to_string(j);
    if (!rels[j].is_object()) throw InputError(where, "expected an object of word: scalar");
    NumVec g;
    for (const auto& [word, coef] : rels[j].items()) {
      Word w;
      try {
        w = A->parse(word);
      } catch (const std::exception& e) {
        throw InputError(where + "/" + word, e.what());
      }
      if (w.len != N) throw InputError(where + "/" + word, "word length must be N = " + std::to_string(N));
      sparse_add(g, w.idx, scalars.read(coef, where + "/" + word));
    }
    gens.push_back(std::move(g));
  }

  std::vector<std::vector<SparseVec<FieldElement>>> alpha(N, std::vector<SparseVec<FieldElement>>(gens.size()));
  if (doc.contains("alpha")) {
    const json& al = doc["alpha"];
    if (!al.is_array()) throw InputError("/alpha", "expected an array");
    std::vector<bool> seen(N + 1, false);
    for (std::size_t k = 0; k < al.size(); ++k) {
      const std::string where = "/alpha/" + std::to_string(k);
      const unsigned i = static_cast<unsigned>(
          integer_of(field_of(al[k], "degree_drop", where), where + "/degree_drop", 1, static_cast<long>(N)));
      if (seen[i]) throw InputError(where + "/degree_drop", "α_" + std::to_string(i) + " given twice");
      seen[i] = true;
      const json& m = field_of(al[k], "matrix", where);
      const std::uint64_t cols = A->power(N - i);
      if (!m.is_array() || m.size() != gens.size())
        throw InputError(where + "/matrix", "expected " + std::to_string(gens.size()) + " rows, one per relation");
      for (std::size_t j = 0; j < m.size(); ++j) {
        const std::string rw = where + "/matrix/" + std::to_string(j);
        if (!m[j].is_array() || m[j].size() != cols)
          throw InputError(rw, "expected " + std::to_string(cols) + " entries, one per word of length " +
                                   std::to_string(N - i));
        for (std::uint64_t c = 0; c < cols; ++c)
          sparse_add(alpha[i - 1][j], c, scalars.read(m[j][c], rw + "/" + std::to_string(c)));
      }
    }
  }
  try {
    out.data = make_deformation<FieldElement>(v, N, field, std::move(gens), std::move(alpha), FieldElement::one(field));
  } catch (const std::invalid_argument& e) {
    throw InputError("/relations", e.what());
  }
  return out;
}

json deformation_json(const NumericDeformation& data, const std::string& letters) {
  const Alphabet A(data.v, letters);
  json doc;
  doc["field"] = {{"conductor", data.field->conductor()}};
  doc["v"] = data.v;
  doc["N"] = data.N;
  if (!letters.empty()) doc["letters"] = letters;
  doc["parameters"] = json::array();
  doc["relations"] = json::array();
  for (const auto& g : data.gens) {
    json r = json::object();
    for (const auto& [k, c] : g) r[A.to_string(Word{data.N, k})] = c.to_string();
    doc["relations"].push_back(r);
  }
  doc["alpha"] = json::array();
  for (unsigned i = 1; i <= data.N; ++i) {
    bool any = false;
    for (const auto& img : data.alpha[i - 1]) any = any || !img.empty();
    if (!any) continue;
    json m = json::array();
    const std::uint64_t cols = A.power(data.N - i);
    for (const auto& img : data.alpha[i - 1]) {
      json row = json::array();
      for (std::uint64_t c = 0; c < cols; ++c) {
        auto it = img.find(c);
        row.push_back(it == img.end() ? std::string("0") : it->second.to_string());
      }
      m.push_back(row);
    }
    doc["alpha"].push_back({{"degree_drop", i}, {"matrix", m}});
  }
  return doc;
}

ExtMap<FieldElement> parse_ext_map(const json& doc, int v, unsigned p, unsigned r, const CyclotomicField& field,
                                   const std::string& where) {
  const ExteriorBasis src(v, p), dst(v, r);
  ExtMap<FieldElement> out{v, p, r, std::vector<SparseVec<FieldElement>>(src.size())};
  if (!doc.is_object()) throw InputError(where, "expected an object of subset: {subset: scalar}");
  const ScalarReader scalars(field, {});
  for (const auto& [skey, targets] : doc.items()) {
    const std::string w1 = where + "/" + skey;
    const auto s = parse_subset(skey, v, p, w1);
    if (!targets.is_object()) throw InputError(w1, "expected an object of subset: scalar");
    for (const auto& [tkey, coef] : targets.items()) {
      const std::string w2 = w1 + "/" + tkey;
      const auto t = parse_subset(tkey, v, r, w2);
      sparse_add(out.rows[src.index_of(s)], dst.index_of(t), scalars.read(coef, w2));
    }
  }
  return out;
}

json ext_map_json(const ExtMap<FieldElement>& f) {
  const ExteriorBasis src(f.v, f.p), dst(f.v, f.r);
  json doc = json::object();
  for (std::size_t i = 0; i < f.rows.size(); ++i) {
    if (f.rows[i].empty()) continue;
    json row = json::object();
    for (const auto& [k, c] : f.rows[i]) row[subset_key(dst.subset(k))] = c.to_string();
    doc[subset_key(src.subset(i))] = row;
  }
  return doc;
}

std::string vector_string(const Alphabet& A, unsigned len, const NumVec& x) {
  if (x.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : x) {
    const std::string word = len == 0 ? "1" : A.to_string(Word{len, k});
    const std::string coef = c.to_string();
    const bool simple = c.term_count() == 1;
    if (!out.empty()) out += " + ";
    out += simple ? coef + "*" + word : "(" + coef + ")*" + word;
  }
  return out;
}

json pbw_report_json(const NumericDeformation& data, const PbwReport& rep, const std::string& letters) {
  const Alphabet A(data.v, letters);
  json doc;
  json j1;
  j1["pass"] = rep.j1.pass;
  j1["residuals"] = json::array();
  for (const auto& r : rep.j1.residuals)
    if (!r.empty()) j1["residuals"].push_back(vector_string(A, data.N + 1, r));
  doc["j1"] = j1;
  json j2;
  j2["pass"] = rep.j2.pass;
  j2["failures"] = json::array();
  for (std::size_t i = 0; i < rep.j2.residuals.size(); ++i)
    for (const auto& r : rep.j2.residuals[i])
      if (!r.empty())
        j2["failures"].push_back({{"i", i + 1}, {"residual", vector_string(A, data.N - static_cast<unsigned>(i), r)}});
  doc["j2"] = j2;
  json dims;
  dims["pass"] = rep.dims_pass();
  dims["A"] = rep.dims_A;
  dims["A_cumulative"] = rep.dims_A_cumulative;
  dims["U"] = rep.dims_U.dims;
  dims["U_recheck"] = rep.dims_U.dims_recheck;
  dims["bound"] = rep.dims_U.bound;
  dims["stable"] = rep.dims_U.stable;
  dims["first_failing_degree"] = rep.first_failing_degree ? json(*rep.first_failing_degree) : json(nullptr);
  doc["dims"] = dims;
  json failed = json::array();
  if (!rep.j1.pass) failed.push_back("j1");
  if (!rep.j2.all_pass()) failed.push_back("j2");
  if (!rep.dims_pass()) failed.push_back("dims");
  doc["failed_sections"] = failed;
  doc["verdict"] = rep.pass() ? "pass" : "fail";
  return doc;
}

json axiom_report_json(const AxiomReport& rep) {
  json doc;
  doc["pass"] = rep.pass();
  doc["instances"] = rep.instances;
  doc["failure_count"] = rep.failure_count;
  json per = json::object();
  for (const auto& [p, cf] : rep.per_p) per[std::to_string(p)] = {{"checked", cf.first}, {"failed", cf.second}};
  doc["per_p"] = per;
  doc["failures"] = json::array();
  for (const auto& f : rep.failures)
    doc["failures"].push_back({{"p", f.p}, {"position", f.position}, {"args", f.args}, {"residual", f.residual}});
  return doc;
}

void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path dir = target.has_parent_path() ? target.parent_path() : fs::path(".");
  const fs::path tmp = dir / ("." + target.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace pbw
