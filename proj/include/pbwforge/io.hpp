#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "pbwforge/exterior.hpp"
#include "pbwforge/pbwcheck.hpp"
#include "pbwforge/yoneda.hpp"

namespace pbw {

// Malformed input; `where` is "line L, column C" for syntax errors and a JSON
// pointer such as "/alpha/0/matrix/1" for semantic ones.
class InputError : public std::invalid_argument {
 public:
  InputError(std::string where, const std::string& what)
      : std::invalid_argument(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

nlohmann::json parse_json_text(const std::string& text);

struct DeformationInput {
  NumericDeformation data;
  std::string letters;
};

// Document layout:
//   {"field": {"conductor": n}, "v": v, "N": N, "letters": "xyz" (optional),
//    "relations": [{"word": scalar, ...}, ...],
//    "alpha": [{"degree_drop": i, "matrix": [[scalar, ...], ...]}, ...],
//    "parameters": [names], "values": {name: scalar}}
// Row j of the α_i matrix holds α_i(relation j) over the words of length
// N - i in index order. Scalars are strings over the generator "z" and the
// parameters, or integers; every parameter needs a value, and `overrides`
// take precedence over "values".
DeformationInput parse_deformation(const nlohmann::json& doc, const std::map<std::string, std::string>& overrides = {});

nlohmann::json deformation_json(const NumericDeformation& data, const std::string& letters = "");

// Exterior map as {"i,j,...": {"k,...": scalar}} over increasing index
// subsets; the empty subset is "".
ExtMap<FieldElement> parse_ext_map(const nlohmann::json& doc, int v, unsigned p, unsigned r,
                                   const CyclotomicField& field, const std::string& where);
nlohmann::json ext_map_json(const ExtMap<FieldElement>& f);

std::string vector_string(const Alphabet& A, unsigned len, const NumVec& x);

nlohmann::json pbw_report_json(const NumericDeformation& data, const PbwReport& rep, const std::string& letters = "");
nlohmann::json axiom_report_json(const AxiomReport& rep);

// Writes through a temporary file in the same directory and renames it.
void write_atomically(const std::string& path, const std::string& content);

}  // namespace pbw
