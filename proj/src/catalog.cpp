#include "pbwforge/catalog.hpp"

namespace pbw {

NumericDeformation lie_deformation(int v, const CyclotomicField& field,
                                   const std::map<std::pair<int, int>, NumVec>& brackets) {
  Alphabet A(v);
  const FieldElement one = FieldElement::one(field);
  std::vector<NumVec> gens;
  std::vector<SparseVec<FieldElement>> images;
  for (int a = 0; a < v; ++a)
    for (int b = a + 1; b < v; ++b) {
      NumVec r{{A.from_letters({a, b}).idx, one}};
      sparse_add(r, A.from_letters({b, a}).idx, -one);
      gens.push_back(std::move(r));
      auto it = brackets.find({a, b});
      images.push_back(it == brackets.end() ? NumVec{} : it->second);
    }
  return make_deformation<FieldElement>(v, 2, field, std::move(gens), {std::move(images)}, one);
}

namespace {

NumVec letters_combination(const CyclotomicField& field, const std::vector<std::pair<int, long>>& terms) {
  NumVec x;
  for (const auto& [letter, c] : terms) sparse_add(x, static_cast<std::uint64_t>(letter), FieldElement(field, c));
  return x;
}

}  // namespace

NumericDeformation so3_deformation() {
  const auto& Q = CyclotomicField::of(1);
  return lie_deformation(3, Q,
                         {{{0, 1}, letters_combination(Q, {{2, 1}})},
                          {{1, 2}, letters_combination(Q, {{0, 1}})},
                          {{0, 2}, letters_combination(Q, {{1, -1}})}});
}

NumericDeformation sl2_deformation() {
  const auto& Q = CyclotomicField::of(1);
  return lie_deformation(3, Q,
                         {{{0, 1}, letters_combination(Q, {{1, 2}})},
                          {{0, 2}, letters_combination(Q, {{2, -2}})},
                          {{1, 2}, letters_combination(Q, {{0, 1}})}});
}

NumericDeformation nonkoszul_deformation() {
  const auto& Q = CyclotomicField::of(1);
  Alphabet A(3);
  const std::vector<WordCoeffs> rels = {
      {{"xy", "1"}, {"yx", "-1"}}, {{"xz", "1"}, {"zx", "-1"}}, {{"yz", "1"}, {"zy", "-1"}},
      {{"yy", "1"}, {"xz", "-1"}}, {{"xy", "1"}},               {{"zz", "1"}}};
  std::vector<NumVec> gens;
  for (const auto& r : rels) gens.push_back(numvec_from_pairs(A, Q, r));
  std::vector<SparseVec<FieldElement>> a1(gens.size());
  a1[5] = numvec_from_pairs(A, Q, {{"x", "-1"}});
  return make_deformation<FieldElement>(3, 2, Q, std::move(gens), {std::move(a1)}, FieldElement::one(Q));
}

std::vector<NumVec> type_e_relations() {
  const auto& E = CyclotomicField::of(3);
  Alphabet A(2);
  return {numvec_from_pairs(A, E, {{"yyy", "1"}, {"xxx", "1"}}),
          numvec_from_pairs(A, E, {{"yyx", "1"}, {"yxy", "z"}, {"xyy", "z^2"}})};
}

NumericDeformation type_e_deformation(const FieldElement& a11, const FieldElement& a21, const FieldElement& a3,
                                      const FieldElement& gamma) {
  const auto& E = CyclotomicField::of(3);
  Alphabet A(2);
  const FieldElement one = FieldElement::one(E), z = FieldElement::generator(E);
  const FieldElement b12 = gamma * z / (one + z);
  const FieldElement a14 = gamma * (one + z * z * FieldElement(E, 2)) / (one + z);
  const FieldElement a22 = gamma * gamma * z / (one + z);
  auto at = [&](const char* w) { return A.parse(w).idx; };
  SparseVec<FieldElement> f1, g1, f2, f3;
  sparse_add(f1, at("xx"), a11);
  sparse_add(f1, at("yy"), a14);
  sparse_add(g1, at("xy"), b12);
  sparse_add(g1, at("yx"), -b12);
  sparse_add(f2, at("x"), a21);
  sparse_add(f2, at("y"), a22);
  sparse_add(f3, at(""), a3);
  return make_deformation<FieldElement>(2, 3, E, type_e_relations(), {{f1, g1}, {f2, {}}, {f3, {}}}, one);
}

}  // namespace pbw
