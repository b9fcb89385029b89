#pragma once

#include <map>
#include <utility>

#include "pbwforge/pbwcheck.hpp"

namespace pbw {

// Lie algebra on x_0..x_{v-1}: R = ∧²V with basis x_a x_b - x_b x_a (a < b in
// lex order) and α_1(x_a x_b - x_b x_a) = [x_a, x_b].
NumericDeformation lie_deformation(int v, const CyclotomicField& field,
                                   const std::map<std::pair<int, int>, NumVec>& brackets);
NumericDeformation so3_deformation();  // [x,y] = z, [y,z] = x, [z,x] = y
NumericDeformation sl2_deformation();  // x = h, y = e, z = f

// Commutative k[x,y,z]/(y²-xz, xy, z²) with α_1(z²) = -x and every other
// relation, commutators included, sent to zero.
NumericDeformation nonkoszul_deformation();

// Type E in Q(ζ_3): f = y³ + x³, g = y²x + ζ yxy + ζ² xy².
std::vector<NumVec> type_e_relations();
// The solved family with free a11, a21, a3, γ.
NumericDeformation type_e_deformation(const FieldElement& a11, const FieldElement& a21, const FieldElement& a3,
                                      const FieldElement& gamma);

}  // namespace pbw
