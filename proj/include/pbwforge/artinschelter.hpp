#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pbwforge/pbwcheck.hpp"
#include "pbwforge/poly.hpp"

namespace pbw {

// Cubic Artin–Schelter families on two generators, with the special branches
// of S1 and S2 as separate tags.
enum class ASTag { E, H, A, S1, S1_alpha1, S1_alpha1_aMinus2, S2, S2_plus1, S2_minus1, S2prime };

const std::vector<ASTag>& all_as_tags();
std::string as_tag_name(ASTag tag);
std::optional<ASTag> parse_as_tag(const std::string& name);

using SymTensor = Tensor<RationalFunction>;

// α_1(f) = a11 xx + a12 xy + a13 yx + a14 yy, α_2(f) = a21 x + a22 y,
// α_3(f) = a3, and likewise with b for g.
const std::vector<std::string>& as_coefficient_names();

struct ASFamily {
  ASTag tag = ASTag::E;
  RingPtr ring;                         // coefficients, beta, gamma, then parameters
  std::vector<std::string> parameters;  // family parameters left symbolic
  std::map<std::string, std::string> specialization;  // parameters fixed by the branch
  SymTensor f, g, w;
  // w = left[0]·f + left[1]·g = f·right[0] + g·right[1], all four in V.
  std::array<SymTensor, 2> left, right;
};

// Builds the family, solves for both expressions of w and checks them by
// expansion; at a numeric point w must also span the overlap space.
ASFamily family_data(ASTag tag);

struct EquationStage {
  unsigned stage = 1;
  std::vector<std::string> unknowns;
  std::vector<std::string> labels;  // monomial whose coefficient was compared
  std::vector<RationalFunction> equations;  // each must vanish
};

// Stage 1: βf + γg − [1,α_1](w); stage k = 2, 3: α_{k-1}(βf + γg) − [1,α_k](w);
// stage 4: α_3(βf + γg). One equation per word, zero ones included.
std::vector<EquationStage> derive_equations(const ASFamily& fam);

struct SolvedTable {
  ASTag tag = ASTag::E;
  RingPtr ring;
  std::map<std::string, RationalFunction> values;  // in terms of free names and parameters only
  std::vector<std::string> free;
  std::vector<RationalFunction> relations;  // each = 0, canonical span basis
  RationalFunction stage4_residual;         // α_3(βf + γg) after substitution
  std::optional<std::string> contradiction;
  bool consistent() const { return !contradiction.has_value(); }
};

// Leftmost-pivot elimination stage by stage (a before b, index order). A
// condition linear in one coefficient, β or γ with a parameter-only factor is
// solved for the leftmost such name; other conditions become relations.
SolvedTable staged_solve(const ASFamily& fam);

struct TableResidual {
  unsigned stage = 0;
  std::string label;
  std::string residual;
};

struct TableVerdict {
  bool pass = true;
  std::vector<TableResidual> residuals;
};

// Each derived equation, after substituting the table, must lie in the span of
// the relations times monomials of degree <= 2 in the free names.
TableVerdict verify_table(const ASFamily& fam, const SolvedTable& table);

// Published solution of a branch as equalities "lhs = rhs" over the family
// ring, plus the free names when the solution is given explicitly.
struct ReferenceTable {
  std::vector<std::pair<std::string, std::string>> equalities;
  std::vector<std::string> free;
  bool explicit_values = false;  // every non-free coefficient appears as a lhs
};

ReferenceTable reference_table(ASTag tag);

// Table read from equalities by the same elimination that staged_solve uses.
SolvedTable table_from_equalities(const ASFamily& fam, const ReferenceTable& ref);

struct TableComparison {
  std::vector<std::string> reference_not_implied;  // reference equalities the solver does not imply
  std::vector<std::string> solver_not_implied;     // solver equalities the reference does not imply
  std::vector<std::string> entry_mismatches;       // explicit tables: name: solver vs reference
  bool free_match = true;
  bool equivalent() const {
    return reference_not_implied.empty() && solver_not_implied.empty() && entry_mismatches.empty() && free_match;
  }
};

TableComparison compare_tables(const ASFamily& fam, const SolvedTable& solved, const ReferenceTable& ref);

// Canonical JSON document: sorted keys, two-space indent, trailing newline.
std::string table_document(const ASFamily& fam, const SolvedTable& table, const TableVerdict& verdict);

// Random numeric point satisfying the relations; parameters avoid the
// branch loci of the generic families.
Bindings numeric_point(const ASFamily& fam, const SolvedTable& table, unsigned seed);
// The table evaluated at a point that fixes every free name and parameter.
NumericDeformation specialize(const ASFamily& fam, const SolvedTable& table, const Bindings& point);

}  // namespace pbw
