#pragma once

#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "pbwforge/exterior.hpp"
#include "pbwforge/pbwcheck.hpp"

namespace pbw {

using ExtForm = ExtMap<FieldElement>;

// A form ∧^p V → k with every value zero.
ExtForm zero_ext_map(int v, unsigned p, unsigned r);
// Entries drawn uniformly from [-range, range].
ExtForm random_ext_map(int v, unsigned p, unsigned r, const CyclotomicField& field, std::mt19937_64& rng,
                       int range = 3);

// Data for odd N: a linear form l and alternating forms Φ_{2r}, 2 <= 2r < N.
// Forms missing from the map are zero.
struct OddNData {
  int v = 1;
  unsigned N = 3;
  const CyclotomicField* field = nullptr;
  ExtForm l;                           // ∧^1 V → k
  std::map<unsigned, ExtForm> forms;   // degree 2r ↦ Φ_{2r}
};

// Data for even N = 2n: a bracket L : ∧²V → V, forms Φ_{2r} for 2 <= 2r < N
// and, when α_N is wanted, a top form Φ_{2n}.
struct EvenNData {
  int v = 1;
  unsigned N = 2;
  const CyclotomicField* field = nullptr;
  ExtForm L;
  std::map<unsigned, ExtForm> forms;
  std::optional<ExtForm> top;
};

struct WedgeOptions {
  // v <= N is accepted with a warning, v = N+1 never is; N = 2 takes any v.
  bool allow_small_v = false;
  bool skip_conditions = false;  // build even when L or Φ violate the side conditions
};

struct WedgeBuild {
  NumericDeformation data;
  std::vector<std::string> warnings;
};

// Refusal of the even-N construction; kind is "jacobi", "generalized_jacobi"
// or "top_form".
class WedgeConditionError : public std::invalid_argument {
 public:
  WedgeConditionError(std::string kind, unsigned degree, const std::string& what)
      : std::invalid_argument(what), kind_(std::move(kind)), degree_(degree) {}
  const std::string& kind() const { return kind_; }
  unsigned degree() const { return degree_; }

 private:
  std::string kind_;
  unsigned degree_;
};

// α_{2r} = 1^{N-2r} ⊗ Φ_{2r}, α_{2r+1} = 1^{N-2r-1} ⊗ l ⊗ Φ_{2r}, Φ_0 = 1, on
// the relations e_I (I increasing) spanning ∧^N V ⊂ V^{⊗N}.
WedgeBuild build_alpha_odd(const OddNData& in, const WedgeOptions& opt = {});

// α_{2r} = Σ_i underline{1^{2(n-2r+i)} L^{2r-2i}} ⊗ Φ_{2i},
// α_{2r+1} = Σ_i underline{1^{2(n-2r-1+i)} L^{2r+1-2i}} ⊗ Φ_{2i}
//            + r · 1^{2n-2r-1} ⊗ Φ_{2r}(1^{2r-1} ⊗ L),
// terms with a negative identity count being absent, and α_N = Φ_{2n} or 0.
WedgeBuild build_alpha_even(const EvenNData& in, const WedgeOptions& opt = {});

struct JacobiVerdict {
  bool pass = true;
  unsigned degree = 0;      // 2r of the form tested
  ExtMap<FieldElement> composite;  // ∧^{2r+3} V → V
};

// L ∘ T_2(Φ_{2r}) ∘ T_{2r+1}(L) on ∧^{2r+3} V; Φ of degree 0 gives ordinary
// Jacobi. For degree > 0, L must itself satisfy Jacobi.
JacobiVerdict gen_jacobi_check(const ExtForm& L, const ExtForm& phi);
JacobiVerdict jacobi_check(const ExtForm& L);
// Φ_{2n} ∘ T_{2n-1}(L) on ∧^{2n+1} V.
JacobiVerdict top_form_check(const ExtForm& L, const ExtForm& top);

// Relations R = S^N(V) only; verification goes through pbw_verify.
PbwReport verify_symmetric_relations(const NumericDeformation& data, unsigned maxdeg, unsigned margin);

}  // namespace pbw
