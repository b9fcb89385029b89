#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pbwforge/groebner.hpp"
#include "pbwforge/subspace.hpp"

namespace pbw {

// Coordinates with respect to a chosen basis g_1..g_n of R. The reduced
// echelon rows b_k of R satisfy g = M b with M_{ik} = g_i[p_k], so a vector
// x ∈ V^{⊗N} decomposes as Σ_k x[p_k] b_k + residual, and the residual
// vanishes iff x ∈ R.
class RelationCoordinates {
 public:
  RelationCoordinates(const Subspace& R, const std::vector<NumVec>& gens);

  const Subspace& space() const { return R_; }
  std::size_t size() const { return piv_.size(); }

  template <class T>
  std::pair<std::vector<T>, SparseVec<T>> decompose(const SparseVec<T>& x, const T& one) const {
    const std::size_t n = piv_.size();
    std::vector<T> coords(n, one - one);
    SparseVec<T> residual = x;
    const auto rows = R_.basis();
    for (std::size_t k = 0; k < n; ++k) {
      auto it = x.find(piv_[k]);
      if (it == x.end()) continue;
      const T xk = it->second;
      sparse_add(residual, lift_vec(rows[k], one), -xk);
      for (std::size_t i = 0; i < n; ++i)
        if (!minv_[k][i].is_zero()) coords[i] += xk * lift_scalar(minv_[k][i], one);
    }
    return {coords, residual};
  }

 private:
  Subspace R_;
  std::vector<std::uint64_t> piv_;
  std::vector<std::vector<FieldElement>> minv_;  // minv_[k][i]: b_k = Σ_i minv_[k][i] g_i
};

// P = { r + α_1(r) + ... + α_N(r) : r ∈ R }, with α_i given on an independent
// basis of R. alpha[i-1][j] = α_i(gens[j]) ∈ V^{⊗(N-i)}.
template <class T>
struct DeformationData {
  int v = 1;
  unsigned N = 1;
  const CyclotomicField* field = nullptr;
  std::vector<NumVec> gens;
  std::vector<std::vector<SparseVec<T>>> alpha;
  T one;

  Subspace relations() const { return Subspace::from_vectors(v, N, *field, gens); }
  bool augmented() const {
    for (const auto& img : alpha.back())
      if (!img.empty()) return false;
    return true;
  }
  // α_i extended to V^{⊗N}; α_{N+1} is the zero map.
  LinMap<T> alpha_map(unsigned i) const {
    if (i == N + 1 || gens.empty()) return LinMap<T>{v, N, N + 1 - i, {}};
    return extend_from_relations(relations(), gens, alpha.at(i - 1), N - i, one);
  }
};

using NumericDeformation = DeformationData<FieldElement>;
using SymbolicDeformation = DeformationData<RationalFunction>;

// Validates shapes and independence; missing α_i are taken as zero.
template <class T>
DeformationData<T> make_deformation(int v, unsigned N, const CyclotomicField& field, std::vector<NumVec> gens,
                                    std::vector<std::vector<SparseVec<T>>> alpha, const T& one) {
  if (v < 1 || N < 1) throw std::invalid_argument("deformation: need v >= 1 and N >= 1");
  Alphabet A(v);
  const std::uint64_t nin = A.piece_size(N);
  for (const auto& g : gens)
    for (const auto& [k, c] : g)
      if (k >= nin) throw std::invalid_argument("deformation: relation outside V^{⊗N}");
  if (Subspace::from_vectors(v, N, field, gens).dim() != gens.size())
    throw std::invalid_argument("deformation: relations are linearly dependent");
  if (alpha.size() > N) throw std::invalid_argument("deformation: more than N maps α_i");
  alpha.resize(N, std::vector<SparseVec<T>>(gens.size()));
  for (unsigned i = 1; i <= N; ++i) {
    if (alpha[i - 1].size() != gens.size())
      throw std::invalid_argument("deformation: α_" + std::to_string(i) + " needs one image per relation");
    const std::uint64_t nout = A.power(N - i);
    for (const auto& img : alpha[i - 1])
      for (const auto& [k, c] : img)
        if (k >= nout) throw std::invalid_argument("deformation: α_" + std::to_string(i) + " image outside V^{⊗(N-i)}");
  }
  return DeformationData<T>{v, N, &field, std::move(gens), std::move(alpha), one};
}

// (V⊗R) ∩ (R⊗V).
Subspace overlap_space(const Subspace& R);

template <class T>
struct J1Result {
  bool pass = true;
  std::vector<SparseVec<T>> images;            // [1, α_1](u_j) for the overlap basis u_j
  std::vector<std::vector<T>> coordinates;     // coordinates[j][k]: coefficient of gens[k]
  std::vector<SparseVec<T>> residuals;         // image minus its R-part, per u_j
};

template <class T>
struct J2Result {
  std::vector<bool> pass;                                 // index i-1
  std::vector<std::vector<SparseVec<T>>> residuals;       // [i-1][j]
  bool all_pass() const {
    for (bool b : pass)
      if (!b) return false;
    return true;
  }
};

// [1, α_1](u) must lie in R for every u in the overlap. In symbolic mode the
// residual entries are the equations; `given` lets the caller name the
// coordinates (β, γ, ...) instead, in which case every word of
// [1,α_1](u_j) - Σ_k given[j][k] g_k is a residual.
template <class T>
J1Result<T> check_J1(const DeformationData<T>& data, const Subspace& overlap,
                     const std::vector<std::vector<T>>* given = nullptr) {
  J1Result<T> out;
  const Subspace R = data.relations();
  if (overlap.dim() == 0) return out;
  const LinMap<T> a1 = data.alpha_map(1);
  out.images = bracket(a1, R, overlap, data.one);
  const RelationCoordinates rc(R, data.gens);
  for (std::size_t j = 0; j < out.images.size(); ++j) {
    if (given) {
      SparseVec<T> res = out.images[j];
      for (std::size_t k = 0; k < data.gens.size(); ++k)
        sparse_add(res, lift_vec(data.gens[k], data.one), -given->at(j).at(k));
      out.coordinates.push_back(given->at(j));
      out.residuals.push_back(std::move(res));
    } else {
      auto [c, res] = rc.decompose(out.images[j], data.one);
      out.coordinates.push_back(std::move(c));
      out.residuals.push_back(std::move(res));
    }
    if (!out.residuals.back().empty()) out.pass = false;
  }
  return out;
}

// α_i ∘ [1, α_1] = [1, α_{i+1}] on the overlap for i = 1..N, α_{N+1} = 0; the
// left side uses the R-coordinates found by check_J1.
template <class T>
J2Result<T> check_J2(const DeformationData<T>& data, const Subspace& overlap, const J1Result<T>& j1) {
  J2Result<T> out;
  const Subspace R = data.relations();
  Alphabet A(data.v);
  const auto basis = overlap.basis();
  for (unsigned i = 1; i <= data.N; ++i) {
    const LinMap<T> next = data.alpha_map(i + 1);
    std::vector<SparseVec<T>> res_i;
    bool ok = true;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      SparseVec<T> lhs;
      for (std::size_t k = 0; k < data.gens.size(); ++k)
        sparse_add(lhs, data.alpha[i - 1][k], j1.coordinates[j][k]);
      if (i < data.N) {
        const SparseVec<T> u = lift_vec(basis[j], data.one);
        sparse_add(lhs, apply_factors<T>(A, {{nullptr, 1}, {&next, 0}}, u), -data.one);
        sparse_add(lhs, apply_factors<T>(A, {{&next, 0}, {nullptr, 1}}, u), data.one);
      }
      if (!lhs.empty()) ok = false;
      res_i.push_back(std::move(lhs));
    }
    out.pass.push_back(ok);
    out.residuals.push_back(std::move(res_i));
  }
  return out;
}

// dim A_d for d = 0..maxdeg with A = T(V)/(R); exact.
std::vector<std::uint64_t> graded_dims_A(const Subspace& R, unsigned maxdeg);
// The same numbers from the literal two-sided ideal pieces; a slow oracle.
std::vector<std::uint64_t> graded_dims_A_literal(const Subspace& R, unsigned maxdeg);

struct FilteredDims {
  unsigned bound = 0;                       // D = maxdeg + margin
  std::vector<std::uint64_t> dims;          // dim F^d U from the ideal truncated at D
  std::vector<std::uint64_t> dims_recheck;  // the same at D + 1
  bool stable = true;
};

std::vector<Poly> deformation_polys(const NumericDeformation& data);
// Upper bounds for dim F^d U; a deficit against Σ_{i<=d} dim A_i certifies
// that the PBW property fails.
FilteredDims filtered_dims_U(const NumericDeformation& data, unsigned maxdeg, unsigned margin);

struct PbwReport {
  J1Result<FieldElement> j1;
  J2Result<FieldElement> j2;
  std::vector<std::uint64_t> dims_A;             // graded
  std::vector<std::uint64_t> dims_A_cumulative;  // Σ_{i<=d} dim A_i
  FilteredDims dims_U;
  std::optional<unsigned> first_failing_degree;
  bool dims_pass() const { return !first_failing_degree.has_value(); }
  bool pass() const { return j1.pass && j2.all_pass() && dims_pass(); }
};

PbwReport pbw_verify(const NumericDeformation& data, unsigned maxdeg, unsigned margin);

// W^{m-1}⊗S⊗W ⊆ W^m⊗S + ∩_{i=1..m} W^{m-i}⊗S⊗W^i with S = R^⊥.
bool koszul_overlap_lemma_check(const Subspace& R, unsigned m);

}  // namespace pbw
