#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "pbwforge/subspace.hpp"

namespace pbw {

// Sign of the permutation sorting `seq`; 0 if a value repeats.
int sort_sign(std::vector<int> seq);

std::uint64_t binomial(unsigned n, unsigned k);

// Increasing index sequences of length p from {0..v-1}, in lexicographic order.
class ExteriorBasis {
 public:
  ExteriorBasis(int v, unsigned p);
  int v() const { return v_; }
  unsigned p() const { return p_; }
  std::size_t size() const { return subsets_.size(); }
  const std::vector<int>& subset(std::size_t i) const { return subsets_[i]; }
  std::uint64_t mask(std::size_t i) const { return masks_[i]; }
  // Index of the subset with this bitmask.
  std::size_t index_of_mask(std::uint64_t m) const { return rank_.at(m); }
  std::size_t index_of(const std::vector<int>& sorted) const;

 private:
  int v_;
  unsigned p_;
  std::vector<std::vector<int>> subsets_;
  std::vector<std::uint64_t> masks_;
  std::unordered_map<std::uint64_t, std::size_t> rank_;
};

// φ : ∧^p V → ∧^r V in the increasing-index bases v_P; rows[i] = φ(v_{P_i}).
template <class T>
struct ExtMap {
  int v = 1;
  unsigned p = 0;
  unsigned r = 0;
  std::vector<SparseVec<T>> rows;

  bool is_zero() const {
    for (const auto& x : rows)
      if (!x.empty()) return false;
    return true;
  }
};

// φ ∘ ψ.
template <class T>
ExtMap<T> ext_compose(const ExtMap<T>& phi, const ExtMap<T>& psi) {
  if (phi.v != psi.v || phi.p != psi.r) throw std::invalid_argument("ext_compose: shape mismatch");
  ExtMap<T> out{psi.v, psi.p, phi.r, {}};
  for (const auto& x : psi.rows) {
    SparseVec<T> y;
    for (const auto& [k, c] : x) sparse_add(y, phi.rows[k], c);
    out.rows.push_back(std::move(y));
  }
  return out;
}

// T_a(φ)(v_I) = Σ_{I = A ∪ P, |P| = p} sgn(P, A) v_A ∧ φ(v_P), with sgn(P, A)
// the sign of the concatenation P·A as a permutation of I.
template <class T>
ExtMap<T> op_Ta(const ExtMap<T>& phi, unsigned a) {
  const int v = phi.v;
  ExteriorBasis in(v, a + phi.p), src(v, phi.p), dst(v, phi.r), out_basis(v, a + phi.r);
  ExtMap<T> out{v, a + phi.p, a + phi.r, std::vector<SparseVec<T>>(in.size())};
  for (std::size_t i = 0; i < in.size(); ++i) {
    const auto& I = in.subset(i);
    std::vector<bool> pick(I.size(), false);
    std::fill(pick.begin(), pick.begin() + phi.p, true);
    do {
      std::vector<int> P, Aset;
      for (std::size_t j = 0; j < I.size(); ++j) (pick[j] ? P : Aset).push_back(I[j]);
      std::vector<int> pa = P;
      pa.insert(pa.end(), Aset.begin(), Aset.end());
      const int s1 = sort_sign(pa);
      std::uint64_t amask = 0;
      for (int x : Aset) amask |= 1ull << x;
      for (const auto& [k, c] : phi.rows[src.index_of(P)]) {
        if (dst.mask(k) & amask) continue;
        std::vector<int> ar = Aset;
        const auto& R = dst.subset(k);
        ar.insert(ar.end(), R.begin(), R.end());
        const int s2 = sort_sign(ar);
        const std::size_t target = out_basis.index_of_mask(amask | dst.mask(k));
        sparse_add(out.rows[i], target, (s1 * s2 > 0) ? c : -c);
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

// e_I = Σ_σ sgn(σ) x_{I∘σ}, the image of v_I in V^{⊗|I|}.
template <class T>
SparseVec<T> wedge_vector_as(const Alphabet& A, std::vector<int> I, const T& one) {
  SparseVec<T> out;
  std::sort(I.begin(), I.end());
  do {
    const int s = sort_sign(I);
    out.emplace(A.from_letters(I).idx, s > 0 ? one : -one);
  } while (std::next_permutation(I.begin(), I.end()));
  return out;
}

NumVec wedge_vector(const Alphabet& A, const std::vector<int>& I, const CyclotomicField& field);

Subspace antisymmetrizer(int v, unsigned N, const CyclotomicField& field);
Subspace symmetrizer(int v, unsigned N, const CyclotomicField& field);

// Quotient realization on the tensor piece: a word with distinct letters maps
// to sgn·φ(v_P); outputs v_R are realized as e_R (a plain word for r <= 1).
template <class T>
LinMap<T> ext_to_tensor(const ExtMap<T>& phi, const T& one) {
  Alphabet A(phi.v);
  ExteriorBasis src(phi.v, phi.p), dst(phi.v, phi.r);
  std::vector<SparseVec<T>> realized;
  for (std::size_t k = 0; k < dst.size(); ++k) realized.push_back(wedge_vector_as(A, dst.subset(k), one));
  LinMap<T> out{phi.v, phi.p, phi.r, {}};
  const std::uint64_t n = A.piece_size(phi.p);
  for (std::uint64_t w = 0; w < n; ++w) {
    auto letters = A.letters_of(Word{phi.p, w});
    const int s = sort_sign(letters);
    if (!s) continue;
    std::sort(letters.begin(), letters.end());
    SparseVec<T> img;
    for (const auto& [k, c] : phi.rows[src.index_of(letters)]) sparse_add(img, realized[k], s > 0 ? c : -c);
    out.set(w, std::move(img));
  }
  return out;
}

// Restriction of a tensor-piece map to ∧^p V, read back in the v_R bases of
// ∧^r V. Requires the images to be alternating.
template <class T>
ExtMap<T> tensor_to_ext(const LinMap<T>& f, const T& one) {
  Alphabet A(f.v);
  ExteriorBasis src(f.v, f.in_deg), dst(f.v, f.out_deg);
  ExtMap<T> out{f.v, f.in_deg, f.out_deg, {}};
  for (std::size_t i = 0; i < src.size(); ++i) {
    const auto x = wedge_vector_as(A, src.subset(i), one);
    const auto y = f.apply(x);
    SparseVec<T> row;
    for (const auto& [w, c] : y) {
      auto letters = A.letters_of(Word{f.out_deg, w});
      if (sort_sign(letters) == 0) throw std::domain_error("tensor_to_ext: image is not alternating");
      if (std::is_sorted(letters.begin(), letters.end())) row.emplace(dst.index_of(letters), c);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

// Variable α ∈ Hom(∧^N V, V^{⊗m}) with coordinate α[J][w] stored at J·v^m + w.
// Rows of the linear conditions on α saying that
//   c_left·(1⊗α)(e_I) + c_right·(α⊗1)(e_I), |I| = N+1,
// vanishes (alternating = false) or is an alternating tensor (alternating = true).
std::vector<NumVec> wedge_condition_rows(int v, unsigned N, unsigned m, int c_left, int c_right, bool alternating,
                                         const CyclotomicField& field);

// Coordinates of α in the layout above, from a map on the tensor piece.
NumVec wedge_coordinates(const LinMap<FieldElement>& alpha, unsigned N);

struct ExactSequenceReport {
  std::uint64_t dim_A = 0;        // dim A_p for A = T(V)/(xyt - txy)
  std::uint64_t expected = 0;     // C(v,p) + C(v+p-1,p)
  std::uint64_t rank_i = 0;       // rank of i : ∧^p V → A_p
  std::uint64_t dim_ker_j = 0;    // dim ker(A_p → S_p V)
  bool image_in_kernel = false;
  bool exact = false;
};

// Truncated-quotient check of 0 → ∧^p V → A_p → S_p V → 0.
ExactSequenceReport exact_sequence_check(int v, unsigned p);

}  // namespace pbw
