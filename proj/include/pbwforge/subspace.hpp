#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "pbwforge/field.hpp"
#include "pbwforge/linalg.hpp"
#include "pbwforge/poly.hpp"
#include "pbwforge/words.hpp"

namespace pbw {

using NumVec = SparseVec<FieldElement>;

// Embeds a field constant into the scalar type T; `one` carries the ring.
template <class T>
T lift_scalar(const FieldElement& x, const T& one) {
  if constexpr (std::is_same_v<T, FieldElement>) {
    (void)one;
    return x;
  } else {
    return T::constant(one.ring(), x);
  }
}

template <class T>
SparseVec<T> lift_vec(const NumVec& x, const T& one) {
  SparseVec<T> out;
  for (const auto& [k, c] : x) out.emplace(k, lift_scalar(c, one));
  return out;
}

template <class T>
void sparse_add(SparseVec<T>& acc, std::uint64_t k, const T& c) {
  if (c.is_zero()) return;
  auto it = acc.find(k);
  if (it == acc.end()) {
    acc.emplace(k, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

template <class T>
void sparse_add(SparseVec<T>& acc, const SparseVec<T>& x, const T& f) {
  for (const auto& [k, c] : x) sparse_add(acc, k, c * f);
}

// A numeric subspace of the piece V^{⊗degree}, stored as a reduced echelon
// basis whose pivots are the leading (largest) words. The reduced form is
// canonical, so equality of subspaces is equality of bases.
class Subspace {
 public:
  Subspace(int v, unsigned degree, const CyclotomicField& field);

  static Subspace from_vectors(int v, unsigned degree, const CyclotomicField& field,
                               const std::vector<NumVec>& vecs);
  // All tensors must be homogeneous of one common length.
  static Subspace from_tensors(const Alphabet& A, const CyclotomicField& field,
                               const std::vector<Tensor<FieldElement>>& vecs);
  static Subspace full(int v, unsigned degree, const CyclotomicField& field);

  int v() const { return v_; }
  unsigned degree() const { return degree_; }
  const CyclotomicField& field() const { return *field_; }
  std::size_t dim() const { return ech_.rank(); }

  // Returns the pivot of the added vector, or nullopt if it was dependent.
  std::optional<std::uint64_t> add(const NumVec& x);

  const std::map<std::uint64_t, NumVec>& rows() const;
  std::vector<NumVec> basis() const;
  std::vector<std::uint64_t> pivots() const;
  NumVec reduce(const NumVec& x) const { return ech_.reduce(x); }
  bool contains(const NumVec& x) const { return ech_.contains(x); }
  bool contains(const Subspace& other) const;
  bool operator==(const Subspace& other) const;

 private:
  void finalize() const;
  int v_;
  unsigned degree_;
  const CyclotomicField* field_;
  mutable Echelon<FieldElement, true> ech_;
};

using WordCoeffs = std::vector<std::pair<std::string, std::string>>;

// Serialized form: (word string, coefficient string) pairs.
Tensor<FieldElement> tensor_from_pairs(const Alphabet& A, const CyclotomicField& field, const WordCoeffs& pairs);
WordCoeffs tensor_to_pairs(const Alphabet& A, const Tensor<FieldElement>& t);
NumVec numvec_from_pairs(const Alphabet& A, const CyclotomicField& field, const WordCoeffs& pairs);

Subspace subspace_sum(const Subspace& U, const Subspace& W);
Subspace subspace_intersect(const Subspace& U, const Subspace& W);
// V^{⊗dl} ⊗ U ⊗ V^{⊗dr}.
Subspace tensor_subspace(const Subspace& U, unsigned dl, unsigned dr);
// Kernel of W^{⊗N} → R* under the word pairing <w_I, x_J> = δ_IJ.
Subspace perp_space(const Subspace& R);

// Sparse linear map V^{⊗in_deg} → V^{⊗out_deg}; absent columns are zero.
template <class T>
struct LinMap {
  int v = 1;
  unsigned in_deg = 0;
  unsigned out_deg = 0;
  std::map<std::uint64_t, SparseVec<T>> cols;

  const SparseVec<T>* column(std::uint64_t w) const {
    auto it = cols.find(w);
    return it == cols.end() ? nullptr : &it->second;
  }
  void set(std::uint64_t w, SparseVec<T> img) {
    if (img.empty()) cols.erase(w);
    else cols[w] = std::move(img);
  }
  bool is_zero() const { return cols.empty(); }
  bool operator==(const LinMap& o) const {
    return v == o.v && in_deg == o.in_deg && out_deg == o.out_deg && cols == o.cols;
  }

  SparseVec<T> apply(const SparseVec<T>& x) const {
    SparseVec<T> out;
    for (const auto& [w, c] : x)
      if (const auto* col = column(w)) sparse_add(out, *col, c);
    return out;
  }
};

template <class T>
LinMap<T> identity_map(int v, unsigned d, const T& one) {
  LinMap<T> id{v, d, d, {}};
  const std::uint64_t n = Alphabet(v).piece_size(d);
  for (std::uint64_t w = 0; w < n; ++w) id.cols[w] = SparseVec<T>{{w, one}};
  return id;
}

// f ∘ g.
template <class T>
LinMap<T> map_compose(const LinMap<T>& f, const LinMap<T>& g) {
  if (f.v != g.v || f.in_deg != g.out_deg) throw std::invalid_argument("map_compose: shape mismatch");
  LinMap<T> out{f.v, g.in_deg, f.out_deg, {}};
  for (const auto& [w, col] : g.cols) out.set(w, f.apply(col));
  return out;
}

// Kronecker product: (f ⊗ g)(a·b) = f(a) ⊗ g(b).
template <class T>
LinMap<T> map_tensor(const LinMap<T>& f, const LinMap<T>& g) {
  if (f.v != g.v) throw std::invalid_argument("map_tensor: alphabet mismatch");
  Alphabet A(f.v);
  LinMap<T> out{f.v, f.in_deg + g.in_deg, f.out_deg + g.out_deg, {}};
  const std::uint64_t gin = A.power(g.in_deg), gout = A.power(g.out_deg);
  for (const auto& [a, fa] : f.cols)
    for (const auto& [b, gb] : g.cols) {
      SparseVec<T> img;
      for (const auto& [p, cp] : fa)
        for (const auto& [q, cq] : gb) sparse_add(img, p * gout + q, cp * cq);
      out.set(a * gin + b, std::move(img));
    }
  return out;
}

// Images of the basis vectors of U, in basis() order.
template <class T>
std::vector<SparseVec<T>> map_restrict(const LinMap<T>& f, const Subspace& U, const T& one) {
  if (U.degree() != f.in_deg || U.v() != f.v) throw std::invalid_argument("map_restrict: shape mismatch");
  std::vector<SparseVec<T>> out;
  for (const auto& b : U.basis()) out.push_back(f.apply(lift_vec(b, one)));
  return out;
}

// One tensor factor of a product map; a null map means the identity on
// `width` letters.
template <class T>
struct Factor {
  const LinMap<T>* map = nullptr;
  unsigned width = 0;
  unsigned in() const { return map ? map->in_deg : width; }
  unsigned out() const { return map ? map->out_deg : width; }
};

// (F_1 ⊗ ... ⊗ F_k)(x).
template <class T>
SparseVec<T> apply_factors(const Alphabet& A, const std::vector<Factor<T>>& fs, const SparseVec<T>& x) {
  unsigned in_total = 0;
  for (const auto& f : fs) in_total += f.in();
  SparseVec<T> out;
  for (const auto& [wi, c] : x) {
    const Word w{in_total, wi};
    SparseVec<T> acc{{0, c}};
    unsigned pos = 0;
    for (const auto& f : fs) {
      const Word chunk = A.sub(w, pos, f.in());
      pos += f.in();
      const std::uint64_t shift = A.power(f.out());
      SparseVec<T> next;
      if (!f.map) {
        for (const auto& [k, a] : acc) next.emplace(k * shift + chunk.idx, a);
      } else if (const auto* col = f.map->column(chunk.idx)) {
        for (const auto& [k, a] : acc)
          for (const auto& [q, b] : *col) sparse_add(next, k * shift + q, a * b);
      }
      acc = std::move(next);
      if (acc.empty()) break;
    }
    for (const auto& [k, a] : acc) sparse_add(out, k, a);
  }
  return out;
}

// Materializes a sum of signed factor products as a map on the full piece.
template <class T>
LinMap<T> materialize(int v, const std::vector<std::pair<int, std::vector<Factor<T>>>>& terms, const T& one) {
  Alphabet A(v);
  if (terms.empty()) throw std::invalid_argument("materialize: empty sum");
  unsigned in = 0, out = 0;
  for (const auto& f : terms.front().second) {
    in += f.in();
    out += f.out();
  }
  LinMap<T> m{v, in, out, {}};
  const std::uint64_t n = A.piece_size(in);
  for (std::uint64_t w = 0; w < n; ++w) {
    SparseVec<T> img;
    const SparseVec<T> e{{w, one}};
    for (const auto& [sign, fs] : terms) {
      sparse_add(img, apply_factors(A, fs, e), sign > 0 ? one : -one);
    }
    m.set(w, std::move(img));
  }
  return m;
}

// underline{1^{2a} L^b}: sum over all interleavings of a identity pairs and
// b copies of L.
template <class T>
LinMap<T> op_underline(const LinMap<T>& L, unsigned a, unsigned b, const T& one) {
  std::vector<std::pair<int, std::vector<Factor<T>>>> terms;
  std::vector<bool> is_l(a + b, false);
  std::fill(is_l.end() - b, is_l.end(), true);
  do {
    std::vector<Factor<T>> fs;
    for (bool l : is_l) fs.push_back(l ? Factor<T>{&L, 0} : Factor<T>{nullptr, 2});
    terms.emplace_back(1, std::move(fs));
  } while (std::next_permutation(is_l.begin(), is_l.end()));
  return materialize(L.v, terms, one);
}

// underline{±1^a L} = Σ_j (-1)^j 1^{a-j} ⊗ L ⊗ 1^j.
template <class T>
LinMap<T> op_pm_underline(const LinMap<T>& L, unsigned a, const T& one) {
  std::vector<std::pair<int, std::vector<Factor<T>>>> terms;
  for (unsigned j = 0; j <= a; ++j)
    terms.emplace_back(j % 2 ? -1 : 1, std::vector<Factor<T>>{{nullptr, a - j}, {&L, 0}, {nullptr, j}});
  return materialize(L.v, terms, one);
}

// [φ, ψ] = φ ⊗ ψ - ψ ⊗ φ on full pieces.
template <class T>
LinMap<T> map_bracket(const LinMap<T>& f, const LinMap<T>& g, const T& one) {
  return materialize<T>(f.v, {{1, {{&f, 0}, {&g, 0}}}, {-1, {{&g, 0}, {&f, 0}}}}, one);
}

// Extends a map given on a spanning set of R to V^{⊗N}: the value on a pivot
// word of R's reduced basis is the image of that basis vector, and non-pivot
// words map to zero. `gens` must be independent and span R.
template <class T>
LinMap<T> extend_from_relations(const Subspace& R, const std::vector<NumVec>& gens,
                                const std::vector<SparseVec<T>>& images, unsigned out_deg, const T& one) {
  if (gens.size() != images.size() || gens.size() != R.dim())
    throw std::invalid_argument("extend_from_relations: need one image per basis relation");
  const auto piv = R.pivots();
  const std::size_t n = piv.size();
  const FieldElement zero = FieldElement::zero(R.field());
  // gens[i] = Σ_k gens[i][p_k] b_k, so b = M^{-1} gens with M_{ik} = gens[i][p_k].
  std::vector<std::vector<FieldElement>> m(n, std::vector<FieldElement>(2 * n, zero));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      auto it = gens[i].find(piv[k]);
      if (it != gens[i].end()) m[i][k] = it->second;
    }
    m[i][n + i] = FieldElement::one(R.field());
  }
  std::vector<FieldElement> rhs(n, zero);
  auto sol = solve_dense(m, rhs, 2 * n, zero);
  if (sol.pivots.size() != n || sol.pivots.back() != n - 1)
    throw std::invalid_argument("extend_from_relations: generators are dependent");
  LinMap<T> out{R.v(), R.degree(), out_deg, {}};
  // Reducing [M | 1] leaves row k of M^{-1} in the right half.
  for (std::size_t k = 0; k < n; ++k) {
    SparseVec<T> img;
    for (std::size_t i = 0; i < n; ++i) {
      const FieldElement& c = sol.reduced[k][n + i];
      if (!c.is_zero()) sparse_add(img, images[i], lift_scalar(c, one));
    }
    out.set(piv[k], std::move(img));
  }
  return out;
}

// [1, α] = 1⊗α - α⊗1 evaluated on each basis vector of the overlap space, which
// must lie in (V⊗R) ∩ (R⊗V).
template <class T>
std::vector<SparseVec<T>> bracket(const LinMap<T>& alpha, const Subspace& R, const Subspace& overlap, const T& one) {
  if (overlap.degree() != R.degree() + 1) throw std::invalid_argument("bracket: overlap has the wrong degree");
  if (!tensor_subspace(R, 1, 0).contains(overlap) || !tensor_subspace(R, 0, 1).contains(overlap))
    throw std::invalid_argument("bracket: overlap not inside (V⊗R)∩(R⊗V)");
  Alphabet A(R.v());
  std::vector<SparseVec<T>> out;
  for (const auto& b : overlap.basis()) {
    const SparseVec<T> x = lift_vec(b, one);
    SparseVec<T> y = apply_factors<T>(A, {{nullptr, 1}, {&alpha, 0}}, x);
    sparse_add(y, apply_factors<T>(A, {{&alpha, 0}, {nullptr, 1}}, x), -one);
    out.push_back(std::move(y));
  }
  return out;
}

}  // namespace pbw
