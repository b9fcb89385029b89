#include "pbwforge/exterior.hpp"

#include <algorithm>

namespace pbw {

int sort_sign(std::vector<int> seq) {
  int sign = 1;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      if (seq[i] == seq[j]) return 0;
      if (seq[i] > seq[j]) sign = -sign;
    }
  return sign;
}

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  std::uint64_t b = 1;
  for (unsigned i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

ExteriorBasis::ExteriorBasis(int v, unsigned p) : v_(v), p_(p) {
  if (v > 63) throw std::invalid_argument("exterior bases support at most 63 letters");
  if (static_cast<int>(p) > v) return;
  std::vector<int> cur(p);
  for (unsigned i = 0; i < p; ++i) cur[i] = static_cast<int>(i);
  while (true) {
    std::uint64_t m = 0;
    for (int x : cur) m |= 1ull << x;
    rank_.emplace(m, subsets_.size());
    subsets_.push_back(cur);
    masks_.push_back(m);
    int i = static_cast<int>(p) - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == v - static_cast<int>(p) + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (unsigned j = static_cast<unsigned>(i) + 1; j < p; ++j) cur[j] = cur[j - 1] + 1;
  }
}

std::size_t ExteriorBasis::index_of(const std::vector<int>& sorted) const {
  std::uint64_t m = 0;
  for (int x : sorted) m |= 1ull << x;
  return rank_.at(m);
}

NumVec wedge_vector(const Alphabet& A, const std::vector<int>& I, const CyclotomicField& field) {
  return wedge_vector_as(A, I, FieldElement::one(field));
}

Subspace antisymmetrizer(int v, unsigned N, const CyclotomicField& field) {
  Alphabet A(v);
  Subspace out(v, N, field);
  ExteriorBasis B(v, N);
  for (std::size_t i = 0; i < B.size(); ++i) out.add(wedge_vector(A, B.subset(i), field));
  return out;
}

Subspace symmetrizer(int v, unsigned N, const CyclotomicField& field) {
  Alphabet A(v);
  Subspace out(v, N, field);
  const std::uint64_t n = A.piece_size(N);
  const FieldElement one = FieldElement::one(field);
  // One vector per multiset: the sum of its distinct rearrangements.
  for (std::uint64_t w = 0; w < n; ++w) {
    auto ls = A.letters_of(Word{N, w});
    if (!std::is_sorted(ls.begin(), ls.end())) continue;
    NumVec x;
    do {
      x.emplace(A.from_letters(ls).idx, one);
    } while (std::next_permutation(ls.begin(), ls.end()));
    out.add(x);
  }
  return out;
}

std::vector<NumVec> wedge_condition_rows(int v, unsigned N, unsigned m, int c_left, int c_right, bool alternating,
                                         const CyclotomicField& field) {
  Alphabet A(v);
  ExteriorBasis outer(v, N + 1), inner(v, N);
  const std::uint64_t nm = A.power(m), nu = A.piece_size(m + 1);
  const FieldElement cl(field, mpq_class(c_left)), cr(field, mpq_class(c_right));
  std::vector<NumVec> rows;

  for (std::size_t ii = 0; ii < outer.size(); ++ii) {
    const auto& I = outer.subset(ii);
    const std::uint64_t imask = outer.mask(ii);
    auto position = [&](int letter) {
      return static_cast<int>(std::find(I.begin(), I.end(), letter) - I.begin());
    };
    // Linear form giving the coefficient of word u in the combination.
    auto form = [&](std::uint64_t u) {
      NumVec f;
      const Word wu{m + 1, u};
      const int first = A.letter_at(wu, 0), last = A.letter_at(wu, m);
      if (c_left && (imask >> first & 1)) {
        const int pos = position(first);
        const std::size_t J = inner.index_of_mask(imask & ~(1ull << first));
        sparse_add(f, J * nm + A.suffix(wu, m).idx, pos % 2 ? -cl : cl);
      }
      if (c_right && (imask >> last & 1)) {
        const int pos = position(last);
        const std::size_t J = inner.index_of_mask(imask & ~(1ull << last));
        sparse_add(f, J * nm + A.prefix(wu, m).idx, (static_cast<int>(N) - pos) % 2 ? -cr : cr);
      }
      return f;
    };
    for (std::uint64_t u = 0; u < nu; ++u) {
      NumVec row = form(u);
      if (alternating) {
        auto ls = A.letters_of(Word{m + 1, u});
        const int s = sort_sign(ls);
        if (s != 0) {
          std::sort(ls.begin(), ls.end());
          const std::uint64_t su = A.from_letters(ls).idx;
          if (su == u) continue;
          sparse_add(row, form(su), FieldElement(field, mpq_class(-s)));
        }
      }
      if (!row.empty()) rows.push_back(std::move(row));
    }
  }
  return rows;
}

NumVec wedge_coordinates(const LinMap<FieldElement>& alpha, unsigned N) {
  Alphabet A(alpha.v);
  ExteriorBasis B(alpha.v, N);
  const std::uint64_t nm = A.power(alpha.out_deg);
  NumVec out;
  for (std::size_t j = 0; j < B.size(); ++j) {
    // Any field works for the ±1 entries; take it from the map itself.
    const FieldElement* proto = nullptr;
    for (const auto& [w, col] : alpha.cols)
      if (!col.empty()) {
        proto = &col.begin()->second;
        break;
      }
    if (!proto) return out;
    const auto y = alpha.apply(wedge_vector(A, B.subset(j), proto->field()));
    for (const auto& [w, c] : y) out.emplace(j * nm + w, c);
  }
  return out;
}

ExactSequenceReport exact_sequence_check(int v, unsigned p) {
  const auto& Q = CyclotomicField::of(1);
  const FieldElement one = FieldElement::one(Q);
  Alphabet A(v);
  ExactSequenceReport rep;
  // Relations xyt - txy of degree 3 and their two-sided multiples in degree p.
  Subspace R(v, 3, Q);
  for (std::uint64_t w = 0; w < A.power(3); ++w) {
    const Word xyt{3, w};
    const Word txy = A.concat(A.suffix(xyt, 1), A.prefix(xyt, 2));
    NumVec r{{xyt.idx, one}};
    sparse_add(r, txy.idx, -one);
    R.add(r);
  }
  Subspace I(v, p, Q);
  for (unsigned i = 0; i + 3 <= p; ++i) I = subspace_sum(I, tensor_subspace(R, i, p - 3 - i));
  rep.dim_A = A.power(p) - I.dim();
  rep.expected = binomial(static_cast<unsigned>(v), p) + binomial(static_cast<unsigned>(v) + p - 1, p);

  // Kernel of the symmetrization V^p → S_p V: coefficient sums vanish on
  // each rearrangement class.
  Subspace K(v, p, Q);
  for (std::uint64_t w = 0; w < A.power(p); ++w) {
    auto ls = A.letters_of(Word{p, w});
    auto sorted = ls;
    std::sort(sorted.begin(), sorted.end());
    const std::uint64_t s = A.from_letters(sorted).idx;
    if (s == w) continue;
    NumVec x{{w, one}};
    sparse_add(x, s, -one);
    K.add(x);
  }
  // Images x_I - x_{σI} with σ the transposition of the first two letters.
  Subspace with_i = I;
  ExteriorBasis B(v, p);
  bool in_kernel = true;
  for (std::size_t k = 0; k < B.size(); ++k) {
    auto ls = B.subset(k);
    NumVec x{{A.from_letters(ls).idx, one}};
    std::swap(ls[0], ls[1]);
    sparse_add(x, A.from_letters(ls).idx, -one);
    in_kernel = in_kernel && K.contains(x);
    with_i.add(x);
  }
  rep.rank_i = with_i.dim() - I.dim();
  rep.dim_ker_j = K.dim() - I.dim();
  rep.image_in_kernel = in_kernel && K.contains(I);
  rep.exact = rep.image_in_kernel && rep.rank_i == B.size() && rep.rank_i == rep.dim_ker_j &&
              rep.dim_A == rep.expected;
  return rep;
}

}  // namespace pbw
