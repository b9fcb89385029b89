#include "pbwforge/subspace.hpp"

namespace pbw {

Subspace::Subspace(int v, unsigned degree, const CyclotomicField& field) : v_(v), degree_(degree), field_(&field) {
  (void)Alphabet(v).piece_size(degree);
}

Subspace Subspace::from_vectors(int v, unsigned degree, const CyclotomicField& field, const std::vector<NumVec>& vecs) {
  Subspace s(v, degree, field);
  for (const auto& x : vecs) s.add(x);
  return s;
}

Subspace Subspace::from_tensors(const Alphabet& A, const CyclotomicField& field,
                                const std::vector<Tensor<FieldElement>>& vecs) {
  std::optional<unsigned> deg;
  for (const auto& t : vecs)
    for (const auto& [w, c] : t) {
      if (deg && *deg != w.len) throw std::invalid_argument("subspace_from_vectors: vectors live in different pieces");
      deg = w.len;
    }
  Subspace s(A.size(), deg.value_or(0), field);
  for (const auto& t : vecs) {
    NumVec x;
    for (const auto& [w, c] : t) {
      if (c.field_ptr() == &field) x.emplace(w.idx, c);
      else if (c.is_rational()) x.emplace(w.idx, FieldElement(field, c.rational_part()));
      else throw std::invalid_argument("coefficient from another field");
    }
    s.add(x);
  }
  return s;
}

Subspace Subspace::full(int v, unsigned degree, const CyclotomicField& field) {
  Subspace s(v, degree, field);
  const std::uint64_t n = Alphabet(v).piece_size(degree);
  for (std::uint64_t w = 0; w < n; ++w) s.add(NumVec{{w, FieldElement::one(field)}});
  return s;
}

std::optional<std::uint64_t> Subspace::add(const NumVec& x) {
  const std::uint64_t n = Alphabet(v_).power(degree_);
  for (const auto& [k, c] : x)
    if (k >= n) throw std::out_of_range("vector index outside its graded piece");
  return ech_.insert(x);
}

void Subspace::finalize() const { ech_.make_reduced(); }

const std::map<std::uint64_t, NumVec>& Subspace::rows() const {
  finalize();
  return ech_.rows();
}

std::vector<NumVec> Subspace::basis() const {
  std::vector<NumVec> out;
  for (const auto& [p, r] : rows()) out.push_back(r);
  return out;
}

std::vector<std::uint64_t> Subspace::pivots() const {
  std::vector<std::uint64_t> out;
  for (const auto& [p, r] : rows()) out.push_back(p);
  return out;
}

bool Subspace::contains(const Subspace& other) const {
  if (other.v_ != v_ || other.degree_ != degree_) return false;
  for (const auto& [p, r] : other.rows())
    if (!contains(r)) return false;
  return true;
}

bool Subspace::operator==(const Subspace& other) const {
  return v_ == other.v_ && degree_ == other.degree_ && dim() == other.dim() && rows() == other.rows();
}

namespace {

void require_same_home(const Subspace& U, const Subspace& W, const char* op) {
  if (U.v() != W.v() || U.degree() != W.degree() || &U.field() != &W.field())
    throw std::invalid_argument(std::string(op) + ": subspaces live in different pieces");
}

}  // namespace

Tensor<FieldElement> tensor_from_pairs(const Alphabet& A, const CyclotomicField& field, const WordCoeffs& pairs) {
  Tensor<FieldElement> t;
  for (const auto& [w, c] : pairs) tensor_add(t, A.parse(w), parse_field_element(field, c));
  return t;
}

WordCoeffs tensor_to_pairs(const Alphabet& A, const Tensor<FieldElement>& t) {
  WordCoeffs out;
  for (const auto& [w, c] : t) out.emplace_back(A.to_string(w), c.to_string());
  return out;
}

NumVec numvec_from_pairs(const Alphabet& A, const CyclotomicField& field, const WordCoeffs& pairs) {
  std::optional<unsigned> len;
  NumVec x;
  for (const auto& [w, c] : pairs) {
    const Word word = A.parse(w);
    if (len && *len != word.len) throw std::invalid_argument("mixed word lengths in a homogeneous vector");
    len = word.len;
    sparse_add(x, word.idx, parse_field_element(field, c));
  }
  return x;
}

Subspace subspace_sum(const Subspace& U, const Subspace& W) {
  require_same_home(U, W, "subspace_sum");
  Subspace s = U;
  for (const auto& [p, r] : W.rows()) s.add(r);
  return s;
}

Subspace subspace_intersect(const Subspace& U, const Subspace& W) {
  require_same_home(U, W, "subspace_intersect");
  // Zassenhaus: echelonize rows (u|u) and (w|0) with the first copy more
  // significant; rows whose first copy vanishes span U ∩ W.
  const std::uint64_t n = Alphabet(U.v()).power(U.degree());
  Echelon<FieldElement, true> ech;
  auto doubled = [&](const NumVec& x, bool twice) {
    NumVec y;
    for (const auto& [k, c] : x) {
      y.emplace(k + n, c);
      if (twice) y.emplace(k, c);
    }
    return y;
  };
  for (const auto& [p, r] : U.rows()) ech.insert(doubled(r, true));
  for (const auto& [p, r] : W.rows()) ech.insert(doubled(r, false));
  Subspace out(U.v(), U.degree(), U.field());
  for (const auto& [p, r] : ech.rows())
    if (p < n) out.add(r);
  return out;
}

Subspace tensor_subspace(const Subspace& U, unsigned dl, unsigned dr) {
  Alphabet A(U.v());
  const unsigned d = U.degree() + dl + dr;
  (void)A.piece_size(d);
  const std::uint64_t nl = A.power(dl), nr = A.power(dr), mid = A.power(U.degree()) * nr;
  Subspace out(U.v(), d, U.field());
  // Blocks for distinct (left, right) words have disjoint supports, so every
  // insertion is already reduced against the others.
  for (std::uint64_t a = 0; a < nl; ++a)
    for (std::uint64_t b = 0; b < nr; ++b)
      for (const auto& [p, r] : U.rows()) {
        NumVec y;
        for (const auto& [k, c] : r) y.emplace(a * mid + k * nr + b, c);
        out.add(y);
      }
  return out;
}

Subspace perp_space(const Subspace& R) {
  const std::uint64_t n = Alphabet(R.v()).piece_size(R.degree());
  auto ker = kernel_basis(R.basis(), n, FieldElement::one(R.field()));
  return Subspace::from_vectors(R.v(), R.degree(), R.field(), ker);
}

}  // namespace pbw
