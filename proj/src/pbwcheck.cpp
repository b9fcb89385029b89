#include "pbwforge/pbwcheck.hpp"

#include <future>

#include "pbwforge/parallel.hpp"

namespace pbw {

RelationCoordinates::RelationCoordinates(const Subspace& R, const std::vector<NumVec>& gens)
    : R_(R), piv_(R.pivots()) {
  const std::size_t n = piv_.size();
  if (gens.size() != n) throw std::invalid_argument("relation coordinates: generators do not form a basis of R");
  const FieldElement zero = FieldElement::zero(R.field());
  std::vector<std::vector<FieldElement>> m(n, std::vector<FieldElement>(2 * n, zero));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      auto it = gens[i].find(piv_[k]);
      if (it != gens[i].end()) m[i][k] = it->second;
    }
    m[i][n + i] = FieldElement::one(R.field());
  }
  if (n == 0) return;
  auto sol = solve_dense(m, std::vector<FieldElement>(n, zero), 2 * n, zero);
  if (sol.pivots.size() != n || sol.pivots.back() != n - 1)
    throw std::invalid_argument("relation coordinates: generators are dependent");
  minv_.assign(n, std::vector<FieldElement>(n, zero));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) minv_[k][i] = sol.reduced[k][n + i];
}

Subspace overlap_space(const Subspace& R) {
  return subspace_intersect(tensor_subspace(R, 1, 0), tensor_subspace(R, 0, 1));
}

namespace {

std::vector<Poly> homogeneous_polys(const Subspace& R) {
  std::vector<Poly> out;
  for (const auto& b : R.basis()) {
    Poly p;
    for (const auto& [k, c] : b) p.emplace(Word{R.degree(), k}, c);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> graded_dims_A(const Subspace& R, unsigned maxdeg) {
  // Homogeneous input: every overlap up to maxdeg is resolved, so the counts
  // below the bound are exact.
  return GroebnerBasis::compute(R.v(), R.field(), homogeneous_polys(R), maxdeg).count_normal(maxdeg);
}

std::vector<std::uint64_t> graded_dims_A_literal(const Subspace& R, unsigned maxdeg) {
  Alphabet A(R.v());
  std::vector<std::uint64_t> out;
  for (unsigned d = 0; d <= maxdeg; ++d) {
    Subspace I(R.v(), d, R.field());
    for (unsigned i = 0; i + R.degree() <= d; ++i) I = subspace_sum(I, tensor_subspace(R, i, d - R.degree() - i));
    out.push_back(A.power(d) - I.dim());
  }
  return out;
}

std::vector<Poly> deformation_polys(const NumericDeformation& data) {
  std::vector<Poly> out;
  for (std::size_t j = 0; j < data.gens.size(); ++j) {
    Poly p;
    for (const auto& [k, c] : data.gens[j]) p.emplace(Word{data.N, k}, c);
    for (unsigned i = 1; i <= data.N; ++i)
      for (const auto& [k, c] : data.alpha[i - 1][j]) tensor_add(p, Word{data.N - i, k}, c);
    out.push_back(std::move(p));
  }
  return out;
}

FilteredDims filtered_dims_U(const NumericDeformation& data, unsigned maxdeg, unsigned margin) {
  const auto polys = deformation_polys(data);
  FilteredDims out;
  out.bound = maxdeg + margin;
  auto cumulative = [&](unsigned bound) {
    const auto counts = GroebnerBasis::compute(data.v, *data.field, polys, bound).count_normal(maxdeg);
    std::vector<std::uint64_t> acc;
    std::uint64_t s = 0;
    for (auto c : counts) acc.push_back(s += c);
    return acc;
  };
  if (worker_threads() > 1) {
    auto later = std::async(std::launch::async, cumulative, out.bound + 1);
    out.dims = cumulative(out.bound);
    out.dims_recheck = later.get();
  } else {
    out.dims = cumulative(out.bound);
    out.dims_recheck = cumulative(out.bound + 1);
  }
  out.stable = out.dims == out.dims_recheck;
  return out;
}

PbwReport pbw_verify(const NumericDeformation& data, unsigned maxdeg, unsigned margin) {
  PbwReport rep;
  const Subspace R = data.relations();
  const Subspace O = overlap_space(R);
  rep.j1 = check_J1(data, O);
  rep.j2 = check_J2(data, O, rep.j1);
  rep.dims_A = graded_dims_A(R, maxdeg);
  std::uint64_t s = 0;
  for (auto d : rep.dims_A) rep.dims_A_cumulative.push_back(s += d);
  rep.dims_U = filtered_dims_U(data, maxdeg, margin);
  // Both truncations give upper bounds; the one from D + 1 is the sharper.
  for (unsigned d = 0; d <= maxdeg; ++d)
    if (rep.dims_U.dims_recheck[d] != rep.dims_A_cumulative[d]) {
      rep.first_failing_degree = d;
      break;
    }
  return rep;
}

bool koszul_overlap_lemma_check(const Subspace& R, unsigned m) {
  if (m < 1) throw std::invalid_argument("koszul_overlap_lemma_check: need m >= 1");
  const Subspace S = perp_space(R);
  const Subspace lhs = tensor_subspace(S, m - 1, 1);
  Subspace meet = tensor_subspace(S, m - 1, 1);
  for (unsigned i = 2; i <= m; ++i) meet = subspace_intersect(meet, tensor_subspace(S, m - i, i));
  return subspace_sum(tensor_subspace(S, m, 0), meet).contains(lhs);
}

}  // namespace pbw
