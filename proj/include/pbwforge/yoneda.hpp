#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "pbwforge/groebner.hpp"
#include "pbwforge/pbwcheck.hpp"

namespace pbw {

// σ(0..N) with σ(N) = 1, σ(N-1) = (-1)^{N-1}, σ(p-2) = -σ(p).
std::vector<int> sign_table(unsigned N);

// A^! = T(W)/(S) with S = R^⊥, truncated at W-length degbound, and its
// regrading B_{2p} = A^!_{Np}, B_{2p+1} = A^!_{Np+1}. W-words share indices
// with V-words through the pairing <w_I, x_J> = δ_IJ. Elements are kept in
// normal form, supported on the words outside the leading-word ideal.
class YonedaAlgebra {
 public:
  YonedaAlgebra(const Subspace& R, unsigned degbound);

  int v() const { return v_; }
  unsigned N() const { return N_; }
  unsigned degbound() const { return bound_; }
  const CyclotomicField& field() const { return *field_; }
  const Subspace& S() const { return S_; }
  const Alphabet& alphabet() const { return A_; }

  // W-length of B_b; B-degree of a W-length, if it is one.
  unsigned piece_length(unsigned b) const { return N_ * (b / 2) + b % 2; }
  std::optional<unsigned> b_degree(unsigned len) const;

  std::uint64_t dual_dim(unsigned len) const { return counts_.at(len); }
  std::uint64_t dim_B(unsigned b) const { return dual_dim(piece_length(b)); }
  std::vector<Word> normal_words(unsigned len) const;
  // Odd B-pieces with W-length <= degbound, as (length, basis words).
  std::vector<std::pair<unsigned, std::vector<Word>>> odd_bases() const;

  Poly reduce(Poly x) const;
  Poly multiply(const Poly& a, const Poly& b) const;

 private:
  int v_;
  unsigned N_;
  unsigned bound_;
  const CyclotomicField* field_;
  Alphabet A_;
  Subspace S_;
  GroebnerBasis gb_;
  std::vector<std::uint64_t> counts_;
};

struct AxiomFailure {
  unsigned p = 0;
  unsigned position = 0;             // insertion index i for axiom 2, 0 otherwise
  std::vector<std::string> args;     // W-words, and "u=" for the even element
  std::string residual;
};

struct AxiomReport {
  std::size_t instances = 0;
  std::vector<AxiomFailure> failures;  // capped list of offending instances
  std::size_t failure_count = 0;
  std::map<unsigned, std::pair<std::size_t, std::size_t>> per_p;  // p -> (checked, failed)
  bool pass() const { return failure_count == 0; }
  bool pass_at(unsigned p) const {
    auto it = per_p.find(p);
    return it == per_p.end() || it->second.second == 0;
  }
};

struct DescentReport {
  bool pass = true;
  std::vector<std::string> offending;  // relations of J on which d or m_p fails to vanish
};

// The deformed A∞-structure of an augmented PBW-deformation: d on B^ev is the
// derivation seeded on W^N by the dual of [1,α_1], and m_p on linear
// arguments is σ(p)·(α_{N-p})^*, with m_N the ordinary product. On other odd
// arguments m_p is defined by the second axiom applied at the last
// non-linear argument u·l, l its final letter.
class AInfStructure {
 public:
  // With require_j1, a failing J1 is an error because d does not descend.
  AInfStructure(const NumericDeformation& data, const YonedaAlgebra& B, bool require_j1 = true);

  const YonedaAlgebra& algebra() const { return *B_; }
  const std::vector<int>& sigma() const { return sigma_; }

  // d on a homogeneous even element of T(W) (any representative).
  Poly d(const Poly& even) const;
  // m_p on odd W-words / odd elements (multilinear), p = args.size().
  Poly m(const std::vector<Word>& args) const;
  Poly m(const std::vector<Poly>& args) const;
  // m_p on (B_1)^{⊗p} as a map W^{⊗p} → W^{⊗N} (normal-form columns).
  LinMap<FieldElement> linear_matrix(unsigned p) const;

  // On linear arguments with p + 1 < N, d is applied to the canonical lift
  // σ(p+1)·(α_{N-p-1})^T(a) in W^N; for PBW data d descends and the lift is
  // immaterial, otherwise this isolates the J2 content of each instance.
  AxiomReport check_axiom_1(bool linear_only = false) const;
  AxiomReport check_axiom_2() const;
  DescentReport check_descent() const;

  // α_{N-p} = σ(p)·(m_p)^* restricted to R, as images of the given relations.
  NumericDeformation roundtrip_alpha() const;

 private:
  Poly linear_m(unsigned p, const Word& w) const;
  Poly linear_lift(unsigned p, const Word& w) const;
  Poly block_d(const Word& block) const;
  std::string show(const Poly& x) const;

  const YonedaAlgebra* B_;
  NumericDeformation data_;
  std::vector<int> sigma_;
  // transposes[i]: (α_i)^T as W-word of length N-i ↦ element of W^N.
  std::vector<std::map<std::uint64_t, Poly>> transposes_;
  mutable std::map<std::vector<Word>, Poly> memo_;
  mutable std::mutex memo_mu_;
};

}  // namespace pbw
