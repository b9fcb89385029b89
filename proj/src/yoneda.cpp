#include "pbwforge/yoneda.hpp"

#include <functional>

namespace pbw {

std::vector<int> sign_table(unsigned N) {
  if (N < 2) throw std::invalid_argument("sign_table: need N >= 2");
  std::vector<int> s(N + 1, 0);
  s[N] = 1;
  s[N - 1] = (N - 1) % 2 ? -1 : 1;
  for (unsigned p = N; p >= 2; --p) s[p - 2] = -s[p];
  return s;
}

namespace {

std::vector<Poly> homogeneous_polys(const Subspace& S) {
  std::vector<Poly> out;
  for (const auto& b : S.basis()) {
    Poly p;
    for (const auto& [k, c] : b) p.emplace(Word{S.degree(), k}, c);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

YonedaAlgebra::YonedaAlgebra(const Subspace& R, unsigned degbound)
    : v_(R.v()),
      N_(R.degree()),
      bound_(degbound),
      field_(&R.field()),
      A_(R.v()),
      S_(perp_space(R)),
      gb_(GroebnerBasis::compute(v_, *field_, homogeneous_polys(S_), degbound)) {
  if (N_ < 2) throw std::invalid_argument("Yoneda algebra: need N >= 2");
  counts_ = gb_.count_normal(bound_);
}

std::optional<unsigned> YonedaAlgebra::b_degree(unsigned len) const {
  if (len % N_ == 0) return 2 * (len / N_);
  if (len % N_ == 1) return 2 * (len / N_) + 1;
  return std::nullopt;
}

std::vector<Word> YonedaAlgebra::normal_words(unsigned len) const {
  if (len > bound_) throw std::out_of_range("Yoneda algebra: length beyond the degree bound");
  return gb_.normal_words(len);
}

std::vector<std::pair<unsigned, std::vector<Word>>> YonedaAlgebra::odd_bases() const {
  std::vector<std::pair<unsigned, std::vector<Word>>> out;
  for (unsigned b = 1; piece_length(b) <= bound_; b += 2) out.emplace_back(piece_length(b), normal_words(piece_length(b)));
  return out;
}

Poly YonedaAlgebra::reduce(Poly x) const {
  if (!x.empty() && leading_word(x).len > bound_)
    throw std::out_of_range("Yoneda algebra: element beyond the degree bound " + std::to_string(bound_));
  return gb_.reduce(std::move(x));
}

Poly YonedaAlgebra::multiply(const Poly& a, const Poly& b) const { return reduce(tensor_mul(A_, a, b)); }

AInfStructure::AInfStructure(const NumericDeformation& data, const YonedaAlgebra& B, bool require_j1)
    : B_(&B), data_(data), sigma_(sign_table(data.N)) {
  if (data.v != B.v() || data.N != B.N()) throw std::invalid_argument("A∞ structure: data and algebra disagree on v or N");
  if (!data.augmented()) throw std::invalid_argument("A∞ structure: the correspondence needs α_N = 0");
  if (require_j1) {
    const auto j1 = check_J1(data, overlap_space(data.relations()));
    if (!j1.pass) throw std::invalid_argument("A∞ structure: [1,α_1] leaves R, so d is not defined on B_2");
  }
  const unsigned N = data.N;
  transposes_.resize(N);
  for (unsigned i = 1; i < N; ++i) {
    const auto a = data.alpha_map(i);
    for (const auto& [J, col] : a.cols)
      for (const auto& [I, c] : col) tensor_add(transposes_[i][I], Word{N, J}, c);
  }
}

Poly AInfStructure::block_d(const Word& block) const {
  const Alphabet& A = B_->alphabet();
  const unsigned N = data_.N;
  Poly out;
  auto column = [&](const Word& w) -> const Poly* {
    auto it = transposes_[1].find(w.idx);
    return it == transposes_[1].end() ? nullptr : &it->second;
  };
  if (const Poly* t = column(A.suffix(block, N - 1))) tensor_add(out, tensor_mul_word(A, A.prefix(block, 1), *t, Word{}));
  if (const Poly* t = column(A.prefix(block, N - 1)))
    tensor_add(out, tensor_mul_word(A, Word{}, *t, A.suffix(block, 1)), -FieldElement::one(B_->field()));
  return out;
}

Poly AInfStructure::d(const Poly& even) const {
  const Alphabet& A = B_->alphabet();
  const unsigned N = data_.N;
  Poly out;
  for (const auto& [w, c] : even) {
    if (w.len % N) throw std::invalid_argument("d: argument is not even");
    // Derivation: d(b_1⋯b_q) = Σ_j b_1⋯b_{j-1} d(b_j) b_{j+1}⋯b_q over N-letter blocks.
    for (unsigned j = 0; j < w.len / N; ++j) {
      const Poly piece = block_d(A.sub(w, j * N, N));
      tensor_add(out, tensor_mul_word(A, A.prefix(w, j * N), piece, A.suffix(w, w.len - (j + 1) * N)), c);
    }
  }
  return B_->reduce(std::move(out));
}

Poly AInfStructure::linear_lift(unsigned p, const Word& w) const {
  if (p == data_.N) return Poly{{w, FieldElement::one(B_->field())}};
  auto it = transposes_[data_.N - p].find(w.idx);
  if (it == transposes_[data_.N - p].end()) return {};
  return tensor_scaled(it->second, FieldElement(B_->field(), sigma_[p]));
}

Poly AInfStructure::linear_m(unsigned p, const Word& w) const { return B_->reduce(linear_lift(p, w)); }

Poly AInfStructure::m(const std::vector<Word>& args) const {
  const unsigned N = data_.N, p = static_cast<unsigned>(args.size());
  if (p == 0 || p > N) return {};
  {
    std::lock_guard<std::mutex> lock(memo_mu_);
    auto it = memo_.find(args);
    if (it != memo_.end()) return it->second;
  }
  const Alphabet& A = B_->alphabet();
  int last = -1;
  for (unsigned i = 0; i < p; ++i) {
    if (args[i].len % N != 1 % N) throw std::invalid_argument("m_p: argument is not odd");
    if (args[i].len > 1) last = static_cast<int>(i);
  }
  Poly out;
  if (last < 0) {
    Word w{};
    for (const auto& a : args) w = A.concat(w, a);
    out = linear_m(p, w);
  } else {
    const auto i = static_cast<std::size_t>(last);
    const Word u = A.prefix(args[i], args[i].len - 1), l = A.suffix(args[i], 1);
    const FieldElement one = FieldElement::one(B_->field());
    // m_p(…, a_{i-1}, u·l, …) = m_p(…, a_{i-1}·u, l, …) + (-1)^{p+1} m_{p+1}(…, a_{i-1}, d(u), l, …).
    std::vector<Word> shifted = args;
    shifted[i] = l;
    if (i == 0) {
      out = B_->multiply(Poly{{u, one}}, m(shifted));
    } else {
      shifted[i - 1] = A.concat(args[i - 1], u);
      out = m(shifted);
    }
    const FieldElement sign(B_->field(), (p + 1) % 2 ? -1 : 1);
    for (const auto& [w, c] : d(Poly{{u, one}})) {
      std::vector<Word> longer(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(i));
      longer.push_back(w);
      longer.push_back(l);
      longer.insert(longer.end(), args.begin() + static_cast<std::ptrdiff_t>(i) + 1, args.end());
      tensor_add(out, m(longer), c * sign);
    }
  }
  std::lock_guard<std::mutex> lock(memo_mu_);
  memo_.emplace(args, out);
  return out;
}

Poly AInfStructure::m(const std::vector<Poly>& args) const {
  Poly out;
  std::vector<Word> cur(args.size());
  std::function<void(std::size_t, const FieldElement&)> expand = [&](std::size_t k, const FieldElement& c) {
    if (k == args.size()) {
      tensor_add(out, m(cur), c);
      return;
    }
    for (const auto& [w, a] : args[k]) {
      cur[k] = w;
      expand(k + 1, c * a);
    }
  };
  expand(0, FieldElement::one(B_->field()));
  return out;
}

LinMap<FieldElement> AInfStructure::linear_matrix(unsigned p) const {
  const Alphabet& A = B_->alphabet();
  LinMap<FieldElement> out{data_.v, p, data_.N, {}};
  for (std::uint64_t w = 0; w < A.piece_size(p); ++w) out.set(w, homogeneous_part(linear_m(p, Word{p, w}), data_.N));
  return out;
}

std::string AInfStructure::show(const Poly& x) const {
  std::string s;
  for (const auto& [w, c] : tensor_to_pairs(B_->alphabet(), x)) s += (s.empty() ? "" : " + ") + ("(" + c + ")*" + w);
  return s.empty() ? "0" : s;
}

namespace {

// Calls visit on every tuple of p odd basis words whose summed block count
// Σ (len-1)/N is at most budget.
void for_each_odd_tuple(const YonedaAlgebra& B, unsigned p, unsigned budget, bool linear_only,
                        const std::function<void(const std::vector<Word>&)>& visit) {
  const auto bases = B.odd_bases();
  std::vector<Word> cur(p);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned k, unsigned left) {
    if (k == p) {
      visit(cur);
      return;
    }
    for (const auto& [len, words] : bases) {
      const unsigned blocks = (len - 1) / B.N();
      if (blocks > left || (linear_only && blocks > 0)) continue;
      for (const auto& w : words) {
        cur[k] = w;
        rec(k + 1, left - blocks);
      }
    }
  };
  rec(0, budget);
}

std::optional<unsigned> budget_for(unsigned bound, unsigned N, unsigned extra) {
  // Largest K with N(K+1) + extra <= bound.
  if (bound < N + extra) return std::nullopt;
  return (bound - extra) / N - 1;
}

constexpr std::size_t kFailureCap = 20;

}  // namespace

AxiomReport AInfStructure::check_axiom_1(bool linear_only) const {
  const YonedaAlgebra& B = *B_;
  const unsigned N = data_.N;
  const Alphabet& A = B.alphabet();
  AxiomReport rep;
  const auto budget = budget_for(B.degbound(), N, 1);
  if (!budget) return rep;
  for (unsigned p = 0; p < N; ++p) {
    auto& [checked, failed] = rep.per_p[p];
    for_each_odd_tuple(B, p + 1, *budget, linear_only, [&](const std::vector<Word>& a) {
      // d∘m_{p+1} = (-1)^p (1·m_p - m_p·1).
      const FieldElement one = FieldElement::one(B.field());
      bool linear = true;
      Word joined{};
      for (const auto& w : a) {
        linear = linear && w.len == 1;
        joined = A.concat(joined, w);
      }
      Poly residual = linear && p + 1 < N ? d(linear_lift(p + 1, joined)) : d(m(a));
      if (p > 0) {
        const std::vector<Word> tail(a.begin() + 1, a.end()), head(a.begin(), a.end() - 1);
        const FieldElement sign(B.field(), p % 2 ? -1 : 1);
        tensor_add(residual, B.multiply(Poly{{a.front(), one}}, m(tail)), -sign);
        tensor_add(residual, B.multiply(m(head), Poly{{a.back(), one}}), sign);
      }
      ++checked;
      ++rep.instances;
      if (!residual.empty()) {
        ++failed;
        if (rep.failures.size() < kFailureCap) {
          AxiomFailure f{p, 0, {}, show(residual)};
          for (const auto& w : a) f.args.push_back(A.to_string(w));
          rep.failures.push_back(std::move(f));
        }
        ++rep.failure_count;
      }
    });
  }
  return rep;
}

AxiomReport AInfStructure::check_axiom_2() const {
  const YonedaAlgebra& B = *B_;
  const unsigned N = data_.N;
  const Alphabet& A = B.alphabet();
  const FieldElement one = FieldElement::one(B.field());
  AxiomReport rep;
  const auto budget = budget_for(B.degbound(), N, 0);
  if (!budget) return rep;
  for (unsigned p = 1; p <= N; ++p) {
    auto& [checked, failed] = rep.per_p[p];
    for (unsigned q = 1; q <= *budget; ++q) {
      const auto evens = B.normal_words(N * q);
      for_each_odd_tuple(B, p, *budget - q, false, [&](const std::vector<Word>& a) {
        for (const Word& uw : evens) {
          const Poly u{{uw, one}};
          for (unsigned i = 1; i <= p + 1; ++i) {
            std::vector<Poly> args;
            for (const auto& w : a) args.push_back(Poly{{w, one}});
            Poly residual;
            // m_p(…, a_{i-1}, u·a_i, …), with u outside on the right when i = p+1.
            if (i <= p) {
              auto moved = args;
              moved[i - 1] = B.multiply(u, args[i - 1]);
              residual = m(moved);
            } else {
              residual = B.multiply(m(args), u);
            }
            // m_p(…, a_{i-1}·u, a_i, …), with u outside on the left when i = 1.
            if (i == 1) {
              tensor_add(residual, B.multiply(u, m(args)), -one);
            } else {
              auto moved = args;
              moved[i - 2] = B.multiply(args[i - 2], u);
              tensor_add(residual, m(moved), -one);
            }
            // (-1)^{p+1} m_{p+1}(…, a_{i-1}, d(u), a_i, …).
            auto longer = args;
            longer.insert(longer.begin() + static_cast<std::ptrdiff_t>(i - 1), d(u));
            tensor_add(residual, m(longer), FieldElement(B.field(), (p + 1) % 2 ? 1 : -1));
            ++checked;
            ++rep.instances;
            if (!residual.empty()) {
              ++failed;
              ++rep.failure_count;
              if (rep.failures.size() < kFailureCap) {
                AxiomFailure f{p, i, {"u=" + A.to_string(uw)}, show(residual)};
                for (const auto& w : a) f.args.push_back(A.to_string(w));
                rep.failures.push_back(std::move(f));
              }
            }
          }
        }
      });
    }
  }
  return rep;
}

DescentReport AInfStructure::check_descent() const {
  const YonedaAlgebra& B = *B_;
  const unsigned N = data_.N;
  const Alphabet& A = B.alphabet();
  const FieldElement one = FieldElement::one(B.field());
  DescentReport rep;
  auto relation = [&](const Word& w) {
    Poly x{{w, one}};
    tensor_add(x, B.reduce(Poly{{w, one}}), -one);
    return x;
  };
  auto non_normal = [&](unsigned len) {
    std::vector<Word> out;
    const auto normal = B.normal_words(len);
    for (std::uint64_t k = 0; k < A.piece_size(len); ++k)
      if (!std::binary_search(normal.begin(), normal.end(), Word{len, k})) out.push_back(Word{len, k});
    return out;
  };
  for (unsigned q = 1; N * q + 1 <= B.degbound(); ++q)
    for (const Word& w : non_normal(N * q))
      if (!d(relation(w)).empty()) {
        rep.pass = false;
        rep.offending.push_back("d(" + show(relation(w)) + ")");
      }
  const auto budget = budget_for(B.degbound(), N, 0);
  if (!budget) return rep;
  for (unsigned k = 1; k <= *budget; ++k) {
    const auto bad = non_normal(N * k + 1);
    for (unsigned p = 1; p <= N; ++p)
      for (unsigned pos = 0; pos < p; ++pos)
        for_each_odd_tuple(B, p - 1, *budget - k, false, [&](const std::vector<Word>& rest) {
          for (const Word& w : bad) {
            std::vector<Poly> args;
            for (const auto& r : rest) args.push_back(Poly{{r, one}});
            args.insert(args.begin() + pos, relation(w));
            if (!m(args).empty()) {
              rep.pass = false;
              if (rep.offending.size() < kFailureCap)
                rep.offending.push_back("m_" + std::to_string(p) + " at slot " + std::to_string(pos + 1) + " on " +
                                        show(relation(w)));
            }
          }
        });
  }
  return rep;
}

NumericDeformation AInfStructure::roundtrip_alpha() const {
  const unsigned N = data_.N;
  const Alphabet& A = B_->alphabet();
  std::vector<std::vector<SparseVec<FieldElement>>> alpha(N, std::vector<SparseVec<FieldElement>>(data_.gens.size()));
  for (unsigned p = 1; p < N; ++p) {
    const FieldElement sign(B_->field(), sigma_[p]);
    for (std::uint64_t phi = 0; phi < A.piece_size(p); ++phi) {
      const Poly val = linear_m(p, Word{p, phi});
      for (std::size_t j = 0; j < data_.gens.size(); ++j) {
        // <m_p(φ), r_j> does not depend on the representative since S ⊥ R.
        FieldElement pair = FieldElement::zero(B_->field());
        for (const auto& [w, c] : val) {
          auto it = data_.gens[j].find(w.idx);
          if (it != data_.gens[j].end()) pair += c * it->second;
        }
        sparse_add(alpha[N - p - 1][j], phi, pair * sign);
      }
    }
  }
  return make_deformation<FieldElement>(data_.v, N, *data_.field, data_.gens, std::move(alpha), data_.one);
}

}  // namespace pbw
