#pragma once

#include <cstdint>
#include <queue>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "pbwforge/subspace.hpp"

namespace pbw {

using Poly = Tensor<FieldElement>;

// Leading word under deglex: the last key of the map.
inline const Word& leading_word(const Poly& p) { return std::prev(p.end())->first; }

// Noncommutative Gröbner basis in k<x_1..x_v> for deglex, truncated so that
// only overlaps of total length <= degree_bound are resolved. Every element
// is monic and lies in the ideal, so normal-word counts bound the quotient
// dimensions from above; below the bound they are exact for homogeneous input.
class GroebnerBasis {
 public:
  GroebnerBasis(int v, const CyclotomicField& field, unsigned degree_bound);

  static GroebnerBasis compute(int v, const CyclotomicField& field, const std::vector<Poly>& gens, unsigned degree_bound);

  int v() const { return v_; }
  const CyclotomicField& field() const { return *field_; }
  unsigned degree_bound() const { return bound_; }
  std::vector<Poly> elements() const;
  std::size_t size() const { return lead_.size(); }

  // Full normal form: no term is divisible by a leading word.
  Poly reduce(Poly p) const;
  bool is_normal(const Word& w) const;
  // Normal words of each length 0..maxlen.
  std::vector<std::uint64_t> count_normal(unsigned maxlen) const;
  std::vector<Word> normal_words(unsigned len) const;
  std::vector<Word> leading_words() const;

 private:
  void add_element(Poly p);
  std::optional<std::pair<std::size_t, std::pair<unsigned, unsigned>>> find_divisor(const Word& w) const;
  void enqueue_pairs(std::size_t idx);

  int v_;
  const CyclotomicField* field_;
  unsigned bound_;
  Alphabet A_;
  std::vector<Poly> polys_;
  std::vector<bool> alive_;
  std::unordered_map<Word, std::size_t, WordHash> lead_;
  std::vector<unsigned> lead_lengths_;  // distinct lengths of live leading words
  struct Pair {
    unsigned len;
    std::size_t f, g;
    unsigned overlap;
  };
  struct Later {
    bool operator()(const Pair& a, const Pair& b) const {
      return std::tie(a.len, a.f, a.g, a.overlap) > std::tie(b.len, b.f, b.g, b.overlap);
    }
  };
  std::priority_queue<Pair, std::vector<Pair>, Later> pending_;
  std::vector<Poly> to_add_;
};

}  // namespace pbw
