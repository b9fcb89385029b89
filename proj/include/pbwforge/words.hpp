#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace pbw {

// A word of length `len` over letters 0..v-1, encoded as its base-v numeral.
// Ordering is by length first, then lexicographic (letter 0 smallest).
struct Word {
  std::uint32_t len = 0;
  std::uint64_t idx = 0;
  friend auto operator<=>(const Word&, const Word&) = default;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    return std::hash<std::uint64_t>{}(w.idx * 0x9E3779B97F4A7C15ull + w.len);
  }
};

// Largest number of words in one graded piece that any routine materializes.
inline constexpr std::uint64_t kMaxPieceSize = 10'000'000;

class Alphabet {
 public:
  explicit Alphabet(int v, std::string letters = "");

  int size() const { return v_; }
  // v^d, throwing if the encoding would overflow.
  std::uint64_t power(unsigned d) const;
  // v^d, additionally enforcing the desk-scale piece limit.
  std::uint64_t piece_size(unsigned d) const;

  Word letter(int i) const { return Word{1, static_cast<std::uint64_t>(i)}; }
  Word concat(const Word& a, const Word& b) const;
  int letter_at(const Word& w, unsigned pos) const;
  Word prefix(const Word& w, unsigned k) const;
  Word suffix(const Word& w, unsigned k) const;
  Word sub(const Word& w, unsigned start, unsigned k) const;
  std::vector<int> letters_of(const Word& w) const;
  Word from_letters(const std::vector<int>& ls) const;

  const std::string& symbols() const { return symbols_; }
  std::string to_string(const Word& w) const;
  Word parse(const std::string& s) const;

  static std::string default_symbols(int v);

 private:
  int v_;
  std::string symbols_;
  std::vector<std::uint64_t> pow_;
};

// Filtered tensor: words of mixed length mapped to nonzero coefficients.
template <class T>
using Tensor = std::map<Word, T>;

template <class T>
void tensor_add(Tensor<T>& acc, const Word& w, const T& c) {
  if (c.is_zero()) return;
  auto it = acc.find(w);
  if (it == acc.end()) {
    acc.emplace(w, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

template <class T>
void tensor_add(Tensor<T>& acc, const Tensor<T>& x, const T& f) {
  for (const auto& [w, c] : x) tensor_add(acc, w, c * f);
}

template <class T>
void tensor_add(Tensor<T>& acc, const Tensor<T>& x) {
  for (const auto& [w, c] : x) tensor_add(acc, w, c);
}

template <class T>
Tensor<T> tensor_scaled(const Tensor<T>& x, const T& f) {
  Tensor<T> out;
  if (f.is_zero()) return out;
  for (const auto& [w, c] : x) out.emplace(w, c * f);
  return out;
}

template <class T>
Tensor<T> tensor_negated(const Tensor<T>& x) {
  Tensor<T> out;
  for (const auto& [w, c] : x) out.emplace(w, -c);
  return out;
}

// Concatenation product in the tensor algebra.
template <class T>
Tensor<T> tensor_mul(const Alphabet& A, const Tensor<T>& a, const Tensor<T>& b) {
  Tensor<T> out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) tensor_add(out, A.concat(wa, wb), ca * cb);
  return out;
}

template <class T>
Tensor<T> tensor_mul_word(const Alphabet& A, const Word& left, const Tensor<T>& x, const Word& right) {
  Tensor<T> out;
  for (const auto& [w, c] : x) out.emplace(A.concat(A.concat(left, w), right), c);
  return out;
}

// Component of word length d, keyed by word index.
template <class T>
std::map<std::uint64_t, T> homogeneous_part(const Tensor<T>& x, unsigned d) {
  std::map<std::uint64_t, T> out;
  for (auto it = x.lower_bound(Word{d, 0}); it != x.end() && it->first.len == d; ++it)
    out.emplace(it->first.idx, it->second);
  return out;
}

template <class T>
Tensor<T> from_homogeneous(const std::map<std::uint64_t, T>& v, unsigned d) {
  Tensor<T> out;
  for (const auto& [k, c] : v) out.emplace(Word{d, k}, c);
  return out;
}

}  // namespace pbw
