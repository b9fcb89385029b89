#include "pbwforge/words.hpp"

#include <limits>
#include <stdexcept>

namespace pbw {

std::string Alphabet::default_symbols(int v) {
  if (v <= 3) return std::string("xyz").substr(0, static_cast<std::size_t>(v));
  if (v <= 26) return std::string("abcdefghijklmnopqrstuvwxyz").substr(0, static_cast<std::size_t>(v));
  return "";
}

Alphabet::Alphabet(int v, std::string letters) : v_(v), symbols_(std::move(letters)) {
  if (v < 1) throw std::invalid_argument("alphabet size must be positive");
  if (symbols_.empty()) symbols_ = default_symbols(v);
  if (!symbols_.empty() && static_cast<int>(symbols_.size()) != v)
    throw std::invalid_argument("alphabet must have exactly v symbols");
  pow_.push_back(1);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / 2;
  while (v > 1 && pow_.back() <= limit / static_cast<std::uint64_t>(v))
    pow_.push_back(pow_.back() * static_cast<std::uint64_t>(v));
  if (v == 1) pow_.assign(64, 1);
}

std::uint64_t Alphabet::power(unsigned d) const {
  if (d >= pow_.size()) throw std::overflow_error("word too long for the index encoding");
  return pow_[d];
}

std::uint64_t Alphabet::piece_size(unsigned d) const {
  std::uint64_t n = d < pow_.size() ? pow_[d] : kMaxPieceSize + 1;
  if (n > kMaxPieceSize)
    throw std::length_error("graded piece of degree " + std::to_string(d) + " exceeds the size guard");
  return n;
}

Word Alphabet::concat(const Word& a, const Word& b) const {
  return Word{a.len + b.len, a.idx * power(b.len) + b.idx};
}

int Alphabet::letter_at(const Word& w, unsigned pos) const {
  return static_cast<int>((w.idx / power(w.len - 1 - pos)) % static_cast<std::uint64_t>(v_));
}

Word Alphabet::prefix(const Word& w, unsigned k) const { return Word{k, w.idx / power(w.len - k)}; }

Word Alphabet::suffix(const Word& w, unsigned k) const { return Word{k, w.idx % power(k)}; }

Word Alphabet::sub(const Word& w, unsigned start, unsigned k) const {
  return Word{k, (w.idx / power(w.len - start - k)) % power(k)};
}

std::vector<int> Alphabet::letters_of(const Word& w) const {
  std::vector<int> out(w.len);
  std::uint64_t x = w.idx;
  for (unsigned i = w.len; i-- > 0;) {
    out[i] = static_cast<int>(x % static_cast<std::uint64_t>(v_));
    x /= static_cast<std::uint64_t>(v_);
  }
  return out;
}

Word Alphabet::from_letters(const std::vector<int>& ls) const {
  Word w{static_cast<std::uint32_t>(ls.size()), 0};
  (void)power(w.len);
  for (int l : ls) w.idx = w.idx * static_cast<std::uint64_t>(v_) + static_cast<std::uint64_t>(l);
  return w;
}

std::string Alphabet::to_string(const Word& w) const {
  std::string s;
  for (int l : letters_of(w)) {
    if (!symbols_.empty()) s += symbols_[static_cast<std::size_t>(l)];
    else s += "<" + std::to_string(l) + ">";
  }
  return s;
}

Word Alphabet::parse(const std::string& s) const {
  std::vector<int> ls;
  for (char c : s) {
    auto pos = symbols_.find(c);
    if (pos == std::string::npos) throw std::invalid_argument("letter '" + std::string(1, c) + "' not in alphabet");
    ls.push_back(static_cast<int>(pos));
  }
  return from_letters(ls);
}

}  // namespace pbw
