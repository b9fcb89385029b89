#include "pbwforge/groebner.hpp"

#include <algorithm>
#include <functional>

namespace pbw {

GroebnerBasis::GroebnerBasis(int v, const CyclotomicField& field, unsigned degree_bound)
    : v_(v), field_(&field), bound_(degree_bound), A_(v) {}

GroebnerBasis GroebnerBasis::compute(int v, const CyclotomicField& field, const std::vector<Poly>& gens,
                                     unsigned degree_bound) {
  GroebnerBasis gb(v, field, degree_bound);
  for (const auto& g : gens)
    if (!g.empty()) gb.to_add_.push_back(g);
  while (true) {
    while (!gb.to_add_.empty()) {
      Poly p = std::move(gb.to_add_.back());
      gb.to_add_.pop_back();
      p = gb.reduce(std::move(p));
      if (!p.empty()) gb.add_element(std::move(p));
    }
    if (gb.pending_.empty()) break;
    const Pair pr = gb.pending_.top();
    gb.pending_.pop();
    if (!gb.alive_[pr.f] || !gb.alive_[pr.g]) continue;
    // S(f, g) = f·u - t·g where lm(f) = t·m, lm(g) = m·u and |m| = overlap.
    const Poly& f = gb.polys_[pr.f];
    const Poly& g = gb.polys_[pr.g];
    const Word lf = leading_word(f), lg = leading_word(g);
    const Word u = gb.A_.suffix(lg, lg.len - pr.overlap);
    const Word t = gb.A_.prefix(lf, lf.len - pr.overlap);
    Poly s = tensor_mul_word(gb.A_, Word{}, f, u);
    for (const auto& [w, c] : g) tensor_add(s, gb.A_.concat(t, w), -c);
    s = gb.reduce(std::move(s));
    if (!s.empty()) gb.add_element(std::move(s));
  }
  return gb;
}

std::vector<Poly> GroebnerBasis::elements() const {
  std::vector<std::pair<Word, std::size_t>> order;
  for (const auto& [w, i] : lead_) order.emplace_back(w, i);
  std::sort(order.begin(), order.end());
  std::vector<Poly> out;
  for (const auto& [w, i] : order) out.push_back(polys_[i]);
  return out;
}

std::vector<Word> GroebnerBasis::leading_words() const {
  std::vector<Word> out;
  for (const auto& [w, i] : lead_) out.push_back(w);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::pair<std::size_t, std::pair<unsigned, unsigned>>> GroebnerBasis::find_divisor(
    const Word& w) const {
  for (unsigned len : lead_lengths_) {
    if (len > w.len) break;
    for (unsigned start = 0; start + len <= w.len; ++start) {
      auto it = lead_.find(A_.sub(w, start, len));
      if (it != lead_.end()) return std::make_pair(it->second, std::make_pair(start, len));
    }
  }
  return std::nullopt;
}

Poly GroebnerBasis::reduce(Poly p) const {
  if (lead_.empty()) return p;
  // Walk terms from the largest word down; a reduction step only creates
  // smaller words, so the walk never revisits a word.
  std::optional<Word> bound;
  while (true) {
    auto it = bound ? p.lower_bound(*bound) : p.end();
    if (it == p.begin()) break;
    --it;
    const Word w = it->first;
    bound = w;
    auto div = find_divisor(w);
    if (!div) continue;
    const FieldElement c = it->second;
    const auto& g = polys_[div->first];
    const auto [start, len] = div->second;
    const Word left = A_.prefix(w, start), right = A_.suffix(w, w.len - start - len);
    for (const auto& [gw, gc] : g) tensor_add(p, A_.concat(A_.concat(left, gw), right), -(c * gc));
  }
  return p;
}

bool GroebnerBasis::is_normal(const Word& w) const { return !find_divisor(w).has_value(); }

void GroebnerBasis::add_element(Poly p) {
  const FieldElement inv = std::prev(p.end())->second.inverse();
  for (auto& [w, c] : p) c *= inv;
  const Word lw = leading_word(p);
  // Elements whose leading word contains lw are no longer needed as leaders.
  std::vector<std::size_t> dead;
  for (const auto& [w, i] : lead_) {
    if (w.len < lw.len) continue;
    for (unsigned s = 0; s + lw.len <= w.len; ++s)
      if (A_.sub(w, s, lw.len) == lw) {
        dead.push_back(i);
        break;
      }
  }
  for (std::size_t i : dead) {
    alive_[i] = false;
    lead_.erase(leading_word(polys_[i]));
    to_add_.push_back(polys_[i]);
  }
  polys_.push_back(std::move(p));
  alive_.push_back(true);
  lead_.emplace(lw, polys_.size() - 1);
  lead_lengths_.clear();
  for (const auto& [w, i] : lead_) lead_lengths_.push_back(w.len);
  std::sort(lead_lengths_.begin(), lead_lengths_.end());
  lead_lengths_.erase(std::unique(lead_lengths_.begin(), lead_lengths_.end()), lead_lengths_.end());
  enqueue_pairs(polys_.size() - 1);
}

void GroebnerBasis::enqueue_pairs(std::size_t idx) {
  const Word a = leading_word(polys_[idx]);
  auto try_pair = [&](std::size_t f, const Word& lf, std::size_t g, const Word& lg) {
    const unsigned maxk = std::min(lf.len, lg.len);
    for (unsigned k = 1; k < maxk; ++k) {
      const unsigned len = lf.len + lg.len - k;
      if (len > bound_) continue;
      if (A_.suffix(lf, k) == A_.prefix(lg, k)) pending_.push(Pair{len, f, g, k});
    }
  };
  for (const auto& [b, j] : lead_) {
    try_pair(idx, a, j, b);
    if (j != idx) try_pair(j, b, idx, a);
  }
}

std::vector<std::uint64_t> GroebnerBasis::count_normal(unsigned maxlen) const {
  std::vector<std::uint64_t> counts(maxlen + 1, 0);
  if (lead_.count(Word{0, 0})) return counts;
  std::function<void(const Word&)> walk = [&](const Word& w) {
    ++counts[w.len];
    if (w.len == maxlen) return;
    for (int x = 0; x < v_; ++x) {
      const Word nw = A_.concat(w, A_.letter(x));
      bool ok = true;
      for (unsigned len : lead_lengths_) {
        if (len > nw.len) break;
        if (lead_.count(A_.suffix(nw, len))) {
          ok = false;
          break;
        }
      }
      if (ok) walk(nw);
    }
  };
  walk(Word{0, 0});
  return counts;
}

std::vector<Word> GroebnerBasis::normal_words(unsigned len) const {
  std::vector<Word> out;
  if (lead_.count(Word{0, 0})) return out;
  std::function<void(const Word&)> walk = [&](const Word& w) {
    if (w.len == len) {
      out.push_back(w);
      return;
    }
    for (int x = 0; x < v_; ++x) {
      const Word nw = A_.concat(w, A_.letter(x));
      bool ok = true;
      for (unsigned l : lead_lengths_) {
        if (l > nw.len) break;
        if (lead_.count(A_.suffix(nw, l))) {
          ok = false;
          break;
        }
      }
      if (ok) walk(nw);
    }
  };
  walk(Word{0, 0});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pbw
