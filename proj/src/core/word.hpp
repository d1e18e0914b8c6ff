#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace surfalg {

// A letter is an edge generator raised to +1 or -1.  Nonnegative ids refer to
// edges of the owning surface; ids <= kFirstSymbolId are reserved for formal
// symbols (inverses of non-monomial elements) introduced by mutation.
struct Letter {
  int32_t edge = 0;
  int8_t exp = 1;  // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter& a, const Letter& b) {
    if (auto c = a.edge <=> b.edge; c != 0) return c;
    return a.exp <=> b.exp;
  }
  Letter inverse() const { return Letter{edge, static_cast<int8_t>(-exp)}; }
};

constexpr int32_t kFirstSymbolId = -1000;
inline int32_t symbol_id(int index) { return kFirstSymbolId - index; }
inline bool is_symbol(int32_t edge_id) { return edge_id <= kFirstSymbolId; }
inline int symbol_index(int32_t edge_id) { return kFirstSymbolId - edge_id; }

// A word is a sequence of letters in composition order: the leftmost letter
// is the last factor applied, so w = {l2, l1} means "traverse l1 first".
// The empty word is the unit.
using Word = std::vector<Letter>;

inline Word inverse_word(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(it->inverse());
  return r;
}

// Concatenation in composition order: product(a, b) represents a*b, i.e. b
// is traversed first.
inline Word concat(const Word& a, const Word& b) {
  Word r;
  r.reserve(a.size() + b.size());
  r.insert(r.end(), a.begin(), a.end());
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

// Cancel adjacent letter/inverse pairs.
inline Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    if (!out.empty() && out.back().edge == l.edge && out.back().exp == -l.exp)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

inline bool is_freely_reduced(const Word& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i].edge == w[i + 1].edge && w[i].exp == -w[i + 1].exp) return false;
  return true;
}

// Strip conjugating pairs from the two ends of a freely reduced word.
inline Word cyclically_reduce(Word w) {
  while (w.size() >= 2 && w.front().edge == w.back().edge &&
         w.front().exp == -w.back().exp) {
    w.erase(w.begin());
    w.pop_back();
  }
  return w;
}

inline Word rotate_left(const Word& w, size_t k) {
  Word r;
  r.reserve(w.size());
  for (size_t i = 0; i < w.size(); ++i) r.push_back(w[(i + k) % w.size()]);
  return r;
}

// Lexicographically minimal rotation; words here are short, so the quadratic
// scan is fine.
inline Word minimal_rotation(const Word& w) {
  if (w.size() <= 1) return w;
  Word best = w;
  for (size_t k = 1; k < w.size(); ++k) {
    Word cand = rotate_left(w, k);
    if (cand < best) best = cand;
  }
  return best;
}

}  // namespace surfalg
