#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "updown/partition.hpp"

namespace updown {

enum class Kind : std::uint8_t { Up, Down };

// A letter of the alphabet: Up(i) is the operator that adds a box in
// column i, Down(i) removes one.  Indices are 1-based.
struct Letter {
  Kind kind;
  int index;

  bool is_up() const { return kind == Kind::Up; }
  bool is_down() const { return kind == Kind::Down; }

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

inline Letter up(int i) { return Letter{Kind::Up, i}; }
inline Letter down(int i) { return Letter{Kind::Down, i}; }

// A word x = x_1 ... x_l is a monomial in the free algebra.  The operator it
// denotes is the composition u_{x_1} u_{x_2} ... u_{x_l}, so the RIGHTMOST
// letter acts first on a partition.
using Word = std::vector<Letter>;

// Sparse integer vector indexed from 1; absent entries are 0.
using SparseVec = std::map<int, int>;

inline int at(const SparseVec& v, int i) {
  auto it = v.find(i);
  return it == v.end() ? 0 : it->second;
}

// Text format: whitespace-separated tokens "u<k>" / "d<k>", k >= 1.
// Token order is x_1 ... x_l, so the rightmost token acts first.
// The empty string is the empty word.
inline Word parse_word(const std::string& text) {
  Word w;
  std::istringstream is(text);
  std::string tok;
  std::size_t pos = 0;
  while (is >> tok) {
    ++pos;
    if (tok.size() < 2 || (tok[0] != 'u' && tok[0] != 'd') ||
        tok.find_first_not_of("0123456789", 1) != std::string::npos)
      throw ParseError("word: bad token '" + tok + "' at position " +
                           std::to_string(pos),
                       pos);
    int k = 0;
    try {
      k = std::stoi(tok.substr(1));
    } catch (const std::out_of_range&) {
      throw ParseError("word: index out of range in '" + tok + "' at position " +
                           std::to_string(pos),
                       pos);
    }
    if (k < 1)
      throw ParseError("word: index must be >= 1 in '" + tok +
                           "' at position " + std::to_string(pos),
                       pos);
    w.push_back(tok[0] == 'u' ? up(k) : down(k));
  }
  return w;
}

inline std::string to_string(const Word& w) {
  std::ostringstream os;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) os << ' ';
    os << (w[k].is_up() ? 'u' : 'd') << w[k].index;
  }
  return os.str();
}

// Largest letter index occurring in w; 0 for the empty word.
inline int max_index(const Word& w) {
  int n = 0;
  for (const Letter& a : w) n = std::max(n, a.index);
  return n;
}

// w_i(x) = (#occurrences of i) - (#occurrences of i-bar).  Zeros dropped.
inline SparseVec weight(const Word& x) {
  SparseVec w;
  for (const Letter& a : x) w[a.index] += a.is_up() ? 1 : -1;
  std::erase_if(w, [](const auto& kv) { return kv.second == 0; });
  return w;
}

// alpha_i(x) = max over suffix subwords x~ (including the empty one) of
// w_{i+1}(x~) - w_i(x~).  Always >= 0; only positive entries are stored.
//
// Single right-to-left pass: appending a letter to the front of the current
// suffix only changes the differences at i = index-1 and i = index.
inline SparseVec alpha(const Word& x) {
  SparseVec acc;   // running maxima
  SparseVec wt;    // weight of the current suffix
  for (std::size_t k = x.size(); k-- > 0;) {
    const Letter& a = x[k];
    wt[a.index] += a.is_up() ? 1 : -1;
    for (int i : {a.index - 1, a.index}) {
      if (i < 1) continue;
      const int diff = at(wt, i + 1) - at(wt, i);
      auto it = acc.find(i);
      if (it == acc.end())
        acc.emplace(i, diff);
      else if (diff > it->second)
        it->second = diff;
    }
  }
  std::erase_if(acc, [](const auto& kv) { return kv.second <= 0; });
  return acc;
}

// The pair (w, alpha): a complete invariant of the word's action on
// Young's lattice.  Two words act identically iff their fingerprints agree.
struct Fingerprint {
  SparseVec weight;
  SparseVec alpha;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
  friend auto operator<=>(const Fingerprint&, const Fingerprint&) = default;
};

inline Fingerprint fingerprint(const Word& x) { return {weight(x), alpha(x)}; }

// "w: {i: v, ...}; alpha: {i: v, ...}", indices ascending, zeros omitted.
inline std::string to_string(const Fingerprint& fp) {
  auto fmt = [](const SparseVec& v) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& [i, val] : v) {
      if (!first) os << ", ";
      os << i << ": " << val;
      first = false;
    }
    os << '}';
    return os.str();
  };
  return "w: " + fmt(fp.weight) + "; alpha: " + fmt(fp.alpha);
}

inline std::optional<Partition> apply_letter(const Partition& p, const Letter& a) {
  return a.is_up() ? add_box_column(p, a.index) : remove_box_column(p, a.index);
}

// Applies x_l first, then x_{l-1}, ..., ending with x_1.  The annihilated
// value propagates.
inline std::optional<Partition> apply_word(const Partition& p, const Word& x) {
  std::optional<Partition> cur = p;
  for (std::size_t k = x.size(); k-- > 0;) {
    cur = apply_letter(*cur, x[k]);
    if (!cur) return std::nullopt;
  }
  return cur;
}

// Closed-form action: the result is (lambda'_i + w_i(x))_i conjugated back,
// provided lambda'_i - lambda'_{i+1} >= alpha_i(x) for all i; annihilated
// otherwise.  The guard only needs checking for i <= max_index(x) + 1 since
// alpha vanishes beyond.  Agrees with apply_word on every input.
inline std::optional<Partition> apply_word_closed(const Partition& p, const Word& x) {
  const SparseVec w = weight(x);
  const SparseVec al = alpha(x);
  const int n = max_index(x);
  for (int i = 1; i <= n + 1; ++i)
    if (p.column(i) - p.column(i + 1) < at(al, i)) return std::nullopt;
  const int width = std::max(p.row(1), n);
  std::vector<int> cols;
  cols.reserve(static_cast<std::size_t>(width));
  for (int i = 1; i <= width; ++i) cols.push_back(p.column(i) + at(w, i));
  return conjugate(Partition(std::move(cols)));
}

// Equivalence through the complete invariant: equality of fingerprints.
inline bool equivalent(const Word& x, const Word& y) {
  return fingerprint(x) == fingerprint(y);
}

// Parameters of the complete finite test set for a pair of words: columns up
// to one past the largest letter, differences up to the longer length.
struct OracleParams {
  int n;
  int c;
};

inline OracleParams oracle_params(const Word& x, const Word& y) {
  return {std::max(max_index(x), max_index(y)) + 1,
          static_cast<int>(std::max(x.size(), y.size()))};
}

// Brute-force decision procedure: the two words act identically on Young's
// lattice iff they agree on every partition in the finite profile set.
// Complete because the action depends only on the first n+1 column
// differences and every alpha_i is bounded by the word length.
inline bool semantically_equal(const Word& x, const Word& y) {
  const OracleParams op = oracle_params(x, y);
  for (const Partition& p : enumerate_profiles(op.n, op.c))
    if (apply_word(p, x) != apply_word(p, y)) return false;
  return true;
}

}  // namespace updown
