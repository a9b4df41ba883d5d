#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "updown/word.hpp"

namespace updown {

// m(x) = max_i { -(alpha_i(x) + w_i(x)) }, floored at 0.  With m >= m(x)
// every exponent beta^m_i(x) = alpha_i(x) + w_i(x) + m is nonnegative.
inline int m_of(const Word& x) {
  const Fingerprint fp = fingerprint(x);
  int m = 0;
  for (const auto& [i, v] : fp.weight) m = std::max(m, -(at(fp.alpha, i) + v));
  for (const auto& [i, v] : fp.alpha) m = std::max(m, -(v + at(fp.weight, i)));
  return m;
}

// Largest letter index in x; 1 for the empty word so that the canonical word
// of the empty word is well-formed for any m.
inline int n_of(const Word& x) { return x.empty() ? 1 : max_index(x); }

struct NormalFormParams {
  int m = 0;
  int n = 1;
  std::map<int, int> beta;  // beta^m_i for i = 1..n
};

inline NormalFormParams normal_form_params(const Word& x, int m, int n) {
  if (m < m_of(x))
    throw std::invalid_argument("canonical_word: m < m(x) (" + std::to_string(m) +
                                " < " + std::to_string(m_of(x)) + ")");
  if (n < n_of(x))
    throw std::invalid_argument("canonical_word: n < n(x) (" + std::to_string(n) +
                                " < " + std::to_string(n_of(x)) + ")");
  const Fingerprint fp = fingerprint(x);
  NormalFormParams p{m, n, {}};
  for (int i = 1; i <= n; ++i) p.beta[i] = at(fp.alpha, i) + at(fp.weight, i) + m;
  return p;
}

// Builds the canonical word from a fingerprint: the barred ascending prefix
// 1-bar^m ... n-bar^m followed by blocks k^{beta_k} k-bar^{alpha_k} for
// k = n down to 1.  Zero-exponent blocks are omitted.
inline Word canonical_from_fingerprint(const Fingerprint& fp, int m, int n) {
  Word out;
  for (int k = 1; k <= n; ++k)
    for (int r = 0; r < m; ++r) out.push_back(down(k));
  for (int k = n; k >= 1; --k) {
    const int beta = at(fp.alpha, k) + at(fp.weight, k) + m;
    for (int r = 0; r < beta; ++r) out.push_back(up(k));
    for (int r = 0; r < at(fp.alpha, k); ++r) out.push_back(down(k));
  }
  return out;
}

// The canonical representative [x]_{m,n}.  Depends on x only through its
// fingerprint, so equivalent words share a canonical word; idempotent for
// shared valid parameters.  Requires m >= m_of(x), n >= n_of(x).
inline Word canonical_word(const Word& x, int m, int n) {
  normal_form_params(x, m, n);  // validates
  return canonical_from_fingerprint(fingerprint(x), m, n);
}

struct NormalizationParams {
  int m = 0;
  int n = 1;
};

// Parameters large enough for the letter-by-letter normalization to go
// through: m must dominate m(prefix) for every prefix of x (each intermediate
// canonical word must have nonnegative exponents), and n must cover every
// letter.
inline NormalizationParams normalization_params(const Word& x) {
  NormalizationParams p;
  Word prefix;
  prefix.reserve(x.size());
  p.m = m_of(prefix);
  for (const Letter& a : x) {
    prefix.push_back(a);
    p.m = std::max(p.m, m_of(prefix));
  }
  p.n = n_of(x);
  return p;
}

}  // namespace updown
