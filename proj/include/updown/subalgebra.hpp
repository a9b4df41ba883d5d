#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "updown/rewrite.hpp"
#include "updown/word.hpp"

namespace updown {

// ---------------------------------------------------------------------------
// The subalgebra generated by u_t, d_t for a fixed t > 1.
// ---------------------------------------------------------------------------

namespace detail {

inline void require_t_word(const Word& x, int t) {
  if (t < 2)
    throw std::invalid_argument("t-subalgebra: t must be >= 2 (use the t = 1 form)");
  for (const Letter& a : x)
    if (a.index != t)
      throw std::domain_error("t-subalgebra: word contains letter of index " +
                              std::to_string(a.index) + ", expected only " +
                              std::to_string(t));
}

}  // namespace detail

// Lattice-path rendering of a {t, t-bar}-word: starting at the origin and
// reading the word right to left, u_t steps (-1,+1) and d_t steps (-1,-1).
struct StepGraph {
  std::vector<std::pair<int, int>> points;  // ell+1 points, first is (0,0)
};

inline StepGraph step_graph(const Word& x, int t) {
  detail::require_t_word(x, t);
  StepGraph g;
  g.points.reserve(x.size() + 1);
  int px = 0, py = 0;
  g.points.emplace_back(px, py);
  for (std::size_t k = x.size(); k-- > 0;) {
    px -= 1;
    py += x[k].is_up() ? 1 : -1;
    g.points.emplace_back(px, py);
  }
  return g;
}

// Peak, valley, and endpoint heights of the graph.  These encode the whole
// fingerprint of a {t, t-bar}-word:
//   peak = alpha_{t-1}(x),  -valley = alpha_t(x),  endpoint = w_t(x).
struct TWordStats {
  int peak = 0;      // max height, >= 0
  int valley = 0;    // min height, <= 0
  int endpoint = 0;  // final height
  int t = 0;

  friend bool operator==(const TWordStats&, const TWordStats&) = default;
};

inline TWordStats t_stats(const Word& x, int t) {
  const StepGraph g = step_graph(x, t);
  TWordStats s;
  s.t = t;
  for (const auto& [px, py] : g.points) {
    (void)px;
    s.peak = std::max(s.peak, py);
    s.valley = std::min(s.valley, py);
  }
  s.endpoint = g.points.back().second;
  return s;
}

// The unique standard-form word with x's fingerprint:
//   t^{w_t + alpha_t}  t-bar^{alpha_{t-1} + alpha_t}  t^{alpha_{t-1}}.
inline Word standard_form_t(const Word& x, int t) {
  const TWordStats s = t_stats(x, t);
  const int a_tm1 = s.peak;
  const int a_t = -s.valley;
  Word out;
  for (int r = 0; r < s.endpoint + a_t; ++r) out.push_back(up(t));
  for (int r = 0; r < a_tm1 + a_t; ++r) out.push_back(down(t));
  for (int r = 0; r < a_tm1; ++r) out.push_back(up(t));
  return out;
}

// Rewrite rules internal to the subalgebra; these are its relation families,
// one per nonnegative degree parameter i:
//   UDU(i):  u_t^{i+1} d_t^i      <->  u_t^{i+1} d_t^{i+1} u_t
//   DUD(i):  u_t^i d_t^{i+1}      <->  d_t u_t^{i+1} d_t^{i+1}
enum class TRuleFamily : std::uint8_t { UDU, DUD };

struct TRule {
  TRuleFamily family;
  int i = 0;

  friend bool operator==(const TRule&, const TRule&) = default;
};

struct TStep {
  TRule rule;
  std::size_t pos = 0;
  StepDir dir = StepDir::Forward;

  friend bool operator==(const TStep&, const TStep&) = default;
};

struct TTrace {
  Word start;
  std::vector<TStep> steps;
  Word end;
};

inline std::pair<Word, Word> t_rule_sides(const TRule& r, int t) {
  Word lhs, rhs;
  if (r.family == TRuleFamily::UDU) {
    lhs.insert(lhs.end(), static_cast<std::size_t>(r.i) + 1, up(t));
    lhs.insert(lhs.end(), static_cast<std::size_t>(r.i), down(t));
    rhs.insert(rhs.end(), static_cast<std::size_t>(r.i) + 1, up(t));
    rhs.insert(rhs.end(), static_cast<std::size_t>(r.i) + 1, down(t));
    rhs.push_back(up(t));
  } else {
    lhs.insert(lhs.end(), static_cast<std::size_t>(r.i), up(t));
    lhs.insert(lhs.end(), static_cast<std::size_t>(r.i) + 1, down(t));
    rhs.push_back(down(t));
    rhs.insert(rhs.end(), static_cast<std::size_t>(r.i) + 1, up(t));
    rhs.insert(rhs.end(), static_cast<std::size_t>(r.i) + 1, down(t));
  }
  return {lhs, rhs};
}

inline Word apply_t_step(const Word& w, const TStep& s, int t) {
  if (t < 2) throw std::invalid_argument("apply_t_step: t must be >= 2");
  if (s.rule.i < 0) throw StepError(s.pos, "t-rule degree must be >= 0");
  auto [lhs, rhs] = t_rule_sides(s.rule, t);
  const Word& from = s.dir == StepDir::Forward ? lhs : rhs;
  const Word& to = s.dir == StepDir::Forward ? rhs : lhs;
  if (s.pos + from.size() > w.size() ||
      !std::equal(from.begin(), from.end(),
                  w.begin() + static_cast<std::ptrdiff_t>(s.pos)))
    throw StepError(s.pos, "t-rule side does not match");
  Word out;
  out.reserve(w.size() - from.size() + to.size());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(s.pos));
  out.insert(out.end(), to.begin(), to.end());
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(s.pos + from.size()),
             w.end());
  return out;
}

inline VerifyResult verify_t_trace(const TTrace& t, int tidx) {
  Word w = t.start;
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    try {
      w = apply_t_step(w, t.steps[k], tidx);
    } catch (const StepError& e) {
      return {false, "step " + std::to_string(k) + ": " + e.what(), k};
    }
  }
  if (w != t.end)
    return {false, "replay ends at '" + to_string(w) + "'", std::nullopt};
  if (fingerprint(t.start) != fingerprint(t.end))
    return {false, "start and end have different fingerprints", std::nullopt};
  return {true, "", std::nullopt};
}

// Normalizes a {t, t-bar}-word to its standard form, prepending letters to
// the standard form of the growing suffix.  Each prepended letter needs at
// most one rule application:
//   u_t with w_t(y) = alpha_{t-1}(y):  UDU(w_t(y) + alpha_t(y)) forward;
//   d_t with alpha_t(y) > -w_t(y):     DUD(w_t(y) + alpha_t(y) - 1) backward;
// the remaining two cases already yield a standard word.
inline std::pair<Word, TTrace> normalize_t_with_trace(const Word& x, int t) {
  detail::require_t_word(x, t);
  Word cur = x;
  std::vector<TStep> steps;
  auto emit = [&](TStep s) {
    cur = apply_t_step(cur, s, t);
    steps.push_back(s);
  };
  for (std::size_t j = x.size(); j-- > 0;) {
    // suffix y = x_{j+2} ... x_l has already been rewritten to [y] in place
    const Word y(x.begin() + static_cast<std::ptrdiff_t>(j) + 1, x.end());
    const TWordStats sy = t_stats(y, t);
    const int a_t = -sy.valley;
    const int a_tm1 = sy.peak;
    if (x[j].is_up()) {
      if (sy.endpoint == a_tm1)
        emit({{TRuleFamily::UDU, sy.endpoint + a_t}, j, StepDir::Forward});
      // w_t(y) < alpha_{t-1}(y): t [y] is standard already
    } else {
      if (a_t > -sy.endpoint)
        emit({{TRuleFamily::DUD, sy.endpoint + a_t - 1}, j, StepDir::Backward});
      // alpha_t(y) = -w_t(y): t-bar [y] is standard already
    }
  }
  const Word target = standard_form_t(x, t);
  if (cur != target)
    throw std::logic_error("normalize_t_with_trace: endpoint is not standard");
  return {cur, TTrace{x, std::move(steps), cur}};
}

// ---------------------------------------------------------------------------
// Finite chain quotient: u_t and d_t act on a chain with rho+1 positions.
// ---------------------------------------------------------------------------

struct ChainState {
  int rho = 0;  // chain has rho+1 elements
  int pos = 0;  // 0 <= pos <= rho

  friend bool operator==(const ChainState&, const ChainState&) = default;
};

// Rightmost letter first; u_t moves up, d_t moves down, stepping off either
// end annihilates.
inline std::optional<ChainState> chain_apply(ChainState s, const Word& x, int t) {
  detail::require_t_word(x, t);
  if (s.rho < 0 || s.pos < 0 || s.pos > s.rho)
    throw std::invalid_argument("chain_apply: need 0 <= pos <= rho");
  for (std::size_t k = x.size(); k-- > 0;) {
    if (x[k].is_up()) {
      if (s.pos == s.rho) return std::nullopt;
      ++s.pos;
    } else {
      if (s.pos == 0) return std::nullopt;
      --s.pos;
    }
  }
  return s;
}

// True iff x annihilates the whole chain, decided by running the chain action
// from every start position.  Equivalent to alpha_{t-1}(x) + alpha_t(x) > rho.
inline bool chain_annihilates(const Word& x, int t, int rho) {
  if (rho < 0) throw std::invalid_argument("chain_annihilates: rho must be >= 0");
  detail::require_t_word(x, t);
  for (int p = 0; p <= rho; ++p)
    if (chain_apply(ChainState{rho, p}, x, t)) return false;
  return true;
}

// The pair (t^k, t^k t-bar^k t^k): equal fingerprints, but any certificate
// between them needs a relation of degree growing with k.
inline std::pair<Word, Word> unbounded_witness(int k, int t) {
  if (k < 1) throw std::invalid_argument("unbounded_witness: k must be >= 1");
  if (t < 2) throw std::invalid_argument("unbounded_witness: t must be >= 2");
  Word x(static_cast<std::size_t>(k), up(t));
  Word y;
  y.insert(y.end(), static_cast<std::size_t>(k), up(t));
  y.insert(y.end(), static_cast<std::size_t>(k), down(t));
  y.insert(y.end(), static_cast<std::size_t>(k), up(t));
  return {std::move(x), std::move(y)};
}

// For t = 1 the only relation is d_1 u_1 = id: every {1, 1-bar}-word rewrites
// to u_1^{w_1 + alpha_1} d_1^{alpha_1}.
inline Word standard_form_t1(const Word& x) {
  for (const Letter& a : x)
    if (a.index != 1)
      throw std::domain_error("standard_form_t1: word contains letter of index " +
                              std::to_string(a.index));
  const Fingerprint fp = fingerprint(x);
  const int a1 = at(fp.alpha, 1);
  const int w1 = at(fp.weight, 1);
  Word out;
  out.insert(out.end(), static_cast<std::size_t>(w1 + a1), up(1));
  out.insert(out.end(), static_cast<std::size_t>(a1), down(1));
  return out;
}

}  // namespace updown
