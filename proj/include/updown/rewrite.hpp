#pragma once

#include <cstddef>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "updown/normal_form.hpp"
#include "updown/word.hpp"

namespace updown {

// The five base relation families.  Everything the engine certifies is
// expanded down to these; the verifier accepts nothing else.
//
//   COMM_UU(i,j):  u_i u_j  <->  u_j u_i        |i-j| >= 2
//   COMM_DD(i,j):  d_i d_j  <->  d_j d_i        |i-j| >= 2
//   COMM_DU(i,j):  d_i u_j  <->  u_j d_i        i != j
//   CANCEL_1:      d_1 u_1  <->  (empty)
//   SLIDE(i):      d_{i+1} u_{i+1}  <->  u_i d_i
enum class RuleFamily : std::uint8_t { CommUU, CommDD, CommDU, Cancel1, Slide };

struct Rule {
  RuleFamily family;
  int i = 0;
  int j = 0;  // used by the COMM families only

  friend bool operator==(const Rule&, const Rule&) = default;
};

enum class StepDir : std::uint8_t { Forward, Backward };

// One rewrite: replace the matched side of the rule at `pos` by the other
// side.  Forward rewrites left side -> right side.  CANCEL_1 Backward is an
// insertion of "d1 u1" at `pos`.
struct Step {
  Rule rule;
  std::size_t pos = 0;
  StepDir dir = StepDir::Forward;

  friend bool operator==(const Step&, const Step&) = default;
};

// A machine-checkable equivalence certificate: replaying `steps` from `start`
// must yield `end`, and every step is an instance of a base family.
struct Trace {
  Word start;
  std::vector<Step> steps;
  Word end;

  friend bool operator==(const Trace&, const Trace&) = default;
};

inline std::string to_string(const Rule& r) {
  switch (r.family) {
    case RuleFamily::CommUU:
      return "COMM_UU(" + std::to_string(r.i) + "," + std::to_string(r.j) + ")";
    case RuleFamily::CommDD:
      return "COMM_DD(" + std::to_string(r.i) + "," + std::to_string(r.j) + ")";
    case RuleFamily::CommDU:
      return "COMM_DU(" + std::to_string(r.i) + "," + std::to_string(r.j) + ")";
    case RuleFamily::Cancel1:
      return "CANCEL_1";
    case RuleFamily::Slide:
      return "SLIDE(" + std::to_string(r.i) + ")";
  }
  return "?";
}

// Side condition check; empty result means the rule instance is legal.
inline std::optional<std::string> rule_violation(const Rule& r) {
  switch (r.family) {
    case RuleFamily::CommUU:
    case RuleFamily::CommDD:
      if (r.i < 1 || r.j < 1) return "indices must be >= 1";
      if (std::abs(r.i - r.j) < 2) return "side condition |i-j| >= 2 violated";
      return std::nullopt;
    case RuleFamily::CommDU:
      if (r.i < 1 || r.j < 1) return "indices must be >= 1";
      if (r.i == r.j) return "side condition i != j violated";
      return std::nullopt;
    case RuleFamily::Cancel1:
      return std::nullopt;
    case RuleFamily::Slide:
      if (r.i < 1) return "index must be >= 1";
      return std::nullopt;
  }
  return "unknown rule family";
}

// (left side, right side) as letter strings.
inline std::pair<Word, Word> rule_sides(const Rule& r) {
  switch (r.family) {
    case RuleFamily::CommUU:
      return {{up(r.i), up(r.j)}, {up(r.j), up(r.i)}};
    case RuleFamily::CommDD:
      return {{down(r.i), down(r.j)}, {down(r.j), down(r.i)}};
    case RuleFamily::CommDU:
      return {{down(r.i), up(r.j)}, {up(r.j), down(r.i)}};
    case RuleFamily::Cancel1:
      return {{down(1), up(1)}, {}};
    case RuleFamily::Slide:
      return {{down(r.i + 1), up(r.i + 1)}, {up(r.i), down(r.i)}};
  }
  return {};
}

class StepError : public std::runtime_error {
 public:
  StepError(std::size_t pos, std::string msg)
      : std::runtime_error("step at position " + std::to_string(pos) + ": " +
                           std::move(msg)),
        pos_(pos) {}
  std::size_t pos() const { return pos_; }

 private:
  std::size_t pos_;
};

// Applies one step, throwing StepError when the rule instance is illegal or
// the matched side is not present at s.pos.
inline Word apply_step(const Word& w, const Step& s) {
  if (auto v = rule_violation(s.rule))
    throw StepError(s.pos, to_string(s.rule) + ": " + *v);
  auto [lhs, rhs] = rule_sides(s.rule);
  const Word& from = s.dir == StepDir::Forward ? lhs : rhs;
  const Word& to = s.dir == StepDir::Forward ? rhs : lhs;
  if (s.pos + from.size() > w.size())
    throw StepError(s.pos, to_string(s.rule) + ": expected '" +
                               to_string(from) + "' but word has length " +
                               std::to_string(w.size()));
  for (std::size_t k = 0; k < from.size(); ++k)
    if (w[s.pos + k] != from[k])
      throw StepError(s.pos, to_string(s.rule) + ": expected '" +
                                 to_string(from) + "' at position " +
                                 std::to_string(s.pos));
  Word out;
  out.reserve(w.size() - from.size() + to.size());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(s.pos));
  out.insert(out.end(), to.begin(), to.end());
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(s.pos + from.size()),
             w.end());
  return out;
}

struct VerifyResult {
  bool ok = false;
  std::string error;
  std::optional<std::size_t> failed_step;

  explicit operator bool() const { return ok; }
};

// The independent certificate checker.  It knows only the five base
// families: side conditions, subword matching, replay from start to end, and
// a final fingerprint comparison.  It trusts nothing about how the trace was
// produced.
inline VerifyResult verify_trace(const Trace& t) {
  Word w = t.start;
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    try {
      w = apply_step(w, t.steps[k]);
    } catch (const StepError& e) {
      return {false, "step " + std::to_string(k) + ": " + e.what(), k};
    }
  }
  if (w != t.end)
    return {false,
            "replay ends at '" + to_string(w) + "', trace claims '" +
                to_string(t.end) + "'",
            std::nullopt};
  if (fingerprint(t.start) != fingerprint(t.end))
    return {false, "start and end have different fingerprints", std::nullopt};
  return {true, "", std::nullopt};
}

// Runs a trace end -> start: steps reversed, each direction flipped.
inline Trace reverse_trace(const Trace& t) {
  Trace out;
  out.start = t.end;
  out.end = t.start;
  out.steps.reserve(t.steps.size());
  for (std::size_t k = t.steps.size(); k-- > 0;) {
    Step s = t.steps[k];
    s.dir = s.dir == StepDir::Forward ? StepDir::Backward : StepDir::Forward;
    out.steps.push_back(s);
  }
  return out;
}

// The bar/reversal anti-automorphism: reverse the word, swap Up <-> Down.
// It maps each base family to a base family, so traces transport across it.
inline Word mirror_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (std::size_t k = w.size(); k-- > 0;)
    out.push_back(w[k].is_up() ? down(w[k].index) : up(w[k].index));
  return out;
}

inline Rule mirror_rule(const Rule& r) {
  switch (r.family) {
    case RuleFamily::CommUU:
      return {RuleFamily::CommDD, r.j, r.i};
    case RuleFamily::CommDD:
      return {RuleFamily::CommUU, r.j, r.i};
    case RuleFamily::CommDU:
      return {RuleFamily::CommDU, r.j, r.i};
    case RuleFamily::Cancel1:
    case RuleFamily::Slide:
      return r;
  }
  return r;
}

inline Trace mirror_trace(const Trace& t) {
  Trace out;
  out.start = mirror_word(t.start);
  out.end = mirror_word(t.end);
  out.steps.reserve(t.steps.size());
  Word w = t.start;
  for (const Step& s : t.steps) {
    auto [lhs, rhs] = rule_sides(s.rule);
    const std::size_t matched =
        (s.dir == StepDir::Forward ? lhs : rhs).size();
    Step ms;
    ms.rule = mirror_rule(s.rule);
    ms.dir = s.dir;
    ms.pos = w.size() - s.pos - matched;
    out.steps.push_back(ms);
    w = apply_step(w, s);
  }
  return out;
}

inline Trace concat_traces(const Trace& a, const Trace& b) {
  if (a.end != b.start)
    throw std::invalid_argument("concat_traces: endpoint mismatch");
  Trace out;
  out.start = a.start;
  out.end = b.end;
  out.steps = a.steps;
  out.steps.insert(out.steps.end(), b.steps.begin(), b.steps.end());
  return out;
}

namespace detail {

// Records steps while applying them, so every emitted trace replays by
// construction.  All positions are into the current full word.
class TraceBuilder {
 public:
  explicit TraceBuilder(Word start) : start_(start), cur_(std::move(start)) {}

  const Word& word() const { return cur_; }

  void step(Rule r, std::size_t pos, StepDir dir) {
    Step s{r, pos, dir};
    cur_ = apply_step(cur_, s);
    steps_.push_back(s);
  }

  // Embeds a whole trace whose start must match the current word at offset.
  void splice(const Trace& t, std::size_t offset) {
    require_subword(t.start, offset);
    for (const Step& s : t.steps) step(s.rule, s.pos + offset, s.dir);
  }

  // Moves the letter at `pos` left across `count` neighbours, one legal
  // commutation per swap.
  void move_left(std::size_t pos, std::size_t count) {
    for (std::size_t c = 0; c < count; ++c) {
      const std::size_t q = pos - c;
      swap_adjacent(q - 1);
    }
  }

  // Moves the letter at `pos` right across `count` neighbours.
  void move_right(std::size_t pos, std::size_t count) {
    for (std::size_t c = 0; c < count; ++c) swap_adjacent(pos + c);
  }

  Trace finish() && { return Trace{std::move(start_), std::move(steps_), std::move(cur_)}; }

 private:
  // Exchanges positions q and q+1 using the commutation that applies.
  void swap_adjacent(std::size_t q) {
    const Letter a = cur_.at(q);
    const Letter b = cur_.at(q + 1);
    if (a.is_up() && b.is_up())
      step({RuleFamily::CommUU, a.index, b.index}, q, StepDir::Forward);
    else if (a.is_down() && b.is_down())
      step({RuleFamily::CommDD, a.index, b.index}, q, StepDir::Forward);
    else if (a.is_down() && b.is_up())
      step({RuleFamily::CommDU, a.index, b.index}, q, StepDir::Forward);
    else
      step({RuleFamily::CommDU, b.index, a.index}, q, StepDir::Backward);
  }

  void require_subword(const Word& sub, std::size_t offset) {
    if (offset + sub.size() > cur_.size() ||
        !std::equal(sub.begin(), sub.end(),
                    cur_.begin() + static_cast<std::ptrdiff_t>(offset)))
      throw std::logic_error("trace builder: expected '" + to_string(sub) +
                             "' at offset " + std::to_string(offset) +
                             " of '" + to_string(cur_) + "'");
  }

  Word start_;
  Word cur_;
  std::vector<Step> steps_;
};

inline Word concat(std::initializer_list<Word> parts) {
  Word out;
  for (const Word& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// Descending run n, n-1, ..., 1.
inline Word descending_run(int n) {
  Word out;
  for (int k = n; k >= 1; --k) out.push_back(up(k));
  return out;
}

// Barred ascending run 1-bar, ..., n-bar.
inline Word barred_ascending_run(int n) {
  Word out;
  for (int k = 1; k <= n; ++k) out.push_back(down(k));
  return out;
}

}  // namespace detail

// Certified cancellation of the identity word 1-bar ... n-bar n ... 1 down to
// the empty word, using only SLIDE and CANCEL_1.  n(n+1)/2 steps.
inline Trace macro_identity(int n) {
  if (n < 1) throw std::invalid_argument("macro_identity: n must be >= 1");
  detail::TraceBuilder b(detail::concat(
      {detail::barred_ascending_run(n), detail::descending_run(n)}));
  // Innermost pair first: d_k u_k (k-1) ... 1  ->  (k-1) ... 1.
  for (int k = n; k >= 1; --k) {
    const std::size_t o = static_cast<std::size_t>(k) - 1;
    for (int i = k - 1; i >= 1; --i)
      b.step({RuleFamily::Slide, i}, o + static_cast<std::size_t>(k - 1 - i),
             StepDir::Forward);
    b.step({RuleFamily::Cancel1}, o + static_cast<std::size_t>(k) - 1,
           StepDir::Forward);
  }
  return std::move(b).finish();
}

// u_i  ->  u_i d_i u_i, replaying the derivation through the identity word.
inline Trace macro_sandwich_up(int i) {
  if (i < 1) throw std::invalid_argument("macro_sandwich_up: i must be >= 1");
  const int n = i;
  detail::TraceBuilder b({up(n)});
  // u_n -> u_n (1-bar ... n-bar n ... 1)
  b.splice(reverse_trace(macro_identity(n)), 1);
  // slide u_n rightward past d_1 ... d_{n-1}
  for (int k = 1; k <= n - 1; ++k)
    b.step({RuleFamily::CommDU, k, n}, static_cast<std::size_t>(k) - 1,
           StepDir::Backward);
  // u_n d_n -> d_{n+1} u_{n+1}
  b.step({RuleFamily::Slide, n}, static_cast<std::size_t>(n) - 1, StepDir::Backward);
  // pull d_{n+1} u_{n+1} u_n in front of the barred prefix
  b.move_left(static_cast<std::size_t>(n) - 1, static_cast<std::size_t>(n) - 1);
  b.move_left(static_cast<std::size_t>(n), static_cast<std::size_t>(n) - 1);
  b.move_left(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(n) - 1);
  // cancel the leftover identity word of rank n-1
  if (n >= 2) b.splice(macro_identity(n - 1), 3);
  // d_{n+1} u_{n+1} -> u_n d_n
  b.step({RuleFamily::Slide, n}, 0, StepDir::Forward);
  return std::move(b).finish();
}

// d_i  ->  d_i u_i d_i, the bar-mirror of macro_sandwich_up.
inline Trace macro_sandwich_down(int i) { return mirror_trace(macro_sandwich_up(i)); }

// u_i u_{i+1} u_i  ->  u_{i+1} u_i u_i.
inline Trace macro_knuth_a(int i) {
  if (i < 1) throw std::invalid_argument("macro_knuth_a: i must be >= 1");
  const int n = i;
  detail::TraceBuilder b({up(n), up(n + 1), up(n)});
  b.splice(macro_sandwich_up(n + 1), 1);
  b.step({RuleFamily::Slide, n + 1}, 1, StepDir::Backward);
  b.move_right(0, 2);
  b.step({RuleFamily::Slide, n + 1}, 0, StepDir::Forward);
  b.step({RuleFamily::CommDU, n + 1, n}, 1, StepDir::Forward);
  b.step({RuleFamily::Slide, n}, 2, StepDir::Forward);
  b.splice(reverse_trace(macro_sandwich_up(n)), 2);
  return std::move(b).finish();
}

// u_{i+1} u_i u_{i+1}  ->  u_{i+1} u_{i+1} u_i.  The i = 1 instance replaces
// the u_{i-1}/d_{i-1} detour with a CANCEL_1 delete/reinsert.
inline Trace macro_knuth_b(int i) {
  if (i < 1) throw std::invalid_argument("macro_knuth_b: i must be >= 1");
  const int n = i;
  detail::TraceBuilder b({up(n + 1), up(n), up(n + 1)});
  b.splice(macro_sandwich_up(n), 1);
  if (n >= 2) {
    b.step({RuleFamily::Slide, n - 1}, 2, StepDir::Forward);
    b.move_left(4, 2);
    b.step({RuleFamily::Slide, n - 1}, 3, StepDir::Backward);
  } else {
    b.step({RuleFamily::Cancel1}, 2, StepDir::Forward);
    b.step({RuleFamily::Cancel1}, 3, StepDir::Backward);
  }
  b.step({RuleFamily::CommDU, n, n + 1}, 2, StepDir::Backward);
  b.step({RuleFamily::Slide, n}, 1, StepDir::Backward);
  b.splice(reverse_trace(macro_sandwich_up(n + 1)), 0);
  return std::move(b).finish();
}

// d_i d_{i+1} d_i  ->  d_i d_i d_{i+1}.
inline Trace macro_knuth_a_down(int i) { return mirror_trace(macro_knuth_a(i)); }

// d_{i+1} d_i d_{i+1}  ->  d_i d_{i+1} d_{i+1}.
inline Trace macro_knuth_b_down(int i) { return mirror_trace(macro_knuth_b(i)); }

namespace detail {

// (n ... 1) u_n  ->  u_n (n ... 1): commutations plus one Knuth step.
inline Trace swap_run_with_letter(int n) {
  TraceBuilder b(concat({descending_run(n), {up(n)}}));
  if (n >= 2) {
    b.move_left(static_cast<std::size_t>(n), static_cast<std::size_t>(n) - 2);
    b.splice(macro_knuth_b(n - 1), 0);
  }
  return std::move(b).finish();
}

// (n ... 1) n^{m-1} (n-1)^{m-1} ... 1^{m-1}  ->  n^m (n-1)^m ... 1^m,
// written into an existing builder at `offset`.
inline void regroup_descending(TraceBuilder& b, int n, int m, std::size_t offset) {
  for (int lvl = n; lvl >= 2; --lvl) {
    const Trace swap = swap_run_with_letter(lvl);
    for (int r = 0; r + 1 < m; ++r)
      b.splice(swap, offset + static_cast<std::size_t>(r));
    offset += static_cast<std::size_t>(m);
  }
}

// (n ... 1)^m  ->  n^m (n-1)^m ... 1^m.
inline Trace group_power(int n, int m) {
  Word start;
  for (int r = 0; r < m; ++r) {
    const Word run = descending_run(n);
    start.insert(start.end(), run.begin(), run.end());
  }
  TraceBuilder b(std::move(start));
  if (m >= 2) {
    b.splice(group_power(n, m - 1), static_cast<std::size_t>(n));
    regroup_descending(b, n, m, 0);
  }
  return std::move(b).finish();
}

// Certified cancellation of the canonical word of the empty word,
// [empty]_{m,n} = 1-bar^m ... n-bar^m n^m ... 1^m,  down to the empty word:
// regroup both halves into m nested identity words, then cancel them inside
// out.
inline Trace empty_canonical_collapse(int m, int n) {
  TraceBuilder b(canonical_from_fingerprint(Fingerprint{}, m, n));
  if (m >= 1) {
    const Trace g_up = group_power(n, m);
    b.splice(reverse_trace(mirror_trace(g_up)), 0);
    b.splice(reverse_trace(g_up), static_cast<std::size_t>(n) * static_cast<std::size_t>(m));
    const Trace id = macro_identity(n);
    for (int r = m; r >= 1; --r)
      b.splice(id, static_cast<std::size_t>(n) * static_cast<std::size_t>(r - 1));
  }
  return std::move(b).finish();
}

// Rewrites [y] z  ->  [y z] for one appended letter z, following the case
// split on z and on alpha(y).  The layout of [y]_{m,n} is derived from y's
// fingerprint; all block positions are computed, and every macro splice
// revalidates the expected subword.
inline void append_letter_case(TraceBuilder& b, const Fingerprint& fy, Letter z,
                               int m, int n) {
  std::vector<int> al(static_cast<std::size_t>(n) + 2, 0);
  std::vector<int> be(static_cast<std::size_t>(n) + 2, 0);
  for (int k = 1; k <= n; ++k) {
    al[static_cast<std::size_t>(k)] = at(fy.alpha, k);
    be[static_cast<std::size_t>(k)] =
        at(fy.alpha, k) + at(fy.weight, k) + m;
    if (be[static_cast<std::size_t>(k)] < 0)
      throw std::logic_error("append_letter_case: negative exponent; m too small");
  }
  // start of the block k^{beta_k} k-bar^{alpha_k} inside [y]
  auto block_start = [&](int k) {
    std::size_t s = static_cast<std::size_t>(m) * static_cast<std::size_t>(n);
    for (int j = n; j > k; --j)
      s += static_cast<std::size_t>(be[static_cast<std::size_t>(j)] +
                                    al[static_cast<std::size_t>(j)]);
    return s;
  };
  const std::size_t end = block_start(0);  // length of [y]; z sits here
  const int t = z.index;

  if (z.is_up()) {
    if (t == 1) {
      // alpha_1 = 0: [y] u_1 is already [y u_1].  Otherwise the last letter
      // of [y] is d_1 and the pair cancels.
      if (al[1] > 0) b.step({RuleFamily::Cancel1}, end - 1, StepDir::Forward);
      return;
    }
    const std::size_t target =
        block_start(t - 1) + static_cast<std::size_t>(be[static_cast<std::size_t>(t - 1)]);
    b.move_left(end, end - target);
    if (al[static_cast<std::size_t>(t)] == 0) {
      // u_t -> u_t d_t u_t, slide the inner pair down one index, then carry
      // u_t across the (t-1)-block with Knuth steps.
      b.splice(macro_sandwich_up(t), target);
      b.step({RuleFamily::Slide, t - 1}, target + 1, StepDir::Forward);
      const Trace knuth = macro_knuth_a(t - 1);
      for (int r = 0; r < be[static_cast<std::size_t>(t - 1)]; ++r)
        b.splice(knuth, target - 1 - static_cast<std::size_t>(r));
    } else {
      // the last d_t meets the incoming u_t and both slide down one index
      b.move_right(block_start(t - 1) - 1,
                   static_cast<std::size_t>(be[static_cast<std::size_t>(t - 1)]));
      b.step({RuleFamily::Slide, t - 1}, target - 1, StepDir::Forward);
    }
    return;
  }

  // z = d_t
  if (t == 1) return;  // [y] d_1 is already [y d_1]
  if (al[static_cast<std::size_t>(t - 1)] == 0) {
    b.move_left(end, end - block_start(t - 1));
    return;
  }
  const std::size_t s = block_start(t - 1);
  const int beta = be[static_cast<std::size_t>(t - 1)];
  const int alph = al[static_cast<std::size_t>(t - 1)];
  if (beta < 1)
    throw std::logic_error("append_letter_case: beta_{t-1} = 0 in case 4");
  const std::size_t q = s + static_cast<std::size_t>(beta) + static_cast<std::size_t>(alph);
  b.move_left(end, end - q);
  const Trace knuth_rev = reverse_trace(macro_knuth_a_down(t - 1));
  for (int r = 1; r < alph; ++r)
    b.splice(knuth_rev, q - static_cast<std::size_t>(r) - 1);
  b.step({RuleFamily::Slide, t - 1}, s + static_cast<std::size_t>(beta) - 1,
         StepDir::Backward);
  b.splice(reverse_trace(macro_sandwich_down(t)),
           s + static_cast<std::size_t>(beta) - 1);
  b.move_left(s + static_cast<std::size_t>(beta) - 1,
              static_cast<std::size_t>(beta) - 1);
}

}  // namespace detail

// Canonicalizes x with explicit parameters, emitting a full certificate:
// grow the canonical word letter by letter, starting from the collapse of
// [empty]_{m,n} run backwards.  Requires m >= normalization_params(x).m and
// n >= n_of(x).
inline std::pair<Word, Trace> normalize_with_trace(const Word& x, int m, int n) {
  const NormalizationParams req = normalization_params(x);
  if (m < req.m)
    throw std::invalid_argument("normalize_with_trace: m < required " +
                                std::to_string(req.m));
  if (n < req.n)
    throw std::invalid_argument("normalize_with_trace: n < required " +
                                std::to_string(req.n));
  detail::TraceBuilder b(x);
  b.splice(reverse_trace(detail::empty_canonical_collapse(m, n)), 0);
  Word prefix;
  prefix.reserve(x.size());
  for (const Letter& z : x) {
    detail::append_letter_case(b, fingerprint(prefix), z, m, n);
    prefix.push_back(z);
  }
  Word canonical = canonical_from_fingerprint(fingerprint(x), m, n);
  Trace t = std::move(b).finish();
  if (t.end != canonical)
    throw std::logic_error("normalize_with_trace: endpoint is not the canonical word");
  return {std::move(canonical), std::move(t)};
}

inline std::pair<Word, Trace> normalize_with_trace(const Word& x) {
  const NormalizationParams p = normalization_params(x);
  return normalize_with_trace(x, p.m, p.n);
}

namespace detail {

// Looks for a single base step turning x into y.
inline std::optional<Step> single_step_between(const Word& x, const Word& y) {
  auto try_step = [&](Step s) -> std::optional<Step> {
    try {
      if (apply_step(x, s) == y) return s;
    } catch (const StepError&) {
    }
    return std::nullopt;
  };
  if (y.size() == x.size() + 2) {
    for (std::size_t p = 0; p <= x.size(); ++p)
      if (auto s = try_step({{RuleFamily::Cancel1}, p, StepDir::Backward})) return s;
  }
  for (std::size_t p = 0; p + 2 <= x.size(); ++p) {
    const Letter a = x[p], c = x[p + 1];
    if (a.is_up() && c.is_up()) {
      if (auto s = try_step({{RuleFamily::CommUU, a.index, c.index}, p,
                             StepDir::Forward}))
        return s;
      if (a.index == c.index + 1)
        if (auto s = try_step({{RuleFamily::Slide, c.index}, p, StepDir::Backward}))
          return s;
    } else if (a.is_down() && c.is_down()) {
      if (auto s = try_step({{RuleFamily::CommDD, a.index, c.index}, p,
                             StepDir::Forward}))
        return s;
    } else if (a.is_down() && c.is_up()) {
      if (a.index != c.index) {
        if (auto s = try_step({{RuleFamily::CommDU, a.index, c.index}, p,
                               StepDir::Forward}))
          return s;
      } else if (a.index == 1) {
        if (auto s = try_step({{RuleFamily::Cancel1}, p, StepDir::Forward})) return s;
      } else {
        if (auto s = try_step({{RuleFamily::Slide, a.index - 1}, p,
                               StepDir::Forward}))
          return s;
      }
    } else {
      if (a.index == c.index) {
        if (auto s = try_step({{RuleFamily::Slide, a.index}, p, StepDir::Backward}))
          return s;
      } else {
        if (auto s = try_step({{RuleFamily::CommDU, c.index, a.index}, p,
                               StepDir::Backward}))
          return s;
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Produces a verified certificate that x and y act identically, or nullopt
// when their fingerprints differ.  Trivial and one-step cases are emitted
// directly; otherwise both words are normalized with shared parameters and
// the certificate is x's trace followed by y's run backwards.
inline std::optional<Trace> certify_equivalence(const Word& x, const Word& y) {
  if (fingerprint(x) != fingerprint(y)) return std::nullopt;
  if (x == y) return Trace{x, {}, y};
  if (auto s = detail::single_step_between(x, y)) return Trace{x, {*s}, y};
  const NormalizationParams px = normalization_params(x);
  const NormalizationParams py = normalization_params(y);
  const int m = std::max(px.m, py.m);
  const int n = std::max(px.n, py.n);
  auto [cx, tx] = normalize_with_trace(x, m, n);
  auto [cy, ty] = normalize_with_trace(y, m, n);
  if (cx != cy)
    throw std::logic_error("certify_equivalence: canonical words differ");
  return concat_traces(tx, reverse_trace(ty));
}

}  // namespace updown
