#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "updown/subalgebra.hpp"

using namespace updown;

namespace {

// All {t, t-bar}-words of the given length, rightmost bit = last letter.
std::vector<Word> t_words_of_length(int len, int t) {
  std::vector<Word> out;
  for (unsigned mask = 0; mask < (1u << len); ++mask) {
    Word w;
    for (int k = 0; k < len; ++k)
      w.push_back((mask >> k) & 1 ? up(t) : down(t));
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<Word> t_words_up_to(int len, int t) {
  std::vector<Word> out;
  for (int l = 0; l <= len; ++l) {
    auto v = t_words_of_length(l, t);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

// Cancel d1 u1 factors until none remain; independent route to the t = 1
// standard form.
Word cancel_all_d1u1(Word w) {
  for (;;) {
    bool changed = false;
    for (std::size_t k = 0; k + 1 < w.size(); ++k)
      if (w[k] == down(1) && w[k + 1] == up(1)) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(k),
                w.begin() + static_cast<std::ptrdiff_t>(k) + 2);
        changed = true;
        break;
      }
    if (!changed) return w;
  }
}

const int T = 2;

Word word_t(const std::string& pattern) {
  // "uud" style shorthand over the fixed letter t
  Word w;
  for (char c : pattern) w.push_back(c == 'u' ? up(T) : down(T));
  return w;
}

}  // namespace

TEST_CASE("step_graph") {
  // x = t^2 tbar^4 t^3: three up-steps, four down, two up, reading right to left
  const Word x = word_t("uudddduuu");
  const StepGraph g = step_graph(x, T);
  REQUIRE(g.points.size() == 10);
  CHECK(g.points.front() == std::pair{0, 0});
  CHECK(std::count(g.points.begin(), g.points.end(), std::pair{-3, 3}) == 1);
  CHECK(std::count(g.points.begin(), g.points.end(), std::pair{-7, -1}) == 1);
  CHECK(g.points.back() == std::pair{-9, 1});

  CHECK(step_graph({}, T).points == std::vector<std::pair<int, int>>{{0, 0}});
  CHECK(step_graph({down(T)}, T).points ==
        std::vector<std::pair<int, int>>{{0, 0}, {-1, -1}});

  SECTION("foreign letters and bad t rejected") {
    CHECK_THROWS_AS(step_graph(parse_word("u2 u3"), 2), std::domain_error);
    CHECK_THROWS_AS(step_graph(parse_word("u1"), 1), std::invalid_argument);
  }
}

TEST_CASE("t_stats") {
  const TWordStats s = t_stats(word_t("uudddduuu"), T);
  CHECK(s.peak == 3);
  CHECK(s.valley == -1);
  CHECK(s.endpoint == 1);

  CHECK(t_stats(word_t("uuuu"), T) == TWordStats{4, 0, 4, T});
  CHECK(t_stats(word_t("ddd"), T) == TWordStats{0, -3, -3, T});

  SECTION("graph statistics equal the word-semantics invariants, all words to length 10") {
    for (const Word& x : t_words_up_to(10, T)) {
      const TWordStats st = t_stats(x, T);
      const Fingerprint fp = fingerprint(x);
      CHECK(st.peak == at(fp.alpha, T - 1));
      CHECK(-st.valley == at(fp.alpha, T));
      CHECK(st.endpoint == at(fp.weight, T));
    }
  }
}

TEST_CASE("standard_form_t") {
  CHECK(standard_form_t({up(T)}, T) == word_t("udu"));
  CHECK(standard_form_t({down(T)}, T) == word_t("d"));
  CHECK(standard_form_t(word_t("uudddduuu"), T) == word_t("uudddduuu"));

  SECTION("fingerprint-preserving, idempotent, standard-shaped; length <= 10") {
    for (const Word& x : t_words_up_to(10, T)) {
      const Word s = standard_form_t(x, T);
      CHECK(fingerprint(s) == fingerprint(x));
      CHECK(standard_form_t(s, T) == s);
    }
  }

  SECTION("matches the action of the input (oracle, length <= 5)") {
    for (const Word& x : t_words_up_to(5, T))
      CHECK(semantically_equal(standard_form_t(x, T), x));
  }
}

TEST_CASE("t-rules are sound") {
  // both sides of UDU(i) / DUD(i) act identically, i <= 4
  for (int i = 0; i <= 4; ++i) {
    const auto [udu_l, udu_r] = t_rule_sides({TRuleFamily::UDU, i}, T);
    CHECK(fingerprint(udu_l) == fingerprint(udu_r));
    CHECK(semantically_equal(udu_l, udu_r));
    const auto [dud_l, dud_r] = t_rule_sides({TRuleFamily::DUD, i}, T);
    CHECK(fingerprint(dud_l) == fingerprint(dud_r));
    CHECK(semantically_equal(dud_l, dud_r));
  }
}

TEST_CASE("apply_t_step and verify_t_trace") {
  // UDU(0) forward at 0: t -> t tbar t
  const TStep s{{TRuleFamily::UDU, 0}, 0, StepDir::Forward};
  CHECK(apply_t_step({up(T)}, s, T) == word_t("udu"));
  CHECK_THROWS_AS(apply_t_step({down(T)}, s, T), StepError);

  TTrace t{{up(T)}, {s}, word_t("udu")};
  CHECK(verify_t_trace(t, T).ok);
  t.end = word_t("uud");
  CHECK(!verify_t_trace(t, T).ok);
}

TEST_CASE("normalize_t_with_trace") {
  SECTION("single letter t needs one UDU(0)") {
    const auto [s, tr] = normalize_t_with_trace({up(T)}, T);
    CHECK(s == word_t("udu"));
    REQUIRE(tr.steps.size() == 1);
    CHECK(tr.steps[0].rule == TRule{TRuleFamily::UDU, 0});
    CHECK(verify_t_trace(tr, T).ok);
  }

  SECTION("tbar t reaches its standard form through a DUD application") {
    const auto [s, tr] = normalize_t_with_trace(word_t("du"), T);
    CHECK(s == word_t("du"));  // the standard form happens to equal the input
    CHECK(std::any_of(tr.steps.begin(), tr.steps.end(), [](const TStep& st) {
      return st.rule.family == TRuleFamily::DUD;
    }));
    CHECK(verify_t_trace(tr, T).ok);
  }

  SECTION("barred descents are already standard: empty trace") {
    for (int b = 0; b <= 4; ++b) {
      const Word x(static_cast<std::size_t>(b), down(T));
      const auto [s, tr] = normalize_t_with_trace(x, T);
      CHECK(s == x);
      CHECK(tr.steps.empty());
    }
  }

  SECTION("reaches the standard form with a verifying trace, all words to length 8") {
    for (const Word& x : t_words_up_to(8, T)) {
      const auto [s, tr] = normalize_t_with_trace(x, T);
      CHECK(s == standard_form_t(x, T));
      CHECK(verify_t_trace(tr, T).ok);
      CHECK(fingerprint(s) == fingerprint(x));
    }
  }

  SECTION("every step preserves the fingerprint and the chain action") {
    std::mt19937 rng(53);
    std::uniform_int_distribution<int> bit(0, 1);
    for (int r = 0; r < 60; ++r) {
      Word x;
      for (int k = 0; k < 8; ++k) x.push_back(bit(rng) ? up(T) : down(T));
      const auto [s, tr] = normalize_t_with_trace(x, T);
      const Fingerprint fp = fingerprint(x);
      Word w = x;
      for (const TStep& st : tr.steps) {
        const Word next = apply_t_step(w, st, T);
        CHECK(fingerprint(next) == fp);
        for (int rho = st.rule.i + 1; rho <= st.rule.i + 3; ++rho)
          for (int p = 0; p <= rho; ++p)
            CHECK(chain_apply({rho, p}, w, T) == chain_apply({rho, p}, next, T));
        w = next;
      }
    }
  }
}

TEST_CASE("chain action") {
  CHECK(!chain_apply({1, 0}, word_t("uu"), T).has_value());
  CHECK(chain_apply({2, 0}, word_t("du"), T) == ChainState{2, 0});
  CHECK(chain_apply({3, 1}, {}, T) == ChainState{3, 1});
  CHECK_THROWS_AS(chain_apply({1, 2}, {}, T), std::invalid_argument);

  SECTION("annihilation criterion, exhaustively to length 10, rho <= 5") {
    for (const Word& x : t_words_up_to(10, T)) {
      const Fingerprint fp = fingerprint(x);
      const int needed = at(fp.alpha, T - 1) + at(fp.alpha, T);
      for (int rho = 0; rho <= 5; ++rho)
        CHECK(chain_annihilates(x, T, rho) == (needed > rho));
    }
  }

  SECTION("u^{rho+1} and d^{rho+1} annihilate") {
    for (int rho = 0; rho <= 4; ++rho) {
      CHECK(chain_annihilates(Word(static_cast<std::size_t>(rho) + 1, up(T)), T, rho));
      CHECK(chain_annihilates(Word(static_cast<std::size_t>(rho) + 1, down(T)), T, rho));
    }
  }
}

TEST_CASE("unbounded_witness") {
  const auto [x1, y1] = unbounded_witness(1, T);
  CHECK(x1 == word_t("u"));
  CHECK(y1 == word_t("udu"));
  CHECK(equivalent(x1, y1));

  for (int k = 1; k <= 6; ++k) {
    const auto [x, y] = unbounded_witness(k, T);
    CHECK(equivalent(x, y));
    // the normalization certificate of y needs degree growing with k
    const auto [s, tr] = normalize_t_with_trace(y, T);
    CHECK(s == y);  // y is its own standard form
    int max_i = -1;
    for (const TStep& st : tr.steps) max_i = std::max(max_i, st.rule.i);
    CHECK(max_i >= k - 1);
    CHECK(verify_t_trace(tr, T).ok);
  }
}

TEST_CASE("standard_form_t1") {
  CHECK(standard_form_t1(parse_word("d1 u1")).empty());
  CHECK(standard_form_t1(parse_word("u1 d1")) == parse_word("u1 d1"));
  CHECK(standard_form_t1(parse_word("d1 u1 u1 d1")) == parse_word("u1 d1"));
  CHECK_THROWS_AS(standard_form_t1(parse_word("u2")), std::domain_error);

  SECTION("no d1 u1 factor remains; agrees with repeated cancellation; oracle-equal") {
    for (const Word& x : t_words_up_to(9, 1)) {
      const Word s = standard_form_t1(x);
      for (std::size_t k = 0; k + 1 < s.size(); ++k)
        CHECK(!(s[k] == down(1) && s[k + 1] == up(1)));
      CHECK(s == cancel_all_d1u1(x));
      CHECK(fingerprint(s) == fingerprint(x));
    }
    for (const Word& x : t_words_up_to(5, 1))
      CHECK(semantically_equal(standard_form_t1(x), x));
  }
}
