#include <functional>
#include <random>

#include "doctest.h"
#include "fohier/enriched.hpp"
#include "fohier/errors.hpp"
#include "fohier/lang_file.hpp"
#include "fohier/regex.hpp"

using namespace fohier;

namespace {

  Alphabet const ab = Alphabet::from_chars("ab");

  Dfa fixture(std::string const& name) {
    return load_language(std::string(FOHIER_FIXTURES) + "/" + name + ".lang").dfa;
  }

  Morphism syntactic(char const* re, Alphabet const& a = ab) {
    return transition_monoid(regex_to_dfa(parse_regex(re, a), a));
  }

  void for_each_word(std::size_t letters, std::size_t max_len, std::function<void(Word const&)> const& f) {
    Word w;
    std::function<void()> rec = [&] {
      f(w);
      if (w.size() == max_len) {
        return;
      }
      for (LetterIndex x = 0; x < letters; ++x) {
        w.push_back(x);
        rec();
        w.pop_back();
      }
    };
    rec();
  }

  Element eval_word(WfLanguage const& wf, Monoid const& mon, Word const& w) {
    Element s = mon.identity();
    for (auto x : w) {
      s = mon.mul(s, wf.eval[x]);
    }
    return s;
  }

}  // namespace

TEST_CASE("plus idempotents") {
  auto const bstar = syntactic("b*");
  auto const e     = plus_idempotents(bstar);
  CHECK(e.size() == 2);
  CHECK(std::find(e.begin(), e.end(), bstar.evaluate(ab.parse_word("b"))) != e.end());
  CHECK(std::find(e.begin(), e.end(), bstar.evaluate(ab.parse_word("a"))) != e.end());

  auto const abstar = syntactic("(ab)*");
  auto const e2     = plus_idempotents(abstar);
  CHECK(e2.size() == 3);
  for (auto w : {"ab", "ba", "aa"}) {
    CHECK(std::find(e2.begin(), e2.end(), abstar.evaluate(ab.parse_word(w))) != e2.end());
  }
  CHECK(std::find(e2.begin(), e2.end(), abstar.monoid.identity()) == e2.end());

  auto const a     = Alphabet::from_chars("a");
  auto const astar = syntactic("a*", a);
  CHECK(plus_idempotents(astar) == std::vector<Element>{astar.monoid.identity()});
}

TEST_CASE("well-formed alphabet") {
  CHECK(wf_letters(syntactic("b*")).size() == 18);
  auto const a    = Alphabet::from_chars("a");
  auto const even = syntactic("(aa)*", a);
  CHECK(even.monoid.size() == 2);
  CHECK(wf_letters(even).size() == 8);
  CHECK_THROWS_AS(wf_letters(syntactic("(ab)*"), 50), ResourceLimit);

  auto const letters = wf_letters(syntactic("b*"));
  CHECK(wf_letter_name(letters.front()) == "s0");
  std::set<std::string> names;
  for (auto const& x : letters) {
    names.insert(wf_letter_name(x));
  }
  CHECK(names.size() == letters.size());
  CHECK(names.count("m0_1_1") == 1);
}

TEST_CASE("shape tracker is exact") {
  for (auto name : {"a_anywhere", "b_star"}) {
    auto const m       = transition_monoid(fixture(name));
    auto const letters = wf_letters(m);
    std::vector<std::string> names;
    for (auto const& x : letters) {
      names.push_back(wf_letter_name(x));
    }
    Alphabet const alpha(names);
    auto const     tracker = wf_tracker(m, letters, alpha);
    std::size_t    count   = 0;
    for_each_word(letters.size(), 4, [&](Word const& w) {
      ++count;
      REQUIRE(accepts(tracker, w) == is_well_formed(letters, w));
    });
    CHECK(count > 100000);
  }
}

TEST_CASE("well-formed language") {
  for (auto name : {"a_anywhere", "b_star"}) {
    auto const d  = fixture(name);
    auto const m  = transition_monoid(d);
    auto const wf = wf_language(m, "L");
    auto co_m     = m;
    ElementSet co(m.monoid.size());
    for (Element s = 0; s < co.size(); ++s) {
      co[s] = !m.accepting_set("L")[s];
    }
    co_m.accepting = {{"L", co}};
    auto const wf_co = wf_language(co_m, "L");
    REQUIRE(wf.alphabet == wf_co.alphabet);
    auto const& f = m.accepting_set("L");
    for_each_word(wf.letters.size(), 3, [&](Word const& w) {
      bool const wellformed = is_well_formed(wf.letters, w);
      bool const in         = accepts(wf.dfa, w);
      bool const in_co      = accepts(wf_co.dfa, w);
      REQUIRE(in == (wellformed && f[eval_word(wf, m.monoid, w)]));
      // the two languages partition the well-formed words
      REQUIRE((in || in_co) == wellformed);
      REQUIRE_FALSE((in && in_co));
    });
    CHECK(accepts(wf.dfa, {}) == f[m.monoid.identity()]);
  }
}

TEST_CASE("evaluation is a morphism") {
  auto const m  = transition_monoid(fixture("ab_star"));
  auto const wf = wf_language(m, "L");
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<LetterIndex> letter(0, LetterIndex(wf.letters.size() - 1));
  std::uniform_int_distribution<std::size_t> len(0, 6);
  for (int i = 0; i < 500; ++i) {
    Word u(len(rng)), v(len(rng));
    for (auto& x : u) {
      x = letter(rng);
    }
    for (auto& x : v) {
      x = letter(rng);
    }
    Word uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    CHECK(eval_word(wf, m.monoid, uv)
          == m.monoid.mul(eval_word(wf, m.monoid, u), eval_word(wf, m.monoid, v)));
  }
  for (LetterIndex x = 0; x < wf.letters.size(); ++x) {
    auto const& l = wf.letters[x];
    using K       = WfLetter::Kind;
    Element want  = l.kind == K::single ? l.s
                    : l.kind == K::left ? m.monoid.mul(l.s, l.f)
                    : l.kind == K::right ? m.monoid.mul(l.e, l.s)
                                        : m.monoid.mul(l.e, l.s, l.f);
    CHECK(wf.eval[x] == want);
  }
}

TEST_CASE("well-formed words") {
  auto const m       = transition_monoid(fixture("b_star"));
  auto const wf      = wf_language(m, "L");
  auto const letters = wf.letters;
  auto index = [&](char const* name) { return *wf.alphabet.index_of(name); };
  auto const one  = m.monoid.identity();
  auto const zero = m.evaluate(ab.parse_word("a"));
  auto const l    = "l" + std::to_string(one) + "_" + std::to_string(zero);
  auto const r    = "r" + std::to_string(zero) + "_" + std::to_string(one);
  auto const r2   = "r" + std::to_string(one) + "_" + std::to_string(one);
  CHECK(is_well_formed(letters, {index(l.c_str()), index(r.c_str())}));
  CHECK_FALSE(is_well_formed(letters, {index(l.c_str()), index(r2.c_str())}));
  CHECK_FALSE(is_well_formed(letters, {index(l.c_str())}));
  auto const single_one = "s" + std::to_string(one);
  CHECK(accepts(wf.dfa, {index(single_one.c_str())}));
  auto const single_zero = "s" + std::to_string(zero);
  CHECK_FALSE(accepts(wf.dfa, {index(single_zero.c_str())}));
}

TEST_CASE("enriched separation") {
  auto const v = enriched_separation(fixture("b_star"), fixture("a_anywhere"), Direction::sigma2_from);
  CHECK(v.answer);
  CHECK(v.signature == "enriched");
  CHECK(v.cls == LogicClass::sigma2);
  auto const w = enriched_separation(fixture("b_star"), fixture("b_star"), Direction::sigma2_from);
  CHECK_FALSE(w.answer);
}

TEST_CASE("enriched membership") {
  auto const bstar = fixture("b_star");
  for (auto c : {LogicClass::sigma2, LogicClass::pi2, LogicClass::delta2, LogicClass::bsigma2,
                 LogicClass::sigma3, LogicClass::pi3, LogicClass::delta3}) {
    auto const v = enriched_membership(bstar, c);
    CHECK(v.answer);
    CHECK(v.signature == "enriched");
    CHECK(v.cls == c);
  }
  for (auto c : {LogicClass::sigma1, LogicClass::pi1, LogicClass::bsigma1}) {
    CHECK_THROWS_AS(enriched_membership(bstar, c), InvalidArgument);
  }
  EnrichedOptions small;
  small.max_letters = 10;
  CHECK_THROWS_AS(enriched_membership(bstar, LogicClass::sigma3, small), ResourceLimit);
}

TEST_CASE("transfer keeps Sigma_2 inside Sigma_3") {
  auto const d = fixture("b_star");
  REQUIRE(enriched_membership(d, LogicClass::sigma2).answer);
  auto const wf = wf_language(transition_monoid(d), "L");
  // the level-3 question on the well-formed language, order signature
  CHECK(decide(wf.dfa, LogicClass::sigma3).answer);
  CHECK(decide(wf.dfa, LogicClass::bsigma2).answer);
}
