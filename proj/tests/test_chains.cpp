#include <set>

#include "doctest.h"
#include "fohier/audit.hpp"
#include "fohier/chains.hpp"
#include "fohier/errors.hpp"
#include "fohier/oracle.hpp"
#include "fohier/regex.hpp"

using namespace fohier;

namespace {

  Alphabet const ab = Alphabet::from_chars("ab");

  Dfa dfa_of(char const* re) {
    return regex_to_dfa(parse_regex(re, ab), ab);
  }

  Completion completion_of(char const* re) {
    return alphabet_completion(transition_monoid(dfa_of(re)));
  }

  Element elem(Morphism const& m, char const* w) {
    return m.evaluate(ab.parse_word(w));
  }

  char const* const small_languages[] = {
      "(a|b)*a(a|b)*", "b*", "(ab)*", "a*b*", "(a|b)*ab", "a(a|b)*", "(a|b)*a", "b*ab*", "%e"};

  void check_closed(JunctureSet const& j) {
    auto failure = audit_juncture_closure(j);
    INFO(failure.value_or(""));
    REQUIRE_FALSE(failure);
  }

  void check_chain_closures(std::vector<std::shared_ptr<JunctureSet const>> const& levels) {
    auto failure = audit_chain_facts(levels);
    INFO(failure.value_or(""));
    REQUIRE_FALSE(failure);
  }

}  // namespace

TEST_CASE("ChainSet coding") {
  ChainSet c(3, 5);
  c.insert({1, 2, 3});
  c.insert({4, 0, 0});
  c.insert({1, 2, 3});
  CHECK(c.size() == 2);
  CHECK(c.contains({1, 2, 3}));
  CHECK_FALSE(c.contains({3, 2, 1}));
  CHECK(c.decode(c.encode({4, 0, 2})) == Chain{4, 0, 2});
  CHECK_THROWS_AS(ChainSet(40, 1000), ResourceLimit);
}

TEST_CASE("initial_junctures") {
  auto c = completion_of("b*");
  auto d = initial_junctures(c.morphism, 2);
  CHECK(d.maximal_count() == 4);
  auto z = elem(c.morphism, "a");
  CHECK(d.contains(Juncture{z, {z}}));
  auto d1 = initial_junctures(c.morphism, 1);
  CHECK(d1.maximal_count() == 4);
  for (auto id : d1.maximal()) {
    CHECK(d1.juncture(id).chains.empty());
  }
  auto trivial = transition_monoid(dfa_of("(a|b)*"));
  auto t3      = initial_junctures(alphabet_completion(trivial).morphism, 3);
  CHECK(alphabet_completion(trivial).morphism.monoid.size() == 4);
  Morphism one;
  one.monoid       = Monoid(1, 0, {0});
  one.alphabet     = Alphabet::from_chars("a");
  one.letter_image = {0};
  one.element_alph = std::vector<LetterSet>{LetterSet(1)};
  one.validate();
  auto single = initial_junctures(one, 3);
  CHECK(single.maximal_count() == 1);
  CHECK(chains_of_length(single).chains() == std::vector<Chain>{{0, 0, 0}});
}

TEST_CASE("saturation on the fixtures") {
  auto c1  = completion_of("(a|b)*a(a|b)*");
  auto l1  = all_junctures(c1.morphism, 2);
  auto ch1 = chains_of_length(*l1[1]);
  for (auto const& x : ch1.chains()) {
    CHECK(x[0] == x[1]);
  }

  auto c2 = completion_of("b*");
  auto l2 = all_junctures(c2.morphism, 3);
  for (std::size_t n = 2; n <= 3; ++n) {
    for (auto const& x : chains_of_length(*l2[n - 1]).chains()) {
      CHECK(alternation(x) == 0);
    }
  }

  auto  c3  = completion_of("(ab)*");
  auto& m3  = c3.morphism;
  auto  l3  = all_junctures(m3, 3);
  auto  e   = elem(m3, "ab");
  auto  z   = elem(m3, "aab");
  CHECK(m3.alph(z) == m3.alph(e));
  CHECK(chains_of_length(*l3[1]).contains({e, z}));
  CHECK(chains_of_length(*l3[2]).contains({e, z, z}));
  CHECK_FALSE(chains_of_length(*l3[1]).contains({z, e}));

  auto again = saturate(*l3[1], l3[0]);
  CHECK(chains_of_length(again) == chains_of_length(*l3[1]));
  CHECK(again.maximal_count() == l3[1]->maximal_count());
}

TEST_CASE("closure properties on small completions") {
  for (auto re : small_languages) {
    auto c = completion_of(re);
    REQUIRE(c.morphism.monoid.size() <= 12);
    auto levels = all_junctures(c.morphism, 3);
    check_closed(*levels[1]);
    check_closed(*levels[2]);
    check_chain_closures(levels);
  }
}

TEST_CASE("Sigma_2 chains are Sigma_1 chains") {
  for (auto re : small_languages) {
    auto c      = completion_of(re);
    auto levels = all_junctures(c.morphism, 2);
    for (auto const& x : chains_of_length(*levels[1]).chains()) {
      CHECK(exact_sigma1_pair(c.morphism, x[0], x[1]));
    }
  }
}

TEST_CASE("witnesses pass the game") {
  for (auto re : small_languages) {
    auto c      = completion_of(re);
    auto levels = all_junctures(c.morphism, 3);
    for (std::size_t n = 2; n <= 3; ++n) {
      for (auto const& x : chains_of_length(*levels[n - 1]).chains()) {
        auto words = synthesize_witness(*levels[n - 1], x, 1);
        REQUIRE(words.size() == n);
        for (std::size_t i = 0; i < n; ++i) {
          REQUIRE(c.morphism.evaluate(words[i]) == x[i]);
        }
        for (std::size_t i = 0; i + 1 < n; ++i) {
          REQUIRE(ef_leq(2, 1, words[i], words[i + 1]));
        }
      }
    }
  }
}

TEST_CASE("rank-2 witnesses") {
  auto c      = completion_of("(ab)*");
  auto levels = all_junctures(c.morphism, 2);
  std::size_t checked = 0;
  for (auto const& x : chains_of_length(*levels[1]).chains()) {
    auto words = synthesize_witness(*levels[1], x, 2);
    CHECK(c.morphism.evaluate(words[0]) == x[0]);
    CHECK(c.morphism.evaluate(words[1]) == x[1]);
    CHECK(ef_leq(2, 2, words[0], words[1]));
    ++checked;
  }
  CHECK(checked > 0);
  auto e = elem(c.morphism, "ab");
  auto z = elem(c.morphism, "aab");
  auto words = synthesize_witness(*levels[1], {e, z}, 1);
  CHECK(ab.format(words[0]).size() >= 8);
  CHECK_THROWS_AS(synthesize_witness(*levels[1], {z, e}, 1), InvalidArgument);
  CHECK_THROWS_AS(synthesize_witness(*levels[1], {e, z}, 3, Limits{1'000'000, 20}),
                  ResourceLimit);
}

TEST_CASE("chains over-approximate short rank-1 witnesses") {
  for (auto re : {"(ab)*", "a*b*", "b*"}) {
    auto c      = completion_of(re);
    auto levels = all_junctures(c.morphism, 2);
    auto brute  = brute_chain_set(c.morphism, 2, 2, 1, 6);
    for (auto const& x : chains_of_length(*levels[1]).chains()) {
      auto words = synthesize_witness(*levels[1], x, 1);
      if (words[0].size() <= 6 && words[1].size() <= 6) {
        CHECK(brute.contains(x));
      }
    }
  }
}

TEST_CASE("projection, alternation and rank bound") {
  auto c      = completion_of("(ab)*");
  auto levels = all_junctures(c.morphism, 2);
  auto p      = project_chains(chains_of_length(*levels[1]), c);
  auto base   = transition_monoid(dfa_of("(ab)*"));
  CHECK(p.contains({elem(base, "ab"), elem(base, "aa")}));
  CHECK(p.contains({elem(base, ""), elem(base, "")}));
  CHECK(project_chains(ChainSet(2, c.morphism.monoid.size()), c).empty());

  CHECK(alternation({3, 3, 3}) == 0);
  CHECK(alternation({3, 4, 3}) == 2);
  CHECK(alternation({3, 4, 4, 5}) == 2);

  CHECK(rank_bound(2, 2) == 288);
  CHECK(rank_bound(2, 4) == 4608);
  CHECK(rank_bound(1, 3) == 162);
  CHECK(format_rank_bound(2, 4) == "4608");
  CHECK(format_rank_bound(3, 100) == "9*3*100^2*2^10000");
}

TEST_CASE("derivations") {
  auto c      = completion_of("(ab)*");
  auto levels = all_junctures(c.morphism, 2);
  auto e      = elem(c.morphism, "ab");
  auto z      = elem(c.morphism, "aab");
  auto id     = levels[1]->find_cover(Juncture{e, {z}});
  REQUIRE(id.has_value());
  auto text = describe_derivation(*levels[1], *id);
  CHECK(text.find("op3") != std::string::npos);
}

TEST_CASE("saturation needs alphabet compatibility") {
  auto m = transition_monoid(dfa_of("(ab)*"));
  auto levels = all_junctures(alphabet_completion(m).morphism, 1);
  CHECK_THROWS_AS(saturate(initial_junctures(m, 2), levels[0]), InvalidArgument);
  CHECK_THROWS_AS(all_junctures(alphabet_completion(m).morphism, 3, Limits{5, 100}), ResourceLimit);
}
