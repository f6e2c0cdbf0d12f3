#include <set>

#include "doctest.h"
#include "fohier/errors.hpp"
#include "fohier/morphism.hpp"
#include "fohier/regex.hpp"

using namespace fohier;

namespace {

  Alphabet const ab = Alphabet::from_chars("ab");

  Dfa dfa_of(char const* re) {
    return regex_to_dfa(parse_regex(re, ab), ab);
  }

  std::vector<Word> all_words(std::size_t k, std::size_t max_len) {
    std::vector<Word> out{{}};
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].size() == max_len) {
        continue;
      }
      for (LetterIndex x = 0; x < k; ++x) {
        auto w = out[i];
        w.push_back(x);
        out.push_back(std::move(w));
      }
    }
    return out;
  }

  // Distinct state transformations induced by words up to `len`.
  std::size_t brute_transformations(Dfa const& d, std::size_t len) {
    std::set<std::vector<State>> seen;
    for (auto const& w : all_words(d.alphabet().size(), len)) {
      std::vector<State> f;
      for (State q = 0; q < d.size(); ++q) {
        f.push_back(d.run(q, w));
      }
      seen.insert(f);
    }
    return seen.size();
  }

  Element elem(Morphism const& m, char const* w) {
    return m.evaluate(m.alphabet.parse_word(w));
  }

  // Word-level syntactic preorder u <= v over contexts up to `len`.
  bool word_leq(Dfa const& d, Word const& u, Word const& v, std::size_t len) {
    auto ctx = all_words(d.alphabet().size(), len);
    for (auto const& x : ctx) {
      for (auto const& y : ctx) {
        Word xu = x, xv = x;
        xu.insert(xu.end(), u.begin(), u.end());
        xu.insert(xu.end(), y.begin(), y.end());
        xv.insert(xv.end(), v.begin(), v.end());
        xv.insert(xv.end(), y.begin(), y.end());
        if (accepts(d, xu) && !accepts(d, xv)) {
          return false;
        }
      }
    }
    return true;
  }

  Monoid ab_monoid() {
    return transition_monoid(dfa_of("(ab)*")).monoid;
  }

}  // namespace

TEST_CASE("Monoid validation") {
  CHECK_NOTHROW(Monoid(2, 0, {0, 1, 1, 1}));
  CHECK_NOTHROW(Monoid(2, 0, {0, 1, 1, 0}));
  CHECK_THROWS_AS(Monoid(2, 1, {0, 1, 1, 1}), InvalidArgument);
  // identity 0; a*a = b, a*b = a, b*a = b, b*b = b is not associative
  CHECK_THROWS_AS(Monoid(3, 0, {0, 1, 2, 1, 2, 1, 2, 2, 2}), InvalidArgument);
}

TEST_CASE("transition_monoid") {
  auto fx1 = transition_monoid(dfa_of("(a|b)*a(a|b)*"));
  CHECK(fx1.monoid.size() == 2);
  CHECK(fx1.monoid.size() == brute_transformations(dfa_of("(a|b)*a(a|b)*"), 4));
  auto s = elem(fx1, "a");
  CHECK(elem(fx1, "b") == fx1.monoid.identity());
  CHECK(fx1.monoid.mul(s, s) == s);
  CHECK(elements_of(fx1.accepting_set("L")) == std::vector<Element>{s});

  auto fx2 = transition_monoid(dfa_of("b*"));
  CHECK(fx2.monoid.size() == 2);
  CHECK(elements_of(fx2.accepting_set("L")) == std::vector<Element>{fx2.monoid.identity()});

  auto fx3 = transition_monoid(dfa_of("(ab)*"));
  CHECK(fx3.monoid.size() == 6);
  CHECK(fx3.monoid.size() == brute_transformations(dfa_of("(ab)*"), 4));
  CHECK(elem(fx3, "aa") == elem(fx3, "bb"));
  CHECK(elem(fx3, "aba") == elem(fx3, "a"));
  CHECK(elem(fx3, "bab") == elem(fx3, "b"));
  std::set<Element> names{elem(fx3, ""), elem(fx3, "a"), elem(fx3, "b"),
                          elem(fx3, "ab"), elem(fx3, "ba"), elem(fx3, "aa")};
  CHECK(names.size() == 6);
  CHECK(elements_of(fx3.accepting_set("L"))
        == std::vector<Element>{elem(fx3, ""), elem(fx3, "ab")});
  CHECK(std::count(fx3.image.begin(), fx3.image.end(), true) == 6);
  CHECK_THROWS_AS(transition_monoid(dfa_of("(ab)*"), 4), ResourceLimit);
  CHECK_THROWS_AS(fx3.accepting_set("L2"), InvalidArgument);
}

TEST_CASE("recognition_preorder") {
  auto d1  = dfa_of("(a|b)*a(a|b)*");
  auto fx1 = transition_monoid(d1);
  auto p1  = recognition_preorder(fx1, "L");
  auto one = fx1.monoid.identity();
  auto s   = elem(fx1, "a");
  CHECK(p1.leq(one, s));
  CHECK_FALSE(p1.leq(s, one));

  auto fx2 = transition_monoid(dfa_of("b*"));
  auto p2  = recognition_preorder(fx2, "L");
  CHECK(p2.leq(elem(fx2, "a"), fx2.monoid.identity()));
  CHECK_FALSE(p2.leq(fx2.monoid.identity(), elem(fx2, "a")));

  for (auto re : {"(ab)*", "(a(ab)*b)*", "a*b*", "(a|b)*ab", "(aa)*b"}) {
    auto d = dfa_of(re);
    auto m = transition_monoid(d);
    auto p = recognition_preorder(m, "L");
    CHECK_FALSE(p.check(m.monoid, m.image_elements()).has_value());
    CHECK(is_upward_closed(m.accepting_set("L"), p));
    auto words = shortest_preimages(m);
    for (auto x : m.image_elements()) {
      for (auto y : m.image_elements()) {
        CHECK(p.leq(x, y) == word_leq(d, words[x], words[y], 4));
      }
    }
  }
}

TEST_CASE("is_upward_closed") {
  auto fx1 = transition_monoid(dfa_of("(a|b)*a(a|b)*"));
  auto p   = recognition_preorder(fx1, "L");
  CHECK(is_upward_closed(fx1.accepting_set("L"), p));
  ElementSet only_one(2, false);
  only_one[fx1.monoid.identity()] = true;
  CHECK_FALSE(is_upward_closed(only_one, p));
  CHECK(is_upward_closed(ElementSet(2, true), p));
}

TEST_CASE("omega powers") {
  auto m = ab_monoid();
  auto fx3 = transition_monoid(dfa_of("(ab)*"));
  CHECK(idempotent_power(m, m.identity()) == m.identity());
  CHECK(idempotent_power(m, elem(fx3, "ab")) == elem(fx3, "ab"));
  CHECK(idempotent_power(m, elem(fx3, "a")) == elem(fx3, "aa"));
  CHECK(global_omega(m) == 2);
  CHECK(global_omega(Monoid(1, 0, {0})) == 1);
  CHECK(global_omega(Monoid(2, 0, {0, 1, 1, 1})) == 1);

  for (auto re : {"(ab)*", "(aaa)*", "(aa)*b(aaa)*", "(a(ab)*b)*", "a*ba*ba*"}) {
    auto mm    = transition_monoid(dfa_of(re)).monoid;
    auto omega = global_omega(mm);
    for (Element s = 0; s < mm.size(); ++s) {
      CHECK(idempotent_power(mm, s) == mm.power(s, omega));
      CHECK(mm.is_idempotent(mm.power(s, idempotent_exponent(mm, s))));
    }
  }
}

TEST_CASE("J-triviality") {
  CHECK(is_j_trivial(Monoid(2, 0, {0, 1, 1, 1})));
  CHECK(is_j_trivial(Monoid(1, 0, {0})));
  auto fx3 = transition_monoid(dfa_of("(ab)*"));
  CHECK_FALSE(is_j_trivial(fx3.monoid));
  auto ideal_a  = two_sided_ideal(fx3.monoid, elem(fx3, "a"));
  auto ideal_ab = two_sided_ideal(fx3.monoid, elem(fx3, "ab"));
  CHECK(ideal_a == ideal_ab);
  CHECK(std::count(ideal_a.begin(), ideal_a.end(), true) == 5);
}

TEST_CASE("alphabet_completion") {
  auto fx2 = transition_monoid(dfa_of("b*"));
  auto c2  = alphabet_completion(fx2);
  auto& m2 = c2.morphism;
  CHECK(m2.monoid.size() == 4);
  std::set<std::pair<Element, std::string>> pairs;
  for (Element s = 0; s < 4; ++s) {
    pairs.emplace(c2.base[s], format_letter_set(m2.alph(s), ab));
  }
  auto one = fx2.monoid.identity(), zero = elem(fx2, "a");
  CHECK(pairs == std::set<std::pair<Element, std::string>>{
                     {one, "{}"}, {one, "{b}"}, {zero, "{a}"}, {zero, "{a,b}"}});
  CHECK(elements_of(m2.accepting_set("L"))
        == std::vector<Element>{elem(m2, ""), elem(m2, "b")});

  auto fx1 = transition_monoid(dfa_of("(a|b)*a(a|b)*"));
  CHECK(alphabet_completion(fx1).morphism.monoid.size() == 4);

  auto again = alphabet_completion(m2);
  CHECK(again.morphism.monoid == m2.monoid);
  CHECK(again.morphism.element_alph == m2.element_alph);

  for (auto re : {"(ab)*", "(a(ab)*b)*", "a*b*", "(a|b)*ab"}) {
    auto m = transition_monoid(dfa_of(re));
    auto c = alphabet_completion(m);
    auto const& cm = c.morphism;
    for (auto s : cm.image_elements()) {
      for (auto t : cm.image_elements()) {
        CHECK(c.base[cm.monoid.mul(s, t)] == m.monoid.mul(c.base[s], c.base[t]));
        CHECK(cm.alph(cm.monoid.mul(s, t)) == (cm.alph(s) | cm.alph(t)));
      }
    }
    CHECK(cm.alph(cm.monoid.identity()).empty());
  }
}

TEST_CASE("joint_morphism") {
  auto db = dfa_of("b*");
  auto j  = joint_morphism(db, db);
  CHECK(j.monoid.size() == 2);
  CHECK(j.accepting_set("L1") == j.accepting_set("L2"));

  auto j2 = joint_morphism(db, dfa_of("(a|b)*a(a|b)*"));
  CHECK(j2.monoid.size() == 2);
  CHECK(elements_of(j2.accepting_set("L1")) == std::vector<Element>{j2.monoid.identity()});
  CHECK(elements_of(j2.accepting_set("L2")) == std::vector<Element>{elem(j2, "a")});

  auto d3 = dfa_of("(ab)*");
  auto j3 = joint_morphism(d3, db);
  CHECK(j3.monoid.size() <= 12);
  for (auto const& w : all_words(2, 6)) {
    auto s = j3.evaluate(w);
    REQUIRE(j3.accepting_set("L1")[s] == accepts(d3, w));
    REQUIRE(j3.accepting_set("L2")[s] == accepts(db, w));
  }
  CHECK_THROWS_AS(joint_morphism(db, regex_to_dfa(parse_regex("a", Alphabet::from_chars("a")),
                                                  Alphabet::from_chars("a"))),
                  InvalidArgument);
}

TEST_CASE("dead collapse and letter merging") {
  auto fx3 = transition_monoid(dfa_of("(ab)*"));
  auto dead = dead_elements(fx3);
  CHECK(elements_of(dead) == std::vector<Element>{elem(fx3, "aa")});
  auto c = collapse_dead(fx3);
  CHECK(c.monoid.size() == 6);
  CHECK(c.absorbing == elem(c, "aa"));

  auto d = dfa_of("(a|b)*a(a|b)*");
  auto m = transition_monoid(d);
  CHECK(elements_of(dead_elements(m)).empty());
  CHECK(collapse_dead(m).monoid == m.monoid);

  auto abc = Alphabet::from_chars("abc");
  auto dm  = transition_monoid(regex_to_dfa(parse_regex("(a|c)*b", abc), abc));
  auto mm  = merge_equivalent_letters(dm);
  CHECK(mm.alphabet.names() == std::vector<std::string>{"a", "b"});
  CHECK(translate_word(abc.parse_word("ab"), abc, mm.alphabet) == mm.alphabet.parse_word("ab"));
  CHECK_THROWS_AS(translate_word(abc.parse_word("c"), abc, mm.alphabet), InvalidArgument);
}

TEST_CASE("monoid files") {
  auto m = parse_monoid_file(
      "# fmt 1\nsize: 2\nidentity: 0\ntable:\n0 1\n1 1\nletters: a=1 b=0\naccept L: 1\n");
  CHECK(m.monoid.size() == 2);
  CHECK(m.evaluate(m.alphabet.parse_word("ba")) == 1);
  CHECK(elements_of(m.accepting_set("L")) == std::vector<Element>{1});
  CHECK_THROWS_AS(parse_monoid_file("size: 2\nidentity: 0\ntable:\n0 1\n"), ParseError);
  CHECK_THROWS_AS(
      parse_monoid_file("size: 2\nidentity: 1\ntable:\n0 1\n1 1\nletters: a=1\n"),
      InvalidArgument);
  auto names = element_names(transition_monoid(dfa_of("(ab)*")));
  CHECK(names[0] == "1");
  CHECK(std::set<std::string>(names.begin(), names.end())
        == std::set<std::string>{"1", "a", "b", "aa", "ab", "ba"});
}
