#pragma once

#include <string_view>
#include <vector>

#include "fohier/alphabet.hpp"
#include "fohier/dfa.hpp"

namespace fohier {

  struct Regex {
    enum class Kind { empty_language, empty_word, letter, union_, concat, star };

    Kind               kind   = Kind::empty_language;
    LetterIndex        letter = 0;
    std::vector<Regex> children;

    static Regex empty_language() {
      return Regex{Kind::empty_language, 0, {}};
    }
    static Regex empty_word() {
      return Regex{Kind::empty_word, 0, {}};
    }
    static Regex of_letter(LetterIndex x) {
      return Regex{Kind::letter, x, {}};
    }
    static Regex alt(Regex a, Regex b) {
      return Regex{Kind::union_, 0, {std::move(a), std::move(b)}};
    }
    static Regex cat(Regex a, Regex b) {
      return Regex{Kind::concat, 0, {std::move(a), std::move(b)}};
    }
    static Regex star(Regex a) {
      return Regex{Kind::star, 0, {std::move(a)}};
    }

    bool operator==(Regex const&) const = default;
  };

  // Grammar:
  //   expr := cat ('|' cat)*     cat := rep+     rep := atom '*'*
  //   atom := LETTER | '(' expr ')' | '%e' | '%0'
  // Whitespace is ignored. Binary nodes associate to the left.
  Regex parse_regex(std::string_view text, Alphabet const& alphabet);

  // Minimal complete DFA, canonically numbered.
  Dfa regex_to_dfa(Regex const& ast, Alphabet const& alphabet);

  // Direct recursive interpretation, used as a reference in tests.
  bool regex_matches(Regex const& ast, Word const& w);

}  // namespace fohier
