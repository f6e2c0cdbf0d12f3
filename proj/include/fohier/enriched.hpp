#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fohier/decide.hpp"
#include "fohier/dfa.hpp"
#include "fohier/morphism.hpp"

namespace fohier {

  // Letters of the well-formed-word alphabet: s, (s,f), (e,s) and (e,s,f)
  // with s in M and e, f idempotent images of nonempty words.
  struct WfLetter {
    enum class Kind { single, left, right, middle };
    Kind    kind = Kind::single;
    Element s    = 0;
    Element e    = 0;  // right, middle
    Element f    = 0;  // left, middle

    bool operator==(WfLetter const&) const = default;
  };

  std::string wf_letter_name(WfLetter const& x);

  // Idempotents of the image of nonempty words, ascending.
  std::vector<Element> plus_idempotents(Morphism const& m);

  // Singles, then lefts, rights and middles, each in lexicographic order of
  // their components. Throws ResourceLimit above `max_letters`.
  std::vector<WfLetter> wf_letters(Morphism const& m, std::size_t max_letters = 2000);

  struct WfLanguage {
    std::vector<WfLetter> letters;
    Alphabet              alphabet;
    std::vector<Element>  eval;  // letter -> element of the base monoid
    Dfa                   dfa;   // minimal
  };

  // Shape automaton for well-formed words: states start, done, sink and one
  // per expected idempotent. Not minimized.
  Dfa wf_tracker(Morphism const& m, std::vector<WfLetter> const& letters, Alphabet const& alphabet);

  // Well-formed words whose evaluation lies in the accepting set of `tag`.
  WfLanguage wf_language(Morphism const& m, std::string const& tag, std::size_t max_letters = 2000);

  // Direct recursive check of the well-formed shape.
  bool is_well_formed(std::vector<WfLetter> const& letters, Word const& w);

  struct EnrichedOptions {
    DecideOptions decide;
    std::size_t   max_letters = 2000;
  };

  // Membership in the enriched signature. Sigma2/Pi2/Delta2 go through
  // separation from the complement; BSigma2 and the level-3 classes through
  // order membership of the well-formed language. Level 1 classes throw
  // InvalidArgument.
  Verdict enriched_membership(Dfa const& l, LogicClass which, EnrichedOptions const& options = {});

  Verdict enriched_separation(Dfa const&             l1,
                              Dfa const&             l2,
                              Direction              direction,
                              EnrichedOptions const& options = {});

}  // namespace fohier
