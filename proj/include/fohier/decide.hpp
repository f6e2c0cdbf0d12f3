#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fohier/chains.hpp"
#include "fohier/dfa.hpp"
#include "fohier/morphism.hpp"

namespace fohier {

  enum class LogicClass {
    sigma1,
    pi1,
    bsigma1,
    sigma2,
    pi2,
    delta2,
    bsigma2,
    sigma3,
    pi3,
    delta3
  };

  std::string_view class_name(LogicClass c);
  std::optional<LogicClass> parse_class(std::string_view name);
  std::vector<LogicClass> const& all_classes();

  // Elements are reported by name (a shortest preimage word, see
  // element_names) together with their index in the named monoid.
  struct NamedElement {
    Element     index = 0;
    std::string name;
  };

  struct EquationViolation {
    std::string                                       equation;
    std::vector<std::pair<std::string, NamedElement>> parameters;
    NamedElement                                      lhs;
    NamedElement                                      rhs;
  };

  struct ChainPair {
    std::string               direction;  // "sigma2" or "pi2"
    NamedElement              first;      // accepting element of the first language
    NamedElement              second;     // accepting element of the second language
    std::vector<NamedElement> chain;
    std::string               derivation;
    Alphabet                  alphabet;   // alphabet of the witness words
    std::vector<Word>         witnesses;  // rank-1 witnesses, empty if over budget
  };

  struct Certificate {
    std::size_t checked = 0;
    std::string note;
  };

  using Evidence = std::variant<EquationViolation, ChainPair, Certificate>;

  struct Verdict {
    LogicClass                 cls       = LogicClass::sigma1;
    std::string                signature = "order";
    bool                       answer    = false;
    Evidence                   evidence;
    std::optional<std::string> separator_rank;
  };

  struct DecideOptions {
    Limits      limits;
    std::size_t max_monoid     = 512;
    std::size_t max_completion = 4096;
    // Letter merging and dead-ideal collapsing before saturation.
    bool reduce = true;
  };

  enum class Direction { sigma2_from, pi2_from };

  Verdict membership_sigma1(Dfa const& l, bool pi = false, DecideOptions const& options = {});
  Verdict membership_bsigma1(Dfa const& l, DecideOptions const& options = {});

  // Theorem-style separation on the joint morphism of l1 and l2.
  Verdict separation_sigma2(Dfa const&           l1,
                            Dfa const&           l2,
                            Direction            direction,
                            DecideOptions const& options = {});

  // Same on a morphism carrying tags "L1" and "L2".
  Verdict separation_sigma2(Morphism const&      joint,
                            Direction            direction,
                            DecideOptions const& options = {});

  Verdict membership_level2(Dfa const& l, LogicClass which, DecideOptions const& options = {});
  Verdict membership_sigma3_family(Dfa const& l, LogicClass which, DecideOptions const& options = {});
  Verdict membership_bsigma2(Dfa const& l, DecideOptions const& options = {});

  // Any class.
  Verdict decide(Dfa const& l, LogicClass which, DecideOptions const& options = {});

  // Order-signature verdicts on a morphism recognizing tag "L" (used by the
  // enriched pipeline, whose language is given by a morphism).
  Verdict membership_sigma3_family(Morphism const& syntactic, LogicClass which, DecideOptions const& options = {});
  Verdict membership_bsigma2(Morphism const& syntactic, DecideOptions const& options = {});

  struct AlternationSchema {
    Element s = 0, s1 = 0, s2 = 0;
    // arena ids of (r1,R1), (r2,R2) and the stored juncture whose omega
    // power is (e,E)
    std::size_t r1 = 0, r2 = 0, e = 0;

    bool operator==(AlternationSchema const& o) const {
      return s == o.s && s1 == o.s1 && s2 == o.s2;
    }
  };

  // Distinct schemas in a fixed order; `visit` returns false to stop early.
  void for_each_alternation_schema(JunctureSet const&                              j2,
                                   std::function<bool(AlternationSchema const&)> visit);
  std::vector<AlternationSchema> alternation_schemas(JunctureSet const& j2, Limits const& limits = {});

  Verdict check_eq16(Morphism const&                       m,
                     std::vector<AlternationSchema> const& schemas,
                     Limits const&                         limits = {});
  Verdict check_eq17(Morphism const& m, ChainSet const& c3);

  std::string describe(Evidence const& e);

}  // namespace fohier
