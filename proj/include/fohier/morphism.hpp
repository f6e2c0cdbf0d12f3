#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fohier/alphabet.hpp"
#include "fohier/dfa.hpp"
#include "fohier/monoid.hpp"

namespace fohier {

  // Membership mask over the elements of a monoid.
  using ElementSet = std::vector<bool>;

  std::vector<Element> elements_of(ElementSet const& set);

  // Monoid morphism A* -> M with named accepting sets.
  //
  // `element_alph` is present iff the morphism is alphabet compatible. When
  // `absorbing` is set, that element stands for a collapsed ideal of elements
  // that no accepting context can reach; it carries no alphabet and the chain
  // computations ignore it.
  struct Morphism {
    Monoid                                          monoid;
    Alphabet                                        alphabet;
    std::vector<Element>                            letter_image;
    ElementSet                                      image;
    std::vector<std::pair<std::string, ElementSet>> accepting;
    std::optional<std::vector<LetterSet>>           element_alph;
    std::optional<Element>                          absorbing;

    // Computes `image` and checks every invariant. Throws InvalidArgument.
    void validate();

    ElementSet const& accepting_set(std::string const& tag) const;
    bool has_tag(std::string const& tag) const;
    Element evaluate(Word const& w) const;
    std::vector<Element> image_elements() const {
      return elements_of(image);
    }
    bool alphabet_compatible() const noexcept {
      return element_alph.has_value();
    }
    LetterSet const& alph(Element s) const {
      return element_alph->at(s);
    }
    bool is_live(Element s) const {
      return image[s] && (!absorbing || *absorbing != s);
    }
  };

  // Transition monoid of a complete DFA; accepting tag "L". Elements are
  // numbered in BFS order from the identity following alphabet order.
  Morphism transition_monoid(Dfa const& d, std::size_t max_size = 512);

  // Transition monoid of the parallel product; tags "L1" and "L2".
  Morphism joint_morphism(Dfa const& d1, Dfa const& d2, std::size_t max_size = 512);

  // Boolean relation on element indices.
  class Preorder {
   public:
    explicit Preorder(std::size_t n) : _n(n), _rel(n * n, false) {}

    std::size_t size() const noexcept {
      return _n;
    }
    bool leq(Element s, Element t) const {
      return _rel[static_cast<std::size_t>(s) * _n + t];
    }
    void set(Element s, Element t, bool v = true) {
      _rel[static_cast<std::size_t>(s) * _n + t] = v;
    }

    // Checks reflexivity, transitivity and compatibility with multiplication
    // over the given elements; returns a description of the first failure.
    std::optional<std::string> check(Monoid const& m, std::vector<Element> const& elements) const;

   private:
    std::size_t       _n;
    std::vector<bool> _rel;
  };

  // s <= t iff x s y in F implies x t y in F for all image elements x, y.
  Preorder recognition_preorder(Morphism const& m, std::string const& tag);

  bool is_upward_closed(ElementSet const& f, Preorder const& p);

  // Alphabet completion together with the projection onto the base monoid.
  struct Completion {
    Morphism             morphism;
    std::vector<Element> base;  // completion element -> base element
  };

  // w -> (alpha(w), alph(w)), restricted to its image. Returns the input
  // (with element_alph filled in) when it is already alphabet compatible.
  Completion alphabet_completion(Morphism const& m, std::size_t max_size = 512);

  // Elements s such that x s y lies in no accepting set for any x, y.
  ElementSet dead_elements(Morphism const& m);

  // Rees quotient collapsing the dead elements into one absorbing element.
  // Returns the input unchanged when nothing is dead.
  Morphism collapse_dead(Morphism const& m);

  // Keeps one letter per distinct letter image (the first in alphabet order).
  // Definability and separability in every level of the order hierarchy are
  // unchanged: a formula over the kept letters lifts back by replacing each
  // letter predicate with the disjunction over its class.
  Morphism merge_equivalent_letters(Morphism const& m);

  // Shortest word (BFS in letter order) evaluating to each image element.
  std::vector<Word> shortest_preimages(Morphism const& m);

  // `.mon` text: size / identity / table rows / letters / accept lines.
  Morphism parse_monoid_file(std::string_view text);

  // Display name per element: its shortest preimage word, "1" for the
  // identity and "0" for the absorbing element; "?" outside the image.
  std::vector<std::string> element_names(Morphism const& m);

  // Re-expresses a word letter by letter name in another alphabet.
  Word translate_word(Word const& w, Alphabet const& from, Alphabet const& to);

}  // namespace fohier
