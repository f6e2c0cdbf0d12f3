#pragma once

#include <cstddef>
#include <cstdint>

#include "fohier/chains.hpp"
#include "fohier/dfa.hpp"
#include "fohier/morphism.hpp"

namespace fohier {

  struct GameBudget {
    std::size_t max_nodes = 50'000'000;
  };

  // w <~_i^k w': Duplicator survives k rounds of the Sigma_i game started on
  // w. Letters are compared by index; both words use the same alphabet of at
  // most 64 letters. Throws ResourceLimit when the node budget runs out.
  bool ef_leq(unsigned i, unsigned k, Word const& w, Word const& w2, GameBudget const& budget = {});

  // Chains (alpha(w_1), ..., alpha(w_n)) with w_1 <~ ... <~ w_n and every
  // |w_j| <= maxlen.
  ChainSet brute_chain_set(Morphism const&   m,
                           unsigned          i,
                           std::size_t       n,
                           unsigned          k,
                           std::size_t       maxlen,
                           GameBudget const& budget = {});

  // Words having a scattered subword accepted by the given DFA.
  class UpwardClosure {
   public:
    explicit UpwardClosure(Dfa d) : _d(std::move(d)) {}

    bool accepts(Word const& w) const;
    bool is_empty() const;
    bool intersects(Dfa const& other) const;
    Dfa const& base() const noexcept {
      return _d;
    }

   private:
    Dfa _d;
  };

  UpwardClosure upward_closure(Dfa const& d);

  // Right Cayley automaton of a morphism accepting alpha^-1(s).
  Dfa preimage_dfa(Morphism const& m, Element s);

  // alpha^-1(s) meets the upward closure of alpha^-1(t).
  bool exact_sigma1_pair(Morphism const& m, Element t, Element s);

  // s^w <= s^w t s^w for all s, t of the alphabet completion with
  // alph(t) included in alph(s).
  bool pinweil_sigma2(Dfa const& l, std::size_t max_monoid = 512);

}  // namespace fohier
