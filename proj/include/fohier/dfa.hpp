#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fohier/alphabet.hpp"

namespace fohier {

  using State = std::uint32_t;

  // Complete deterministic automaton over a declared alphabet. Transitions
  // are total; states are dense indices 0..size()-1.
  class Dfa {
   public:
    Dfa() = default;
    Dfa(Alphabet alphabet,
        std::size_t num_states,
        State initial,
        std::vector<bool> finals,
        std::vector<State> transitions);

    Alphabet const& alphabet() const noexcept {
      return _alphabet;
    }
    std::size_t size() const noexcept {
      return _num_states;
    }
    State initial() const noexcept {
      return _initial;
    }
    bool is_final(State q) const {
      return _finals[q];
    }
    std::vector<bool> const& finals() const noexcept {
      return _finals;
    }
    State next(State q, LetterIndex x) const {
      return _trans[q * _alphabet.size() + x];
    }
    State run(State q, Word const& w) const;

    // Reachable, Myhill-Nerode reduced, states numbered in BFS order from the
    // initial state following alphabet order.
    Dfa minimized() const;

    bool operator==(Dfa const& other) const = default;

   private:
    Alphabet           _alphabet;
    std::size_t        _num_states = 0;
    State              _initial    = 0;
    std::vector<bool>  _finals;
    std::vector<State> _trans;
  };

  bool accepts(Dfa const& d, Word const& w);

  Dfa complement(Dfa const& d);

  // Synchronous product; `final_if` selects which state pairs accept.
  enum class ProductMode { intersection, union_ };
  Dfa product(Dfa const& d1, Dfa const& d2, ProductMode mode);

  // DFA block text as used in `.lang` files (without the alphabet line).
  std::string format_dfa_block(Dfa const& d);

}  // namespace fohier
