#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fohier/alphabet.hpp"
#include "fohier/dfa.hpp"

namespace fohier {

  // Deterministic pseudo-random minimal DFAs with at most `states` states,
  // pairwise distinct as languages. Returns fewer than `count` when the state
  // bound admits fewer languages than requested (e.g. states = 1 gives only
  // the empty language and A*).
  std::vector<Dfa> corpus(std::uint64_t seed,
                          std::size_t count,
                          std::size_t states,
                          Alphabet const& alphabet);

}  // namespace fohier
