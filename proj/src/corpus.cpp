#include "fohier/corpus.hpp"

#include <random>
#include <set>
#include <tuple>

namespace fohier {

  namespace {

    using Key = std::tuple<std::size_t, std::vector<bool>, std::vector<State>>;

    Key canonical_key(Dfa const& d) {
      std::vector<State> trans;
      trans.reserve(d.size() * d.alphabet().size());
      for (State q = 0; q < d.size(); ++q)
        for (LetterIndex x = 0; x < d.alphabet().size(); ++x)
          trans.push_back(d.next(q, x));
      return {d.size(), d.finals(), std::move(trans)};
    }

  }  // namespace

  std::vector<Dfa> corpus(std::uint64_t seed,
                          std::size_t count,
                          std::size_t states,
                          Alphabet const& alphabet) {
    std::vector<Dfa> out;
    if (count == 0 || states == 0 || alphabet.size() == 0)
      return out;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> size_dist(1, states);
    std::bernoulli_distribution coin(0.5);
    std::set<Key> seen;
    std::size_t const max_attempts = 200 * count + 1000;
    for (std::size_t attempt = 0; attempt < max_attempts && out.size() < count; ++attempt) {
      std::size_t const n = size_dist(rng);
      std::uniform_int_distribution<State> state_dist(0, State(n - 1));
      std::vector<bool> finals(n);
      for (std::size_t q = 0; q < n; ++q)
        finals[q] = coin(rng);
      std::vector<State> trans(n * alphabet.size());
      for (auto& t : trans)
        t = state_dist(rng);
      Dfa d = Dfa(alphabet, n, 0, std::move(finals), std::move(trans)).minimized();
      if (seen.insert(canonical_key(d)).second)
        out.push_back(std::move(d));
    }
    return out;
  }

}  // namespace fohier
