#include "fohier/oracle.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <set>

#include "fohier/errors.hpp"

namespace fohier {

  namespace {

    using Mask    = std::uint64_t;
    using Pebbles = std::vector<std::pair<std::size_t, std::size_t>>;

    class Game {
     public:
      Game(unsigned i, Word const& w, Word const& w2, GameBudget const& budget)
          : _i(i), _words{&w, &w2}, _budget(budget) {
        LetterIndex letters = 0;
        for (auto const* word : _words) {
          for (auto x : *word) {
            letters = std::max(letters, x + 1);
          }
        }
        if (letters > 64) {
          throw InvalidArgument("the game oracle supports at most 64 letters");
        }
        for (int side = 0; side < 2; ++side) {
          auto const& word = *_words[side];
          _count[side].assign(letters, std::vector<std::uint32_t>(word.size() + 1, 0));
          for (LetterIndex x = 0; x < letters; ++x) {
            for (std::size_t p = 0; p < word.size(); ++p) {
              _count[side][x][p + 1] = _count[side][x][p] + (word[p] == x);
            }
          }
        }
      }

      bool duplicator_wins(Pebbles const& pebbles, int active, unsigned c, unsigned rounds) {
        if (++_nodes > _budget.max_nodes) {
          throw ResourceLimit("game search exceeded " + std::to_string(_budget.max_nodes)
                              + " nodes");
        }
        if (rounds == 0) {
          return true;
        }
        if (rounds == 1) {
          return last_round(pebbles, active, c);
        }
        Key key{pebbles, active, c, rounds};
        if (auto it = _memo.find(key); it != _memo.end()) {
          return it->second;
        }
        bool result = search(pebbles, active, c, rounds);
        _memo.emplace(std::move(key), result);
        return result;
      }

     private:
      using Key = std::tuple<Pebbles, int, unsigned, unsigned>;

      // Open interval of gap g on `side`: (lo, hi) as half-open [lo, hi).
      std::pair<std::size_t, std::size_t> gap(Pebbles const& pebbles, int side, std::size_t g) const {
        auto pos = [&](std::size_t j) { return side == 0 ? pebbles[j].first : pebbles[j].second; };
        std::size_t lo = g == 0 ? 0 : pos(g - 1) + 1;
        std::size_t hi = g == pebbles.size() ? _words[side]->size() : pos(g);
        return {lo, std::max(lo, hi)};
      }

      Mask alph(int side, std::size_t lo, std::size_t hi) const {
        Mask m = 0;
        for (std::size_t x = 0; x < _count[side].size(); ++x) {
          if (_count[side][x][hi] > _count[side][x][lo]) {
            m |= Mask(1) << x;
          }
        }
        return m;
      }

      bool may_play(int side, int active, unsigned c) const {
        return side == active || c + 1 < _i;
      }

      bool last_round(Pebbles const& pebbles, int active, unsigned c) const {
        for (int side = 0; side < 2; ++side) {
          if (!may_play(side, active, c)) {
            continue;
          }
          for (std::size_t g = 0; g <= pebbles.size(); ++g) {
            auto [lo, hi]   = gap(pebbles, side, g);
            auto [lo2, hi2] = gap(pebbles, 1 - side, g);
            if ((alph(side, lo, hi) & ~alph(1 - side, lo2, hi2)) != 0) {
              return false;
            }
          }
        }
        return true;
      }

      static Pebbles with(Pebbles pebbles, std::size_t g, std::pair<std::size_t, std::size_t> p) {
        pebbles.insert(pebbles.begin() + static_cast<std::ptrdiff_t>(g), p);
        return pebbles;
      }

      bool search(Pebbles const& pebbles, int active, unsigned c, unsigned rounds) {
        bool const group = rounds == 2;
        for (int side = 0; side < 2; ++side) {
          if (!may_play(side, active, c)) {
            continue;
          }
          unsigned const next_c = c + (side != active);
          if (side != active && !pebbles.empty()
              && !duplicator_wins(pebbles, side, next_c, rounds - 1)) {
            return false;
          }
          auto const& word  = *_words[side];
          auto const& other = *_words[1 - side];
          for (std::size_t g = 0; g <= pebbles.size(); ++g) {
            auto [lo, hi]   = gap(pebbles, side, g);
            auto [lo2, hi2] = gap(pebbles, 1 - side, g);
            std::set<std::tuple<LetterIndex, Mask, Mask>> tried;
            for (std::size_t p = lo; p < hi; ++p) {
              if (group && !tried.emplace(word[p], alph(side, lo, p), alph(side, p + 1, hi)).second) {
                continue;
              }
              bool answered = false;
              std::set<std::pair<Mask, Mask>> answers;
              for (std::size_t q = lo2; q < hi2 && !answered; ++q) {
                if (other[q] != word[p]) {
                  continue;
                }
                if (group && !answers.emplace(alph(1 - side, lo2, q), alph(1 - side, q + 1, hi2)).second) {
                  continue;
                }
                auto next = side == 0 ? with(pebbles, g, {p, q}) : with(pebbles, g, {q, p});
                answered  = duplicator_wins(next, side, next_c, rounds - 1);
              }
              if (!answered) {
                return false;
              }
            }
          }
        }
        return true;
      }

      unsigned                                          _i;
      std::array<Word const*, 2>                        _words;
      GameBudget                                        _budget;
      std::array<std::vector<std::vector<std::uint32_t>>, 2> _count;
      std::size_t                                       _nodes = 0;
      std::map<Key, bool>                               _memo;
    };

    std::vector<Word> words_up_to(std::size_t k, std::size_t max_len) {
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

  }  // namespace

  bool ef_leq(unsigned i, unsigned k, Word const& w, Word const& w2, GameBudget const& budget) {
    if (i == 0) {
      throw InvalidArgument("game level must be at least 1");
    }
    if (w == w2) {
      return true;
    }
    Game game(i, w, w2, budget);
    return game.duplicator_wins({}, 0, 0, k);
  }

  ChainSet brute_chain_set(Morphism const&   m,
                           unsigned          i,
                           std::size_t       n,
                           unsigned          k,
                           std::size_t       maxlen,
                           GameBudget const& budget) {
    auto const words = words_up_to(m.alphabet.size(), maxlen);
    auto const count = words.size();
    std::vector<Element> image(count);
    for (std::size_t a = 0; a < count; ++a) {
      image[a] = m.evaluate(words[a]);
    }
    std::vector<bool> leq(count * count);
    for (std::size_t a = 0; a < count; ++a) {
      for (std::size_t b = 0; b < count; ++b) {
        leq[a * count + b] = ef_leq(i, k, words[a], words[b], budget);
      }
    }
    ChainSet result(n, m.monoid.size());
    // reach[b]: codes of chains of the current length ending with word b
    std::vector<std::set<ChainSet::Code>> reach(count);
    ChainSet::Code scale = 1;
    for (std::size_t a = 0; a < count; ++a) {
      reach[a].insert(image[a]);
    }
    for (std::size_t len = 2; len <= n; ++len) {
      scale *= m.monoid.size();
      std::vector<std::set<ChainSet::Code>> next(count);
      for (std::size_t a = 0; a < count; ++a) {
        for (std::size_t b = 0; b < count; ++b) {
          if (!leq[a * count + b]) {
            continue;
          }
          for (auto code : reach[a]) {
            next[b].insert(code + scale * image[b]);
          }
        }
      }
      reach = std::move(next);
    }
    std::vector<ChainSet::Code> codes;
    for (auto const& r : reach) {
      codes.insert(codes.end(), r.begin(), r.end());
    }
    result.assign(std::move(codes));
    return result;
  }

  bool UpwardClosure::accepts(Word const& w) const {
    std::vector<bool> current(_d.size(), false);
    current[_d.initial()] = true;
    for (auto x : w) {
      auto next = current;
      for (State q = 0; q < _d.size(); ++q) {
        if (current[q]) {
          next[_d.next(q, x)] = true;
        }
      }
      current = std::move(next);
    }
    for (State q = 0; q < _d.size(); ++q) {
      if (current[q] && _d.is_final(q)) {
        return true;
      }
    }
    return false;
  }

  bool UpwardClosure::is_empty() const {
    std::vector<bool>  seen(_d.size(), false);
    std::vector<State> todo{_d.initial()};
    seen[_d.initial()] = true;
    while (!todo.empty()) {
      auto q = todo.back();
      todo.pop_back();
      if (_d.is_final(q)) {
        return false;
      }
      for (LetterIndex x = 0; x < _d.alphabet().size(); ++x) {
        auto r = _d.next(q, x);
        if (!seen[r]) {
          seen[r] = true;
          todo.push_back(r);
        }
      }
    }
    return true;
  }

  bool UpwardClosure::intersects(Dfa const& other) const {
    if (!(other.alphabet() == _d.alphabet())) {
      throw InvalidArgument("alphabets differ");
    }
    auto const n2 = other.size();
    std::vector<bool> seen(_d.size() * n2, false);
    std::vector<std::pair<State, State>> todo{{_d.initial(), other.initial()}};
    seen[_d.initial() * n2 + other.initial()] = true;
    while (!todo.empty()) {
      auto [p, q] = todo.back();
      todo.pop_back();
      if (_d.is_final(p) && other.is_final(q)) {
        return true;
      }
      for (LetterIndex x = 0; x < _d.alphabet().size(); ++x) {
        auto q2 = other.next(q, x);
        for (auto p2 : {p, _d.next(p, x)}) {
          if (!seen[p2 * n2 + q2]) {
            seen[p2 * n2 + q2] = true;
            todo.emplace_back(p2, q2);
          }
        }
      }
    }
    return false;
  }

  UpwardClosure upward_closure(Dfa const& d) {
    return UpwardClosure(d);
  }

  Dfa preimage_dfa(Morphism const& m, Element s) {
    auto const n = m.monoid.size();
    auto const k = m.alphabet.size();
    std::vector<State> trans(n * k);
    for (Element q = 0; q < n; ++q) {
      for (LetterIndex x = 0; x < k; ++x) {
        trans[q * k + x] = m.monoid.mul(q, m.letter_image[x]);
      }
    }
    std::vector<bool> finals(n, false);
    finals[s] = true;
    return Dfa(m.alphabet, n, m.monoid.identity(), finals, trans);
  }

  bool exact_sigma1_pair(Morphism const& m, Element t, Element s) {
    return upward_closure(preimage_dfa(m, t)).intersects(preimage_dfa(m, s));
  }

  bool pinweil_sigma2(Dfa const& l, std::size_t max_monoid) {
    auto const syntactic = transition_monoid(l.minimized(), max_monoid);
    auto const completion = alphabet_completion(syntactic, 4 * max_monoid);
    auto const& m = completion.morphism;
    auto const  p = recognition_preorder(m, "L");
    auto const elems = m.image_elements();
    for (auto s : elems) {
      auto e = idempotent_power(m.monoid, s);
      for (auto t : elems) {
        if (m.alph(t).is_subset_of(m.alph(s)) && !p.leq(e, m.monoid.mul(e, t, e))) {
          return false;
        }
      }
    }
    return true;
  }

}  // namespace fohier
