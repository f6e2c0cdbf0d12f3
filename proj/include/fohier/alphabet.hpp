#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fohier {

  using LetterIndex = std::uint32_t;

  // A word is a sequence of letter indices into some Alphabet.
  using Word = std::vector<LetterIndex>;

  // Ordered finite alphabet. Letters are names: single characters for
  // user-written languages, longer tokens for generated alphabets (well-formed
  // word letters). Iteration order is declaration order.
  class Alphabet {
   public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> letters);
    static Alphabet from_chars(std::string_view chars);

    std::size_t size() const noexcept {
      return _letters.size();
    }
    std::string const& name(LetterIndex i) const {
      return _letters.at(i);
    }
    std::vector<std::string> const& names() const noexcept {
      return _letters;
    }
    std::optional<LetterIndex> index_of(std::string_view name) const;
    bool contains(std::string_view name) const {
      return index_of(name).has_value();
    }
    // True when every letter is a single character.
    bool is_char_alphabet() const noexcept;

    // Parses a word written as a string of single-character letters. "%e" or
    // the empty string denote the empty word.
    Word parse_word(std::string_view text) const;
    std::string format(Word const& w) const;

    bool operator==(Alphabet const& other) const {
      return _letters == other._letters;
    }

   private:
    std::vector<std::string>                  _letters;
    std::unordered_map<std::string, LetterIndex> _index;
  };

  // Subset of an alphabet, stored as a bitset. Totally ordered so it can key
  // ordered containers.
  class LetterSet {
   public:
    LetterSet() = default;
    explicit LetterSet(std::size_t universe) : _bits((universe + 63) / 64, 0) {}

    static LetterSet singleton(std::size_t universe, LetterIndex x) {
      LetterSet s(universe);
      s.insert(x);
      return s;
    }

    void insert(LetterIndex x) {
      _bits[x / 64] |= std::uint64_t(1) << (x % 64);
    }
    bool contains(LetterIndex x) const {
      return (_bits[x / 64] >> (x % 64)) & 1U;
    }
    bool empty() const noexcept;
    std::size_t count() const noexcept;
    bool is_subset_of(LetterSet const& other) const;
    std::vector<LetterIndex> elements() const;

    LetterSet& operator|=(LetterSet const& other);
    friend LetterSet operator|(LetterSet a, LetterSet const& b) {
      a |= b;
      return a;
    }
    bool operator==(LetterSet const& other) const = default;
    bool operator<(LetterSet const& other) const {
      return _bits < other._bits;
    }
    std::size_t hash() const noexcept;

   private:
    std::vector<std::uint64_t> _bits;
  };

  // Exact set of letters occurring in w.
  LetterSet word_alphabet(Word const& w, std::size_t universe);

  std::string format_letter_set(LetterSet const& s, Alphabet const& a);

}  // namespace fohier
