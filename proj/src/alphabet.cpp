#include "fohier/alphabet.hpp"

#include <bit>

#include "fohier/errors.hpp"

namespace fohier {

  Alphabet::Alphabet(std::vector<std::string> letters) : _letters(std::move(letters)) {
    if (_letters.empty()) {
      throw InvalidArgument("alphabet must be nonempty");
    }
    for (LetterIndex i = 0; i < _letters.size(); ++i) {
      if (_letters[i].empty()) {
        throw InvalidArgument("empty letter name");
      }
      if (!_index.emplace(_letters[i], i).second) {
        throw InvalidArgument("duplicate letter '" + _letters[i] + "'");
      }
    }
  }

  Alphabet Alphabet::from_chars(std::string_view chars) {
    std::vector<std::string> letters;
    for (char c : chars) {
      letters.emplace_back(1, c);
    }
    return Alphabet(std::move(letters));
  }

  std::optional<LetterIndex> Alphabet::index_of(std::string_view name) const {
    auto it = _index.find(std::string(name));
    if (it == _index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  bool Alphabet::is_char_alphabet() const noexcept {
    for (auto const& l : _letters) {
      if (l.size() != 1) {
        return false;
      }
    }
    return true;
  }

  Word Alphabet::parse_word(std::string_view text) const {
    Word w;
    if (text == "%e") {
      return w;
    }
    for (std::size_t i = 0; i < text.size(); ++i) {
      auto idx = index_of(text.substr(i, 1));
      if (!idx) {
        throw ParseError("letter '" + std::string(1, text[i]) + "' not in alphabet", i);
      }
      w.push_back(*idx);
    }
    return w;
  }

  std::string Alphabet::format(Word const& w) const {
    if (w.empty()) {
      return "%e";
    }
    std::string out;
    bool const compact = is_char_alphabet();
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!compact && i > 0) {
        out += ' ';
      }
      out += name(w[i]);
    }
    return out;
  }

  bool LetterSet::empty() const noexcept {
    for (auto b : _bits) {
      if (b != 0) {
        return false;
      }
    }
    return true;
  }

  std::size_t LetterSet::count() const noexcept {
    std::size_t n = 0;
    for (auto b : _bits) {
      n += std::popcount(b);
    }
    return n;
  }

  bool LetterSet::is_subset_of(LetterSet const& other) const {
    for (std::size_t i = 0; i < _bits.size(); ++i) {
      if ((_bits[i] & ~other._bits[i]) != 0) {
        return false;
      }
    }
    return true;
  }

  std::vector<LetterIndex> LetterSet::elements() const {
    std::vector<LetterIndex> out;
    for (std::size_t i = 0; i < _bits.size(); ++i) {
      auto b = _bits[i];
      while (b != 0) {
        out.push_back(static_cast<LetterIndex>(i * 64 + std::countr_zero(b)));
        b &= b - 1;
      }
    }
    return out;
  }

  LetterSet& LetterSet::operator|=(LetterSet const& other) {
    for (std::size_t i = 0; i < _bits.size(); ++i) {
      _bits[i] |= other._bits[i];
    }
    return *this;
  }

  std::size_t LetterSet::hash() const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto b : _bits) {
      h ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  LetterSet word_alphabet(Word const& w, std::size_t universe) {
    LetterSet s(universe);
    for (auto x : w) {
      s.insert(x);
    }
    return s;
  }

  std::string format_letter_set(LetterSet const& s, Alphabet const& a) {
    std::string out = "{";
    bool first = true;
    for (auto x : s.elements()) {
      if (!first) {
        out += ',';
      }
      first = false;
      out += a.name(x);
    }
    return out + "}";
  }

}  // namespace fohier
