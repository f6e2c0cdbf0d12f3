#include "fohier/morphism.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

#include "fohier/errors.hpp"

namespace fohier {

  namespace {

    struct VectorHash {
      std::size_t operator()(std::vector<State> const& v) const noexcept {
        std::size_t h = v.size();
        for (auto x : v) {
          h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
      }
    };

    using Bits = std::vector<std::uint64_t>;

    Bits make_bits(std::size_t n) {
      return Bits((n + 63) / 64, 0);
    }

    void set_bit(Bits& b, std::size_t i) {
      b[i / 64] |= std::uint64_t(1) << (i % 64);
    }

    bool subset(Bits const& a, Bits const& b) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] & ~b[i]) {
          return false;
        }
      }
      return true;
    }

    // Transition monoid of a DFA, accepting sets decided by `tags` on the
    // state reached from the initial state.
    Morphism transformation_monoid(
        Dfa const& d,
        std::vector<std::pair<std::string, std::vector<bool>>> const& tags,
        std::size_t max_size) {
      auto const k = d.alphabet().size();
      auto const n = d.size();
      std::vector<std::vector<State>> elems;
      std::unordered_map<std::vector<State>, Element, VectorHash> index;

      std::vector<State> id(n);
      for (State q = 0; q < n; ++q) {
        id[q] = q;
      }
      elems.push_back(id);
      index.emplace(id, 0);
      std::vector<Element> letter_image(k);
      for (std::size_t i = 0; i < elems.size(); ++i) {
        for (LetterIndex x = 0; x < k; ++x) {
          std::vector<State> f(n);
          for (State q = 0; q < n; ++q) {
            f[q] = d.next(elems[i][q], x);
          }
          auto it = index.find(f);
          if (it == index.end()) {
            if (elems.size() >= max_size) {
              throw ResourceLimit("transition monoid exceeds " + std::to_string(max_size)
                                  + " elements");
            }
            it = index.emplace(f, static_cast<Element>(elems.size())).first;
            elems.push_back(std::move(f));
          }
          if (i == 0) {
            letter_image[x] = it->second;
          }
        }
      }

      auto const m = elems.size();
      std::vector<Element> table(m * m);
      std::vector<State>   f(n);
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
          for (State q = 0; q < n; ++q) {
            f[q] = elems[b][elems[a][q]];
          }
          table[a * m + b] = index.at(f);
        }
      }

      Morphism result;
      result.monoid       = Monoid::from_action(m, 0, std::move(table));
      result.alphabet     = d.alphabet();
      result.letter_image = std::move(letter_image);
      for (auto const& [tag, final_states] : tags) {
        ElementSet acc(m, false);
        for (std::size_t s = 0; s < m; ++s) {
          acc[s] = final_states[elems[s][d.initial()]];
        }
        result.accepting.emplace_back(tag, std::move(acc));
      }
      result.validate();
      return result;
    }

  }  // namespace

  std::vector<Element> elements_of(ElementSet const& set) {
    std::vector<Element> result;
    for (Element s = 0; s < set.size(); ++s) {
      if (set[s]) {
        result.push_back(s);
      }
    }
    return result;
  }

  void Morphism::validate() {
    auto const n = monoid.size();
    if (letter_image.size() != alphabet.size()) {
      throw InvalidArgument("one letter image per letter is required");
    }
    for (auto s : letter_image) {
      if (s >= n) {
        throw InvalidArgument("letter image out of range");
      }
    }
    image.assign(n, false);
    image[monoid.identity()] = true;
    std::vector<Element> todo{monoid.identity()};
    while (!todo.empty()) {
      auto s = todo.back();
      todo.pop_back();
      for (auto x : letter_image) {
        auto t = monoid.mul(s, x);
        if (!image[t]) {
          image[t] = true;
          todo.push_back(t);
        }
      }
    }
    for (auto const& [tag, acc] : accepting) {
      if (acc.size() != n) {
        throw InvalidArgument("accepting set for tag " + tag + " has the wrong size");
      }
    }
    if (element_alph) {
      if (element_alph->size() != n) {
        throw InvalidArgument("element alphabet table has the wrong size");
      }
      if (!(*element_alph)[monoid.identity()].empty()) {
        throw InvalidArgument("the identity must have an empty alphabet");
      }
    }
    if (absorbing && *absorbing >= n) {
      throw InvalidArgument("absorbing element out of range");
    }
  }

  ElementSet const& Morphism::accepting_set(std::string const& tag) const {
    for (auto const& [t, acc] : accepting) {
      if (t == tag) {
        return acc;
      }
    }
    throw InvalidArgument("unknown accepting tag " + tag);
  }

  bool Morphism::has_tag(std::string const& tag) const {
    return std::any_of(
        accepting.begin(), accepting.end(), [&](auto const& p) { return p.first == tag; });
  }

  Element Morphism::evaluate(Word const& w) const {
    Element s = monoid.identity();
    for (auto x : w) {
      s = monoid.mul(s, letter_image.at(x));
    }
    return s;
  }

  Morphism transition_monoid(Dfa const& d, std::size_t max_size) {
    return transformation_monoid(d, {{"L", d.finals()}}, max_size);
  }

  Morphism joint_morphism(Dfa const& d1, Dfa const& d2, std::size_t max_size) {
    if (!(d1.alphabet() == d2.alphabet())) {
      throw InvalidArgument("languages are over different alphabets");
    }
    auto const  k = d1.alphabet().size();
    std::map<std::pair<State, State>, State> index;
    std::vector<std::pair<State, State>>     states;
    std::vector<State>                       trans;
    auto intern = [&](std::pair<State, State> p) {
      auto [it, fresh] = index.emplace(p, static_cast<State>(states.size()));
      if (fresh) {
        states.push_back(p);
      }
      return it->second;
    };
    intern({d1.initial(), d2.initial()});
    for (std::size_t i = 0; i < states.size(); ++i) {
      for (LetterIndex x = 0; x < k; ++x) {
        auto [p, q] = states[i];
        auto target = intern({d1.next(p, x), d2.next(q, x)});
        trans.push_back(target);
      }
    }
    std::vector<bool> f1(states.size()), f2(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
      f1[i] = d1.is_final(states[i].first);
      f2[i] = d2.is_final(states[i].second);
    }
    Dfa prod(d1.alphabet(), states.size(), 0, f1, trans);
    return transformation_monoid(prod, {{"L1", f1}, {"L2", f2}}, max_size);
  }

  std::optional<std::string> Preorder::check(Monoid const&               m,
                                             std::vector<Element> const& elements) const {
    for (auto s : elements) {
      if (!leq(s, s)) {
        return "not reflexive at " + std::to_string(s);
      }
    }
    for (auto s : elements) {
      for (auto t : elements) {
        if (!leq(s, t)) {
          continue;
        }
        for (auto u : elements) {
          if (leq(t, u) && !leq(s, u)) {
            return "not transitive at " + std::to_string(s) + "," + std::to_string(t) + ","
                   + std::to_string(u);
          }
          if (!leq(m.mul(u, s), m.mul(u, t)) || !leq(m.mul(s, u), m.mul(t, u))) {
            return "not compatible with multiplication at " + std::to_string(s) + ","
                   + std::to_string(t) + "," + std::to_string(u);
          }
        }
      }
    }
    return std::nullopt;
  }

  Preorder recognition_preorder(Morphism const& m, std::string const& tag) {
    auto const& f     = m.accepting_set(tag);
    auto const  n     = m.monoid.size();
    auto const  elems = m.image_elements();
    // right[u] = { y in image : u y in F }
    std::vector<Bits> right(n, make_bits(n));
    for (Element u = 0; u < n; ++u) {
      for (auto y : elems) {
        if (f[m.monoid.mul(u, y)]) {
          set_bit(right[u], y);
        }
      }
    }
    Preorder p(n);
    for (Element s = 0; s < n; ++s) {
      for (Element t = 0; t < n; ++t) {
        bool ok = true;
        for (auto x : elems) {
          if (!subset(right[m.monoid.mul(x, s)], right[m.monoid.mul(x, t)])) {
            ok = false;
            break;
          }
        }
        p.set(s, t, ok);
      }
    }
    return p;
  }

  bool is_upward_closed(ElementSet const& f, Preorder const& p) {
    for (Element s = 0; s < f.size(); ++s) {
      if (!f[s]) {
        continue;
      }
      for (Element t = 0; t < f.size(); ++t) {
        if (p.leq(s, t) && !f[t]) {
          return false;
        }
      }
    }
    return true;
  }

  Completion alphabet_completion(Morphism const& m, std::size_t max_size) {
    auto const k   = m.alphabet.size();
    auto       key = [&](Element s, LetterSet const& b) {
      if (m.absorbing && *m.absorbing == s) {
        LetterSet all(k);
        for (LetterIndex x = 0; x < k; ++x) {
          all.insert(x);
        }
        return std::make_pair(s, all);
      }
      return std::make_pair(s, b);
    };
    std::map<std::pair<Element, LetterSet>, Element> index;
    std::vector<std::pair<Element, LetterSet>>       elems;
    auto intern = [&](std::pair<Element, LetterSet> p) {
      auto it = index.find(p);
      if (it != index.end()) {
        return it->second;
      }
      if (elems.size() >= max_size) {
        throw ResourceLimit("alphabet completion exceeds " + std::to_string(max_size)
                            + " elements");
      }
      auto id = static_cast<Element>(elems.size());
      index.emplace(p, id);
      elems.push_back(std::move(p));
      return id;
    };
    intern({m.monoid.identity(), LetterSet(k)});
    std::vector<Element> letter_image(k);
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (LetterIndex x = 0; x < k; ++x) {
        auto [s, b] = elems[i];
        auto id     = intern(key(m.monoid.mul(s, m.letter_image[x]), b | LetterSet::singleton(k, x)));
        if (i == 0) {
          letter_image[x] = id;
        }
      }
    }

    auto const image_size = std::count(m.image.begin(), m.image.end(), true);
    if (static_cast<std::size_t>(image_size) == elems.size()) {
      Completion c{m, {}};
      std::vector<LetterSet> alph(m.monoid.size(), LetterSet(k));
      for (auto const& [s, b] : elems) {
        alph[s] = b;
      }
      c.morphism.element_alph = std::move(alph);
      c.base.resize(m.monoid.size());
      for (Element s = 0; s < c.base.size(); ++s) {
        c.base[s] = s;
      }
      return c;
    }

    auto const n = elems.size();
    std::vector<Element> table(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        auto p = key(m.monoid.mul(elems[a].first, elems[b].first),
                     elems[a].second | elems[b].second);
        table[a * n + b] = index.at(p);
      }
    }
    Completion c;
    c.morphism.monoid       = Monoid::from_action(n, 0, std::move(table));
    c.morphism.alphabet     = m.alphabet;
    c.morphism.letter_image = std::move(letter_image);
    for (auto const& [tag, acc] : m.accepting) {
      ElementSet lifted(n, false);
      for (std::size_t i = 0; i < n; ++i) {
        lifted[i] = acc[elems[i].first];
      }
      c.morphism.accepting.emplace_back(tag, std::move(lifted));
    }
    std::vector<LetterSet> alph;
    for (auto const& [s, b] : elems) {
      c.base.push_back(s);
      alph.push_back(b);
    }
    c.morphism.element_alph = std::move(alph);
    if (m.absorbing) {
      for (Element i = 0; i < n; ++i) {
        if (elems[i].first == *m.absorbing) {
          c.morphism.absorbing = i;
        }
      }
    }
    c.morphism.validate();
    return c;
  }

  ElementSet dead_elements(Morphism const& m) {
    auto const n = m.monoid.size();
    ElementSet right(n, false);
    std::vector<Element> todo;
    for (auto const& [tag, acc] : m.accepting) {
      for (Element s = 0; s < n; ++s) {
        if (acc[s] && m.image[s] && !right[s]) {
          right[s] = true;
          todo.push_back(s);
        }
      }
    }
    // s is right-live iff s y in F for some y; close backwards along letters.
    bool changed = true;
    while (changed) {
      changed = false;
      for (Element s = 0; s < n; ++s) {
        if (right[s] || !m.image[s]) {
          continue;
        }
        for (auto x : m.letter_image) {
          if (right[m.monoid.mul(s, x)]) {
            right[s] = changed = true;
            break;
          }
        }
      }
    }
    ElementSet live = right;
    changed         = true;
    while (changed) {
      changed = false;
      for (Element s = 0; s < n; ++s) {
        if (live[s] || !m.image[s]) {
          continue;
        }
        for (auto x : m.letter_image) {
          if (live[m.monoid.mul(x, s)]) {
            live[s] = changed = true;
            break;
          }
        }
      }
    }
    ElementSet dead(n, false);
    for (Element s = 0; s < n; ++s) {
      dead[s] = m.image[s] && !live[s];
    }
    return dead;
  }

  Morphism collapse_dead(Morphism const& m) {
    auto dead = dead_elements(m);
    auto const n = m.monoid.size();
    std::vector<Element> live;
    bool any_dead = false;
    for (Element s = 0; s < n; ++s) {
      if (!m.image[s]) {
        continue;
      }
      if (dead[s]) {
        any_dead = true;
      } else {
        live.push_back(s);
      }
    }
    if (!any_dead || live.empty() || m.absorbing) {
      return m;
    }
    std::vector<Element> rename(n, 0);
    for (Element i = 0; i < live.size(); ++i) {
      rename[live[i]] = i;
    }
    auto const zero = static_cast<Element>(live.size());
    auto const size = live.size() + 1;
    for (Element s = 0; s < n; ++s) {
      if (dead[s]) {
        rename[s] = zero;
      }
    }
    std::vector<Element> table(size * size, zero);
    for (Element a = 0; a < live.size(); ++a) {
      for (Element b = 0; b < live.size(); ++b) {
        table[a * size + b] = rename[m.monoid.mul(live[a], live[b])];
      }
    }
    Morphism r;
    r.monoid   = Monoid::from_action(size, rename[m.monoid.identity()], std::move(table));
    r.alphabet = m.alphabet;
    for (auto x : m.letter_image) {
      r.letter_image.push_back(rename[x]);
    }
    for (auto const& [tag, acc] : m.accepting) {
      ElementSet a(size, false);
      for (Element i = 0; i < live.size(); ++i) {
        a[i] = acc[live[i]];
      }
      r.accepting.emplace_back(tag, std::move(a));
    }
    if (m.element_alph) {
      std::vector<LetterSet> alph(size, LetterSet(m.alphabet.size()));
      for (Element i = 0; i < live.size(); ++i) {
        alph[i] = (*m.element_alph)[live[i]];
      }
      r.element_alph = std::move(alph);
    }
    r.absorbing = zero;
    r.validate();
    return r;
  }

  Morphism merge_equivalent_letters(Morphism const& m) {
    std::vector<std::string> names;
    std::vector<Element>     images;
    for (LetterIndex x = 0; x < m.alphabet.size(); ++x) {
      auto s = m.letter_image[x];
      if (std::find(images.begin(), images.end(), s) == images.end()) {
        images.push_back(s);
        names.push_back(m.alphabet.name(x));
      }
    }
    if (names.size() == m.alphabet.size()) {
      return m;
    }
    Morphism r;
    r.monoid       = m.monoid;
    r.alphabet     = Alphabet(names);
    r.letter_image = images;
    r.accepting    = m.accepting;
    r.absorbing    = m.absorbing;
    r.validate();
    return r;
  }

  std::vector<Word> shortest_preimages(Morphism const& m) {
    auto const        n = m.monoid.size();
    std::vector<Word> words(n);
    std::vector<bool> seen(n, false);
    std::deque<Element> queue{m.monoid.identity()};
    seen[m.monoid.identity()] = true;
    while (!queue.empty()) {
      auto s = queue.front();
      queue.pop_front();
      for (LetterIndex x = 0; x < m.alphabet.size(); ++x) {
        auto t = m.monoid.mul(s, m.letter_image[x]);
        if (!seen[t]) {
          seen[t]  = true;
          words[t] = words[s];
          words[t].push_back(x);
          queue.push_back(t);
        }
      }
    }
    return words;
  }

  std::vector<std::string> element_names(Morphism const& m) {
    auto                     words = shortest_preimages(m);
    std::vector<std::string> names(m.monoid.size(), "?");
    for (Element s = 0; s < names.size(); ++s) {
      if (!m.image[s]) {
        continue;
      }
      if (m.absorbing && *m.absorbing == s) {
        names[s] = "0";
      } else if (s == m.monoid.identity()) {
        names[s] = "1";
      } else {
        names[s] = m.alphabet.format(words[s]);
      }
    }
    return names;
  }

  Word translate_word(Word const& w, Alphabet const& from, Alphabet const& to) {
    Word result;
    result.reserve(w.size());
    for (auto x : w) {
      auto y = to.index_of(from.name(x));
      if (!y) {
        throw InvalidArgument("letter " + from.name(x) + " is not in the target alphabet");
      }
      result.push_back(*y);
    }
    return result;
  }

  Morphism parse_monoid_file(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string        line;
    std::size_t        size = 0;
    std::optional<Element> identity;
    std::vector<Element>   table;
    std::vector<std::string> letter_names;
    std::vector<Element>     letter_image;
    std::vector<std::pair<std::string, std::vector<Element>>> accept;
    std::size_t rows_left = 0;
    std::size_t line_no   = 0;

    auto fail = [&](std::string const& what) -> ParseError {
      return ParseError(what + " on line " + std::to_string(line_no));
    };
    auto read_indices = [&](std::istringstream& s) {
      std::vector<Element> v;
      std::string          tok;
      while (s >> tok) {
        try {
          std::size_t pos = 0;
          auto        x   = std::stoul(tok, &pos);
          if (pos != tok.size()) {
            throw fail("bad element index '" + tok + "'");
          }
          v.push_back(static_cast<Element>(x));
        } catch (std::logic_error const&) {
          throw fail("bad element index '" + tok + "'");
        }
      }
      return v;
    };

    while (std::getline(in, line)) {
      ++line_no;
      if (auto h = line.find('#'); h != std::string::npos) {
        line.erase(h);
      }
      if (line.find_first_not_of(" \t\r") == std::string::npos) {
        continue;
      }
      if (rows_left > 0) {
        std::istringstream s(line);
        auto               row = read_indices(s);
        if (row.size() != size) {
          throw fail("table row needs " + std::to_string(size) + " entries");
        }
        table.insert(table.end(), row.begin(), row.end());
        --rows_left;
        continue;
      }
      auto colon = line.find(':');
      if (colon == std::string::npos) {
        throw fail("expected 'key: value'");
      }
      std::string key = line.substr(0, colon);
      key.erase(0, key.find_first_not_of(" \t"));
      key.erase(key.find_last_not_of(" \t") + 1);
      std::istringstream rest(line.substr(colon + 1));
      if (key == "size") {
        auto v = read_indices(rest);
        if (v.size() != 1 || v[0] == 0) {
          throw fail("size needs one positive integer");
        }
        size = v[0];
      } else if (key == "identity") {
        auto v = read_indices(rest);
        if (v.size() != 1) {
          throw fail("identity needs one element");
        }
        identity = v[0];
      } else if (key == "table") {
        if (size == 0) {
          throw fail("table before size");
        }
        rows_left = size;
      } else if (key == "letters") {
        std::string tok;
        while (rest >> tok) {
          auto eq = tok.find('=');
          if (eq == std::string::npos || eq == 0) {
            throw fail("letter binding must look like a=3");
          }
          letter_names.push_back(tok.substr(0, eq));
          std::istringstream num(tok.substr(eq + 1));
          auto               v = read_indices(num);
          if (v.size() != 1) {
            throw fail("letter binding must look like a=3");
          }
          letter_image.push_back(v[0]);
        }
      } else if (key.rfind("accept", 0) == 0) {
        std::istringstream k(key.substr(6));
        std::string        tag;
        if (!(k >> tag)) {
          throw fail("accept needs a tag");
        }
        accept.emplace_back(tag, read_indices(rest));
      } else {
        throw fail("unknown key '" + key + "'");
      }
    }
    if (rows_left > 0 || table.empty()) {
      throw ParseError("incomplete multiplication table");
    }
    if (!identity) {
      throw ParseError("missing identity");
    }
    if (letter_names.empty()) {
      throw ParseError("missing letters");
    }
    Morphism m;
    m.monoid       = Monoid(size, *identity, std::move(table));
    m.alphabet     = Alphabet(letter_names);
    m.letter_image = std::move(letter_image);
    for (auto const& [tag, elems] : accept) {
      ElementSet acc(size, false);
      for (auto s : elems) {
        if (s >= size) {
          throw ParseError("accepting element out of range");
        }
        acc[s] = true;
      }
      m.accepting.emplace_back(tag, std::move(acc));
    }
    m.validate();
    return m;
  }

}  // namespace fohier
