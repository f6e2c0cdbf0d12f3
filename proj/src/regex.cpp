#include "fohier/regex.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "fohier/errors.hpp"

namespace fohier {

  namespace {

    class Parser {
     public:
      Parser(std::string_view text, Alphabet const& alphabet)
          : _text(text), _alphabet(alphabet) {}

      Regex parse() {
        skip_space();
        Regex r = expr();
        skip_space();
        if (_pos < _text.size()) {
          if (_text[_pos] == ')') {
            throw ParseError("unbalanced parenthesis", _pos);
          }
          throw ParseError("unexpected character '" + std::string(1, _text[_pos]) + "'", _pos);
        }
        return r;
      }

     private:
      void skip_space() {
        while (_pos < _text.size() && std::isspace(static_cast<unsigned char>(_text[_pos]))) {
          ++_pos;
        }
      }

      // Offset reported when the input ends too early: the last character.
      std::size_t end_offset() const {
        return _text.empty() ? 0 : _text.size() - 1;
      }

      bool at_atom_start() {
        skip_space();
        if (_pos >= _text.size()) {
          return false;
        }
        char c = _text[_pos];
        return c == '(' || c == '%' || std::isalnum(static_cast<unsigned char>(c));
      }

      Regex expr() {
        Regex r = cat();
        skip_space();
        while (_pos < _text.size() && _text[_pos] == '|') {
          ++_pos;
          r = Regex::alt(std::move(r), cat());
          skip_space();
        }
        return r;
      }

      Regex cat() {
        if (!at_atom_start()) {
          if (_pos >= _text.size()) {
            throw ParseError("unexpected end of expression", end_offset());
          }
          throw ParseError("expected an atom", _pos);
        }
        Regex r = rep();
        while (at_atom_start()) {
          r = Regex::cat(std::move(r), rep());
        }
        return r;
      }

      Regex rep() {
        Regex r = atom();
        skip_space();
        while (_pos < _text.size() && _text[_pos] == '*') {
          ++_pos;
          r = Regex::star(std::move(r));
          skip_space();
        }
        return r;
      }

      Regex atom() {
        skip_space();
        char c = _text[_pos];
        if (c == '(') {
          ++_pos;
          Regex r = expr();
          skip_space();
          if (_pos >= _text.size()) {
            throw ParseError("unbalanced parenthesis", end_offset());
          }
          if (_text[_pos] != ')') {
            throw ParseError("expected ')'", _pos);
          }
          ++_pos;
          return r;
        }
        if (c == '%') {
          if (_pos + 1 >= _text.size()) {
            throw ParseError("dangling '%'", _pos);
          }
          char d = _text[_pos + 1];
          if (d == 'e') {
            _pos += 2;
            return Regex::empty_word();
          }
          if (d == '0') {
            _pos += 2;
            return Regex::empty_language();
          }
          throw ParseError("unknown escape '%" + std::string(1, d) + "'", _pos);
        }
        auto idx = _alphabet.index_of(std::string_view(&_text[_pos], 1));
        if (!idx) {
          throw ParseError("letter '" + std::string(1, c) + "' not in alphabet", _pos);
        }
        ++_pos;
        return Regex::of_letter(*idx);
      }

      std::string_view _text;
      Alphabet const&  _alphabet;
      std::size_t      _pos = 0;
    };

    // Thompson automaton with epsilon moves.
    struct Nfa {
      static constexpr std::uint32_t epsilon = UINT32_MAX;
      struct Edge {
        std::uint32_t label;
        std::uint32_t to;
      };
      std::vector<std::vector<Edge>> edges;

      std::uint32_t add_state() {
        edges.emplace_back();
        return static_cast<std::uint32_t>(edges.size() - 1);
      }
      void add(std::uint32_t from, std::uint32_t label, std::uint32_t to) {
        edges[from].push_back({label, to});
      }
    };

    // Returns (start, accept) of the fragment.
    std::pair<std::uint32_t, std::uint32_t> build(Nfa& nfa, Regex const& r) {
      auto s = nfa.add_state();
      auto f = nfa.add_state();
      switch (r.kind) {
        case Regex::Kind::empty_language:
          break;
        case Regex::Kind::empty_word:
          nfa.add(s, Nfa::epsilon, f);
          break;
        case Regex::Kind::letter:
          nfa.add(s, r.letter, f);
          break;
        case Regex::Kind::union_: {
          for (auto const& c : r.children) {
            auto [cs, cf] = build(nfa, c);
            nfa.add(s, Nfa::epsilon, cs);
            nfa.add(cf, Nfa::epsilon, f);
          }
          break;
        }
        case Regex::Kind::concat: {
          auto cur = s;
          for (auto const& c : r.children) {
            auto [cs, cf] = build(nfa, c);
            nfa.add(cur, Nfa::epsilon, cs);
            cur = cf;
          }
          nfa.add(cur, Nfa::epsilon, f);
          break;
        }
        case Regex::Kind::star: {
          auto [cs, cf] = build(nfa, r.children.at(0));
          nfa.add(s, Nfa::epsilon, f);
          nfa.add(s, Nfa::epsilon, cs);
          nfa.add(cf, Nfa::epsilon, cs);
          nfa.add(cf, Nfa::epsilon, f);
          break;
        }
      }
      return {s, f};
    }

    std::set<std::uint32_t> closure(Nfa const& nfa, std::set<std::uint32_t> states) {
      std::vector<std::uint32_t> stack(states.begin(), states.end());
      while (!stack.empty()) {
        auto q = stack.back();
        stack.pop_back();
        for (auto const& e : nfa.edges[q]) {
          if (e.label == Nfa::epsilon && states.insert(e.to).second) {
            stack.push_back(e.to);
          }
        }
      }
      return states;
    }

    bool check_letters(Regex const& r, std::size_t k) {
      if (r.kind == Regex::Kind::letter && r.letter >= k) {
        return false;
      }
      return std::all_of(r.children.begin(), r.children.end(), [k](Regex const& c) {
        return check_letters(c, k);
      });
    }

  }  // namespace

  Regex parse_regex(std::string_view text, Alphabet const& alphabet) {
    if (!alphabet.is_char_alphabet()) {
      throw InvalidArgument("regular expressions need a single-character alphabet");
    }
    return Parser(text, alphabet).parse();
  }

  Dfa regex_to_dfa(Regex const& ast, Alphabet const& alphabet) {
    std::size_t const k = alphabet.size();
    if (!check_letters(ast, k)) {
      throw InvalidArgument("regex letter outside the alphabet");
    }
    Nfa nfa;
    auto [start, accept] = build(nfa, ast);

    std::map<std::set<std::uint32_t>, State> ids;
    std::vector<std::set<std::uint32_t>>     subsets{closure(nfa, {start})};
    ids[subsets[0]] = 0;
    std::vector<State> trans;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      for (LetterIndex x = 0; x < k; ++x) {
        std::set<std::uint32_t> step;
        for (auto q : subsets[i]) {
          for (auto const& e : nfa.edges[q]) {
            if (e.label == x) {
              step.insert(e.to);
            }
          }
        }
        auto target      = closure(nfa, std::move(step));
        auto [it, fresh] = ids.emplace(target, static_cast<State>(subsets.size()));
        if (fresh) {
          subsets.push_back(std::move(target));
        }
        trans.push_back(it->second);
      }
    }
    // The empty subset is the sink, so the automaton is already complete.
    std::vector<bool> finals(subsets.size());
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      finals[i] = subsets[i].count(accept) > 0;
    }
    return Dfa(alphabet, subsets.size(), 0, std::move(finals), std::move(trans)).minimized();
  }

  namespace {
    // Set of end positions reachable from `from` when matching r on w.
    std::set<std::size_t> match_ends(Regex const& r, Word const& w, std::size_t from) {
      switch (r.kind) {
        case Regex::Kind::empty_language:
          return {};
        case Regex::Kind::empty_word:
          return {from};
        case Regex::Kind::letter:
          if (from < w.size() && w[from] == r.letter) {
            return {from + 1};
          }
          return {};
        case Regex::Kind::union_: {
          std::set<std::size_t> out;
          for (auto const& c : r.children) {
            auto e = match_ends(c, w, from);
            out.insert(e.begin(), e.end());
          }
          return out;
        }
        case Regex::Kind::concat: {
          std::set<std::size_t> cur{from};
          for (auto const& c : r.children) {
            std::set<std::size_t> next;
            for (auto p : cur) {
              auto e = match_ends(c, w, p);
              next.insert(e.begin(), e.end());
            }
            cur = std::move(next);
          }
          return cur;
        }
        case Regex::Kind::star: {
          std::set<std::size_t> reached{from};
          std::vector<std::size_t> todo{from};
          while (!todo.empty()) {
            auto p = todo.back();
            todo.pop_back();
            for (auto e : match_ends(r.children.at(0), w, p)) {
              if (reached.insert(e).second) {
                todo.push_back(e);
              }
            }
          }
          return reached;
        }
      }
      return {};
    }
  }  // namespace

  bool regex_matches(Regex const& ast, Word const& w) {
    return match_ends(ast, w, 0).count(w.size()) > 0;
  }

}  // namespace fohier
