#include "fohier/dfa.hpp"

#include <map>
#include <queue>
#include <sstream>

#include "fohier/errors.hpp"

namespace fohier {

  Dfa::Dfa(Alphabet alphabet,
           std::size_t num_states,
           State initial,
           std::vector<bool> finals,
           std::vector<State> transitions)
      : _alphabet(std::move(alphabet)),
        _num_states(num_states),
        _initial(initial),
        _finals(std::move(finals)),
        _trans(std::move(transitions)) {
    if (_num_states == 0) {
      throw InvalidArgument("a DFA needs at least one state");
    }
    if (_initial >= _num_states) {
      throw InvalidArgument("initial state out of range");
    }
    if (_finals.size() != _num_states) {
      throw InvalidArgument("final flags do not match the state count");
    }
    if (_trans.size() != _num_states * _alphabet.size()) {
      throw InvalidArgument("transition table is not total");
    }
    for (auto q : _trans) {
      if (q >= _num_states) {
        throw InvalidArgument("transition target out of range");
      }
    }
  }

  State Dfa::run(State q, Word const& w) const {
    for (auto x : w) {
      if (x >= _alphabet.size()) {
        throw InvalidArgument("letter outside the alphabet");
      }
      q = next(q, x);
    }
    return q;
  }

  Dfa Dfa::minimized() const {
    std::size_t const k = _alphabet.size();

    // Reachable states.
    std::vector<bool>  seen(_num_states, false);
    std::vector<State> order{_initial};
    seen[_initial] = true;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (LetterIndex x = 0; x < k; ++x) {
        State r = next(order[i], x);
        if (!seen[r]) {
          seen[r] = true;
          order.push_back(r);
        }
      }
    }

    // Moore refinement over reachable states.
    std::vector<std::size_t> cls(_num_states, 0);
    for (auto q : order) {
      cls[q] = _finals[q] ? 1 : 0;
    }
    std::size_t num_classes = 0;
    while (true) {
      std::map<std::vector<std::size_t>, std::size_t> sig_ids;
      std::vector<std::size_t>                        next_cls(_num_states, 0);
      for (auto q : order) {
        std::vector<std::size_t> sig{cls[q]};
        for (LetterIndex x = 0; x < k; ++x) {
          sig.push_back(cls[next(q, x)]);
        }
        auto [it, _] = sig_ids.emplace(std::move(sig), sig_ids.size());
        next_cls[q]  = it->second;
      }
      bool const stable = sig_ids.size() == num_classes;
      num_classes       = sig_ids.size();
      cls               = std::move(next_cls);
      if (stable) {
        break;
      }
    }

    // Canonical numbering: BFS over classes from the initial class.
    std::vector<State> rep(num_classes, 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      rep[cls[*it]] = *it;
    }
    std::vector<std::int64_t> number(num_classes, -1);
    std::vector<std::size_t>  bfs{cls[_initial]};
    number[cls[_initial]] = 0;
    for (std::size_t i = 0; i < bfs.size(); ++i) {
      for (LetterIndex x = 0; x < k; ++x) {
        auto c = cls[next(rep[bfs[i]], x)];
        if (number[c] < 0) {
          number[c] = static_cast<std::int64_t>(bfs.size());
          bfs.push_back(c);
        }
      }
    }
    std::vector<bool>  finals(bfs.size(), false);
    std::vector<State> trans(bfs.size() * k, 0);
    for (std::size_t i = 0; i < bfs.size(); ++i) {
      State q   = rep[bfs[i]];
      finals[i] = _finals[q];
      for (LetterIndex x = 0; x < k; ++x) {
        trans[i * k + x] = static_cast<State>(number[cls[next(q, x)]]);
      }
    }
    return Dfa(_alphabet, bfs.size(), 0, std::move(finals), std::move(trans));
  }

  bool accepts(Dfa const& d, Word const& w) {
    return d.is_final(d.run(d.initial(), w));
  }

  Dfa complement(Dfa const& d) {
    std::vector<bool> finals(d.size());
    for (State q = 0; q < d.size(); ++q) {
      finals[q] = !d.is_final(q);
    }
    std::vector<State> trans;
    trans.reserve(d.size() * d.alphabet().size());
    for (State q = 0; q < d.size(); ++q) {
      for (LetterIndex x = 0; x < d.alphabet().size(); ++x) {
        trans.push_back(d.next(q, x));
      }
    }
    return Dfa(d.alphabet(), d.size(), d.initial(), std::move(finals), std::move(trans));
  }

  Dfa product(Dfa const& d1, Dfa const& d2, ProductMode mode) {
    if (!(d1.alphabet() == d2.alphabet())) {
      throw InvalidArgument("alphabet mismatch");
    }
    std::size_t const               k = d1.alphabet().size();
    std::map<std::pair<State, State>, State> ids;
    std::vector<std::pair<State, State>>     states{{d1.initial(), d2.initial()}};
    ids[states[0]] = 0;
    std::vector<State> trans;
    for (std::size_t i = 0; i < states.size(); ++i) {
      for (LetterIndex x = 0; x < k; ++x) {
        std::pair<State, State> p{d1.next(states[i].first, x), d2.next(states[i].second, x)};
        auto [it, fresh] = ids.emplace(p, static_cast<State>(states.size()));
        if (fresh) {
          states.push_back(p);
        }
        trans.push_back(it->second);
      }
    }
    std::vector<bool> finals(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
      bool a    = d1.is_final(states[i].first);
      bool b    = d2.is_final(states[i].second);
      finals[i] = mode == ProductMode::intersection ? (a && b) : (a || b);
    }
    return Dfa(d1.alphabet(), states.size(), 0, std::move(finals), std::move(trans));
  }

  std::string format_dfa_block(Dfa const& d) {
    std::ostringstream out;
    out << "states: " << d.size() << "\n";
    out << "initial: " << d.initial() << "\n";
    out << "final:";
    for (State q = 0; q < d.size(); ++q) {
      if (d.is_final(q)) {
        out << ' ' << q;
      }
    }
    out << "\n";
    for (State q = 0; q < d.size(); ++q) {
      for (LetterIndex x = 0; x < d.alphabet().size(); ++x) {
        out << "trans: " << q << ' ' << d.alphabet().name(x) << ' ' << d.next(q, x) << "\n";
      }
    }
    return out.str();
  }

}  // namespace fohier
