#include "fohier/enriched.hpp"

#include <algorithm>
#include <deque>

#include "fohier/errors.hpp"

namespace fohier {

  namespace {

    constexpr State start_state = 0;
    constexpr State done_state  = 1;
    constexpr State sink_state  = 2;

  }  // namespace

  std::string wf_letter_name(WfLetter const& x) {
    auto n = [](Element v) { return std::to_string(v); };
    switch (x.kind) {
      case WfLetter::Kind::single:
        return "s" + n(x.s);
      case WfLetter::Kind::left:
        return "l" + n(x.s) + "_" + n(x.f);
      case WfLetter::Kind::right:
        return "r" + n(x.e) + "_" + n(x.s);
      case WfLetter::Kind::middle:
        return "m" + n(x.e) + "_" + n(x.s) + "_" + n(x.f);
    }
    return {};
  }

  std::vector<Element> plus_idempotents(Morphism const& m) {
    auto const& mon = m.monoid;
    std::vector<bool>    seen(mon.size(), false);
    std::deque<Element>  queue;
    for (auto s : m.letter_image) {
      if (!seen[s]) {
        seen[s] = true;
        queue.push_back(s);
      }
    }
    while (!queue.empty()) {
      auto s = queue.front();
      queue.pop_front();
      for (auto x : m.letter_image) {
        auto t = mon.mul(s, x);
        if (!seen[t]) {
          seen[t] = true;
          queue.push_back(t);
        }
      }
    }
    std::vector<Element> out;
    for (Element s = 0; s < mon.size(); ++s) {
      if (seen[s] && mon.is_idempotent(s)) {
        out.push_back(s);
      }
    }
    return out;
  }

  std::vector<WfLetter> wf_letters(Morphism const& m, std::size_t max_letters) {
    auto const e = plus_idempotents(m);
    auto const n = m.monoid.size();
    if (e.empty() && !m.letter_image.empty()) {
      throw InternalInconsistency("no idempotent image of a nonempty word");
    }
    std::size_t const total = n + 2 * n * e.size() + n * e.size() * e.size();
    if (total > max_letters) {
      throw ResourceLimit("well-formed alphabet has " + std::to_string(total) + " letters, cap is "
                          + std::to_string(max_letters));
    }
    std::vector<WfLetter> out;
    out.reserve(total);
    for (Element s = 0; s < n; ++s) {
      out.push_back({WfLetter::Kind::single, s, 0, 0});
    }
    for (Element s = 0; s < n; ++s) {
      for (auto f : e) {
        out.push_back({WfLetter::Kind::left, s, 0, f});
      }
    }
    for (auto x : e) {
      for (Element s = 0; s < n; ++s) {
        out.push_back({WfLetter::Kind::right, s, x, 0});
      }
    }
    for (auto x : e) {
      for (Element s = 0; s < n; ++s) {
        for (auto f : e) {
          out.push_back({WfLetter::Kind::middle, s, x, f});
        }
      }
    }
    return out;
  }

  namespace {

    Element evaluate_letter(Monoid const& mon, WfLetter const& x) {
      switch (x.kind) {
        case WfLetter::Kind::single:
          return x.s;
        case WfLetter::Kind::left:
          return mon.mul(x.s, x.f);
        case WfLetter::Kind::right:
          return mon.mul(x.e, x.s);
        case WfLetter::Kind::middle:
          return mon.mul(x.e, x.s, x.f);
      }
      return x.s;
    }

    Alphabet alphabet_of(std::vector<WfLetter> const& letters) {
      std::vector<std::string> names;
      names.reserve(letters.size());
      for (auto const& x : letters) {
        names.push_back(wf_letter_name(x));
      }
      return Alphabet(std::move(names));
    }

  }  // namespace

  Dfa wf_tracker(Morphism const& m, std::vector<WfLetter> const& letters, Alphabet const& alphabet) {
    auto const n = m.monoid.size();
    // expect(e) = 3 + e
    std::size_t const  states = 3 + n;
    std::vector<State> trans(states * letters.size(), sink_state);
    std::vector<bool>  finals(states, false);
    finals[start_state] = true;
    finals[done_state]  = true;
    for (LetterIndex x = 0; x < letters.size(); ++x) {
      auto const& l = letters[x];
      if (l.kind == WfLetter::Kind::single) {
        trans[start_state * letters.size() + x] = done_state;
      } else if (l.kind == WfLetter::Kind::left) {
        trans[start_state * letters.size() + x] = 3 + l.f;
      } else if (l.kind == WfLetter::Kind::right) {
        trans[(3 + l.e) * letters.size() + x] = done_state;
      } else {
        trans[(3 + l.e) * letters.size() + x] = 3 + l.f;
      }
    }
    return Dfa(alphabet, states, start_state, std::move(finals), std::move(trans));
  }

  WfLanguage wf_language(Morphism const& m, std::string const& tag, std::size_t max_letters) {
    auto const& accepting = m.accepting_set(tag);
    WfLanguage  out;
    out.letters  = wf_letters(m, max_letters);
    out.alphabet = alphabet_of(out.letters);
    for (auto const& x : out.letters) {
      out.eval.push_back(evaluate_letter(m.monoid, x));
    }
    auto const tracker = wf_tracker(m, out.letters, out.alphabet);
    auto const n       = m.monoid.size();
    auto const k       = out.letters.size();
    // state = tracker * n + element; the sink collapses to one state
    std::size_t const  states = tracker.size() * n;
    std::vector<State> trans(states * k);
    std::vector<bool>  finals(states, false);
    for (State q = 0; q < tracker.size(); ++q) {
      for (Element s = 0; s < n; ++s) {
        State const here = q * n + s;
        finals[here]     = tracker.is_final(q) && accepting[s];
        for (LetterIndex x = 0; x < k; ++x) {
          auto const q2 = tracker.next(q, x);
          trans[here * k + x] =
              q2 == sink_state ? sink_state * n : q2 * n + m.monoid.mul(s, out.eval[x]);
        }
      }
    }
    out.dfa = Dfa(out.alphabet, states, start_state * n + m.monoid.identity(), std::move(finals),
                  std::move(trans))
                  .minimized();
    return out;
  }

  bool is_well_formed(std::vector<WfLetter> const& letters, Word const& w) {
    using K = WfLetter::Kind;
    if (w.empty()) {
      return true;
    }
    if (w.size() == 1) {
      return letters[w[0]].kind == K::single;
    }
    auto const& first = letters[w.front()];
    auto const& last  = letters[w.back()];
    if (first.kind != K::left || last.kind != K::right) {
      return false;
    }
    for (std::size_t i = 1; i + 1 < w.size(); ++i) {
      if (letters[w[i]].kind != K::middle) {
        return false;
      }
    }
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      auto const& a = letters[w[i]];
      auto const& b = letters[w[i + 1]];
      if (a.f != b.e) {
        return false;
      }
    }
    return true;
  }

  namespace {

    Verdict enriched(Verdict v, LogicClass which) {
      v.cls       = which;
      v.signature = "enriched";
      return v;
    }

    // Both languages over the well-formed alphabet of one recognizing morphism.
    Verdict transfer_separation(Morphism const&        joint,
                                Direction              direction,
                                EnrichedOptions const& options) {
      auto const l1 = wf_language(joint, "L1", options.max_letters);
      auto const l2 = wf_language(joint, "L2", options.max_letters);
      return separation_sigma2(l1.dfa, l2.dfa, direction, options.decide);
    }

  }  // namespace

  Verdict enriched_separation(Dfa const&             l1,
                              Dfa const&             l2,
                              Direction              direction,
                              EnrichedOptions const& options) {
    auto const joint = joint_morphism(l1.minimized(), l2.minimized(), options.decide.max_monoid);
    auto v = transfer_separation(joint, direction, options);
    return enriched(std::move(v), direction == Direction::sigma2_from ? LogicClass::sigma2
                                                                      : LogicClass::pi2);
  }

  Verdict enriched_membership(Dfa const& l, LogicClass which, EnrichedOptions const& options) {
    switch (which) {
      case LogicClass::sigma1:
      case LogicClass::pi1:
      case LogicClass::bsigma1:
        throw InvalidArgument("enriched " + std::string(class_name(which))
                              + " membership is not supported");
      default:
        break;
    }
    auto const minimal   = l.minimized();
    auto const syntactic = transition_monoid(minimal, options.decide.max_monoid);
    if (which == LogicClass::sigma2 || which == LogicClass::pi2 || which == LogicClass::delta2) {
      // L and its complement share the syntactic morphism.
      auto joint = syntactic;
      joint.accepting.clear();
      auto const& f = syntactic.accepting_set("L");
      ElementSet  co(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) {
        co[i] = !f[i];
      }
      joint.accepting = {{"L1", f}, {"L2", co}};
      auto sigma = [&] {
        return enriched(transfer_separation(joint, Direction::sigma2_from, options), which);
      };
      auto pi = [&] {
        return enriched(transfer_separation(joint, Direction::pi2_from, options), which);
      };
      if (which == LogicClass::sigma2) {
        return sigma();
      }
      if (which == LogicClass::pi2) {
        return pi();
      }
      auto s = sigma();
      if (!s.answer) {
        return s;
      }
      auto p = pi();
      if (!p.answer) {
        return p;
      }
      auto const checked = std::get<Certificate>(s.evidence).checked
                           + std::get<Certificate>(p.evidence).checked;
      Verdict v      = s;
      v.evidence     = Certificate{checked, "Sigma_2 and Pi_2 both hold"};
      return v;
    }
    auto const wf = wf_language(syntactic, "L", options.max_letters);
    return enriched(decide(wf.dfa, which, options.decide), which);
  }

}  // namespace fohier
