#include "fohier/decide.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>
#include <unordered_set>

#include "fohier/errors.hpp"

namespace fohier {

  namespace {

    constexpr std::array<std::pair<LogicClass, std::string_view>, 10> class_names{{
        {LogicClass::sigma1, "sigma1"},
        {LogicClass::pi1, "pi1"},
        {LogicClass::bsigma1, "bsigma1"},
        {LogicClass::sigma2, "sigma2"},
        {LogicClass::pi2, "pi2"},
        {LogicClass::delta2, "delta2"},
        {LogicClass::bsigma2, "bsigma2"},
        {LogicClass::sigma3, "sigma3"},
        {LogicClass::pi3, "pi3"},
        {LogicClass::delta3, "delta3"},
    }};

    NamedElement named(std::vector<std::string> const& names, Element s) {
      return {s, names.at(s)};
    }

    Verdict certificate(LogicClass cls, std::size_t checked, std::string note) {
      Verdict v;
      v.cls      = cls;
      v.answer   = true;
      v.evidence = Certificate{checked, std::move(note)};
      return v;
    }

    bool is_trivial(Dfa const& minimal) {
      return minimal.size() == 1;
    }

    Morphism syntactic_morphism(Dfa const& l, DecideOptions const& options) {
      return transition_monoid(l.minimized(), options.max_monoid);
    }

    std::vector<Element> omega_table(Monoid const& m) {
      std::vector<Element> w(m.size());
      for (Element s = 0; s < m.size(); ++s) {
        w[s] = idempotent_power(m, s);
      }
      return w;
    }

  }  // namespace

  std::string_view class_name(LogicClass c) {
    for (auto const& [k, name] : class_names) {
      if (k == c) {
        return name;
      }
    }
    return "?";
  }

  std::optional<LogicClass> parse_class(std::string_view name) {
    for (auto const& [k, n] : class_names) {
      if (n == name) {
        return k;
      }
    }
    return std::nullopt;
  }

  std::vector<LogicClass> const& all_classes() {
    static std::vector<LogicClass> const all = [] {
      std::vector<LogicClass> v;
      for (auto const& [k, name] : class_names) {
        v.push_back(k);
      }
      return v;
    }();
    return all;
  }

  Verdict membership_sigma1(Dfa const& l, bool pi, DecideOptions const& options) {
    auto const cls = pi ? LogicClass::pi1 : LogicClass::sigma1;
    auto       m   = syntactic_morphism(l, options);
    auto       p   = recognition_preorder(m, "L");
    auto       one = m.monoid.identity();
    auto       names = element_names(m);
    std::size_t checked = 0;
    for (auto t : m.image_elements()) {
      ++checked;
      bool ok = pi ? p.leq(t, one) : p.leq(one, t);
      if (!ok) {
        Verdict v;
        v.cls    = cls;
        v.answer = false;
        v.evidence = EquationViolation{pi ? "t <= 1" : "1 <= t",
                                       {{"t", named(names, t)}},
                                       named(names, pi ? t : one),
                                       named(names, pi ? one : t)};
        return v;
      }
    }
    return certificate(cls, checked, "syntactic order checked against the identity");
  }

  Verdict membership_bsigma1(Dfa const& l, DecideOptions const& options) {
    auto m = syntactic_morphism(l, options);
    if (auto c = j_collision(m.monoid)) {
      auto    names = element_names(m);
      Verdict v;
      v.cls      = LogicClass::bsigma1;
      v.answer   = false;
      v.evidence = EquationViolation{"MsM = MtM implies s = t",
                                     {{"s", named(names, c->first)}, {"t", named(names, c->second)}},
                                     named(names, c->first),
                                     named(names, c->second)};
      return v;
    }
    return certificate(LogicClass::bsigma1, m.monoid.size(), "syntactic monoid is J-trivial");
  }

  Verdict separation_sigma2(Morphism const& joint, Direction direction, DecideOptions const& options) {
    auto reduced = options.reduce ? collapse_dead(merge_equivalent_letters(joint)) : joint;
    auto completion = alphabet_completion(reduced, options.max_completion);
    auto const& m   = completion.morphism;
    auto const& f1  = m.accepting_set("L1");
    auto const& f2  = m.accepting_set("L2");
    auto const& lo  = direction == Direction::sigma2_from ? f1 : f2;
    auto const& hi  = direction == Direction::sigma2_from ? f2 : f1;
    auto level1     = all_junctures(m, 1, options.limits)[0];
    auto const j2   = saturate(initial_junctures(m, 2), level1, options.limits, [&](Juncture const& j) {
      return lo[j.root] && std::any_of(j.chains.begin(), j.chains.end(), [&](auto c) { return hi[c]; });
    });
    auto chains     = chains_of_length(j2);

    Verdict v;
    v.cls = direction == Direction::sigma2_from ? LogicClass::sigma2 : LogicClass::pi2;
    std::size_t checked = 0;
    for (auto s1 : m.image_elements()) {
      if (!f1[s1] || !m.is_live(s1)) {
        continue;
      }
      for (auto s2 : m.image_elements()) {
        if (!f2[s2] || !m.is_live(s2)) {
          continue;
        }
        ++checked;
        Chain pair = direction == Direction::sigma2_from ? Chain{s1, s2} : Chain{s2, s1};
        if (!chains.contains(pair)) {
          continue;
        }
        auto      names = element_names(m);
        ChainPair evidence;
        evidence.direction = direction == Direction::sigma2_from ? "sigma2" : "pi2";
        evidence.first     = named(names, s1);
        evidence.second    = named(names, s2);
        for (auto x : pair) {
          evidence.chain.push_back(named(names, x));
        }
        ChainSet codec(1, j2.radix());
        auto     cover = j2.find_cover(Juncture{pair[0], {codec.encode({pair[1]})}});
        if (!cover) {
          throw InternalInconsistency("chain without a covering juncture");
        }
        evidence.derivation = describe_derivation(j2, *cover, 12);
        evidence.alphabet   = joint.alphabet;
        try {
          for (auto const& w : synthesize_witness(j2, pair, 1, options.limits)) {
            evidence.witnesses.push_back(translate_word(w, m.alphabet, joint.alphabet));
          }
        } catch (ResourceLimit const&) {
          evidence.witnesses.clear();
        }
        v.answer   = false;
        v.evidence = std::move(evidence);
        return v;
      }
    }
    v.answer         = true;
    v.evidence       = Certificate{checked, "no accepting pair is a Sigma_2 chain"};
    v.separator_rank = format_rank_bound(2, m.monoid.size());
    return v;
  }

  Verdict separation_sigma2(Dfa const& l1, Dfa const& l2, Direction direction, DecideOptions const& options) {
    return separation_sigma2(joint_morphism(l1, l2, options.max_monoid), direction, options);
  }

  Verdict membership_level2(Dfa const& l, LogicClass which, DecideOptions const& options) {
    auto const minimal = l.minimized();
    if (is_trivial(minimal)) {
      return certificate(which, 1, "trivial syntactic monoid");
    }
    auto const co = complement(minimal);
    if (which == LogicClass::sigma2) {
      auto v = separation_sigma2(minimal, co, Direction::sigma2_from, options);
      v.cls  = which;
      return v;
    }
    if (which == LogicClass::pi2) {
      auto v = separation_sigma2(co, minimal, Direction::sigma2_from, options);
      v.cls  = which;
      return v;
    }
    if (which != LogicClass::delta2) {
      throw InvalidArgument("membership_level2 handles sigma2, pi2 and delta2");
    }
    auto s = membership_level2(minimal, LogicClass::sigma2, options);
    if (!s.answer) {
      s.cls = which;
      return s;
    }
    auto p = membership_level2(minimal, LogicClass::pi2, options);
    if (!p.answer) {
      p.cls = which;
      return p;
    }
    auto checked = std::get<Certificate>(s.evidence).checked + std::get<Certificate>(p.evidence).checked;
    auto v       = certificate(which, checked, "Sigma_2 and Pi_2 both hold");
    v.separator_rank = s.separator_rank;
    return v;
  }

  Verdict membership_sigma3_family(Morphism const& syntactic, LogicClass which, DecideOptions const& options) {
    if (which != LogicClass::sigma3 && which != LogicClass::pi3 && which != LogicClass::delta3) {
      throw InvalidArgument("membership_sigma3_family handles sigma3, pi3 and delta3");
    }
    auto m          = options.reduce ? merge_equivalent_letters(syntactic) : syntactic;
    auto completion = alphabet_completion(m, options.max_completion);
    auto pre        = recognition_preorder(m, "L");
    auto omega      = omega_table(m.monoid);
    auto holds      = [&](Element t, Element s) {
      auto e   = omega[s];
      auto rhs = m.monoid.mul(e, t, e);
      bool up = pre.leq(e, rhs), down = pre.leq(rhs, e);
      return which == LogicClass::sigma3 ? up : which == LogicClass::pi3 ? down : up && down;
    };
    auto const& base = completion.base;
    auto level1      = all_junctures(completion.morphism, 1, options.limits)[0];
    auto const j2    = saturate(initial_junctures(completion.morphism, 2), level1, options.limits,
                             [&](Juncture const& j) {
                               return std::any_of(j.chains.begin(), j.chains.end(), [&](auto c) {
                                 return !holds(base[j.root], base[c]);
                               });
                             });
    auto pairs       = project_chains(chains_of_length(j2), completion);

    std::size_t checked = 0;
    for (auto const& c : pairs.chains()) {
      auto t = c[0], s = c[1];
      auto e   = omega[s];
      auto rhs = m.monoid.mul(e, t, e);
      ++checked;
      if (!holds(t, s)) {
        auto    names = element_names(m);
        Verdict v;
        v.cls    = which;
        v.answer = false;
        std::string eq = which == LogicClass::sigma3 ? "s^w <= s^w t s^w"
                         : which == LogicClass::pi3  ? "s^w >= s^w t s^w"
                                                     : "s^w = s^w t s^w";
        v.evidence = EquationViolation{std::move(eq),
                                       {{"t", named(names, t)}, {"s", named(names, s)}},
                                       named(names, e),
                                       named(names, rhs)};
        return v;
      }
    }
    return certificate(which, checked, "equation holds on every projected Sigma_2 chain");
  }

  Verdict membership_sigma3_family(Dfa const& l, LogicClass which, DecideOptions const& options) {
    auto minimal = l.minimized();
    if (is_trivial(minimal)) {
      return certificate(which, 1, "trivial syntactic monoid");
    }
    return membership_sigma3_family(transition_monoid(minimal, options.max_monoid), which, options);
  }

  void for_each_alternation_schema(JunctureSet const&                              j2,
                                   std::function<bool(AlternationSchema const&)> visit) {
    if (j2.length() != 2) {
      throw InvalidArgument("alternation schemas need junctures of length 2");
    }
    auto const& m = j2.morphism();
    auto const  n = m.monoid.size();

    std::map<Juncture, std::size_t> idempotents;
    for (auto id : j2.maximal()) {
      idempotents.emplace(j2.omega(j2.juncture(id)).first, id);
    }
    std::unordered_set<std::uint64_t> seen;
    auto const live = m.image_elements();
    constexpr auto none = std::numeric_limits<std::size_t>::max();
    for (auto const& [e, e_id] : idempotents) {
      auto const& b = m.alph(e.root);
      // left[r1][s1]: a stored (r1,R1) with s1 in R1.E
      std::vector<std::vector<std::size_t>> left(n), right(n);
      for (auto r : live) {
        for (auto id : j2.maximal_with_root(r)) {
          for (auto x : j2.juncture(id).chains) {
            for (auto y : e.chains) {
              auto l = j2.multiply_codes(x, y);
              auto q = j2.multiply_codes(y, x);
              if (left[r].empty()) {
                left[r].assign(n, none);
                right[r].assign(n, none);
              }
              if (left[r][l] == none) {
                left[r][l] = id;
              }
              if (right[r][q] == none) {
                right[r][q] = id;
              }
            }
          }
        }
      }
      // sparse views: (element, id) lists per root
      std::vector<std::vector<std::pair<Element, std::size_t>>> lefts(n), rights(n);
      for (auto r : live) {
        if (left[r].empty()) {
          continue;
        }
        for (Element x = 0; x < n; ++x) {
          if (!m.is_live(x)) {
            continue;
          }
          if (left[r][x] != none) {
            lefts[r].emplace_back(x, left[r][x]);
          }
          if (right[r][x] != none) {
            rights[r].emplace_back(x, right[r][x]);
          }
        }
      }
      for (auto r1 : live) {
        if (lefts[r1].empty()) {
          continue;
        }
        auto const r1e = m.monoid.mul(r1, e.root);
        for (auto r2 : live) {
          if (rights[r2].empty()) {
            continue;
          }
          auto s = m.monoid.mul(r1e, r2);
          if (!m.is_live(s) || !(m.alph(s) == b)) {
            continue;
          }
          for (auto [s1, id1] : lefts[r1]) {
            for (auto [s2, id2] : rights[r2]) {
              std::uint64_t key = (std::uint64_t(s) * n + s1) * n + s2;
              if (seen.insert(key).second) {
                if (!visit({s, s1, s2, id1, id2, e_id})) {
                  return;
                }
              }
            }
          }
        }
      }
    }
  }

  std::vector<AlternationSchema> alternation_schemas(JunctureSet const& j2, Limits const& limits) {
    std::vector<AlternationSchema> out;
    for_each_alternation_schema(j2, [&](AlternationSchema const& x) {
      if (out.size() >= limits.max_schemas) {
        throw ResourceLimit("more than " + std::to_string(limits.max_schemas) + " alternation schemas");
      }
      out.push_back(x);
      return true;
    });
    std::sort(out.begin(), out.end(), [](auto const& a, auto const& b) {
      return std::tie(a.s, a.s1, a.s2) < std::tie(b.s, b.s1, b.s2);
    });
    return out;
  }

  namespace {

    // Checks equation (16) pairwise as schemas arrive, grouped by alph(s).
    class Eq16Checker {
     public:
      Eq16Checker(Morphism const& m, Limits const& limits)
          : _m(m), _omega(omega_table(m.monoid)), _limits(limits) {}

      // False once a violation is found.
      bool add(AlternationSchema const& x) {
        if (++_schemas > _limits.max_schemas) {
          throw ResourceLimit("more than " + std::to_string(_limits.max_schemas)
                              + " alternation schemas");
        }
        auto& group = _groups[_m.alph(x.s)];
        group.push_back(x);
        for (auto const& y : group) {
          if (!holds(x, y) || !holds(y, x)) {
            return false;
          }
        }
        return true;
      }

      std::optional<Verdict> const& violation() const {
        return _violation;
      }
      std::size_t checked() const {
        return _checked;
      }

     private:
      bool holds(AlternationSchema const& sg, AlternationSchema const& tg) {
        auto const& mon = _m.monoid;
        if (++_checked > _limits.max_schema_pairs) {
          throw ResourceLimit("more than " + std::to_string(_limits.max_schema_pairs)
                              + " alternation schema pairs");
        }
        auto x   = _omega[mon.mul(sg.s1, tg.s1)];
        auto y   = _omega[mon.mul(tg.s2, sg.s2)];
        auto lhs = mon.mul(mon.mul(x, sg.s), y);
        auto rhs = mon.mul(mon.mul(x, mon.mul(sg.s1, tg.s, sg.s2)), y);
        if (lhs == rhs) {
          return true;
        }
        auto    names = element_names(_m);
        Verdict v;
        v.cls      = LogicClass::bsigma2;
        v.answer   = false;
        v.evidence = EquationViolation{"(s1 t1)^w s (t2 s2)^w = (s1 t1)^w s1 t s2 (t2 s2)^w",
                                       {{"s", named(names, sg.s)},
                                        {"s1", named(names, sg.s1)},
                                        {"s2", named(names, sg.s2)},
                                        {"t", named(names, tg.s)},
                                        {"t1", named(names, tg.s1)},
                                        {"t2", named(names, tg.s2)}},
                                       named(names, lhs),
                                       named(names, rhs)};
        _violation = std::move(v);
        return false;
      }

      Morphism const&                                    _m;
      std::vector<Element>                               _omega;
      Limits                                             _limits;
      std::map<LetterSet, std::vector<AlternationSchema>> _groups;
      std::size_t                                        _schemas = 0;
      std::size_t                                        _checked = 0;
      std::optional<Verdict>                             _violation;
    };

  }  // namespace

  Verdict check_eq16(Morphism const&                       m,
                     std::vector<AlternationSchema> const& schemas,
                     Limits const&                         limits) {
    Eq16Checker checker(m, limits);
    for (auto const& x : schemas) {
      if (!checker.add(x)) {
        return *checker.violation();
      }
    }
    return certificate(LogicClass::bsigma2, checker.checked(), "equation holds on every schema pair");
  }

  Verdict check_eq17(Morphism const& m, ChainSet const& c3) {
    auto const& mon   = m.monoid;
    auto        omega = omega_table(mon);
    std::size_t checked = 0;
    for (auto const& c : c3.chains()) {
      auto a = omega[c[0]], b = omega[c[2]];
      std::array<std::array<Element, 2>, 2> sides{{{mon.mul(a, b), mon.mul(a, c[1], b)},
                                                   {mon.mul(b, a), mon.mul(b, c[1], a)}}};
      for (std::size_t i = 0; i < 2; ++i) {
        ++checked;
        if (sides[i][0] != sides[i][1]) {
          auto    names = element_names(m);
          Verdict v;
          v.cls      = LogicClass::bsigma2;
          v.answer   = false;
          v.evidence = EquationViolation{
              i == 0 ? "s1^w s3^w = s1^w s2 s3^w" : "s3^w s1^w = s3^w s2 s1^w",
              {{"s1", named(names, c[0])}, {"s2", named(names, c[1])}, {"s3", named(names, c[2])}},
              named(names, sides[i][0]),
              named(names, sides[i][1])};
          return v;
        }
      }
    }
    return certificate(LogicClass::bsigma2, checked, "equations hold on every chain of length 3");
  }

  Verdict membership_bsigma2(Morphism const& syntactic, DecideOptions const& options) {
    auto m          = options.reduce ? merge_equivalent_letters(syntactic) : syntactic;
    auto completion = alphabet_completion(m, options.max_completion);
    auto const& cm  = completion.morphism;
    auto level1     = all_junctures(cm, 1, options.limits)[0];
    // Schemas of a partial saturation are genuine, so a violation found on
    // one is final; only a complete saturation certifies the equation.
    std::shared_ptr<JunctureSet const> j2;
    std::size_t                        checked = 0;
    for (std::size_t budget = 256;; budget *= 4) {
      std::size_t inserted = 0;
      j2 = std::make_shared<JunctureSet const>(saturate(
          initial_junctures(cm, 2), level1, options.limits,
          [&](Juncture const&) { return ++inserted > budget; }));
      Eq16Checker checker(cm, options.limits);
      for_each_alternation_schema(*j2, [&](AlternationSchema const& x) { return checker.add(x); });
      if (checker.violation()) {
        return *checker.violation();
      }
      checked = checker.checked();
      if (j2->complete()) {
        break;
      }
    }
    auto v   = certificate(LogicClass::bsigma2, checked, "");
    auto j3  = saturate(initial_junctures(cm, 3), j2, options.limits);
    auto v17 = check_eq17(cm, chains_of_length(j3));
    if (!v17.answer) {
      throw InternalInconsistency("equation (16) holds but (17) fails: " + describe(v17.evidence));
    }
    auto& cert = std::get<Certificate>(v.evidence);
    cert.checked += std::get<Certificate>(v17.evidence).checked;
    cert.note = "equation holds on every schema pair; chain equations agree";
    return v;
  }

  Verdict membership_bsigma2(Dfa const& l, DecideOptions const& options) {
    auto minimal = l.minimized();
    if (is_trivial(minimal)) {
      return certificate(LogicClass::bsigma2, 1, "trivial syntactic monoid");
    }
    return membership_bsigma2(transition_monoid(minimal, options.max_monoid), options);
  }

  Verdict decide(Dfa const& l, LogicClass which, DecideOptions const& options) {
    auto minimal = l.minimized();
    if (is_trivial(minimal)) {
      return certificate(which, 1, "trivial syntactic monoid");
    }
    switch (which) {
      case LogicClass::sigma1:
        return membership_sigma1(minimal, false, options);
      case LogicClass::pi1:
        return membership_sigma1(minimal, true, options);
      case LogicClass::bsigma1:
        return membership_bsigma1(minimal, options);
      case LogicClass::sigma2:
      case LogicClass::pi2:
      case LogicClass::delta2:
        return membership_level2(minimal, which, options);
      case LogicClass::bsigma2:
        return membership_bsigma2(minimal, options);
      case LogicClass::sigma3:
      case LogicClass::pi3:
      case LogicClass::delta3:
        return membership_sigma3_family(minimal, which, options);
    }
    throw InvalidArgument("unknown class");
  }

  std::string describe(Evidence const& e) {
    std::ostringstream out;
    if (auto const* v = std::get_if<EquationViolation>(&e)) {
      out << "violation of " << v->equation << " with";
      for (auto const& [k, x] : v->parameters) {
        out << " " << k << "=" << x.name;
      }
      out << ": lhs " << v->lhs.name << " differs from rhs " << v->rhs.name;
    } else if (auto const* c = std::get_if<ChainPair>(&e)) {
      out << "accepting pair (" << c->first.name << ", " << c->second.name << ") forms the "
          << "chain (";
      for (std::size_t i = 0; i < c->chain.size(); ++i) {
        out << (i ? ", " : "") << c->chain[i].name;
      }
      out << ")";
      if (!c->witnesses.empty()) {
        out << "; witnesses";
        for (auto const& w : c->witnesses) {
          out << " " << c->alphabet.format(w);
        }
      }
    } else {
      auto const& cert = std::get<Certificate>(e);
      out << cert.note << " (" << cert.checked << " instances)";
    }
    return out.str();
  }

}  // namespace fohier
