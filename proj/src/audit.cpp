#include "fohier/audit.hpp"

#include <sstream>

namespace fohier {

  namespace {

    std::string show(Chain const& c) {
      std::ostringstream out;
      out << "(";
      for (std::size_t i = 0; i < c.size(); ++i) {
        out << (i ? "," : "") << c[i];
      }
      out << ")";
      return out.str();
    }

  }  // namespace

  std::optional<std::string> audit_juncture_closure(JunctureSet const& j) {
    auto const& m   = j.morphism();
    auto const  ids = j.maximal();
    for (auto x : ids) {
      for (auto y : ids) {
        auto p = j.multiply(j.juncture(x), j.juncture(y));
        if (m.is_live(p.root) && !j.contains(p)) {
          return "product of junctures " + std::to_string(x) + " and " + std::to_string(y)
                 + " is missing";
        }
      }
    }
    for (auto x : ids) {
      auto const& jj = j.juncture(x);
      for (auto c : jj.chains) {
        if (!j.contains(Juncture{jj.root, {c}})) {
          return "sub-juncture of " + std::to_string(x) + " is missing";
        }
      }
      if (!j.contains(Juncture{jj.root, {}})) {
        return "root of " + std::to_string(x) + " is missing";
      }
    }
    if (j.length() >= 2 && j.previous) {
      auto const prev = chains_of_length(*j.previous);
      for (auto x : ids) {
        auto const& jj = j.juncture(x);
        Juncture    t{m.monoid.identity(), {}};
        for (auto code : prev.codes()) {
          auto first = static_cast<Element>(code % prev.radix());
          if (m.alph(first) == m.alph(jj.root)) {
            t.chains.push_back(code);
          }
        }
        auto p = j.omega(jj).first;
        auto q = j.multiply(j.multiply(p, t), p);
        if (m.is_live(q.root) && !j.contains(q)) {
          return "idempotent insertion on juncture " + std::to_string(x) + " is missing";
        }
      }
    }
    return std::nullopt;
  }

  std::optional<std::string>
  audit_chain_facts(std::vector<std::shared_ptr<JunctureSet const>> const& levels) {
    if (levels.empty()) {
      return std::nullopt;
    }
    auto const& m = levels[0]->morphism();
    std::vector<ChainSet> c;
    for (auto const& l : levels) {
      c.push_back(chains_of_length(*l));
    }
    for (std::size_t n = 1; n <= levels.size(); ++n) {
      auto const& cn = c[n - 1];
      for (auto s : m.image_elements()) {
        if (m.is_live(s) && !cn.contains(Chain(n, s))) {
          return "diagonal chain " + show(Chain(n, s)) + " is missing";
        }
      }
      auto const all = cn.chains();
      for (auto const& x : all) {
        if (n >= 2) {
          for (std::size_t del = 0; del < n; ++del) {
            auto y = x;
            y.erase(y.begin() + static_cast<std::ptrdiff_t>(del));
            if (!c[n - 2].contains(y)) {
              return "subword " + show(y) + " of chain " + show(x) + " is missing";
            }
          }
        }
        if (n < levels.size()) {
          for (std::size_t dup = 0; dup < n; ++dup) {
            auto y = x;
            y.insert(y.begin() + static_cast<std::ptrdiff_t>(dup), x[dup]);
            if (!c[n].contains(y)) {
              return "stutter " + show(y) + " of chain " + show(x) + " is missing";
            }
          }
        }
        for (auto const& y : all) {
          Chain z(n);
          bool  live = true;
          for (std::size_t i = 0; i < n; ++i) {
            z[i] = m.monoid.mul(x[i], y[i]);
            live = live && m.is_live(z[i]);
          }
          if (live && !cn.contains(z)) {
            return "product " + show(z) + " of " + show(x) + " and " + show(y) + " is missing";
          }
        }
      }
    }
    return std::nullopt;
  }

}  // namespace fohier
