#include "fohier/monoid.hpp"

#include <map>
#include <numeric>

#include "fohier/errors.hpp"

namespace fohier {

  Monoid::Monoid(std::size_t size, Element identity, std::vector<Element> table)
      : _size(size), _identity(identity), _table(std::move(table)) {
    if (_size == 0) {
      throw InvalidArgument("a monoid has at least one element");
    }
    if (_identity >= _size) {
      throw InvalidArgument("identity out of range");
    }
    if (_table.size() != _size * _size) {
      throw InvalidArgument("multiplication table has the wrong shape");
    }
    for (auto x : _table) {
      if (x >= _size) {
        throw InvalidArgument("table entry out of range");
      }
    }
    for (Element s = 0; s < _size; ++s) {
      if (mul(_identity, s) != s || mul(s, _identity) != s) {
        throw InvalidArgument("identity law fails for element " + std::to_string(s));
      }
    }
    if (_size <= associativity_check_limit) {
      for (Element a = 0; a < _size; ++a) {
        for (Element b = 0; b < _size; ++b) {
          Element ab = mul(a, b);
          for (Element c = 0; c < _size; ++c) {
            if (mul(ab, c) != mul(a, mul(b, c))) {
              throw InvalidArgument("table is not associative on (" + std::to_string(a) + ","
                                    + std::to_string(b) + "," + std::to_string(c) + ")");
            }
          }
        }
      }
    }
  }

  Monoid Monoid::from_action(std::size_t size, Element identity, std::vector<Element> table) {
    Monoid m;
    m._size     = size;
    m._identity = identity;
    m._table    = std::move(table);
    return m;
  }

  Element Monoid::power(Element s, std::size_t n) const {
    Element result = _identity;
    Element base   = s;
    while (n > 0) {
      if (n & 1U) {
        result = mul(result, base);
      }
      base = mul(base, base);
      n >>= 1U;
    }
    return result;
  }

  std::size_t idempotent_exponent(Monoid const& m, Element s) {
    Element p = s;
    for (std::size_t n = 1;; ++n) {
      if (m.is_idempotent(p)) {
        return n;
      }
      p = m.mul(p, s);
    }
  }

  Element idempotent_power(Monoid const& m, Element s) {
    // Iterate powers until one repeats, then pick the idempotent in the cycle.
    std::map<Element, std::size_t> first_seen;
    std::vector<Element>           powers;
    Element                        p = s;
    while (first_seen.emplace(p, powers.size()).second) {
      powers.push_back(p);
      p = m.mul(p, s);
    }
    for (std::size_t i = first_seen[p]; i < powers.size(); ++i) {
      if (m.is_idempotent(powers[i])) {
        return powers[i];
      }
    }
    throw InternalInconsistency("no idempotent in the cycle of powers");
  }

  std::size_t global_omega(Monoid const& m) {
    std::size_t period_lcm = 1;
    std::size_t max_index  = 1;
    for (Element s = 0; s < m.size(); ++s) {
      std::map<Element, std::size_t> first_seen;  // power value -> exponent
      Element                        p = s;
      std::size_t                    n = 1;
      while (true) {
        auto [it, fresh] = first_seen.emplace(p, n);
        if (!fresh) {
          std::size_t index  = it->second;
          std::size_t period = n - index;
          period_lcm         = std::lcm(period_lcm, period);
          max_index          = std::max(max_index, index);
          break;
        }
        p = m.mul(p, s);
        ++n;
      }
    }
    return ((max_index + period_lcm - 1) / period_lcm) * period_lcm;
  }

  std::vector<bool> two_sided_ideal(Monoid const& m, Element s) {
    std::vector<bool> in(m.size(), false);
    for (Element x = 0; x < m.size(); ++x) {
      Element xs = m.mul(x, s);
      for (Element y = 0; y < m.size(); ++y) {
        in[m.mul(xs, y)] = true;
      }
    }
    return in;
  }

  std::optional<std::pair<Element, Element>> j_collision(Monoid const& m) {
    std::map<std::vector<bool>, Element> seen;
    for (Element s = 0; s < m.size(); ++s) {
      auto [it, fresh] = seen.emplace(two_sided_ideal(m, s), s);
      if (!fresh) {
        return std::make_pair(it->second, s);
      }
    }
    return std::nullopt;
  }

}  // namespace fohier
