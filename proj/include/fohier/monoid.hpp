#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace fohier {

  using Element = std::uint32_t;

  // Finite monoid given by its multiplication table. Elements are 0..size()-1.
  class Monoid {
   public:
    // Associativity is checked exhaustively up to this size.
    static constexpr std::size_t associativity_check_limit = 200;

    Monoid() = default;
    // Validates the identity law, and associativity when size() is at most
    // associativity_check_limit. Throws InvalidArgument.
    Monoid(std::size_t size, Element identity, std::vector<Element> table);

    // Skips validation; for tables built from a faithful action.
    static Monoid from_action(std::size_t size, Element identity, std::vector<Element> table);

    std::size_t size() const noexcept {
      return _size;
    }
    Element identity() const noexcept {
      return _identity;
    }
    Element mul(Element a, Element b) const {
      return _table[static_cast<std::size_t>(a) * _size + b];
    }
    Element mul(Element a, Element b, Element c) const {
      return mul(mul(a, b), c);
    }
    Element power(Element s, std::size_t n) const;
    bool is_idempotent(Element s) const {
      return mul(s, s) == s;
    }
    std::vector<Element> const& table() const noexcept {
      return _table;
    }

    bool operator==(Monoid const&) const = default;

   private:
    std::size_t          _size     = 0;
    Element              _identity = 0;
    std::vector<Element> _table;
  };

  // The unique idempotent among s, s^2, s^3, ...
  Element idempotent_power(Monoid const& m, Element s);

  // Smallest n >= 1 with s^n idempotent.
  std::size_t idempotent_exponent(Monoid const& m, Element s);

  // Smallest N with s^N idempotent for every s.
  std::size_t global_omega(Monoid const& m);

  // Two distinct elements generating the same two-sided ideal, if any.
  std::optional<std::pair<Element, Element>> j_collision(Monoid const& m);

  inline bool is_j_trivial(Monoid const& m) {
    return !j_collision(m).has_value();
  }

  // Two-sided ideal MsM as a membership mask.
  std::vector<bool> two_sided_ideal(Monoid const& m, Element s);

}  // namespace fohier
