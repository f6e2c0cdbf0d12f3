#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fohier/morphism.hpp"

namespace fohier {

  using Chain = std::vector<Element>;

  struct Limits {
    std::size_t max_junctures      = 1'000'000;
    std::size_t max_witness_length = 100'000;
    // Alternation schemas and schema-pair equation checks (membership in BSigma2).
    std::size_t max_schemas        = 2'000'000;
    std::size_t max_schema_pairs   = 400'000'000;
  };

  // Chains of one fixed length over a monoid of `radix` elements, stored as
  // sorted base-`radix` codes (first element least significant).
  class ChainSet {
   public:
    using Code = std::uint64_t;

    ChainSet() = default;
    ChainSet(std::size_t length, std::size_t radix);

    std::size_t length() const noexcept {
      return _length;
    }
    std::size_t radix() const noexcept {
      return _radix;
    }
    std::size_t size() const noexcept {
      return _codes.size();
    }
    bool empty() const noexcept {
      return _codes.empty();
    }
    std::vector<Code> const& codes() const noexcept {
      return _codes;
    }

    Code encode(Chain const& c) const;
    Chain decode(Code code) const;

    bool contains(Chain const& c) const;
    std::vector<Chain> chains() const;

    void insert(Chain const& c);
    // Codes may arrive unsorted; duplicates are removed.
    void assign(std::vector<Code> codes);

    bool operator==(ChainSet const&) const = default;

   private:
    std::size_t       _length = 0;
    std::size_t       _radix  = 1;
    std::vector<Code> _codes;
  };

  // (root, set of chains of length n-1). For n = 1 the chainset is empty.
  struct Juncture {
    Element                     root = 0;
    std::vector<ChainSet::Code> chains;  // sorted

    bool operator==(Juncture const&) const = default;
    bool operator<(Juncture const& other) const {
      return root != other.root ? root < other.root : chains < other.chains;
    }
  };

  struct Derivation {
    enum class Kind { initial, product, op3 };
    Kind        kind  = Kind::initial;
    std::size_t left  = 0;  // arena ids; `left` only for op3
    std::size_t right = 0;
  };

  // Least set of junctures of a fixed length closed under the saturation
  // operations, kept as per-root antichains of maximal junctures. Every
  // juncture ever discovered stays in the arena with its derivation.
  using StopWhen = std::function<bool(Juncture const&)>;

  class JunctureSet {
   public:
    JunctureSet(Morphism const& m, std::size_t length);

    std::size_t length() const noexcept {
      return _length;
    }
    Morphism const& morphism() const noexcept {
      return *_morphism;
    }
    std::size_t radix() const noexcept {
      return _radix;
    }

    // Ids of stored maximal junctures, roots ascending then discovery order.
    std::vector<std::size_t> maximal() const;
    std::vector<std::size_t> const& maximal_with_root(Element root) const {
      return _by_root[root];
    }
    Juncture const& juncture(std::size_t id) const {
      return _arena[id].value;
    }
    Derivation const& derivation(std::size_t id) const {
      return _arena[id].derivation;
    }
    std::size_t arena_size() const noexcept {
      return _arena.size();
    }
    // False when saturation was stopped early.
    bool complete() const noexcept {
      return _complete;
    }
    std::size_t maximal_count() const noexcept;

    // Membership in the downset.
    bool contains(Juncture const& j) const;
    // A stored maximal juncture containing j, if any.
    std::optional<std::size_t> find_cover(Juncture const& j) const;

    // Inserts unless subsumed; removes stored junctures it subsumes.
    std::optional<std::size_t> insert(Juncture j, Derivation d);

    Juncture multiply(Juncture const& a, Juncture const& b) const;
    // Chain product, coordinatewise.
    ChainSet::Code multiply_codes(ChainSet::Code a, ChainSet::Code b) const;
    // Idempotent power of j and the least exponent reaching it.
    std::pair<Juncture, std::size_t> omega(Juncture const& j) const;

    // Set by saturation for n >= 2; used by witness synthesis.
    std::shared_ptr<JunctureSet const> previous;

   private:
    struct Entry {
      Juncture   value;
      Derivation derivation;
    };

    std::shared_ptr<Morphism const>                       _morphism;
    std::size_t                           _length;
    std::size_t                           _radix;
    std::size_t                           _chain_length;
    std::vector<Entry>                    _arena;
    std::vector<std::vector<std::size_t>> _by_root;
    std::vector<bool>                     _stored;
    // Scratch for deduplicating product chains (epoch marks per code).
    mutable std::vector<std::uint32_t>    _mark;
    mutable std::uint32_t                 _epoch = 0;
    mutable std::vector<std::uint8_t>     _hit;

    bool _complete = true;

    friend JunctureSet saturate(JunctureSet                        base,
                                std::shared_ptr<JunctureSet const> prev,
                                Limits const&                      limits,
                                StopWhen const&                    stop);
  };

  // D_n: (s, {(s,...,s)}) for every live image element s.
  JunctureSet initial_junctures(Morphism const& m, std::size_t n);

  // Closes `base` under downset, product and
  //   (s,S)^w (1,T) (s,S)^w,  T = { t in C(n-1) : alph(t_1) = alph(s) }.
  // `prev` is the saturated level n-1 (unused for n = 1). The morphism must
  // be alphabet compatible.
  // With `stop`, saturation ends as soon as a stored juncture satisfies it;
  // the result is then sound but not complete.
  JunctureSet saturate(JunctureSet                        base,
                       std::shared_ptr<JunctureSet const> prev,
                       Limits const&                      limits = {},
                       StopWhen const&                    stop   = {});

  // Levels 1..n_max.
  std::vector<std::shared_ptr<JunctureSet const>>
  all_junctures(Morphism const& m, std::size_t n_max, Limits const& limits = {});

  // (s, c) for every stored maximal (s, S) and c in S; roots for n = 1.
  ChainSet chains_of_length(JunctureSet const& j);

  // Drops the alphabet component of every chain element.
  ChainSet project_chains(ChainSet const& c, Completion const& completion);

  // Number of adjacent unequal pairs.
  std::size_t alternation(Chain const& c);

  // 9 n m^2 2^(m^(n-1)).
  boost::multiprecision::cpp_int rank_bound(std::size_t n, std::size_t msize);
  // Decimal when reasonably short, otherwise the unevaluated formula.
  std::string format_rank_bound(std::size_t n, std::size_t msize);

  // Words w_1 ... w_n with alpha(w_i) = target_i and w_1 <~ ... <~ w_n for
  // the rank-k Sigma_2 preorder, built along the recorded derivations.
  std::vector<Word> synthesize_witness(JunctureSet const& j,
                                       Chain const&       target,
                                       unsigned           k,
                                       Limits const&      limits = {});

  // Arena ids along the derivation tree of a juncture, root first.
  std::string describe_derivation(JunctureSet const& j, std::size_t id, std::size_t max_nodes = 64);

}  // namespace fohier
