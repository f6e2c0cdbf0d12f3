#include "fohier/chains.hpp"

#include <algorithm>
#include <queue>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

#include "fohier/errors.hpp"

namespace fohier {

  using Code = ChainSet::Code;

  namespace {

    std::size_t checked_radix_power(std::size_t radix, std::size_t length) {
      std::size_t p = 1;
      for (std::size_t i = 0; i < length; ++i) {
        if (p > std::numeric_limits<std::uint64_t>::max() / std::max<std::size_t>(radix, 1)) {
          throw ResourceLimit("chains of length " + std::to_string(length) + " over "
                              + std::to_string(radix) + " elements do not fit a 64-bit code");
        }
        p *= radix;
      }
      return p;
    }

    bool is_subset(std::vector<Code> const& a, std::vector<Code> const& b) {
      return a.size() <= b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
    }

    void normalize(std::vector<Code>& v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }

    // Chains of `prev` grouped by the alphabet of their first element.
    std::map<LetterSet, std::vector<Code>> chains_by_alph(JunctureSet const& prev) {
      auto const& m = prev.morphism();
      std::map<LetterSet, std::vector<Code>> result;
      auto const chains = chains_of_length(prev);
      for (auto code : chains.codes()) {
        auto first = static_cast<Element>(code % prev.radix());
        result[m.alph(first)].push_back(code);
      }
      return result;
    }

  }  // namespace

  ChainSet::ChainSet(std::size_t length, std::size_t radix) : _length(length), _radix(radix) {
    checked_radix_power(radix, length);
  }

  Code ChainSet::encode(Chain const& c) const {
    if (c.size() != _length) {
      throw InvalidArgument("chain has length " + std::to_string(c.size()) + ", expected "
                            + std::to_string(_length));
    }
    Code code = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      if (*it >= _radix) {
        throw InvalidArgument("chain element out of range");
      }
      code = code * _radix + *it;
    }
    return code;
  }

  Chain ChainSet::decode(Code code) const {
    Chain c(_length);
    for (auto& x : c) {
      x = static_cast<Element>(code % _radix);
      code /= _radix;
    }
    return c;
  }

  bool ChainSet::contains(Chain const& c) const {
    if (c.size() != _length) {
      return false;
    }
    return std::binary_search(_codes.begin(), _codes.end(), encode(c));
  }

  std::vector<Chain> ChainSet::chains() const {
    std::vector<Chain> out;
    out.reserve(_codes.size());
    for (auto code : _codes) {
      out.push_back(decode(code));
    }
    return out;
  }

  void ChainSet::insert(Chain const& c) {
    auto code = encode(c);
    auto it   = std::lower_bound(_codes.begin(), _codes.end(), code);
    if (it == _codes.end() || *it != code) {
      _codes.insert(it, code);
    }
  }

  void ChainSet::assign(std::vector<Code> codes) {
    normalize(codes);
    _codes = std::move(codes);
  }

  JunctureSet::JunctureSet(Morphism const& m, std::size_t length)
      : _morphism(std::make_shared<Morphism const>(m)),
        _length(length),
        _radix(m.monoid.size()),
        _chain_length(length - 1),
        _by_root(m.monoid.size()) {
    if (length == 0) {
      throw InvalidArgument("juncture length must be at least 1");
    }
    checked_radix_power(_radix, length);
  }

  std::vector<std::size_t> JunctureSet::maximal() const {
    std::vector<std::size_t> out;
    for (auto const& ids : _by_root) {
      out.insert(out.end(), ids.begin(), ids.end());
    }
    return out;
  }

  std::size_t JunctureSet::maximal_count() const noexcept {
    std::size_t n = 0;
    for (auto const& ids : _by_root) {
      n += ids.size();
    }
    return n;
  }

  std::optional<std::size_t> JunctureSet::find_cover(Juncture const& j) const {
    if (j.root >= _by_root.size()) {
      return std::nullopt;
    }
    for (auto id : _by_root[j.root]) {
      if (is_subset(j.chains, _arena[id].value.chains)) {
        return id;
      }
    }
    return std::nullopt;
  }

  bool JunctureSet::contains(Juncture const& j) const {
    return find_cover(j).has_value();
  }

  std::optional<std::size_t> JunctureSet::insert(Juncture j, Derivation d) {
    auto const& m = *_morphism;
    if (!m.is_live(j.root)) {
      return std::nullopt;
    }
    auto& ids = _by_root[j.root];
    for (auto id : ids) {
      if (is_subset(j.chains, _arena[id].value.chains)) {
        return std::nullopt;
      }
    }
    std::erase_if(ids, [&](std::size_t id) {
      if (is_subset(_arena[id].value.chains, j.chains)) {
        _stored[id] = false;
        return true;
      }
      return false;
    });
    auto id = _arena.size();
    _arena.push_back({std::move(j), d});
    _stored.push_back(true);
    ids.push_back(id);
    return id;
  }

  Code JunctureSet::multiply_codes(Code a, Code b) const {
    auto const& mon = _morphism->monoid;
    if (_chain_length == 1) {
      return mon.mul(static_cast<Element>(a), static_cast<Element>(b));
    }
    Code result = 0;
    Code scale  = 1;
    for (std::size_t i = 0; i < _chain_length; ++i) {
      auto x = static_cast<Element>(a % _radix);
      auto y = static_cast<Element>(b % _radix);
      a /= _radix;
      b /= _radix;
      result += scale * mon.mul(x, y);
      scale *= _radix;
    }
    return result;
  }

  Juncture JunctureSet::multiply(Juncture const& a, Juncture const& b) const {
    auto const& m = *_morphism;
    Juncture    r;
    r.root = m.monoid.mul(a.root, b.root);
    if (_chain_length == 0) {
      return r;
    }
    auto is_dead = [&](Code z) {
      if (!m.absorbing) {
        return false;
      }
      for (Code i = 0; i < _chain_length; ++i, z /= _radix) {
        if (z % _radix == *m.absorbing) {
          return true;
        }
      }
      return false;
    };
    std::size_t const space = checked_radix_power(_radix, _chain_length);
    if (space <= (std::size_t(1) << 22)) {
      if (_mark.size() != space) {
        _mark.assign(space, 0);
        _epoch = 0;
      }
      if (++_epoch == 0) {
        std::fill(_mark.begin(), _mark.end(), 0);
        _epoch = 1;
      }
      if (_chain_length == 1) {
        auto const* table = m.monoid.table().data();
        _hit.assign(_radix, 0);
        auto* hit = _hit.data();
        for (auto x : a.chains) {
          auto const* row = table + x * _radix;
          for (auto y : b.chains) {
            hit[row[y]] = 1;
          }
        }
        if (m.absorbing) {
          hit[*m.absorbing] = 0;
        }
        for (Code z = 0; z < _radix; ++z) {
          if (hit[z]) {
            r.chains.push_back(z);
          }
        }
        return r;
      }
      for (auto x : a.chains) {
        for (auto y : b.chains) {
          auto z = multiply_codes(x, y);
          if (_mark[z] != _epoch) {
            _mark[z] = _epoch;
            if (!is_dead(z)) {
              r.chains.push_back(z);
            }
          }
        }
      }
      std::sort(r.chains.begin(), r.chains.end());
      return r;
    }
    r.chains.reserve(a.chains.size() * b.chains.size());
    for (auto x : a.chains) {
      for (auto y : b.chains) {
        auto z = multiply_codes(x, y);
        if (!is_dead(z)) {
          r.chains.push_back(z);
        }
      }
    }
    normalize(r.chains);
    return r;
  }

  std::pair<Juncture, std::size_t> JunctureSet::omega(Juncture const& j) const {
    std::vector<Juncture>             powers{j};
    std::map<Juncture, std::size_t>   seen{{j, 0}};
    std::size_t start = 0, period = 0;
    while (true) {
      auto next = multiply(powers.back(), j);
      auto it   = seen.find(next);
      if (it != seen.end()) {
        start  = it->second;
        period = powers.size() - it->second;
        break;
      }
      seen.emplace(next, powers.size());
      powers.push_back(std::move(next));
    }
    // powers[i] = j^(i+1); the idempotent is j^e with e >= start+1, period | e.
    std::size_t e = period;
    while (e < start + 1) {
      e += period;
    }
    return {powers[start + (e - 1 - start) % period], e};
  }

  JunctureSet initial_junctures(Morphism const& m, std::size_t n) {
    JunctureSet j(m, n);
    ChainSet    codec(n - 1, m.monoid.size());
    for (auto s : m.image_elements()) {
      if (!m.is_live(s)) {
        continue;
      }
      Juncture d{s, {}};
      if (n > 1) {
        d.chains.push_back(codec.encode(Chain(n - 1, s)));
      }
      j.insert(std::move(d), {Derivation::Kind::initial, 0, 0});
    }
    return j;
  }

  JunctureSet saturate(JunctureSet                        base,
                       std::shared_ptr<JunctureSet const> prev,
                       Limits const&                      limits,
                       StopWhen const&                    stop) {
    auto stop_at = [&](std::size_t id) {
      if (stop && stop(base._arena[id].value)) {
        base._complete = false;
        return true;
      }
      return false;
    };
    if (base.length() == 1) {
      return base;
    }
    auto const& m = base.morphism();
    if (!m.alphabet_compatible()) {
      throw InvalidArgument("saturation needs an alphabet compatible morphism");
    }
    if (!prev || prev->length() + 1 != base.length()) {
      throw InvalidArgument("saturation of length " + std::to_string(base.length())
                            + " needs the saturated level below it");
    }
    if (!prev->complete()) {
      throw InvalidArgument("saturation needs a complete level below it");
    }
    base.previous = prev;
    auto const t_chains = chains_by_alph(*prev);
    auto const one      = m.monoid.identity();

    // Larger chain sets first: they prune more of what follows.
    auto later = [&](std::size_t a, std::size_t b) {
      auto sa = base._arena[a].value.chains.size(), sb = base._arena[b].value.chains.size();
      return sa != sb ? sa < sb : a > b;
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(later)> queue(later);
    for (auto id : base.maximal()) {
      if (stop_at(id)) {
        return base;
      }
      queue.push(id);
    }
    // True when saturation must stop.
    auto add = [&](Juncture j, Derivation d) {
      if (auto id = base.insert(std::move(j), d)) {
        queue.push(*id);
        if (base.arena_size() > limits.max_junctures) {
          throw ResourceLimit("saturation exceeded " + std::to_string(limits.max_junctures)
                              + " junctures");
        }
        return stop_at(*id);
      }
      return false;
    };
    std::vector<bool> processed;
    while (!queue.empty()) {
      auto id = queue.top();
      queue.pop();
      if (!base._stored[id]) {
        continue;
      }
      processed.resize(base.arena_size(), false);
      processed[id] = true;
      auto const j = base._arena[id].value;

      auto [p, exponent] = base.omega(j);
      Juncture t{one, {}};
      if (auto it = t_chains.find(m.alph(j.root)); it != t_chains.end()) {
        t.chains = it->second;
      }
      if (add(base.multiply(base.multiply(p, t), p), {Derivation::Kind::op3, id, 0})) {
        return base;
      }

      for (auto other : base.maximal()) {
        if (!base._stored[other] || !processed[other]) {
          continue;
        }
        auto const k = base._arena[other].value;
        if (add(base.multiply(j, k), {Derivation::Kind::product, id, other})) {
          return base;
        }
        if (other != id && add(base.multiply(k, j), {Derivation::Kind::product, other, id})) {
          return base;
        }
      }
    }
    return base;
  }

  std::vector<std::shared_ptr<JunctureSet const>>
  all_junctures(Morphism const& m, std::size_t n_max, Limits const& limits) {
    std::vector<std::shared_ptr<JunctureSet const>> levels;
    for (std::size_t n = 1; n <= n_max; ++n) {
      auto prev = levels.empty() ? nullptr : levels.back();
      levels.push_back(std::make_shared<JunctureSet const>(
          saturate(initial_junctures(m, n), prev, limits)));
    }
    return levels;
  }

  ChainSet chains_of_length(JunctureSet const& j) {
    ChainSet          result(j.length(), j.radix());
    std::vector<Code> codes;
    for (auto id : j.maximal()) {
      auto const& x = j.juncture(id);
      if (j.length() == 1) {
        codes.push_back(x.root);
      }
      for (auto c : x.chains) {
        codes.push_back(x.root + j.radix() * c);
      }
    }
    result.assign(std::move(codes));
    return result;
  }

  ChainSet project_chains(ChainSet const& c, Completion const& completion) {
    auto const radix = completion.base.empty()
                           ? std::size_t(1)
                           : *std::max_element(completion.base.begin(), completion.base.end()) + 1;
    ChainSet          result(c.length(), radix);
    std::vector<Code> codes;
    for (auto const& chain : c.chains()) {
      Chain projected;
      for (auto s : chain) {
        projected.push_back(completion.base.at(s));
      }
      codes.push_back(result.encode(projected));
    }
    result.assign(std::move(codes));
    return result;
  }

  std::size_t alternation(Chain const& c) {
    std::size_t n = 0;
    for (std::size_t i = 1; i < c.size(); ++i) {
      n += c[i] != c[i - 1];
    }
    return n;
  }

  boost::multiprecision::cpp_int rank_bound(std::size_t n, std::size_t msize) {
    using boost::multiprecision::cpp_int;
    if (n == 0 || msize == 0) {
      throw InvalidArgument("rank bound needs n >= 1 and a nonempty monoid");
    }
    cpp_int exponent = boost::multiprecision::pow(cpp_int(msize), static_cast<unsigned>(n - 1));
    if (exponent > (cpp_int(1) << 26)) {
      throw ResourceLimit("rank bound exponent too large to evaluate");
    }
    cpp_int value = cpp_int(9) * n * msize * msize;
    return value << static_cast<unsigned>(exponent);
  }

  std::string format_rank_bound(std::size_t n, std::size_t msize) {
    using boost::multiprecision::cpp_int;
    cpp_int exponent = boost::multiprecision::pow(cpp_int(msize), static_cast<unsigned>(n - 1));
    if (exponent <= 200) {
      return rank_bound(n, msize).str();
    }
    std::ostringstream out;
    out << "9*" << n << "*" << msize << "^2*2^" << exponent.str();
    return out.str();
  }

  namespace {

    class Synthesizer {
     public:
      Synthesizer(JunctureSet const& j, unsigned k, Limits const& limits)
          : _j(j), _k(k), _limits(limits), _pre(shortest_preimages(j.morphism())) {
        if (j.length() >= 2 && j.previous) {
          _t_chains = chains_by_alph(*j.previous);
        }
      }

      Word const& root_word(std::size_t id) {
        if (auto it = _roots.find(id); it != _roots.end()) {
          return it->second;
        }
        auto const& d = _j.derivation(id);
        Word        w;
        switch (d.kind) {
          case Derivation::Kind::initial:
            w = _pre[_j.juncture(id).root];
            break;
          case Derivation::Kind::product:
            w = root_word(d.left);
            append(w, root_word(d.right));
            break;
          case Derivation::Kind::op3: {
            auto h = exponent(d.left);
            auto u = root_word(d.left);
            check_length(u.size() * 2 * h);
            for (std::size_t i = 0; i < 2 * h; ++i) {
              w.insert(w.end(), u.begin(), u.end());
            }
            break;
          }
        }
        return _roots.emplace(id, std::move(w)).first->second;
      }

      // Words for the chain `c` of juncture `id`, which must lie in its
      // chainset exactly.
      std::vector<Word> chain_words(std::size_t id, Code c) {
        auto key = std::make_pair(id, c);
        if (auto it = _memo.find(key); it != _memo.end()) {
          return it->second;
        }
        auto const  len = _j.length() - 1;
        auto const& jj  = _j.juncture(id);
        auto const& d   = _j.derivation(id);
        std::vector<Word> out(len);
        switch (d.kind) {
          case Derivation::Kind::initial:
            for (auto& w : out) {
              w = _pre[jj.root];
            }
            break;
          case Derivation::Kind::product: {
            auto const& a     = _j.juncture(d.left).chains;
            auto const& b     = _j.juncture(d.right).chains;
            bool        found = false;
            for (auto x : a) {
              for (auto y : b) {
                if (_j.multiply_codes(x, y) == c) {
                  auto wx = chain_words(d.left, x);
                  auto wy = chain_words(d.right, y);
                  for (std::size_t i = 0; i < len; ++i) {
                    out[i] = wx[i];
                    append(out[i], wy[i]);
                  }
                  found = true;
                  break;
                }
              }
              if (found) {
                break;
              }
            }
            if (!found) {
              throw InternalInconsistency("product derivation does not cover its chain");
            }
            break;
          }
          case Derivation::Kind::op3:
            out = op3_words(d.left, jj, c);
            break;
        }
        return _memo.emplace(key, out).first->second;
      }

     private:
      std::size_t exponent(std::size_t id) {
        auto p = _j.omega(_j.juncture(id)).second;
        std::size_t h = p;
        for (unsigned i = 0; i < _k; ++i) {
          h *= 4;
        }
        return h;
      }

      void check_length(std::size_t n) const {
        if (n > _limits.max_witness_length) {
          throw ResourceLimit("witness words exceed " + std::to_string(_limits.max_witness_length)
                              + " letters");
        }
      }

      void append(Word& w, Word const& v) const {
        check_length(w.size() + v.size());
        w.insert(w.end(), v.begin(), v.end());
      }

      std::vector<Word> op3_words(std::size_t a, Juncture const& result, Code c) {
        auto const  len    = _j.length() - 1;
        auto const& factor = _j.juncture(a).chains;
        auto const  h      = exponent(a);
        auto const& m      = _j.morphism();

        // layers[i]: chains of S^(i+1) with one decomposition each
        std::vector<std::unordered_map<Code, std::pair<Code, Code>>> layers(1);
        for (auto x : factor) {
          layers[0].emplace(x, std::make_pair(Code(0), x));
        }
        while (layers.size() < h) {
          std::unordered_map<Code, std::pair<Code, Code>> next;
          for (auto const& [x, unused] : layers.back()) {
            for (auto y : factor) {
              next.emplace(_j.multiply_codes(x, y), std::make_pair(x, y));
            }
          }
          layers.push_back(std::move(next));
        }
        auto const& top = layers.back();

        std::vector<Code> t_codes;
        if (auto it = _t_chains.find(m.alph(_j.juncture(a).root)); it != _t_chains.end()) {
          t_codes = it->second;
        }
        std::optional<std::tuple<Code, Code, Code>> pick;
        for (auto const& [left, u1] : top) {
          for (auto t : t_codes) {
            auto lt = _j.multiply_codes(left, t);
            for (auto const& [right, u2] : top) {
              if (_j.multiply_codes(lt, right) == c) {
                pick = {left, t, right};
                break;
              }
            }
            if (pick) {
              break;
            }
          }
          if (pick) {
            break;
          }
        }
        if (!pick) {
          throw InternalInconsistency("op3 derivation does not cover its chain (root "
                                      + std::to_string(result.root) + ")");
        }
        auto [left, t, right] = *pick;

        auto unfold = [&](Code x) {
          std::vector<Code> factors(h);
          for (std::size_t i = h; i-- > 0;) {
            auto [before, f] = layers[i].at(x);
            factors[i]       = f;
            x                = before;
          }
          std::vector<Word> words(len);
          for (auto f : factors) {
            auto fw = chain_words(a, f);
            for (std::size_t i = 0; i < len; ++i) {
              append(words[i], fw[i]);
            }
          }
          return words;
        };
        auto u1 = unfold(left);
        auto u2 = unfold(right);
        auto v  = t_words(t);
        std::vector<Word> out(len);
        for (std::size_t i = 0; i < len; ++i) {
          out[i] = u1[i];
          append(out[i], v[i]);
          append(out[i], u2[i]);
        }
        return out;
      }

      // Witness tuple for a chain of the level below.
      std::vector<Word> t_words(Code t) {
        auto const len = _j.length() - 1;
        if (len == 1) {
          return {_pre[static_cast<Element>(t)]};
        }
        auto const& prev  = *_j.previous;
        auto        first = static_cast<Element>(t % _j.radix());
        Code        rest  = t / _j.radix();
        auto        cover = prev.find_cover(Juncture{first, {rest}});
        if (!cover) {
          throw InternalInconsistency("chain of the level below has no juncture");
        }
        if (!_below) {
          _below = std::make_unique<Synthesizer>(prev, _k, _limits);
        }
        std::vector<Word> out{_below->root_word(*cover)};
        auto              tail = _below->chain_words(*cover, rest);
        out.insert(out.end(), tail.begin(), tail.end());
        return out;
      }

      JunctureSet const&                           _j;
      unsigned                                     _k;
      Limits                                       _limits;
      std::vector<Word>                            _pre;
      std::map<LetterSet, std::vector<Code>>       _t_chains;
      std::map<std::size_t, Word>                  _roots;
      std::map<std::pair<std::size_t, Code>, std::vector<Word>> _memo;
      std::unique_ptr<Synthesizer>                 _below;
    };

  }  // namespace

  std::vector<Word> synthesize_witness(JunctureSet const& j,
                                       Chain const&       target,
                                       unsigned           k,
                                       Limits const&      limits) {
    if (target.size() != j.length()) {
      throw InvalidArgument("target chain has the wrong length");
    }
    if (k == 0) {
      throw InvalidArgument("witness rank must be at least 1");
    }
    ChainSet codec(j.length() - 1, j.radix());
    Chain    tail(target.begin() + 1, target.end());
    Juncture probe{target[0], {}};
    if (!tail.empty()) {
      probe.chains.push_back(codec.encode(tail));
    }
    auto cover = j.find_cover(probe);
    if (!cover) {
      throw InvalidArgument("chain is not in the chain set");
    }
    Synthesizer       synth(j, k, limits);
    std::vector<Word> out{synth.root_word(*cover)};
    if (!tail.empty()) {
      auto rest = synth.chain_words(*cover, probe.chains[0]);
      out.insert(out.end(), rest.begin(), rest.end());
    }
    return out;
  }

  std::string describe_derivation(JunctureSet const& j, std::size_t id, std::size_t max_nodes) {
    std::ostringstream      out;
    std::deque<std::size_t> todo{id};
    std::vector<bool>       seen(j.arena_size(), false);
    std::size_t             printed = 0;
    while (!todo.empty()) {
      auto x = todo.front();
      todo.pop_front();
      if (seen[x]) {
        continue;
      }
      seen[x] = true;
      if (printed == max_nodes) {
        out << "; ...";
        break;
      }
      if (printed++ > 0) {
        out << "; ";
      }
      auto const& d = j.derivation(x);
      out << "#" << x << " = ";
      switch (d.kind) {
        case Derivation::Kind::initial:
          out << "initial";
          break;
        case Derivation::Kind::product:
          out << "#" << d.left << " * #" << d.right;
          todo.push_back(d.left);
          todo.push_back(d.right);
          break;
        case Derivation::Kind::op3:
          out << "op3(#" << d.left << ")";
          todo.push_back(d.left);
          break;
      }
    }
    return out.str();
  }

}  // namespace fohier
