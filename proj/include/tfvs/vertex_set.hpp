#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace tfvs {

/// Dense vertex index inside one tournament. Indices are always ordered the
/// same way as the external ids they carry.
using Index = std::uint32_t;

/// Fixed-universe bitset over vertex indices [0, size).
///
/// Used both for adjacency rows and for vertex subsets, so intersections
/// with neighborhoods are word-parallel.
class VertexSet
{
public:
  using Word = std::uint64_t;
  static constexpr std::size_t word_bits = 64;

  VertexSet() = default;

  explicit VertexSet(std::size_t universe)
    : _universe(universe), _words(words_for(universe), 0)
  {
  }

  VertexSet(std::size_t universe, std::initializer_list<Index> members)
    : VertexSet(universe)
  {
    for (auto v : members)
      insert(v);
  }

  static auto full(std::size_t universe) -> VertexSet
  {
    VertexSet s(universe);
    for (auto & w : s._words)
      w = ~Word{0};
    s.trim();
    return s;
  }

  static auto words_for(std::size_t universe) -> std::size_t
  {
    return (universe + word_bits - 1) / word_bits;
  }

  auto universe() const -> std::size_t { return _universe; }

  auto contains(Index v) const -> bool
  {
    return (_words[v / word_bits] >> (v % word_bits)) & 1u;
  }

  auto insert(Index v) -> void { _words[v / word_bits] |= Word{1} << (v % word_bits); }
  auto erase(Index v) -> void { _words[v / word_bits] &= ~(Word{1} << (v % word_bits)); }

  auto count() const -> std::size_t
  {
    std::size_t c = 0;
    for (auto w : _words)
      c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  auto empty() const -> bool
  {
    return std::all_of(_words.begin(), _words.end(), [](Word w) { return w == 0; });
  }

  /// Smallest member, or universe() when empty.
  auto first() const -> std::size_t { return next(0); }

  /// Smallest member >= from, or universe() when there is none.
  auto next(std::size_t from) const -> std::size_t
  {
    if (from >= _universe)
      return _universe;
    std::size_t wi = from / word_bits;
    Word w = _words[wi] & (~Word{0} << (from % word_bits));
    while (true) {
      if (w != 0)
        return wi * word_bits + static_cast<std::size_t>(std::countr_zero(w));
      if (++wi == _words.size())
        return _universe;
      w = _words[wi];
    }
  }

  /// Members in ascending order.
  auto to_vector() const -> std::vector<Index>
  {
    std::vector<Index> out;
    out.reserve(count());
    for_each([&](Index v) { out.push_back(v); });
    return out;
  }

  template <typename F>
  auto for_each(F && f) const -> void
  {
    for (std::size_t wi = 0; wi < _words.size(); ++wi) {
      Word w = _words[wi];
      while (w != 0) {
        f(static_cast<Index>(wi * word_bits + static_cast<std::size_t>(std::countr_zero(w))));
        w &= w - 1;
      }
    }
  }

  /// |this ∩ other| without materialising the intersection.
  auto intersection_count(const VertexSet & other) const -> std::size_t
  {
    std::size_t c = 0;
    for (std::size_t i = 0; i < _words.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(_words[i] & other._words[i]));
    return c;
  }

  auto intersects(const VertexSet & other) const -> bool
  {
    for (std::size_t i = 0; i < _words.size(); ++i)
      if (_words[i] & other._words[i])
        return true;
    return false;
  }

  auto operator&=(const VertexSet & o) -> VertexSet &
  {
    for (std::size_t i = 0; i < _words.size(); ++i)
      _words[i] &= o._words[i];
    return *this;
  }

  auto operator|=(const VertexSet & o) -> VertexSet &
  {
    for (std::size_t i = 0; i < _words.size(); ++i)
      _words[i] |= o._words[i];
    return *this;
  }

  /// Set difference.
  auto operator-=(const VertexSet & o) -> VertexSet &
  {
    for (std::size_t i = 0; i < _words.size(); ++i)
      _words[i] &= ~o._words[i];
    return *this;
  }

  auto complement() const -> VertexSet
  {
    VertexSet s(_universe);
    for (std::size_t i = 0; i < _words.size(); ++i)
      s._words[i] = ~_words[i];
    s.trim();
    return s;
  }

  friend auto operator&(VertexSet a, const VertexSet & b) -> VertexSet { return a &= b; }
  friend auto operator|(VertexSet a, const VertexSet & b) -> VertexSet { return a |= b; }
  friend auto operator-(VertexSet a, const VertexSet & b) -> VertexSet { return a -= b; }
  friend auto operator==(const VertexSet &, const VertexSet &) -> bool = default;

  auto words() const -> const std::vector<Word> & { return _words; }

private:
  auto trim() -> void
  {
    if (auto tail = _universe % word_bits; tail != 0 && !_words.empty())
      _words.back() &= (Word{1} << tail) - 1;
  }

  std::size_t _universe = 0;
  std::vector<Word> _words;
};

} // namespace tfvs
