#pragma once

#include <cstdint>
#include <limits>

namespace tfvs {

/// SplitMix64 finaliser.
constexpr auto mix64(std::uint64_t z) -> std::uint64_t
{
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Key of child `index` of a stream keyed by `parent`.
constexpr auto derive_key(std::uint64_t parent, std::uint64_t index) -> std::uint64_t
{
  return mix64(parent ^ mix64(index ^ 0x5851f42d4c957f2dULL));
}

/**
 * Counter-based stream: the i-th draw is a pure function of (key, i), so a
 * recursion node seeded from its path to the root draws the same values no
 * matter which thread runs it or in what order.
 */
class CounterRng
{
public:
  using result_type = std::uint64_t;

  explicit constexpr CounterRng(std::uint64_t key) : _key(key) {}

  static constexpr auto min() -> result_type { return 0; }
  static constexpr auto max() -> result_type { return std::numeric_limits<result_type>::max(); }

  constexpr auto operator()() -> result_type { return mix64(_key + 0x9e3779b97f4a7c15ULL * ++_counter); }

  /// Uniform in [0, bound), bound > 0. Lemire's multiply-and-reject.
  constexpr auto below(std::uint64_t bound) -> std::uint64_t { return uniform_below(*this, bound); }

  template <typename Gen>
  static constexpr auto uniform_below(Gen & gen, std::uint64_t bound) -> std::uint64_t
  {
    unsigned __int128 m = static_cast<unsigned __int128>(static_cast<std::uint64_t>(gen())) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      std::uint64_t const threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(static_cast<std::uint64_t>(gen())) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

private:
  std::uint64_t _key;
  std::uint64_t _counter = 0;
};

} // namespace tfvs
