#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tfvs {

/// Nonnegative rational used for the algorithm's size thresholds.
struct Fraction
{
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  /// floor(n * num / den)
  auto floor_of(std::size_t n) const -> std::size_t
  {
    return static_cast<std::size_t>(static_cast<unsigned __int128>(n) * num / den);
  }

  auto less_than(const Fraction & o) const -> bool
  {
    return static_cast<unsigned __int128>(num) * o.den < static_cast<unsigned __int128>(o.num) * den;
  }

  auto to_string() const -> std::string { return std::to_string(num) + "/" + std::to_string(den); }

  friend auto operator==(const Fraction &, const Fraction &) -> bool = default;
};

/// Thrown when an instance is larger than a solver accepts.
class SizeLimitExceeded : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/**
 * Tunables of the recursive 2-approximation. The defaults are the constants
 * the approximation and running-time guarantees are proved for: exact
 * solving up to 10 vertices, deleting the n/6 lightest vertices in the first
 * iteration, pivots of in- and out-degree at most 8n/9, and 25 pivot
 * iterations.
 */
struct SolverConfig
{
  std::size_t base_case_size = 10;
  Fraction phase1_delete_fraction{1, 6};
  /// Never read by the solvers; reports use it to label the large-optimum
  /// regime.
  Fraction large_opt_threshold{2, 3};
  Fraction degree_bound_fraction{8, 9};
  std::size_t pivot_iterations = 25;
  std::size_t outer_repetitions = 1;
  std::uint64_t seed = 0;

  /// Largest instance the exhaustive solver accepts.
  std::size_t exact_limit = 20;
  /// Largest instance the pivot-enumerating solver accepts.
  std::size_t derandomized_max_n = 60;

  auto validate() const -> void
  {
    auto fail = [](const std::string & what) { throw std::invalid_argument("invalid solver config: " + what); };
    if (base_case_size < 3)
      fail("base_case_size must be >= 3");
    if (base_case_size > exact_limit)
      fail("base_case_size must not exceed exact_limit");
    if (exact_limit > 30)
      fail("exact_limit must be <= 30");
    for (auto const * f : {&phase1_delete_fraction, &large_opt_threshold, &degree_bound_fraction})
      if (f->den == 0)
        fail("zero denominator");
    if (phase1_delete_fraction.num == 0 || !phase1_delete_fraction.less_than({1, 2}))
      fail("phase1_delete_fraction must lie in (0, 1/2)");
    if (!Fraction{1, 2}.less_than(degree_bound_fraction) || !degree_bound_fraction.less_than({1, 1}))
      fail("degree_bound_fraction must lie in (1/2, 1)");
    if (pivot_iterations < 1)
      fail("pivot_iterations must be >= 1");
    if (outer_repetitions < 1)
      fail("outer_repetitions must be >= 1");
  }
};

} // namespace tfvs
