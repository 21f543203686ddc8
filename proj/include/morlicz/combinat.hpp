#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace morlicz {

// Dense row-major matrix of doubles. When rows_decreasing is set, the
// constructor checks that every row is nonincreasing and strictly positive
// (the shape required by the norm constructions); with the flag clear it is
// a plain container and entries may be arbitrary finite reals.
class WeightMatrix {
 public:
  WeightMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries,
               bool rows_decreasing);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool rows_decreasing() const { return rows_decreasing_; }

  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  std::span<const double> row(std::size_t i) const {
    return {entries_.data() + i * cols_, cols_};
  }
  const std::vector<double>& entries() const { return entries_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> entries_;
  bool rows_decreasing_;
};

enum class AverageMethod { Exact, MonteCarlo, Bounds };

struct AverageEstimate {
  double value = 0.0;
  AverageMethod method = AverageMethod::Exact;
  // Exact: 0. MonteCarlo: 99% confidence half-width 2.576 * stddev /
  // sqrt(trials). Bounds: half the gap of the two-sided estimate, so
  // [value - half_width, value + half_width] always contains the average.
  double half_width = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

// Flat row-major table of the n*cols products |x_i * y_ij|.
std::vector<double> abs_products(std::span<const double> x,
                                 const WeightMatrix& y);

// Sum of the k largest values of |values|. Partial selection
// (std::nth_element) followed by a sort of only the selected block, so the
// result is bit-identical to a full-sort oracle at expected linear cost.
double top_k_sum(std::vector<double> values, std::size_t k);

// Two-sided rearrangement estimate for the permutation average of
// max_i |x_i y_{i,pi(i)}|: with S the sum of the n largest products,
//   S / (2n) <= average <= S / n.
std::pair<double, double> rearrangement_bounds(std::span<const double> x,
                                               const WeightMatrix& y);

// Exact permutation average (1/n!) * sum_pi max_i |x_i y_{i,pi(i)}|,
// enumerated with Heap's minimal-change algorithm. Refuses n beyond the
// limit (n! growth); use monte_carlo_average for larger instances.
AverageEstimate exact_average(std::span<const double> x, const WeightMatrix& y,
                              std::size_t limit = 10);

// Monte-Carlo estimate of the same average. Trial t draws its permutation
// from a generator seeded by (seed, t) alone, so results are bit-identical
// across reruns and independent of any execution interleaving. Requires
// trials >= 100 for the normal-approximation half-width to make sense.
AverageEstimate monte_carlo_average(std::span<const double> x,
                                    const WeightMatrix& y,
                                    std::uint64_t trials, std::uint64_t seed);

// Rearrangement bounds packaged as an estimate: value is the midpoint and
// half_width half the gap, so the enclosure is explicit.
AverageEstimate bounds_average(std::span<const double> x,
                               const WeightMatrix& y);

}  // namespace morlicz
