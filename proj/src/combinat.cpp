#include "morlicz/combinat.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

#include "morlicz/numerics.hpp"
#include "morlicz/rng.hpp"

namespace morlicz {

namespace {

constexpr double kZ99 = 2.576;  // normal quantile for the 99% half-width
constexpr std::size_t kHardEnumerationCap = 12;  // 12! fits exactly in double

void require_square(std::span<const double> x, const WeightMatrix& y,
                    const char* who) {
  if (y.rows() != y.cols()) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
  }
  if (x.size() != y.rows()) {
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
  }
  if (x.empty()) {
    throw std::invalid_argument(std::string(who) + ": empty input");
  }
}

double max_along(const std::vector<double>& products,
                 const std::vector<std::size_t>& perm, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    m = std::max(m, products[i * n + perm[i]]);
  }
  return m;
}

}  // namespace

WeightMatrix::WeightMatrix(std::size_t rows, std::size_t cols,
                           std::vector<double> entries, bool rows_decreasing)
    : rows_(rows),
      cols_(cols),
      entries_(std::move(entries)),
      rows_decreasing_(rows_decreasing) {
  if (rows_ == 0 || cols_ == 0) {
    throw std::invalid_argument("WeightMatrix: empty shape");
  }
  if (entries_.size() != rows_ * cols_) {
    throw std::invalid_argument("WeightMatrix: entry count does not match shape");
  }
  for (double e : entries_) {
    if (!std::isfinite(e)) {
      throw std::invalid_argument("WeightMatrix: non-finite entry");
    }
  }
  if (rows_decreasing_) {
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        const double e = (*this)(i, j);
        if (!(e > 0.0)) {
          throw std::invalid_argument("WeightMatrix: entries must be positive");
        }
        // Tolerates the one-ulp wobble of rows built from inverse
        // increments; genuine increases are still rejected.
        if (j > 0 && e > (*this)(i, j - 1) * (1.0 + 1e-12)) {
          throw std::invalid_argument("WeightMatrix: row entries must not increase");
        }
      }
    }
  }
}

std::vector<double> abs_products(std::span<const double> x,
                                 const WeightMatrix& y) {
  if (x.size() != y.rows()) {
    throw std::invalid_argument("abs_products: dimension mismatch");
  }
  std::vector<double> out(y.rows() * y.cols());
  for (std::size_t i = 0; i < y.rows(); ++i) {
    for (std::size_t j = 0; j < y.cols(); ++j) {
      out[i * y.cols() + j] = std::abs(x[i] * y(i, j));
    }
  }
  return out;
}

double top_k_sum(std::vector<double> values, std::size_t k) {
  if (k == 0 || k > values.size()) {
    throw std::invalid_argument("top_k_sum: k out of range");
  }
  for (double& v : values) v = std::abs(v);
  if (k < values.size()) {
    std::nth_element(values.begin(), values.begin() + (k - 1), values.end(),
                     std::greater<double>());
  }
  // Summing the selected block in decreasing order keeps the result
  // bit-identical to a full sort followed by a prefix sum.
  std::sort(values.begin(), values.begin() + k, std::greater<double>());
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += values[i];
  return sum;
}

std::pair<double, double> rearrangement_bounds(std::span<const double> x,
                                               const WeightMatrix& y) {
  require_square(x, y, "rearrangement_bounds");
  const double s = top_k_sum(abs_products(x, y), x.size());
  const double dn = static_cast<double>(x.size());
  return {s / (2.0 * dn), s / dn};
}

AverageEstimate exact_average(std::span<const double> x, const WeightMatrix& y,
                              std::size_t limit) {
  require_square(x, y, "exact_average");
  const std::size_t n = x.size();
  if (n > std::min(limit, kHardEnumerationCap)) {
    throw std::invalid_argument(
        "exact_average: n exceeds the enumeration limit; use "
        "monte_carlo_average for larger instances");
  }
  const std::vector<double> products = abs_products(x, y);

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::size_t> c(n, 0);

  StableSum total;
  total.add(max_along(products, perm, n));
  double count = 1.0;

  // Heap's algorithm: one transposition per step, n! arrangements total.
  std::size_t i = 0;
  while (i < n) {
    if (c[i] < i) {
      if (i % 2 == 0) {
        std::swap(perm[0], perm[i]);
      } else {
        std::swap(perm[c[i]], perm[i]);
      }
      total.add(max_along(products, perm, n));
      count += 1.0;
      ++c[i];
      i = 0;
    } else {
      c[i] = 0;
      ++i;
    }
  }

  AverageEstimate est;
  est.value = total.value() / count;
  est.method = AverageMethod::Exact;
  return est;
}

AverageEstimate monte_carlo_average(std::span<const double> x,
                                    const WeightMatrix& y,
                                    std::uint64_t trials, std::uint64_t seed) {
  require_square(x, y, "monte_carlo_average");
  if (trials < 100) {
    throw std::invalid_argument("monte_carlo_average: need at least 100 trials");
  }
  const std::size_t n = x.size();
  const std::vector<double> products = abs_products(x, y);

  std::vector<double> samples(trials);
  std::vector<std::size_t> perm(n);
  double vmin = kInfinity;
  double vmax = -kInfinity;
  for (std::uint64_t t = 0; t < trials; ++t) {
    SplitMix64 g(mix_seed(seed, t));
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    shuffle<std::size_t>(perm, g);
    const double m = max_along(products, perm, n);
    samples[t] = m;
    vmin = std::min(vmin, m);
    vmax = std::max(vmax, m);
  }

  AverageEstimate est;
  est.method = AverageMethod::MonteCarlo;
  est.trials = trials;
  est.seed = seed;
  if (vmin == vmax) {
    // Constant statistic: the average is that constant, exactly.
    est.value = vmin;
    est.half_width = 0.0;
    return est;
  }

  const double dt = static_cast<double>(trials);
  StableSum sum;
  for (double v : samples) sum.add(v);
  const double mean = sum.value() / dt;

  StableSum sq;
  for (double v : samples) {
    const double d = v - mean;
    sq.add(d * d);
  }
  const double variance = sq.value() / (dt - 1.0);
  est.value = mean;
  est.half_width = kZ99 * std::sqrt(variance / dt);
  return est;
}

AverageEstimate bounds_average(std::span<const double> x,
                               const WeightMatrix& y) {
  const auto [lo, hi] = rearrangement_bounds(x, y);
  AverageEstimate est;
  est.method = AverageMethod::Bounds;
  est.value = 0.5 * (lo + hi);
  est.half_width = 0.5 * (hi - lo);
  return est;
}

}  // namespace morlicz
