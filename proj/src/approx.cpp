#include "morlicz/approx.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "morlicz/numerics.hpp"
#include "morlicz/orlicz.hpp"

namespace morlicz {

namespace {

constexpr double kEqualityTol = 1e-12;
constexpr double kRowSumTol = 1e-9;

void require_shape(const WeightMatrix& a, std::span<const double> x,
                   const char* who) {
  if (!a.rows_decreasing()) {
    throw std::invalid_argument(std::string(who) +
                                ": rows must be decreasing positive");
  }
  if (x.size() != a.rows()) {
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
  }
  if (a.rows() > a.cols()) {
    throw std::invalid_argument(std::string(who) + ": need at least n columns");
  }
}

std::uint64_t composition_count(std::size_t n, std::size_t budget,
                                std::uint64_t cap) {
  // C(budget + n, n), capped to avoid overflow.
  std::uint64_t c = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    c = c * (budget + i) / i;
    if (c > cap) return cap + 1;
  }
  return c;
}

}  // namespace

double a_norm(const WeightMatrix& a, std::span<const double> x) {
  require_shape(a, x, "a_norm");
  const std::size_t n = a.rows();
  const std::size_t cols = a.cols();
  const std::size_t total = n * cols;

  std::vector<double> q(total);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      q[i * cols + j] = std::abs(x[i]) * a(i, j);
    }
  }

  std::vector<std::size_t> idx(total);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const auto better = [&q](std::size_t lhs, std::size_t rhs) {
    if (q[lhs] != q[rhs]) return q[lhs] > q[rhs];
    return lhs < rhs;  // row-major tie-break keeps the set prefix-closed
  };
  if (cols > 1) {
    std::nth_element(idx.begin(), idx.begin() + (cols - 1), idx.end(), better);
  }
  std::sort(idx.begin(), idx.begin() + cols);
  double sum = 0.0;
  for (std::size_t k = 0; k < cols; ++k) sum += q[idx[k]];
  return sum;
}

double a_norm_bruteforce(const WeightMatrix& a, std::span<const double> x,
                         std::uint64_t max_compositions) {
  require_shape(a, x, "a_norm_bruteforce");
  const std::size_t n = a.rows();
  const std::size_t cols = a.cols();
  if (composition_count(n, cols, max_compositions) > max_compositions) {
    throw std::invalid_argument("a_norm_bruteforce: too many compositions");
  }

  std::vector<double> q(n * cols);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      q[i * cols + j] = std::abs(x[i]) * a(i, j);
    }
  }

  std::vector<std::size_t> counts(n, 0);
  double best = 0.0;
  // Each candidate is summed cell by cell in row-major order; a_norm sums
  // its selected cells the same way, which is what makes exact comparison
  // of the two meaningful.
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t row,
                                                          std::size_t budget) {
    if (row == n) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < counts[i]; ++j) s += q[i * cols + j];
      }
      if (s > best) best = s;
      return;
    }
    for (std::size_t l = 0; l <= budget; ++l) {
      counts[row] = l;
      rec(row + 1, budget - l);
    }
    counts[row] = 0;
  };
  rec(0, cols);
  return best;
}

VerifyReport verify_norm_approximation(const WeightMatrix& a,
                                       std::span<const double> x) {
  require_shape(a, x, "verify_norm_approximation");
  const std::size_t n = a.rows();
  const std::size_t cols = a.cols();

  std::vector<double> entries(a.entries());
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < cols; ++j) sum += entries[i * cols + j];
    if (std::abs(sum - 1.0) > kRowSumTol) {
      throw std::invalid_argument(
          "verify_norm_approximation: row sums must be 1");
    }
    for (std::size_t j = 0; j < cols; ++j) entries[i * cols + j] /= sum;
  }
  const WeightMatrix source(n, cols, std::move(entries), true);

  // Rows pin the conjugates: M_i*(a_i1 + ... + a_im) = m/N. The space
  // itself carries the conjugates of those, i.e. the M_i.
  std::vector<OrliczFunction> fs;
  fs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    fs.emplace_back(
        PiecewiseOrlicz::from_decreasing_weights(source.row(i), 1.0).conjugate());
  }
  const MusielakSpace space(std::move(fs));

  const double musielak = space.luxemburg_norm(x);
  const double budget = a_norm(source, x);

  VerifyReport r;
  r.theorem = "lemma5.1";
  r.n = n;
  r.value = musielak;
  r.reference = budget;
  r.c_low = 0.5;
  r.c_high = 2.0;
  r.method = "exact";
  const double tol = kEqualityTol * std::max(1.0, budget);
  r.pass = r.c_low * budget <= musielak + tol && musielak <= r.c_high * budget + tol;
  return r;
}

}  // namespace morlicz
