#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace morlicz {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Compensated (Neumaier) accumulator. Used wherever many terms of similar
// magnitude are folded into one number, e.g. averaging over all
// permutations, so that the rounding error stays at a few ulps instead of
// growing with the number of terms.
class StableSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Left-to-right prefix sums: out[0] = 0, out[k] = w[0] + ... + w[k-1].
// Breakpoint abscissas and ball vertex coordinates are both built from
// these, and they must agree bit for bit so that evaluating a function at
// a vertex coordinate hits the stored breakpoint exactly. Every module
// therefore computes prefix sums through this helper.
inline std::vector<double> prefix_sums(std::span<const double> w) {
  std::vector<double> out(w.size() + 1, 0.0);
  double run = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    run += w[i];
    out[i + 1] = run;
  }
  return out;
}

// Generic inverse of an increasing function by bisection. The closed-form
// inverses are preferred where available; this fallback covers any other
// monotone evaluation and is kept deliberately simple.
//
// Requires f(lo) <= target <= f(hi). Throws std::invalid_argument when the
// bracket does not straddle the target.
double bisect_increasing(const std::function<double(double)>& f, double target,
                         double lo, double hi, double tol = 1e-12,
                         int max_iter = 200);

}  // namespace morlicz
