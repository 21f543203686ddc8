#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "morlicz/orlicz.hpp"

namespace morlicz {

// Finite-dimensional Musielak-Orlicz space: one Orlicz function per
// coordinate, norm given by the Luxemburg construction
//   ||x|| = inf { rho > 0 : sum_i M_i(|x_i| / rho) <= 1 }.
//
// Instances are immutable after construction; every method is const and
// safe to call concurrently.
class MusielakSpace {
 public:
  explicit MusielakSpace(std::vector<OrliczFunction> functions);

  std::size_t dimension() const { return functions_.size(); }
  const std::vector<OrliczFunction>& functions() const { return functions_; }

  // True when every coordinate function satisfies M_i(1) = 1 (within
  // 1e-12); such spaces admit the bracket max|x_i| <= ||x|| <= sum|x_i|.
  bool normalized() const { return normalized_; }

  // sum_i M_i(|x_i| / rho); kInfinity propagates from finite-domain
  // functions, which keeps the bisection predicate total.
  double modular(std::span<const double> x, double rho) const;

  // Luxemburg norm. Bisection on the monotone predicate modular <= 1,
  // bracketed by [max|x_i|, sum|x_i|] for normalized spaces and by
  // doubling/halving from sum|x_i| otherwise. The result is feasible
  // (modular(x, result) <= 1) and within relative 1e-10 of the infimum.
  double luxemburg_norm(std::span<const double> x) const;

  // Membership of x in radius * (unit ball), i.e. modular(x, radius) <= 1
  // up to tolerance 1e-12.
  bool ball_contains(std::span<const double> x, double radius) const;

  // Space with every coordinate function replaced by its conjugate.
  MusielakSpace conjugate_space() const;

  // Interval (L, 2L) with L the Luxemburg norm of x in the conjugate
  // space; the true dual norm always lies inside by the two-sided
  // equivalence between the dual norm and the conjugate-space norm.
  std::pair<double, double> dual_norm_estimate(std::span<const double> x) const;

 private:
  std::vector<OrliczFunction> functions_;
  bool normalized_;
};

}  // namespace morlicz
