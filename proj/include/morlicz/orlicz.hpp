#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "morlicz/numerics.hpp"

namespace morlicz {

// Preimage selection for inverse() when the function is flat at zero: the
// preimage of 0 is then a whole interval and the caller picks an end.
enum class Preimage { Infimum, Supremum };

struct Breakpoint {
  double t = 0.0;
  double v = 0.0;
};

// Convex piecewise-linear Orlicz function M: [0, inf) -> [0, inf].
//
// Representation: breakpoints (t_0, v_0) = (0, 0) <= ... <= (t_m, v_m) with
// strictly increasing abscissas, one slope per segment, and a tail slope
// that extends the last segment. A tail slope of kInfinity means the
// function jumps to infinity beyond t_m (finite effective domain).
//
// Slopes are stored explicitly rather than recomputed from breakpoint
// differences: conjugation swaps abscissas and slopes, so keeping slopes
// first-class makes conjugate(conjugate(f)) reproduce the original
// abscissas, slopes and tail exactly instead of through a difference
// quotient that can cancel badly.
//
// Degenerate-but-admitted case: a function vanishing on an initial interval
// (e.g. the conjugate of M(t) = t). Such functions fail strict positivity
// for t > 0; strictly_positive() reports which case an instance is in.
class PiecewiseOrlicz {
 public:
  // Slopes derived from the breakpoints. Validates shape and convexity.
  PiecewiseOrlicz(std::vector<Breakpoint> points, double tail_slope);

  // Exact slopes supplied by a caller that knows them in closed form.
  PiecewiseOrlicz(std::vector<Breakpoint> points, std::vector<double> slopes,
                  double tail_slope);

  // Builds the function with M(scale * (w_1 + ... + w_k)) = k/N from
  // decreasing positive weights w_1 >= ... >= w_N > 0. The segment slopes
  // are 1 / (N * scale * w_k), nondecreasing because the weights decrease,
  // so convexity holds by construction. The tail continues the last slope.
  static PiecewiseOrlicz from_decreasing_weights(std::span<const double> weights,
                                                 double scale);

  // M(t) for t >= 0; returns kInfinity past the domain end when the tail
  // slope is infinite. Exact at every stored breakpoint.
  double eval(double t) const;

  // Inverse of eval. For v = 0 on a function that is flat at zero, the mode
  // picks either end of the preimage interval [0, t_flat]. Values above the
  // reachable range (finite-domain functions) throw std::domain_error.
  double inverse(double v, Preimage mode = Preimage::Infimum) const;

  // Legendre conjugate M*(s) = sup_t (s*t - M(t)), again piecewise linear:
  //   M*(s) = 0 on [0, slope_1],
  //   breakpoint at each distinct segment slope s_k with
  //     M*(s_k) = s_k * t_{k-1} - v_{k-1},
  //   and for a finite tail slope a final breakpoint there, after which the
  //   conjugate is infinite; an infinite tail turns into a finite conjugate
  //   tail of slope t_m.
  PiecewiseOrlicz conjugate() const;

  const std::vector<Breakpoint>& breakpoints() const { return points_; }
  const std::vector<double>& slopes() const { return slopes_; }
  double tail_slope() const { return tail_slope_; }
  bool finite_tail() const;

  double domain_end() const { return points_.back().t; }
  double last_value() const { return points_.back().v; }

  // False exactly for the admitted degenerate case M == 0 on an interval.
  bool strictly_positive() const;

 private:
  void validate() const;

  std::vector<Breakpoint> points_;
  std::vector<double> slopes_;  // one per segment, points_.size() - 1
  double tail_slope_;
};

// Power function M(t) = coefficient * t^exponent with exponent >= 1.
class PowerOrlicz {
 public:
  PowerOrlicz(double exponent, double coefficient);

  double eval(double t) const;
  double inverse(double v) const;

  double exponent() const { return exponent_; }
  double coefficient() const { return coefficient_; }

 private:
  double exponent_;
  double coefficient_;
};

using OrliczFunction = std::variant<PiecewiseOrlicz, PowerOrlicz>;

double eval(const OrliczFunction& f, double t);
double inverse(const OrliczFunction& f, double v,
               Preimage mode = Preimage::Infimum);

// Conjugate of either form. A power function with exponent p > 1 and
// coefficient c maps to exponent p* = p/(p-1) and coefficient
// (c*p)^(1-p*) / p*; in particular (1/p) t^p pairs with (1/p*) t^(p*).
// Exponent p = 1 degenerates to the indicator of [0, c], returned in
// piecewise form.
OrliczFunction conjugate(const OrliczFunction& f);

}  // namespace morlicz
