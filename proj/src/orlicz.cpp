#include "morlicz/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace morlicz {

namespace {

// Validation slack. Slope monotonicity and slope-vs-difference consistency
// are checked in relative terms because slopes scale with 1/weight and can
// legitimately be large; an absolute floor covers values near zero.
constexpr double kRelTol = 1e-9;
constexpr double kAbsTol = 1e-12;

bool nearly_le(double a, double b) {
  return a <= b + kRelTol * std::max(std::abs(a), std::abs(b)) + kAbsTol;
}

}  // namespace

PiecewiseOrlicz::PiecewiseOrlicz(std::vector<Breakpoint> points,
                                 double tail_slope)
    : points_(std::move(points)), tail_slope_(tail_slope) {
  slopes_.reserve(points_.empty() ? 0 : points_.size() - 1);
  for (std::size_t k = 1; k < points_.size(); ++k) {
    const double dt = points_[k].t - points_[k - 1].t;
    const double dv = points_[k].v - points_[k - 1].v;
    slopes_.push_back(dt > 0.0 ? dv / dt : kInfinity);
  }
  validate();
}

PiecewiseOrlicz::PiecewiseOrlicz(std::vector<Breakpoint> points,
                                 std::vector<double> slopes, double tail_slope)
    : points_(std::move(points)),
      slopes_(std::move(slopes)),
      tail_slope_(tail_slope) {
  validate();
}

void PiecewiseOrlicz::validate() const {
  if (points_.empty()) {
    throw std::invalid_argument("PiecewiseOrlicz: no breakpoints");
  }
  if (points_.front().t != 0.0 || points_.front().v != 0.0) {
    throw std::invalid_argument("PiecewiseOrlicz: first breakpoint must be (0, 0)");
  }
  if (slopes_.size() + 1 != points_.size()) {
    throw std::invalid_argument("PiecewiseOrlicz: one slope per segment required");
  }
  if (std::isnan(tail_slope_)) {
    throw std::invalid_argument("PiecewiseOrlicz: tail slope is NaN");
  }
  double prev_slope = 0.0;
  for (std::size_t k = 1; k < points_.size(); ++k) {
    const Breakpoint& a = points_[k - 1];
    const Breakpoint& b = points_[k];
    if (!std::isfinite(b.t) || !std::isfinite(b.v)) {
      throw std::invalid_argument("PiecewiseOrlicz: non-finite breakpoint");
    }
    if (!(b.t > a.t)) {
      throw std::invalid_argument("PiecewiseOrlicz: abscissas must increase");
    }
    if (b.v < a.v) {
      throw std::invalid_argument("PiecewiseOrlicz: values must not decrease");
    }
    const double s = slopes_[k - 1];
    if (!std::isfinite(s) || s < 0.0) {
      throw std::invalid_argument("PiecewiseOrlicz: segment slope must be finite and >= 0");
    }
    // Stored slope must describe the segment it spans.
    const double dv = b.v - a.v;
    const double lin = s * (b.t - a.t);
    if (std::abs(lin - dv) > 1e-6 * std::max({std::abs(dv), std::abs(lin), 1e-9})) {
      throw std::invalid_argument("PiecewiseOrlicz: slope inconsistent with breakpoints");
    }
    // Convexity: slopes nondecreasing along the segments.
    if (k >= 2 && !nearly_le(prev_slope, s)) {
      throw std::invalid_argument("PiecewiseOrlicz: slopes must not decrease (convexity)");
    }
    prev_slope = s;
  }
  if (std::isfinite(tail_slope_)) {
    if (tail_slope_ < 0.0 || !nearly_le(prev_slope, tail_slope_)) {
      throw std::invalid_argument("PiecewiseOrlicz: tail slope below last segment slope");
    }
  }
  // Reject the two degenerate extremes: the zero function and the function
  // that is infinite everywhere except the origin.
  if (last_value() == 0.0) {
    if (std::isfinite(tail_slope_) && tail_slope_ <= 0.0) {
      throw std::invalid_argument("PiecewiseOrlicz: identically zero function");
    }
    if (points_.size() == 1 && !std::isfinite(tail_slope_)) {
      throw std::invalid_argument("PiecewiseOrlicz: no finite part");
    }
  }
}

PiecewiseOrlicz PiecewiseOrlicz::from_decreasing_weights(
    std::span<const double> weights, double scale) {
  if (weights.empty()) {
    throw std::invalid_argument("from_decreasing_weights: no weights");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("from_decreasing_weights: scale must be positive");
  }
  const std::size_t n = weights.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (!(weights[k] > 0.0) || !std::isfinite(weights[k])) {
      throw std::invalid_argument("from_decreasing_weights: weights must be positive");
    }
    // One-ulp wobble is tolerated: rows produced by inverse increments can
    // tie to within rounding without breaking convexity downstream.
    if (k > 0 && weights[k] > weights[k - 1] * (1.0 + 1e-12)) {
      throw std::invalid_argument("from_decreasing_weights: weights must not increase");
    }
  }

  const std::vector<double> pref = prefix_sums(weights);
  std::vector<Breakpoint> pts(n + 1);
  std::vector<double> slopes(n);
  pts[0] = {0.0, 0.0};
  const double dn = static_cast<double>(n);
  for (std::size_t k = 1; k <= n; ++k) {
    pts[k].t = scale * pref[k];
    pts[k].v = static_cast<double>(k) / dn;
    slopes[k - 1] = 1.0 / (dn * scale * weights[k - 1]);
  }
  const double tail = slopes.back();
  return PiecewiseOrlicz(std::move(pts), std::move(slopes), tail);
}

double PiecewiseOrlicz::eval(double t) const {
  if (!(t >= 0.0)) {
    throw std::invalid_argument("PiecewiseOrlicz::eval: negative argument");
  }
  // Index of the last breakpoint with abscissa <= t.
  auto it = std::upper_bound(
      points_.begin(), points_.end(), t,
      [](double val, const Breakpoint& b) { return val < b.t; });
  const std::size_t i = static_cast<std::size_t>(it - points_.begin()) - 1;
  if (t == points_[i].t) return points_[i].v;
  if (i + 1 == points_.size()) {
    if (!std::isfinite(tail_slope_)) return kInfinity;
    return points_[i].v + tail_slope_ * (t - points_[i].t);
  }
  return points_[i].v + slopes_[i] * (t - points_[i].t);
}

double PiecewiseOrlicz::inverse(double v, Preimage mode) const {
  if (!(v >= 0.0)) {
    throw std::invalid_argument("PiecewiseOrlicz::inverse: negative value");
  }
  if (v == 0.0) {
    if (mode == Preimage::Infimum) return 0.0;
    std::size_t j = 0;
    while (j + 1 < points_.size() && points_[j + 1].v == 0.0) ++j;
    return points_[j].t;
  }
  if (v <= last_value()) {
    // Unique preimage: the function is strictly increasing once positive.
    auto it = std::lower_bound(
        points_.begin(), points_.end(), v,
        [](const Breakpoint& b, double val) { return b.v < val; });
    const std::size_t j = static_cast<std::size_t>(it - points_.begin());
    if (points_[j].v == v) return points_[j].t;
    const double s = slopes_[j - 1];
    return points_[j - 1].t + (v - points_[j - 1].v) / s;
  }
  if (std::isfinite(tail_slope_) && tail_slope_ > 0.0) {
    return points_.back().t + (v - last_value()) / tail_slope_;
  }
  throw std::domain_error("PiecewiseOrlicz::inverse: value above range");
}

PiecewiseOrlicz PiecewiseOrlicz::conjugate() const {
  std::vector<Breakpoint> pts{{0.0, 0.0}};
  std::vector<double> slopes;
  double prev_s = 0.0;  // current right edge of the conjugate's domain
  double prev_v = 0.0;

  // One conjugate breakpoint per distinct primal slope; collinear segments
  // (equal slopes) merge, and a leading zero slope merges into the origin.
  for (std::size_t k = 0; k < slopes_.size(); ++k) {
    const double s = slopes_[k];
    if (s > prev_s) {
      const double t_left = points_[k].t;  // left breakpoint of segment k
      const double v = prev_v + t_left * (s - prev_s);
      pts.push_back({s, v});
      slopes.push_back(t_left);
      prev_s = s;
      prev_v = v;
    }
  }

  if (std::isfinite(tail_slope_)) {
    if (tail_slope_ > prev_s) {
      const double v = prev_v + domain_end() * (tail_slope_ - prev_s);
      pts.push_back({tail_slope_, v});
      slopes.push_back(domain_end());
    }
    // Beyond the largest primal slope the supremum is infinite.
    return PiecewiseOrlicz(std::move(pts), std::move(slopes), kInfinity);
  }
  // Infinite primal tail: the supremum sits at the domain end t_m forever.
  return PiecewiseOrlicz(std::move(pts), std::move(slopes), domain_end());
}

bool PiecewiseOrlicz::finite_tail() const { return std::isfinite(tail_slope_); }

bool PiecewiseOrlicz::strictly_positive() const {
  if (points_.size() == 1) return tail_slope_ > 0.0;
  return slopes_.front() > 0.0;
}

PowerOrlicz::PowerOrlicz(double exponent, double coefficient)
    : exponent_(exponent), coefficient_(coefficient) {
  if (!(exponent >= 1.0) || !std::isfinite(exponent)) {
    throw std::invalid_argument("PowerOrlicz: exponent must be >= 1");
  }
  if (!(coefficient > 0.0) || !std::isfinite(coefficient)) {
    throw std::invalid_argument("PowerOrlicz: coefficient must be positive");
  }
}

double PowerOrlicz::eval(double t) const {
  if (!(t >= 0.0)) {
    throw std::invalid_argument("PowerOrlicz::eval: negative argument");
  }
  return coefficient_ * std::pow(t, exponent_);
}

double PowerOrlicz::inverse(double v) const {
  if (!(v >= 0.0)) {
    throw std::invalid_argument("PowerOrlicz::inverse: negative value");
  }
  return std::pow(v / coefficient_, 1.0 / exponent_);
}

double eval(const OrliczFunction& f, double t) {
  return std::visit([t](const auto& g) { return g.eval(t); }, f);
}

double inverse(const OrliczFunction& f, double v, Preimage mode) {
  if (const auto* pw = std::get_if<PiecewiseOrlicz>(&f)) {
    return pw->inverse(v, mode);
  }
  return std::get<PowerOrlicz>(f).inverse(v);
}

OrliczFunction conjugate(const OrliczFunction& f) {
  if (const auto* pw = std::get_if<PiecewiseOrlicz>(&f)) {
    return pw->conjugate();
  }
  const PowerOrlicz& p = std::get<PowerOrlicz>(f);
  if (p.exponent() == 1.0) {
    // sup_t (s*t - c*t) is 0 for s <= c and infinite past it.
    std::vector<Breakpoint> pts{{0.0, 0.0}, {p.coefficient(), 0.0}};
    return PiecewiseOrlicz(std::move(pts), {0.0}, kInfinity);
  }
  const double q = p.exponent() / (p.exponent() - 1.0);
  const double cq =
      std::pow(p.coefficient() * p.exponent(), 1.0 - q) / q;
  return PowerOrlicz(q, cq);
}

}  // namespace morlicz
