#include "morlicz/numerics.hpp"

#include <stdexcept>

namespace morlicz {

double bisect_increasing(const std::function<double(double)>& f, double target,
                         double lo, double hi, double tol, int max_iter) {
  if (!(lo <= hi)) {
    throw std::invalid_argument("bisect_increasing: empty bracket");
  }
  double flo = f(lo);
  double fhi = f(hi);
  if (!(flo <= target) || !(target <= fhi)) {
    throw std::invalid_argument("bisect_increasing: bracket misses target");
  }
  for (int it = 0; it < max_iter && (hi - lo) > tol * std::max(1.0, std::abs(hi));
       ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace morlicz
