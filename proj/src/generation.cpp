#include "morlicz/generation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "morlicz/numerics.hpp"
#include "morlicz/rng.hpp"

namespace morlicz {

namespace {

constexpr double kRowSumTol = 1e-9;
constexpr double kNormalizedTol = 1e-9;
constexpr double kEqualityTol = 1e-12;
// Witness inequalities are checked a bit more loosely: boundary points come
// out of a bisection with ~1e-13 relative error and the inverse map can
// stretch that by a factor of n.
constexpr double kWitnessTol = 1e-9;

std::vector<std::vector<double>> row_prefixes(const WeightMatrix& y) {
  std::vector<std::vector<double>> pref(y.rows());
  for (std::size_t i = 0; i < y.rows(); ++i) {
    pref[i] = prefix_sums(y.row(i));
  }
  return pref;
}

const PiecewiseOrlicz& primal_piecewise(const GeneratedSpace& g,
                                        std::size_t i) {
  return std::get<PiecewiseOrlicz>(g.space.functions()[i]);
}

}  // namespace

GeneratedSpace functions_from_matrix(const WeightMatrix& y, Variant variant,
                                     Side side) {
  if (y.rows() != y.cols()) {
    throw std::invalid_argument("functions_from_matrix: matrix must be square");
  }
  if (!y.rows_decreasing()) {
    throw std::invalid_argument(
        "functions_from_matrix: matrix must carry the decreasing-rows flag");
  }
  const std::size_t n = y.rows();

  std::vector<double> entries(y.entries());
  if (variant == Variant::Rowsum) {
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) sum += entries[i * n + j];
      if (std::abs(sum - 1.0) > kRowSumTol) {
        throw std::invalid_argument(
            "functions_from_matrix: row sums must be 1 for the row-sum variant");
      }
      for (std::size_t j = 0; j < n; ++j) entries[i * n + j] /= sum;
    }
  }
  WeightMatrix source(n, n, std::move(entries), true);

  const double scale =
      variant == Variant::Rowsum ? 1.0 : 1.0 / static_cast<double>(n);
  std::vector<OrliczFunction> fs;
  fs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    PiecewiseOrlicz m = PiecewiseOrlicz::from_decreasing_weights(source.row(i), scale);
    if (side == Side::Dual) {
      fs.emplace_back(m.conjugate());
    } else {
      fs.emplace_back(std::move(m));
    }
  }
  return GeneratedSpace{MusielakSpace(std::move(fs)), std::move(source),
                        variant, side};
}

WeightMatrix matrix_from_functions(
    const std::vector<OrliczFunction>& functions) {
  if (functions.empty()) {
    throw std::invalid_argument("matrix_from_functions: no functions");
  }
  const std::size_t n = functions.size();
  const double dn = static_cast<double>(n);
  std::vector<double> entries(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(eval(functions[i], 1.0) - 1.0) > kNormalizedTol) {
      throw std::invalid_argument(
          "matrix_from_functions: functions must satisfy M(1) = 1");
    }
    double prev = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
      const double cur = inverse(functions[i], static_cast<double>(j) / dn);
      entries[i * n + (j - 1)] = dn * (cur - prev);
      prev = cur;
    }
  }
  return WeightMatrix(n, n, std::move(entries), true);
}

std::vector<std::vector<double>> ball_vertices(const WeightMatrix& y,
                                               bool include_signs,
                                               std::size_t limit) {
  if (y.rows() != y.cols()) {
    throw std::invalid_argument("ball_vertices: matrix must be square");
  }
  if (!y.rows_decreasing()) {
    throw std::invalid_argument("ball_vertices: rows must be decreasing positive");
  }
  const std::size_t n = y.rows();
  if (n > limit) {
    throw std::invalid_argument("ball_vertices: dimension exceeds enumeration limit");
  }
  const auto pref = row_prefixes(y);

  std::vector<std::vector<double>> verts;
  std::vector<std::size_t> counts(n, 0);

  // Enumerate compositions (l_1, ..., l_n) with sum <= n.
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t row,
                                                          std::size_t budget) {
    if (row == n) {
      std::vector<double> v(n);
      std::vector<std::size_t> nz;
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = pref[i][counts[i]];
        if (counts[i] > 0) nz.push_back(i);
      }
      if (!include_signs || nz.empty()) {
        verts.push_back(std::move(v));
        return;
      }
      // Flip only nonzero coordinates; sign patterns on zeros duplicate.
      for (std::size_t mask = 0; mask < (std::size_t{1} << nz.size()); ++mask) {
        std::vector<double> s(v);
        for (std::size_t b = 0; b < nz.size(); ++b) {
          if (mask & (std::size_t{1} << b)) s[nz[b]] = -s[nz[b]];
        }
        verts.push_back(std::move(s));
      }
      return;
    }
    for (std::size_t l = 0; l <= budget; ++l) {
      counts[row] = l;
      rec(row + 1, budget - l);
    }
    counts[row] = 0;
  };
  rec(0, n);

  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  return verts;
}

BallDecomposition decompose_ball_point(const GeneratedSpace& g,
                                       std::span<const double> x) {
  if (g.variant != Variant::Rowsum || g.side != Side::Primal) {
    throw std::invalid_argument(
        "decompose_ball_point: requires the row-sum primal construction");
  }
  const std::size_t n = g.space.dimension();
  if (x.size() != n) {
    throw std::invalid_argument("decompose_ball_point: dimension mismatch");
  }
  if (!g.space.ball_contains(x, 1.0)) {
    throw std::invalid_argument("decompose_ball_point: point outside the unit ball");
  }

  const auto pref = row_prefixes(g.source);
  const double dn = static_cast<double>(n);

  BallDecomposition d;
  d.x_small.assign(n, 0.0);
  d.x_large.assign(n, 0.0);
  d.prefix_floor.assign(n, 0.0);
  d.prefix_ceil.assign(n, 0.0);

  for (std::size_t i = 0; i < n; ++i) {
    const double mi = primal_piecewise(g, i).eval(std::abs(x[i]));
    if (mi > 1.0 / dn) {
      // floor picks the lower multiple at exact ties, matching k/n <= M_i.
      std::size_t k = static_cast<std::size_t>(std::floor(dn * mi));
      k = std::clamp<std::size_t>(k, 1, n - 1);
      d.large_indices.push_back(i);
      d.prefix_counts.push_back(k);
      d.x_large[i] = x[i];
      d.prefix_floor[i] = pref[i][k];
      d.prefix_ceil[i] = pref[i][k + 1];
    } else {
      d.small_indices.push_back(i);
      d.x_small[i] = x[i];
    }
  }
  return d;
}

bool decomposition_valid(const GeneratedSpace& g, std::span<const double> x,
                         const BallDecomposition& d) {
  const std::size_t n = g.space.dimension();
  if (x.size() != n) return false;
  if (d.small_indices.size() + d.large_indices.size() != n) return false;
  if (d.prefix_counts.size() != d.large_indices.size()) return false;
  if (d.x_small.size() != n || d.x_large.size() != n ||
      d.prefix_floor.size() != n || d.prefix_ceil.size() != n) {
    return false;
  }

  const auto pref = row_prefixes(g.source);
  const double dn = static_cast<double>(n);

  std::vector<bool> is_large(n, false);
  for (std::size_t i : d.large_indices) {
    if (i >= n || is_large[i]) return false;
    is_large[i] = true;
  }
  for (std::size_t i : d.small_indices) {
    if (i >= n || is_large[i]) return false;
  }

  std::size_t count_sum = 0;
  for (std::size_t idx = 0; idx < d.large_indices.size(); ++idx) {
    const std::size_t i = d.large_indices[idx];
    const std::size_t k = d.prefix_counts[idx];
    const double mi = primal_piecewise(g, i).eval(std::abs(x[i]));
    if (!(mi > 1.0 / dn)) return false;
    if (k < 1 || k > n - 1) return false;
    if (static_cast<double>(k) / dn > mi + kWitnessTol) return false;
    if (mi > static_cast<double>(k + 1) / dn + kWitnessTol) return false;
    count_sum += k;
    if (d.prefix_floor[i] != pref[i][k]) return false;
    if (d.prefix_ceil[i] != pref[i][k + 1]) return false;
    if (std::abs(d.x_large[i] - x[i]) != 0.0) return false;
    if (std::abs(x[i]) > d.prefix_ceil[i] + kWitnessTol) return false;
    if (d.prefix_ceil[i] > 2.0 * d.prefix_floor[i] + kWitnessTol) return false;
  }
  if (count_sum > n) return false;

  for (std::size_t i : d.small_indices) {
    const double mi = primal_piecewise(g, i).eval(std::abs(x[i]));
    if (mi > 1.0 / dn) return false;
    if (std::abs(d.x_small[i] - x[i]) != 0.0) return false;
    if (std::abs(x[i]) > g.source(i, 0) + kWitnessTol) return false;
    if (d.x_large[i] != 0.0 || d.prefix_floor[i] != 0.0 ||
        d.prefix_ceil[i] != 0.0) {
      return false;
    }
  }
  for (std::size_t i : d.large_indices) {
    if (d.x_small[i] != 0.0) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (d.x_small[i] + d.x_large[i] != x[i]) return false;
  }

  // The floor-prefix vector itself is a point of B: its composition fits
  // the budget and its coordinates are row prefix sums, so the modular at
  // radius 1 evaluates on stored breakpoints.
  if (!g.space.ball_contains(d.prefix_floor, 1.0)) return false;
  return true;
}

VerifyReport verify_rearrangement_bounds(std::span<const double> x,
                                         const WeightMatrix& y) {
  const AverageEstimate est = exact_average(x, y);
  const double s = top_k_sum(abs_products(x, y), x.size());
  const double dn = static_cast<double>(x.size());

  VerifyReport r;
  r.theorem = "thm2.1";
  r.n = x.size();
  r.value = est.value;
  r.reference = s;
  r.c_low = 1.0 / (2.0 * dn);
  r.c_high = 1.0 / dn;
  r.method = "exact";
  r.pass = r.c_low * s <= est.value + kEqualityTol &&
           est.value <= r.c_high * s + kEqualityTol;
  return r;
}

VerifyReport verify_average_equivalence(std::span<const double> x,
                                        const WeightMatrix& y, Variant variant,
                                        AverageMethod method,
                                        std::uint64_t trials,
                                        std::uint64_t seed) {
  const GeneratedSpace g = functions_from_matrix(y, variant, Side::Primal);
  const double l = g.space.conjugate_space().luxemburg_norm(x);
  const double dn = static_cast<double>(g.space.dimension());

  VerifyReport r;
  r.theorem = variant == Variant::Rowsum ? "thm3.2" : "thm3.3";
  r.n = g.space.dimension();
  r.reference = l;
  if (variant == Variant::Rowsum) {
    r.c_low = 1.0 / (6.0 * dn);
    r.c_high = 2.0 / dn;
  } else {
    r.c_low = 1.0 / 6.0;
    r.c_high = 2.0;
  }
  r.seed = seed;

  const double tol = kEqualityTol * std::max(1.0, l);
  switch (method) {
    case AverageMethod::Exact: {
      const AverageEstimate est = exact_average(x, g.source);
      r.value = est.value;
      r.method = "exact";
      r.pass = r.c_low * l <= est.value + tol && est.value <= r.c_high * l + tol;
      break;
    }
    case AverageMethod::Bounds: {
      const AverageEstimate est = bounds_average(x, g.source);
      r.value = est.value;
      r.method = "bounds";
      // The lower rearrangement bound reaches only half the average, so it
      // certifies the sandwich with the lower constant halved; the upper
      // bound is what the upper constant actually dominates.
      const double lo = est.value - est.half_width;
      const double hi = est.value + est.half_width;
      r.pass = 0.5 * r.c_low * l <= lo + tol && hi <= r.c_high * l + tol;
      break;
    }
    case AverageMethod::MonteCarlo: {
      const AverageEstimate est = monte_carlo_average(x, g.source, trials, seed);
      r.value = est.value;
      r.method = "mc";
      const double slack = 3.0 * est.half_width;
      r.pass = r.c_low * l <= est.value + slack + tol &&
               est.value - slack <= r.c_high * l + tol;
      break;
    }
  }
  return r;
}

VerifyReport verify_ball_inclusions(const WeightMatrix& y, std::uint64_t seed,
                                    std::size_t samples) {
  const GeneratedSpace g = functions_from_matrix(y, Variant::Rowsum, Side::Primal);
  const std::size_t n = g.space.dimension();

  double max_modular = 0.0;
  for (const auto& v : ball_vertices(g.source, true)) {
    max_modular = std::max(max_modular, g.space.modular(v, 1.0));
  }
  bool witnesses_ok = true;

  std::vector<double> u(n);
  for (std::size_t s = 0; s < samples; ++s) {
    SplitMix64 rng(mix_seed(seed, s));
    double linf = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = 2.0 * rng.next_unit() - 1.0;
      linf = std::max(linf, std::abs(u[i]));
    }
    if (linf == 0.0) u[0] = 1.0;
    const double rho = g.space.luxemburg_norm(u);
    for (double& ui : u) ui /= rho;  // modular-boundary point
    const BallDecomposition d = decompose_ball_point(g, u);
    witnesses_ok = witnesses_ok && decomposition_valid(g, u, d);
  }

  VerifyReport r;
  r.theorem = "lemma3.1";
  r.n = n;
  r.value = max_modular;
  r.reference = 1.0;
  r.c_low = 0.0;
  r.c_high = 1.0;
  r.method = "exact";
  r.seed = seed;
  r.pass = max_modular <= 1.0 + kEqualityTol && witnesses_ok;
  return r;
}

VerifyReport verify_converse_roundtrip(std::span<const double> x,
                                       const WeightMatrix& y) {
  const GeneratedSpace g = functions_from_matrix(y, Variant::Scaled, Side::Primal);
  const WeightMatrix rebuilt = matrix_from_functions(g.space.functions());

  bool roundtrip_ok = true;
  double scale = 1.0;
  for (double e : y.entries()) scale = std::max(scale, std::abs(e));
  for (std::size_t i = 0; i < y.rows() && roundtrip_ok; ++i) {
    for (std::size_t j = 0; j < y.cols(); ++j) {
      if (std::abs(rebuilt(i, j) - y(i, j)) > 1e-10 * scale) {
        roundtrip_ok = false;
        break;
      }
    }
  }

  VerifyReport r = verify_average_equivalence(x, y, Variant::Scaled,
                                              AverageMethod::Exact);
  r.theorem = "thm4.1";
  r.pass = r.pass && roundtrip_ok;
  return r;
}

}  // namespace morlicz
