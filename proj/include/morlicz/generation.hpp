#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "morlicz/combinat.hpp"
#include "morlicz/musielak.hpp"

namespace morlicz {

// Which defining equalities the construction targets:
//   Rowsum: rows sum to 1 and M_i(y_i1 + ... + y_ik) = k/n,
//   Scaled: M_i((y_i1 + ... + y_ik) / n) = k/n.
enum class Variant { Rowsum, Scaled };

// Primal pins the conditions on the space's own functions; Dual pins them
// on the conjugates, and the returned space then carries the conjugated
// functions as its coordinates.
enum class Side { Primal, Dual };

struct GeneratedSpace {
  MusielakSpace space;
  WeightMatrix source;  // the (possibly renormalized) matrix actually used
  Variant variant;
  Side side;
};

// Builds the n-dimensional space whose coordinate functions interpolate
// k/n at the scaled row prefix sums. Requires a square matrix with
// decreasing positive rows; for Variant::Rowsum the row sums must be 1
// within 1e-9 and are then rescaled to sum exactly before use.
GeneratedSpace functions_from_matrix(const WeightMatrix& y, Variant variant,
                                     Side side);

// Converse construction: y_ij = n * (M_i^{-1}(j/n) - M_i^{-1}((j-1)/n)).
// Rows are nonincreasing because the inverse of a convex function is
// concave. Every function must be normalized (M_i(1) = 1 within 1e-9);
// the result matches Variant::Scaled, i.e. feeding it back through
// functions_from_matrix reproduces each M_i at the points M_i^{-1}(k/n).
WeightMatrix matrix_from_functions(const std::vector<OrliczFunction>& functions);

// Extreme points of the polytope
//   B = conv { (eps_i * (y_i1 + ... + y_{i l_i}))_i : sum l_i <= n },
// enumerated over all compositions l_i >= 0 (empty prefixes contribute a
// zero coordinate). With include_signs the eps_i = +/-1 patterns are
// applied to nonzero coordinates; duplicates are removed. Refuses n above
// the limit (the count grows as C(2n, n) * 2^n).
std::vector<std::vector<double>> ball_vertices(const WeightMatrix& y,
                                               bool include_signs,
                                               std::size_t limit = 6);

// Constructive certificate that a point of the unit ball lies in 3B.
// Coordinates split by modular share: small ones (M_i(|x_i|) <= 1/n) are
// dominated by the first column, large ones get a prefix count k_i with
// k_i/n <= M_i(|x_i|) <= (k_i+1)/n, making the k_i-prefix vector a point
// of B that dominates x_large up to a factor 2 after one more column.
struct BallDecomposition {
  std::vector<std::size_t> small_indices;
  std::vector<std::size_t> large_indices;
  std::vector<std::size_t> prefix_counts;  // k_i, aligned with large_indices
  // Length-n vectors, zero off their index sets.
  std::vector<double> x_small;
  std::vector<double> x_large;
  std::vector<double> prefix_floor;  // sums of k_i leading row entries
  std::vector<double> prefix_ceil;   // sums of k_i + 1 leading row entries
};

// Requires a Rowsum/Primal generated space and modular(x, 1) <= 1 + 1e-12.
BallDecomposition decompose_ball_point(const GeneratedSpace& g,
                                       std::span<const double> x);

// Independent check of every decomposition invariant: the partition rule,
// the count window k_i/n <= M_i(|x_i|) <= (k_i+1)/n, sum k_i <= n, the
// prefix values, |x_large| <= prefix_ceil <= 2 * prefix_floor,
// |x_small|_i <= y_i1, and x_small + x_large = x. Kept separate from the
// constructor so tests certify the output rather than trust it.
bool decomposition_valid(const GeneratedSpace& g, std::span<const double> x,
                         const BallDecomposition& d);

// Outcome of one verification run. Every check is normalized to the shape
//   c_low * reference <= value <= c_high * reference
// so the same record (and the same JSON/CSV schema) serves all of them.
struct VerifyReport {
  std::string theorem;  // check identifier, e.g. "thm3.2"
  std::size_t n = 0;
  double value = 0.0;      // serialized as "A"
  double reference = 0.0;  // serialized as "L"
  double c_low = 0.0;
  double c_high = 0.0;
  bool pass = false;
  std::string method;  // "exact" | "mc" | "bounds"
  std::uint64_t seed = 0;
};

// Exact permutation average against its rearrangement bounds ("thm2.1"):
// with S the top-n product sum, S/(2n) <= average <= S/n within 1e-12.
VerifyReport verify_rearrangement_bounds(std::span<const double> x,
                                         const WeightMatrix& y);

// Sandwich between the permutation average A and the conjugate-space norm
// L = ||x|| over the conjugates of the generated functions:
//   Rowsum: 1/(6n) * L <= A <= 2/n * L   ("thm3.2")
//   Scaled: 1/6 * L <= A <= 2 * L        ("thm3.3")
// Bounds method checks the enclosure with the derived lower constant
// halved (the lower rearrangement bound only reaches half the average);
// Monte-Carlo allows 3 half-widths of slack.
VerifyReport verify_average_equivalence(std::span<const double> x,
                                        const WeightMatrix& y, Variant variant,
                                        AverageMethod method,
                                        std::uint64_t trials = 100000,
                                        std::uint64_t seed = 0);

// Ball inclusion checks ("lemma3.1"): every vertex of B lies in the unit
// modular ball, and decompose_ball_point yields a valid certificate for
// `samples` random modular-boundary points.
VerifyReport verify_ball_inclusions(const WeightMatrix& y, std::uint64_t seed,
                                    std::size_t samples);

// Converse round trip ("thm4.1"): rebuild the matrix from the functions
// generated under Variant::Scaled, require it to match y to 1e-10, then
// run the scaled sandwich on it.
VerifyReport verify_converse_roundtrip(std::span<const double> x,
                                       const WeightMatrix& y);

}  // namespace morlicz
