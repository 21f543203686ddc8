#pragma once

#include <cstdint>
#include <span>

#include "morlicz/combinat.hpp"
#include "morlicz/generation.hpp"

namespace morlicz {

// Budgeted prefix norm for an n x N matrix with decreasing positive rows:
//   ||x||_a = max { sum_i (a_i1 + ... + a_{i l_i}) * |x_i| : sum l_i <= N }.
//
// Because rows decrease, the optimum always spends its budget on the N
// largest of the n*N products |x_i| * a_ij, with ties resolved by row then
// column so the selected cells stay prefix-closed per row. The value is
// therefore a top-N sum computed by partial selection. The selected cells
// are summed in row-major order, the same order the brute-force oracle
// uses, so the two agree bit for bit on tie-free inputs.
double a_norm(const WeightMatrix& a, std::span<const double> x);

// Reference implementation: enumerate every composition (l_1, ..., l_n)
// with sum <= N and take the best value. Refuses instances with more than
// max_compositions compositions (the count is C(N + n, n)).
double a_norm_bruteforce(const WeightMatrix& a, std::span<const double> x,
                         std::uint64_t max_compositions = 1000000);

// Two-sided comparison ("lemma5.1") between the budget norm and the
// Musielak norm of the space whose conjugate functions are pinned by the
// rows, M_i*(a_i1 + ... + a_im) = m/N:
//   1/2 * ||x||_a <= ||x||_M <= 2 * ||x||_a.
// Rows must sum to 1 within 1e-9 and are rescaled before use.
VerifyReport verify_norm_approximation(const WeightMatrix& a,
                                       std::span<const double> x);

}  // namespace morlicz
