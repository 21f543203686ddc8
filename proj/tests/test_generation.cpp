#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "morlicz/generation.hpp"
#include "morlicz/instance.hpp"
#include "morlicz/numerics.hpp"
#include "morlicz/rng.hpp"

using namespace morlicz;

namespace {

// Decreasing positive rows, each rescaled to the requested sum.
WeightMatrix random_rows_with_sum(std::size_t n, double row_sum, SplitMix64& g) {
  std::vector<double> entries(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    double* row = entries.data() + i * n;
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = 0.1 + g.next_unit();
      total += row[j];
    }
    std::sort(row, row + n, std::greater<double>());
    for (std::size_t j = 0; j < n; ++j) row[j] *= row_sum / total;
  }
  return WeightMatrix(n, n, std::move(entries), true);
}

std::vector<double> random_vector(std::size_t n, SplitMix64& g) {
  std::vector<double> x(n);
  for (double& v : x) v = 2.0 * g.next_unit() - 1.0;
  return x;
}

// x scaled onto the modular boundary of the generated space's unit ball.
std::vector<double> boundary_point(const GeneratedSpace& g, SplitMix64& rng) {
  std::vector<double> u = random_vector(g.space.dimension(), rng);
  double linf = 0.0;
  for (double v : u) linf = std::max(linf, std::abs(v));
  if (linf == 0.0) u[0] = 1.0;
  const double rho = g.space.luxemburg_norm(u);
  for (double& v : u) v /= rho;
  return u;
}

const WeightMatrix kExample(2, 2, {0.75, 0.25, 0.5, 0.5}, true);

}  // namespace

TEST_SUITE("generation") {

TEST_CASE("frozen two-by-two construction") {
  const GeneratedSpace g =
      functions_from_matrix(kExample, Variant::Rowsum, Side::Primal);
  CHECK(g.variant == Variant::Rowsum);
  CHECK(g.side == Side::Primal);
  REQUIRE(g.space.dimension() == 2);

  const auto& m1 = std::get<PiecewiseOrlicz>(g.space.functions()[0]);
  REQUIRE(m1.breakpoints().size() == 3);
  CHECK(m1.breakpoints()[1].t == 0.75);
  CHECK(m1.breakpoints()[1].v == 0.5);
  CHECK(m1.breakpoints()[2].t == 1.0);
  CHECK(m1.breakpoints()[2].v == 1.0);

  // The second row is uniform, so its function is the identity on [0, 1].
  const auto& m2 = std::get<PiecewiseOrlicz>(g.space.functions()[1]);
  CHECK(m2.eval(0.5) == 0.5);
  CHECK(m2.slopes()[0] == 1.0);
  CHECK(m2.slopes()[1] == 1.0);

  CHECK(g.space.normalized());

  // Sandwich on x = (1, 1): the average is (max(.75,.5) + max(.25,.5)) / 2
  // and the conjugate-space norm is exactly 1.
  const std::vector<double> x{1.0, 1.0};
  const VerifyReport r = verify_average_equivalence(
      x, kExample, Variant::Rowsum, AverageMethod::Exact);
  CHECK(r.theorem == "thm3.2");
  CHECK(r.n == 2);
  CHECK(r.value == 0.625);
  CHECK(r.reference == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.c_low == 1.0 / 12.0);
  CHECK(r.c_high == 1.0);
  CHECK(r.pass);
}

TEST_CASE("defining equalities hold exactly at the prefix points") {
  SplitMix64 g(103);
  for (std::size_t n = 2; n <= 6; ++n) {
    const WeightMatrix y = random_rows_with_sum(n, 1.0, g);
    const GeneratedSpace rowsum =
        functions_from_matrix(y, Variant::Rowsum, Side::Primal);
    const GeneratedSpace scaled =
        functions_from_matrix(y, Variant::Scaled, Side::Primal);
    const double dn = static_cast<double>(n);
    const double scale = 1.0 / dn;
    for (std::size_t i = 0; i < n; ++i) {
      // Each variant's own source rows (the row-sum variant rescales them),
      // run through the shared prefix helper and the construction's own
      // scaling, hit the stored breakpoints bit for bit.
      const std::vector<double> rpref = prefix_sums(rowsum.source.row(i));
      const std::vector<double> spref = prefix_sums(scaled.source.row(i));
      const auto& mr = std::get<PiecewiseOrlicz>(rowsum.space.functions()[i]);
      const auto& ms = std::get<PiecewiseOrlicz>(scaled.space.functions()[i]);
      for (std::size_t k = 1; k <= n; ++k) {
        CHECK(mr.eval(rpref[k]) == static_cast<double>(k) / dn);
        CHECK(ms.eval(scale * spref[k]) == static_cast<double>(k) / dn);
      }
    }
    CHECK(rowsum.space.normalized());
  }
}

TEST_CASE("row-sum validation and rescaling") {
  SplitMix64 g(107);
  // Row sums far from 1 are rejected for the row-sum variant but fine for
  // the scaled one.
  const WeightMatrix bad = random_rows_with_sum(3, 1.5, g);
  CHECK_THROWS_AS(functions_from_matrix(bad, Variant::Rowsum, Side::Primal),
                  std::invalid_argument);
  CHECK_NOTHROW(functions_from_matrix(bad, Variant::Scaled, Side::Primal));

  // A sum within the tolerance is renormalized before use.
  WeightMatrix near(2, 2, {0.6 + 2e-10, 0.4, 0.5, 0.5 - 3e-10}, true);
  const GeneratedSpace gs =
      functions_from_matrix(near, Variant::Rowsum, Side::Primal);
  for (std::size_t i = 0; i < 2; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < 2; ++j) sum += gs.source(i, j);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  }

  const WeightMatrix wide(2, 3, std::vector<double>(6, 0.5), true);
  CHECK_THROWS_AS(functions_from_matrix(wide, Variant::Rowsum, Side::Primal),
                  std::invalid_argument);
  const WeightMatrix unflagged(2, 2, {0.6, 0.4, 0.5, 0.5}, false);
  CHECK_THROWS_AS(functions_from_matrix(unflagged, Variant::Rowsum, Side::Primal),
                  std::invalid_argument);
}

TEST_CASE("dual side carries the conjugated functions") {
  SplitMix64 g(109);
  const WeightMatrix y = random_rows_with_sum(3, 1.0, g);
  const GeneratedSpace primal =
      functions_from_matrix(y, Variant::Rowsum, Side::Primal);
  const GeneratedSpace dual =
      functions_from_matrix(y, Variant::Rowsum, Side::Dual);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& p = std::get<PiecewiseOrlicz>(primal.space.functions()[i]);
    const PiecewiseOrlicz pc = p.conjugate();
    const auto& d = std::get<PiecewiseOrlicz>(dual.space.functions()[i]);
    REQUIRE(d.breakpoints().size() == pc.breakpoints().size());
    for (std::size_t k = 0; k < pc.breakpoints().size(); ++k) {
      CHECK(d.breakpoints()[k].t == pc.breakpoints()[k].t);
      CHECK(d.breakpoints()[k].v == pc.breakpoints()[k].v);
    }
  }
  // The dual space's norm is then the reference L of the sandwich.
  const std::vector<double> x = random_vector(3, g);
  CHECK(dual.space.luxemburg_norm(x) ==
        doctest::Approx(primal.space.conjugate_space().luxemburg_norm(x))
            .epsilon(1e-13));
}

TEST_CASE("matrix from square functions") {
  // All coordinates t^2, n = 2: column increments of the inverse at 1/2, 1.
  const std::vector<OrliczFunction> fs{PowerOrlicz(2.0, 1.0),
                                       PowerOrlicz(2.0, 1.0)};
  const WeightMatrix y = matrix_from_functions(fs);
  const double r2 = std::sqrt(0.5);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(y(i, 0) == doctest::Approx(2.0 * r2).epsilon(1e-15));
    CHECK(y(i, 1) == doctest::Approx(2.0 * (1.0 - r2)).epsilon(1e-15));
  }
  CHECK(y(0, 0) == doctest::Approx(1.4142135623730951).epsilon(1e-15));
  CHECK(y(0, 1) == doctest::Approx(0.5857864376269049).epsilon(1e-15));

  // Identity coordinates give the all-ones matrix.
  const std::vector<OrliczFunction> ids{PowerOrlicz(1.0, 1.0),
                                        PowerOrlicz(1.0, 1.0),
                                        PowerOrlicz(1.0, 1.0)};
  const WeightMatrix ones = matrix_from_functions(ids);
  for (double e : ones.entries()) CHECK(e == doctest::Approx(1.0).epsilon(1e-15));

  // Non-normalized functions are rejected.
  const std::vector<OrliczFunction> bad{PowerOrlicz(2.0, 0.5)};
  CHECK_THROWS_AS(matrix_from_functions(bad), std::invalid_argument);
  CHECK_THROWS_AS(matrix_from_functions({}), std::invalid_argument);
}

TEST_CASE("construction and converse invert each other") {
  SplitMix64 g(113);
  for (std::size_t n = 2; n <= 6; ++n) {
    // Scaled construction expects rows summing to n so that M_i(1) = 1.
    const WeightMatrix y = random_rows_with_sum(n, static_cast<double>(n), g);
    const GeneratedSpace gs =
        functions_from_matrix(y, Variant::Scaled, Side::Primal);
    const WeightMatrix back = matrix_from_functions(gs.space.functions());
    double scale = 0.0;
    for (double e : y.entries()) scale = std::max(scale, std::abs(e));
    for (std::size_t k = 0; k < y.entries().size(); ++k) {
      CHECK(std::abs(back.entries()[k] - y.entries()[k]) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("vertex enumeration counts") {
  // n = 1: prefixes 0 and 1, signs add -1.
  const WeightMatrix one(1, 1, {1.0}, true);
  const auto u1 = ball_vertices(one, false);
  CHECK(u1.size() == 2);
  const auto s1 = ball_vertices(one, true);
  REQUIRE(s1.size() == 3);
  CHECK(s1[0][0] == -1.0);
  CHECK(s1[1][0] == 0.0);
  CHECK(s1[2][0] == 1.0);

  // n = 2 all-ones: budget 2 over two rows, prefix values 0/1/2.
  const WeightMatrix ones2(2, 2, std::vector<double>(4, 1.0), true);
  CHECK(ball_vertices(ones2, false).size() == 6);
  CHECK(ball_vertices(ones2, true).size() == 13);

  // Generic 3x3: all 20 compositions of budget 3 give distinct points.
  SplitMix64 g(127);
  const WeightMatrix y3 = random_rows_with_sum(3, 1.0, g);
  CHECK(ball_vertices(y3, false).size() == 20);

  const WeightMatrix y7 = random_rows_with_sum(7, 1.0, g);
  CHECK_THROWS_AS(ball_vertices(y7, true), std::invalid_argument);
  const WeightMatrix wide(1, 2, {0.6, 0.4}, true);
  CHECK_THROWS_AS(ball_vertices(wide, true), std::invalid_argument);
}

TEST_CASE("vertices lie in the unit modular ball") {
  SplitMix64 g(131);
  for (std::size_t n = 2; n <= 5; ++n) {
    const WeightMatrix y = random_rows_with_sum(n, 1.0, g);
    const GeneratedSpace gs =
        functions_from_matrix(y, Variant::Rowsum, Side::Primal);
    const auto verts = ball_vertices(gs.source, true);
    for (const auto& v : verts) {
      // Coordinates are prefix sums, so the modular evaluates on stored
      // breakpoints and sums to (l_1 + ... + l_n) / n <= 1.
      CHECK(gs.space.modular(v, 1.0) <= 1.0 + 1e-12);
    }
    // Convex combinations stay inside (solidity of the modular ball).
    for (int rep = 0; rep < 20; ++rep) {
      const auto& a = verts[g.next_below(verts.size())];
      const auto& b = verts[g.next_below(verts.size())];
      const double lam = g.next_unit();
      std::vector<double> mix(n);
      for (std::size_t i = 0; i < n; ++i) {
        mix[i] = lam * a[i] + (1.0 - lam) * b[i];
      }
      CHECK(gs.space.modular(mix, 1.0) <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("frozen decomposition of a boundary point") {
  const GeneratedSpace g =
      functions_from_matrix(kExample, Variant::Rowsum, Side::Primal);

  // M_1(0.9) = 0.5 + 2 * 0.15 = 0.8 > 1/2, M_2(0.2) = 0.2 <= 1/2, and the
  // modular is exactly 1.
  const std::vector<double> x{0.9, 0.2};
  CHECK(g.space.modular(x, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  const BallDecomposition d = decompose_ball_point(g, x);
  REQUIRE(d.large_indices == std::vector<std::size_t>{0});
  REQUIRE(d.small_indices == std::vector<std::size_t>{1});
  REQUIRE(d.prefix_counts == std::vector<std::size_t>{1});
  CHECK(d.x_large == std::vector<double>{0.9, 0.0});
  CHECK(d.x_small == std::vector<double>{0.0, 0.2});
  CHECK(d.prefix_floor == std::vector<double>{0.75, 0.0});
  CHECK(d.prefix_ceil == std::vector<double>{1.0, 0.0});
  CHECK(decomposition_valid(g, x, d));

  // Both coordinates at their small-side edge values.
  const std::vector<double> edge{0.75, 0.5};
  const BallDecomposition d2 = decompose_ball_point(g, edge);
  CHECK(d2.large_indices.empty());
  CHECK(decomposition_valid(g, edge, d2));
}

TEST_CASE("random boundary points decompose validly") {
  SplitMix64 g(137);
  for (std::size_t n = 2; n <= 6; ++n) {
    const WeightMatrix y = random_rows_with_sum(n, 1.0, g);
    const GeneratedSpace gs =
        functions_from_matrix(y, Variant::Rowsum, Side::Primal);
    for (int rep = 0; rep < 20; ++rep) {
      const std::vector<double> x = boundary_point(gs, g);
      const BallDecomposition d = decompose_ball_point(gs, x);
      CHECK(decomposition_valid(gs, x, d));
    }
  }
}

TEST_CASE("decomposition preconditions") {
  SplitMix64 g(139);
  const WeightMatrix y = random_rows_with_sum(3, 1.0, g);
  const GeneratedSpace rowsum =
      functions_from_matrix(y, Variant::Rowsum, Side::Primal);
  const GeneratedSpace scaled =
      functions_from_matrix(y, Variant::Scaled, Side::Primal);
  const GeneratedSpace dual =
      functions_from_matrix(y, Variant::Rowsum, Side::Dual);

  const std::vector<double> outside{2.0, 2.0, 2.0};
  CHECK_THROWS_AS(decompose_ball_point(rowsum, outside), std::invalid_argument);
  const std::vector<double> inside{0.1, 0.1, 0.1};
  CHECK_THROWS_AS(decompose_ball_point(scaled, inside), std::invalid_argument);
  CHECK_THROWS_AS(decompose_ball_point(dual, inside), std::invalid_argument);
  CHECK_THROWS_AS(decompose_ball_point(rowsum, std::vector<double>{0.1, 0.1}),
                  std::invalid_argument);
}

TEST_CASE("the certifier rejects tampered decompositions") {
  SplitMix64 g(149);
  const WeightMatrix y = random_rows_with_sum(4, 1.0, g);
  const GeneratedSpace gs =
      functions_from_matrix(y, Variant::Rowsum, Side::Primal);
  std::vector<double> x;
  BallDecomposition d;
  // Find a boundary point with at least one large coordinate so every
  // corruption path below is exercised.
  for (;;) {
    x = boundary_point(gs, g);
    d = decompose_ball_point(gs, x);
    if (!d.large_indices.empty() && !d.small_indices.empty()) break;
  }
  REQUIRE(decomposition_valid(gs, x, d));

  {
    BallDecomposition t = d;
    t.prefix_floor[t.large_indices[0]] += 1e-6;
    CHECK_FALSE(decomposition_valid(gs, x, t));
  }
  {
    BallDecomposition t = d;
    t.prefix_counts[0] = t.prefix_counts[0] == 1 ? 2 : t.prefix_counts[0] - 1;
    CHECK_FALSE(decomposition_valid(gs, x, t));
  }
  {
    BallDecomposition t = d;
    t.x_small[t.small_indices[0]] += 1e-6;
    CHECK_FALSE(decomposition_valid(gs, x, t));
  }
  {
    // Claiming a large coordinate is small must fail the share test.
    BallDecomposition t = d;
    const std::size_t moved = t.large_indices[0];
    t.large_indices.erase(t.large_indices.begin());
    t.prefix_counts.erase(t.prefix_counts.begin());
    t.small_indices.push_back(moved);
    t.x_small[moved] = x[moved];
    t.x_large[moved] = 0.0;
    t.prefix_floor[moved] = 0.0;
    t.prefix_ceil[moved] = 0.0;
    CHECK_FALSE(decomposition_valid(gs, x, t));
  }
}

TEST_CASE("rearrangement report on arbitrary real matrices") {
  SplitMix64 g(151);
  for (std::size_t n = 2; n <= 6; ++n) {
    // Signed entries, no shape flag: the sandwich still holds.
    std::vector<double> entries(n * n);
    for (double& e : entries) e = 4.0 * g.next_unit() - 2.0;
    const WeightMatrix y(n, n, std::move(entries), false);
    const std::vector<double> x = random_vector(n, g);

    const VerifyReport r = verify_rearrangement_bounds(x, y);
    CHECK(r.theorem == "thm2.1");
    CHECK(r.n == n);
    CHECK(r.c_low == 1.0 / (2.0 * static_cast<double>(n)));
    CHECK(r.c_high == 1.0 / static_cast<double>(n));
    CHECK(r.value == exact_average(x, y).value);
    CHECK(r.reference == top_k_sum(abs_products(x, y), n));
    CHECK(r.pass);
  }
}

TEST_CASE("average equivalence reports for both variants") {
  SplitMix64 g(157);
  for (std::size_t n = 2; n <= 6; ++n) {
    const WeightMatrix y1 = random_rows_with_sum(n, 1.0, g);
    const std::vector<double> x = random_vector(n, g);
    const VerifyReport r =
        verify_average_equivalence(x, y1, Variant::Rowsum, AverageMethod::Exact);
    CHECK(r.theorem == "thm3.2");
    CHECK(r.c_low == 1.0 / (6.0 * static_cast<double>(n)));
    CHECK(r.c_high == 2.0 / static_cast<double>(n));
    CHECK(r.pass);

    const WeightMatrix yn = random_rows_with_sum(n, static_cast<double>(n), g);
    const VerifyReport s =
        verify_average_equivalence(x, yn, Variant::Scaled, AverageMethod::Exact);
    CHECK(s.theorem == "thm3.3");
    CHECK(s.c_low == 1.0 / 6.0);
    CHECK(s.c_high == 2.0);
    CHECK(s.pass);
  }
}

TEST_CASE("all-ones matrix pins the scaled sandwich at ratio one") {
  const std::size_t n = 5;
  const WeightMatrix ones(n, n, std::vector<double>(n * n, 1.0), true);
  const std::vector<double> x(n, 1.0);
  const VerifyReport r =
      verify_average_equivalence(x, ones, Variant::Scaled, AverageMethod::Exact);
  // Every permutation maximum is 1 and the conjugate norm is max|x_i| = 1.
  CHECK(r.value == 1.0);
  CHECK(std::abs(r.value - r.reference) <= 1e-12);
  CHECK(r.pass);
}

TEST_CASE("bounds and monte carlo methods certify the sandwich") {
  SplitMix64 g(163);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t n = 2 + g.next_below(5);
    const WeightMatrix y = random_rows_with_sum(n, 1.0, g);
    const std::vector<double> x = random_vector(n, g);

    const VerifyReport b = verify_average_equivalence(
        x, y, Variant::Rowsum, AverageMethod::Bounds);
    CHECK(b.method == "bounds");
    CHECK(b.pass);

    const VerifyReport m = verify_average_equivalence(
        x, y, Variant::Rowsum, AverageMethod::MonteCarlo, 2000, 17);
    CHECK(m.method == "mc");
    CHECK(m.seed == 17);
    CHECK(m.pass);
  }
}

TEST_CASE("ball inclusion report") {
  SplitMix64 g(167);
  for (std::size_t n = 2; n <= 5; ++n) {
    const WeightMatrix y = random_rows_with_sum(n, 1.0, g);
    const VerifyReport r = verify_ball_inclusions(y, 90 + n, 50);
    CHECK(r.theorem == "lemma3.1");
    CHECK(r.n == n);
    CHECK(r.value <= 1.0 + 1e-12);
    CHECK(r.reference == 1.0);
    CHECK(r.c_low == 0.0);
    CHECK(r.c_high == 1.0);
    CHECK(r.seed == 90 + n);
    CHECK(r.pass);
  }
}

TEST_CASE("converse round-trip report") {
  SplitMix64 g(173);
  for (std::size_t n = 2; n <= 6; ++n) {
    const WeightMatrix y = random_rows_with_sum(n, static_cast<double>(n), g);
    const std::vector<double> x = random_vector(n, g);
    const VerifyReport r = verify_converse_roundtrip(x, y);
    CHECK(r.theorem == "thm4.1");
    CHECK(r.n == n);
    CHECK(r.c_low == 1.0 / 6.0);
    CHECK(r.c_high == 2.0);
    CHECK(r.pass);
  }
}

TEST_CASE("instance generation is deterministic and well-shaped") {
  const Instance a = generate_instance(4, 4, InstanceKind::RandomNormalized, 99);
  const Instance b = generate_instance(4, 4, InstanceKind::RandomNormalized, 99);
  CHECK(a.matrix == b.matrix);
  CHECK(a.x == b.x);
  CHECK(a.seed == 99);
  CHECK(a.kind == InstanceKind::RandomNormalized);

  // Rows decreasing, sums 1, x in [-1, 1).
  const WeightMatrix y = instance_matrix(a);
  for (std::size_t i = 0; i < 4; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < 4; ++j) sum += y(i, j);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
  for (double xi : a.x) {
    CHECK(xi >= -1.0);
    CHECK(xi < 1.0);
  }

  const Instance c = generate_instance(4, 4, InstanceKind::RandomNormalized, 100);
  CHECK(a.matrix != c.matrix);

  // Power rows: scaled variant sums to cols, row-sum variant to 1.
  const Instance p = generate_instance(3, 5, InstanceKind::PowerRows, 7,
                                       Variant::Scaled);
  const WeightMatrix py = instance_matrix(p);
  for (std::size_t i = 0; i < 3; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < 5; ++j) sum += py(i, j);
    CHECK(sum == doctest::Approx(5.0).epsilon(1e-9));
  }
  const Instance q = generate_instance(3, 5, InstanceKind::PowerRows, 7,
                                       Variant::Rowsum);
  const WeightMatrix qy = instance_matrix(q);
  for (std::size_t i = 0; i < 3; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < 5; ++j) sum += qy(i, j);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }

  CHECK_THROWS_AS(generate_instance(0, 0, InstanceKind::RandomNormalized, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate_instance(4, 2, InstanceKind::RandomNormalized, 1),
                  std::invalid_argument);

  CHECK(instance_kind_from_name("RANDOM_NORMALIZED") ==
        InstanceKind::RandomNormalized);
  CHECK(instance_kind_from_name("POWER_ROWS") == InstanceKind::PowerRows);
  CHECK(instance_kind_from_name("USER") == InstanceKind::User);
  CHECK(instance_kind_name(InstanceKind::PowerRows) ==
        std::string("POWER_ROWS"));
  CHECK_THROWS_AS(instance_kind_from_name("NOPE"), std::invalid_argument);
}

}  // TEST_SUITE
