#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "morlicz/combinat.hpp"
#include "morlicz/generation.hpp"

namespace morlicz {

enum class InstanceKind { RandomNormalized, PowerRows, User };

// One self-contained test case: a matrix, a vector, and the seed and
// recipe that produced them.
struct Instance {
  std::size_t n = 0;
  std::size_t cols = 0;               // serialized as "N"
  std::vector<double> matrix;         // row-major n x cols
  std::vector<double> x;
  std::uint64_t seed = 0;
  InstanceKind kind = InstanceKind::User;
};

// Deterministic generation from (kind, seed).
//
// RandomNormalized: entries drawn uniformly from [0.1, 1.1), sorted
// decreasingly per row, rows normalized to sum 1. The lower cutoff keeps
// the generated slopes moderate so that downstream equality checks at
// 1e-12 are meaningful rather than drowned in rounding.
//
// PowerRows: per-row exponents p_i drawn uniformly from [1, 4) and rows
// built from the inverse increments of t^(p_i); with power_variant Scaled
// the rows sum to cols (the shape the 1/n-scaled construction expects),
// with Rowsum they sum to 1.
//
// In both kinds x is drawn uniformly from [-1, 1)^n.
Instance generate_instance(std::size_t n, std::size_t cols, InstanceKind kind,
                           std::uint64_t seed,
                           Variant power_variant = Variant::Scaled);

// The instance matrix as a WeightMatrix (validated decreasing-positive by
// default).
WeightMatrix instance_matrix(const Instance& inst, bool rows_decreasing = true);

const char* instance_kind_name(InstanceKind kind);
InstanceKind instance_kind_from_name(const std::string& name);

}  // namespace morlicz
