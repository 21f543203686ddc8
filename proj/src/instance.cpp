#include "morlicz/instance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "morlicz/rng.hpp"

namespace morlicz {

namespace {

// Stream tags so the matrix, the exponents and the vector draw from
// unrelated parts of the seed space.
constexpr std::uint64_t kMatrixStream = 0x1;
constexpr std::uint64_t kVectorStream = 0x2;
constexpr std::uint64_t kExponentStream = 0x3;

}  // namespace

Instance generate_instance(std::size_t n, std::size_t cols, InstanceKind kind,
                           std::uint64_t seed, Variant power_variant) {
  if (n == 0 || cols < n) {
    throw std::invalid_argument("generate_instance: need cols >= n >= 1");
  }
  Instance inst;
  inst.n = n;
  inst.cols = cols;
  inst.seed = seed;
  inst.kind = kind;
  inst.matrix.resize(n * cols);

  switch (kind) {
    case InstanceKind::RandomNormalized: {
      SplitMix64 g(mix_seed(seed, kMatrixStream));
      for (std::size_t i = 0; i < n; ++i) {
        double* row = inst.matrix.data() + i * cols;
        double sum = 0.0;
        for (std::size_t j = 0; j < cols; ++j) {
          row[j] = 0.1 + g.next_unit();
          sum += row[j];
        }
        std::sort(row, row + cols, std::greater<double>());
        for (std::size_t j = 0; j < cols; ++j) row[j] /= sum;
      }
      break;
    }
    case InstanceKind::PowerRows: {
      SplitMix64 g(mix_seed(seed, kExponentStream));
      const double dcols = static_cast<double>(cols);
      const double scale = power_variant == Variant::Scaled ? dcols : 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double p = 1.0 + 3.0 * g.next_unit();
        double prev = 0.0;
        for (std::size_t j = 1; j <= cols; ++j) {
          const double cur = std::pow(static_cast<double>(j) / dcols, 1.0 / p);
          inst.matrix[i * cols + (j - 1)] = scale * (cur - prev);
          prev = cur;
        }
      }
      break;
    }
    case InstanceKind::User:
      throw std::invalid_argument("generate_instance: kind must be a generator");
  }

  SplitMix64 gx(mix_seed(seed, kVectorStream));
  inst.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    inst.x[i] = 2.0 * gx.next_unit() - 1.0;
  }
  return inst;
}

WeightMatrix instance_matrix(const Instance& inst, bool rows_decreasing) {
  if (inst.matrix.size() != inst.n * inst.cols) {
    throw std::invalid_argument("instance_matrix: inconsistent shape");
  }
  return WeightMatrix(inst.n, inst.cols, inst.matrix, rows_decreasing);
}

const char* instance_kind_name(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::RandomNormalized:
      return "RANDOM_NORMALIZED";
    case InstanceKind::PowerRows:
      return "POWER_ROWS";
    case InstanceKind::User:
      return "USER";
  }
  throw std::invalid_argument("instance_kind_name: unknown kind");
}

InstanceKind instance_kind_from_name(const std::string& name) {
  if (name == "RANDOM_NORMALIZED") return InstanceKind::RandomNormalized;
  if (name == "POWER_ROWS") return InstanceKind::PowerRows;
  if (name == "USER") return InstanceKind::User;
  throw std::invalid_argument("unknown instance kind: " + name);
}

}  // namespace morlicz
