#include "dimac/pmf.hpp"

#include <fmt/format.h>

#include "dimac/errors.hpp"

namespace dimac {

void normalize_row(std::span<double> row, const std::string& what) {
  double sum = 0.0;
  bool clamped = false;
  for (double& v : row) {
    if (!std::isfinite(v) || v < -kClampBelow) {
      throw InputError(fmt::format("{}: entry {} is not a probability", what, v));
    }
    if (v < kClampBelow && v != 0.0) {
      v = 0.0;
      clamped = true;
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kInputSumTolerance) {
    throw InputError(fmt::format("{}: row sums to {:.17g}, not 1", what, sum));
  }
  // Rows already normalized up to rounding are kept bit-for-bit, so stored
  // tensors survive a save/load cycle unchanged.
  if (clamped || std::abs(sum - 1.0) > kRoundingSlack) {
    for (double& v : row) v /= sum;
  }
}

void normalize_rows(std::span<double> table, std::size_t width, const std::string& what) {
  if (width == 0 || table.size() % width != 0) {
    throw InputError(fmt::format("{}: table size {} is not a multiple of row width {}", what,
                                 table.size(), width));
  }
  for (std::size_t r = 0; r * width < table.size(); ++r) {
    normalize_row(table.subspan(r * width, width), fmt::format("{} row {}", what, r));
  }
}

std::vector<double> uniform_pmf(std::size_t size) {
  return std::vector<double>(size, 1.0 / static_cast<double>(size));
}

double entropy_bits(std::span<const double> pmf) {
  double h = 0.0;
  for (double p : pmf) h += neg_xlog2x(p);
  return h;
}

double binary_entropy(double p) { return neg_xlog2x(p) + neg_xlog2x(1.0 - p); }

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace dimac
