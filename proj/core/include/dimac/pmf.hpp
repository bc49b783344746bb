#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace dimac {

/// Entries below this are treated as exact zeros at construction time.
inline constexpr double kClampBelow = 1e-15;
/// Accepted deviation of an input row sum from 1 before renormalization.
inline constexpr double kInputSumTolerance = 1e-9;
/// Row sums within this of 1 are left as given.
inline constexpr double kRoundingSlack = 1e-14;

/// Clamps tiny entries to zero and renormalizes in place when a value was
/// clamped or the sum is off by more than rounding. Throws InputError
/// if an entry is negative or the row does not sum to 1 within
/// kInputSumTolerance. `what` names the row in the error message.
void normalize_row(std::span<double> row, const std::string& what);

/// Applies normalize_row to consecutive rows of width `width`.
void normalize_rows(std::span<double> table, std::size_t width, const std::string& what);

/// Uniform pmf of the given size.
std::vector<double> uniform_pmf(std::size_t size);

/// Shannon entropy in bits with 0 log 0 = 0.
double entropy_bits(std::span<const double> pmf);

/// h(p) in bits.
double binary_entropy(double p);

/// -p log2 p with the 0 log 0 = 0 convention.
inline double neg_xlog2x(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

/// Pairwise (tree) summation; order-independent of thread scheduling.
double pairwise_sum(std::span<const double> values);

}  // namespace dimac
