#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dimac/feedback.hpp"
#include "dimac/kernel.hpp"

namespace dimac {

/// Which kernel rows are free parameters of a grid.
enum class PolicyFamily {
  Iid,             // one pmf reused at every step
  TimeVarying,     // one pmf per step
  FeedbackDriven,  // one pmf per (step, z history)
  Full,            // one pmf per (step, x history, z history)
};

PolicyFamily parse_policy_family(const std::string& text);
std::string to_string(PolicyFamily family);

/// All pmfs over `size` symbols whose entries are multiples of 1/resolution.
std::vector<std::vector<double>> pmf_lattice(std::size_t size, std::size_t resolution);

/// Enumerates causal kernels whose free rows range over pmf_lattice.
class PolicyGrid {
 public:
  PolicyGrid(PolicyFamily family, std::size_t resolution, std::size_t depth, Alphabet input,
             Alphabet feedback);

  PolicyFamily family() const noexcept { return family_; }
  std::size_t resolution() const noexcept { return resolution_; }
  std::size_t free_rows() const noexcept { return free_rows_; }
  /// Number of kernels; saturates at SIZE_MAX on overflow.
  std::size_t size() const noexcept { return size_; }
  CausalKernel kernel(std::size_t index) const;
  std::string describe() const;

 private:
  PolicyFamily family_;
  std::size_t resolution_;
  std::size_t depth_;
  Alphabet input_;
  Alphabet feedback_;
  std::vector<std::vector<double>> lattice_;
  std::size_t free_rows_ = 0;
  std::size_t size_ = 0;
};

}  // namespace dimac
