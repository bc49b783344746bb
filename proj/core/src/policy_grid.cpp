#include "dimac/policy_grid.hpp"

#include <functional>
#include <limits>

#include <fmt/format.h>

#include "dimac/errors.hpp"

namespace dimac {

PolicyFamily parse_policy_family(const std::string& text) {
  if (text == "iid") return PolicyFamily::Iid;
  if (text == "time-varying") return PolicyFamily::TimeVarying;
  if (text == "feedback") return PolicyFamily::FeedbackDriven;
  if (text == "full") return PolicyFamily::Full;
  throw InputError(fmt::format("unknown policy family '{}' (iid|time-varying|feedback|full)",
                               text));
}

std::string to_string(PolicyFamily family) {
  switch (family) {
    case PolicyFamily::Iid:
      return "iid";
    case PolicyFamily::TimeVarying:
      return "time-varying";
    case PolicyFamily::FeedbackDriven:
      return "feedback";
    case PolicyFamily::Full:
      break;
  }
  return "full";
}

std::vector<std::vector<double>> pmf_lattice(std::size_t size, std::size_t resolution) {
  if (size == 0 || resolution == 0) throw InputError("lattice needs size and resolution >= 1");
  std::vector<std::vector<double>> out;
  std::vector<std::size_t> counts(size, 0);
  std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t k, std::size_t left) {
    if (k + 1 == size) {
      counts[k] = left;
      std::vector<double> p(size);
      for (std::size_t i = 0; i < size; ++i) {
        p[i] = static_cast<double>(counts[i]) / static_cast<double>(resolution);
      }
      out.push_back(std::move(p));
      return;
    }
    for (std::size_t c = 0; c <= left; ++c) {
      counts[k] = c;
      fill(k + 1, left - c);
    }
  };
  fill(0, resolution);
  return out;
}

namespace {

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    return std::numeric_limits<std::size_t>::max();
  }
  return a * b;
}

std::size_t saturating_pow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r = saturating_mul(r, base);
  return r;
}

}  // namespace

PolicyGrid::PolicyGrid(PolicyFamily family, std::size_t resolution, std::size_t depth,
                       Alphabet input, Alphabet feedback)
    : family_(family), resolution_(resolution), depth_(depth), input_(input),
      feedback_(feedback) {
  if (depth == 0) throw InputError("policy grid depth must be >= 1");
  lattice_ = pmf_lattice(input.size(), resolution);
  switch (family) {
    case PolicyFamily::Iid:
      free_rows_ = 1;
      break;
    case PolicyFamily::TimeVarying:
      free_rows_ = depth;
      break;
    case PolicyFamily::FeedbackDriven:
      for (std::size_t j = 0; j < depth; ++j) {
        free_rows_ += saturating_pow(feedback.size(), j);
      }
      break;
    case PolicyFamily::Full:
      for (std::size_t j = 0; j < depth; ++j) {
        free_rows_ += saturating_pow(input.size() * feedback.size(), j);
      }
      break;
  }
  size_ = saturating_pow(lattice_.size(), free_rows_);
}

CausalKernel PolicyGrid::kernel(std::size_t index) const {
  if (index >= size_) throw InputError(fmt::format("grid index {} out of range", index));
  // Row r takes the lattice entry given by digit r of the index, least
  // significant digit first.
  std::size_t rest = index;
  auto next = [&]() -> const std::vector<double>& {
    const std::size_t d = rest % lattice_.size();
    rest /= lattice_.size();
    return lattice_[d];
  };
  switch (family_) {
    case PolicyFamily::Iid:
      return CausalKernel::iid(input_, feedback_, depth_, next());
    case PolicyFamily::TimeVarying: {
      std::vector<std::vector<double>> pmfs;
      for (std::size_t j = 0; j < depth_; ++j) pmfs.push_back(next());
      return CausalKernel::time_varying(input_, feedback_, pmfs);
    }
    case PolicyFamily::FeedbackDriven: {
      std::vector<std::vector<std::vector<double>>> rows(depth_);
      for (std::size_t j = 0; j < depth_; ++j) {
        const std::size_t count = checked_pow(feedback_.size(), j);
        for (std::size_t r = 0; r < count; ++r) rows[j].push_back(next());
      }
      return CausalKernel::feedback_driven(input_, feedback_, rows);
    }
    case PolicyFamily::Full:
      break;
  }
  std::vector<double> table;
  for (std::size_t r = 0; r < free_rows_; ++r) {
    const auto& p = next();
    table.insert(table.end(), p.begin(), p.end());
  }
  return {input_, feedback_, depth_, std::move(table)};
}

std::string PolicyGrid::describe() const {
  return fmt::format("{}:1/{}", to_string(family_), resolution_);
}

}  // namespace dimac
