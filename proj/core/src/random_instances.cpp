#include "dimac/random_instances.hpp"

#include <fmt/format.h>

#include "dimac/errors.hpp"

namespace dimac {

std::vector<double> random_pmf(std::size_t size, std::mt19937_64& rng, double floor) {
  if (size == 0) throw InputError("pmf size must be >= 1");
  if (floor < 0.0 || floor * static_cast<double>(size) >= 1.0) {
    throw InputError(fmt::format("pmf floor {} infeasible for {} entries", floor, size));
  }
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> p(size);
  double sum = 0.0;
  for (double& v : p) {
    v = exp1(rng);
    sum += v;
  }
  const double free_mass = 1.0 - floor * static_cast<double>(size);
  for (double& v : p) v = floor + free_mass * v / sum;
  return p;
}

FsMac random_fsmac(std::size_t states, std::size_t in1, std::size_t in2, std::size_t out,
                   std::mt19937_64& rng) {
  std::vector<double> kernel;
  const std::size_t rows = in1 * in2 * states;
  for (std::size_t r = 0; r < rows; ++r) {
    const auto p = random_pmf(out * states, rng, 0.01 / static_cast<double>(out * states));
    kernel.insert(kernel.end(), p.begin(), p.end());
  }
  return {Alphabet(states), Alphabet(in1), Alphabet(in2), Alphabet(out), std::move(kernel)};
}

FsMac random_useless_fsmac(std::size_t states, std::size_t in1, std::size_t in2,
                           std::size_t out, std::mt19937_64& rng) {
  std::vector<std::vector<double>> per_state;
  for (std::size_t s = 0; s < states; ++s) per_state.push_back(random_pmf(out * states, rng));
  std::vector<double> kernel;
  for (std::size_t a = 0; a < in1 * in2; ++a) {
    for (std::size_t s = 0; s < states; ++s) {
      kernel.insert(kernel.end(), per_state[s].begin(), per_state[s].end());
    }
  }
  return {Alphabet(states), Alphabet(in1), Alphabet(in2), Alphabet(out), std::move(kernel)};
}

CausalKernel random_kernel(Alphabet input, Alphabet feedback, std::size_t depth,
                           std::mt19937_64& rng) {
  std::vector<double> table;
  std::size_t rows = 1;
  for (std::size_t j = 0; j < depth; ++j) {
    for (std::size_t r = 0; r < rows; ++r) {
      const auto p = random_pmf(input.size(), rng);
      table.insert(table.end(), p.begin(), p.end());
    }
    rows *= input.size() * feedback.size();
  }
  return {input, feedback, depth, std::move(table)};
}

InputPolicies random_policies(const FsMac& channel, std::size_t n, bool feedback,
                              std::mt19937_64& rng) {
  const FeedbackFn f = feedback ? FeedbackFn::perfect(channel.out()) : FeedbackFn::none(channel.out());
  CausalKernel q1 = random_kernel(channel.in1(), f.range(), n, rng);
  CausalKernel q2 = random_kernel(channel.in2(), f.range(), n, rng);
  return {std::move(q1), std::move(q2), f, f};
}

}  // namespace dimac
