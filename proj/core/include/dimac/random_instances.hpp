#pragma once

#include <random>

#include "dimac/channels.hpp"
#include "dimac/joint_law.hpp"

namespace dimac {

/// Random pmf with entries bounded away from zero (Dirichlet(1) shifted).
std::vector<double> random_pmf(std::size_t size, std::mt19937_64& rng, double floor = 0.0);

/// Random FS-MAC with strictly positive kernel rows.
FsMac random_fsmac(std::size_t states, std::size_t in1, std::size_t in2, std::size_t out,
                   std::mt19937_64& rng);

/// Random channel whose output and next state ignore the inputs:
/// P(y, s' | x1, x2, s) = P(y, s' | s).
FsMac random_useless_fsmac(std::size_t states, std::size_t in1, std::size_t in2,
                           std::size_t out, std::mt19937_64& rng);

/// Random full-history kernel.
CausalKernel random_kernel(Alphabet input, Alphabet feedback, std::size_t depth,
                           std::mt19937_64& rng);

/// Random policies with perfect feedback (or none when `feedback` is false).
InputPolicies random_policies(const FsMac& channel, std::size_t n, bool feedback,
                              std::mt19937_64& rng);

}  // namespace dimac
