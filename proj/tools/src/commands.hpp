#pragma once

#include <cstdint>
#include <string>

namespace dimac::cli {

/// Options shared by every channel command.
struct Common {
  std::string spec;
  std::size_t n = 1;
  std::string s0 = "stationary";
  std::string feedback = "none";
  std::string out;
  std::size_t threads = 1;
};

struct RegionOptions {
  Common common;
  std::size_t grid = 16;
  std::string family;  // empty: iid without feedback, feedback otherwise
  std::string variant = "outer";
  std::size_t sweep = 0;
  std::size_t max_pairs = 10'000'000;
};

struct SimulateOptions {
  Common common;
  std::size_t K = 1;
  std::size_t M1 = 2;
  std::size_t M2 = 2;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
};

struct ExponentOptions {
  Common common;
  std::string type = "all";
  double rho_step = 0.05;
};

struct VerifyOptions {
  std::string suite;
  std::uint64_t seed = 1;
  std::size_t count = 100;
  std::string out;
};

int cmd_region(const RegionOptions& o);
int cmd_simulate(const SimulateOptions& o);
int cmd_dirinfo(const Common& o);
int cmd_exponent(const ExponentOptions& o);
int cmd_entropy(const Common& o);
/// Returns 1 when any check fails.
int cmd_verify(const VerifyOptions& o);

}  // namespace dimac::cli
