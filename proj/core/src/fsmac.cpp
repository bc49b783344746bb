#include "dimac/fsmac.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "dimac/errors.hpp"
#include "dimac/pmf.hpp"

namespace dimac {

FsMac::FsMac(Alphabet states, Alphabet in1, Alphabet in2, Alphabet out,
             std::vector<double> kernel, std::optional<std::vector<double>> initial_dist)
    : states_(states), in1_(in1), in2_(in2), out_(out), kernel_(std::move(kernel)) {
  const std::size_t expected =
      in1.size() * in2.size() * states.size() * out.size() * states.size();
  if (kernel_.size() != expected) {
    throw InputError(fmt::format("channel kernel has {} entries, expected {} for "
                                 "(x1, x2, s_prev, y, s) = ({}, {}, {}, {}, {})",
                                 kernel_.size(), expected, in1.size(), in2.size(),
                                 states.size(), out.size(), states.size()));
  }
  normalize_rows(kernel_, out.size() * states.size(), "channel kernel");
  *this = with_initial_dist(std::move(initial_dist));
}

FsMac FsMac::with_initial_dist(std::optional<std::vector<double>> dist) const {
  FsMac copy = *this;
  if (dist) {
    if (dist->size() != states_.size()) {
      throw InputError(fmt::format("initial distribution has {} entries for {} states",
                                   dist->size(), states_.size()));
    }
    normalize_row(*dist, "initial distribution");
  }
  copy.initial_ = std::move(dist);
  return copy;
}

S0Mode S0Mode::parse(const std::string& text) {
  if (text == "worst") return worst();
  if (text == "stationary") return stationary();
  constexpr std::string_view prefix = "given:";
  if (text.starts_with(prefix)) {
    std::size_t s = 0;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data() + prefix.size(), last, s);
    if (ec == std::errc() && ptr == last) return given(s);
  }
  throw InputError(fmt::format("unknown initial-state mode '{}'", text));
}

std::string S0Mode::label() const {
  switch (kind) {
    case Kind::Given:
      return fmt::format("given:{}", state);
    case Kind::Worst:
      return "worst";
    case Kind::Stationary:
      return "stationary";
  }
  return "?";
}

namespace {

std::vector<char> reachable_from(const MarkovChain& chain, std::size_t start) {
  std::vector<char> seen(chain.states, 0);
  std::vector<std::size_t> stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    const std::size_t s = stack.back();
    stack.pop_back();
    for (std::size_t t = 0; t < chain.states; ++t) {
      if (chain.at(s, t) > 0.0 && !seen[t]) {
        seen[t] = 1;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

// Primitive iff the boolean power of order (k-1)^2 + 1 is all positive.
bool primitive(const MarkovChain& chain) {
  const std::size_t k = chain.states;
  std::vector<char> adj(k * k), power(k * k), next(k * k);
  for (std::size_t i = 0; i < k * k; ++i) adj[i] = chain.transition[i] > 0.0;
  power = adj;
  const std::size_t order = (k - 1) * (k - 1) + 1;
  for (std::size_t step = 1; step < order; ++step) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        char v = 0;
        for (std::size_t m = 0; m < k && !v; ++m) v = power[i * k + m] && adj[m * k + j];
        next[i * k + j] = v;
      }
    }
    power.swap(next);
  }
  return std::all_of(power.begin(), power.end(), [](char c) { return c != 0; });
}

}  // namespace

std::vector<double> stationary_distribution(const MarkovChain& chain) {
  const std::size_t k = chain.states;
  if (k == 0 || chain.transition.size() != k * k) throw InputError("malformed Markov chain");
  // The stationary law is unique iff there is exactly one closed class; it
  // must also be aperiodic for the chain to forget its start.
  std::vector<std::vector<char>> reach(k);
  for (std::size_t s = 0; s < k; ++s) reach[s] = reachable_from(chain, s);
  std::vector<std::size_t> closed_class;
  std::size_t classes = 0;
  std::vector<char> assigned(k, 0);
  for (std::size_t s = 0; s < k; ++s) {
    bool recurrent = true;
    for (std::size_t t = 0; t < k && recurrent; ++t) {
      if (reach[s][t] && !reach[t][s]) recurrent = false;
    }
    if (!recurrent || assigned[s]) continue;
    ++classes;
    closed_class.clear();
    for (std::size_t t = 0; t < k; ++t) {
      if (reach[s][t]) {
        assigned[t] = 1;
        closed_class.push_back(t);
      }
    }
  }
  if (classes != 1) {
    throw DomainError(fmt::format("state chain is not irreducible: {} closed classes", classes));
  }
  MarkovChain sub{closed_class.size(), {}};
  for (std::size_t i : closed_class) {
    for (std::size_t j : closed_class) sub.transition.push_back(chain.at(i, j));
  }
  if (!primitive(sub)) throw DomainError("state chain is periodic");

  Eigen::MatrixXd a(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          chain.at(j, i) - (i == j ? 1.0 : 0.0);
    }
  }
  a.row(static_cast<Eigen::Index>(k - 1)).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k));
  rhs(static_cast<Eigen::Index>(k - 1)) = 1.0;
  Eigen::VectorXd pi = a.fullPivLu().solve(rhs);

  std::vector<double> out(k);
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    out[i] = std::max(0.0, pi(static_cast<Eigen::Index>(i)));
    sum += out[i];
  }
  for (double& v : out) v /= sum;
  return out;
}

std::optional<MarkovChain> state_chain(const FsMac& channel, double tol) {
  const std::size_t ns = channel.states().size();
  const std::size_t ny = channel.out().size();
  MarkovChain chain{ns, std::vector<double>(ns * ns, 0.0)};
  bool first = true;
  for (Symbol x1 = 0; x1 < static_cast<Symbol>(channel.in1().size()); ++x1) {
    for (Symbol x2 = 0; x2 < static_cast<Symbol>(channel.in2().size()); ++x2) {
      for (std::size_t s = 0; s < ns; ++s) {
        auto row = channel.row(x1, x2, s);
        for (std::size_t t = 0; t < ns; ++t) {
          double p = 0.0;
          for (std::size_t y = 0; y < ny; ++y) p += row[y * ns + t];
          if (first) {
            chain.transition[s * ns + t] = p;
          } else if (std::abs(chain.transition[s * ns + t] - p) > tol) {
            return std::nullopt;
          }
        }
      }
      first = false;
    }
  }
  return chain;
}

std::vector<double> initial_state_distribution(const FsMac& channel) {
  if (channel.initial_dist()) return *channel.initial_dist();
  if (channel.states().size() == 1) return {1.0};
  auto chain = state_chain(channel);
  if (!chain) {
    throw DomainError("state transitions depend on the inputs and no initial distribution "
                      "is declared");
  }
  return stationary_distribution(*chain);
}

}  // namespace dimac
