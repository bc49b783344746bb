#include "dimac/channel_law.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include <fmt/format.h>

#include "dimac/errors.hpp"

namespace dimac {

CausalChannelLaw::CausalChannelLaw(BlockShape shape, std::vector<double> tensor,
                                   std::string s0_label)
    : shape_(shape), tensor_(std::move(tensor)), s0_label_(std::move(s0_label)) {
  if (tensor_.size() != shape_.cells()) throw InputError("channel law tensor has wrong size");
}

double CausalChannelLaw::max_row_error() const {
  double worst = 0.0;
  const std::size_t ny = shape_.ny();
  for (std::size_t r = 0; r * ny < tensor_.size(); ++r) {
    double s = 0.0;
    for (std::size_t y = 0; y < ny; ++y) s += tensor_[r * ny + y];
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

double CausalChannelLaw::causality_violation() const {
  const std::size_t n = shape_.n();
  const std::size_t a1 = shape_.x1().size();
  const std::size_t a2 = shape_.x2().size();
  const std::size_t ay = shape_.y().size();
  double worst = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    // P(y^i || x^n) for every full input pair, compared with the input pair
    // whose suffix after time i is all zeros.
    const std::size_t tail1 = checked_pow(a1, n - i);
    const std::size_t tail2 = checked_pow(a2, n - i);
    const std::size_t tail_y = checked_pow(ay, n - i);
    const std::size_t heads_y = shape_.ny() / tail_y;
    auto prefix_mass = [&](std::size_t c1, std::size_t c2, std::size_t hy) {
      double s = 0.0;
      for (std::size_t t = 0; t < tail_y; ++t) s += (*this)(c1, c2, hy * tail_y + t);
      return s;
    };
    for (std::size_t c1 = 0; c1 < shape_.nx1(); ++c1) {
      for (std::size_t c2 = 0; c2 < shape_.nx2(); ++c2) {
        const std::size_t r1 = (c1 / tail1) * tail1;
        const std::size_t r2 = (c2 / tail2) * tail2;
        if (r1 == c1 && r2 == c2) continue;
        for (std::size_t hy = 0; hy < heads_y; ++hy) {
          worst = std::max(worst, std::abs(prefix_mass(c1, c2, hy) - prefix_mass(r1, r2, hy)));
        }
      }
    }
  }
  return worst;
}

void forward_step(const FsMac& channel, std::span<const double> alpha, Symbol x1, Symbol x2,
                  Symbol y, std::span<double> next) {
  const std::size_t ns = channel.states().size();
  for (std::size_t t = 0; t < ns; ++t) next[t] = 0.0;
  for (std::size_t s = 0; s < ns; ++s) {
    const double a = alpha[s];
    if (a == 0.0) continue;
    const auto row = channel.row(x1, x2, s);
    const double* p = row.data() + static_cast<std::size_t>(y) * ns;
    for (std::size_t t = 0; t < ns; ++t) next[t] += a * p[t];
  }
}

namespace {

double total(std::span<const double> alpha) {
  double s = 0.0;
  for (double a : alpha) s += a;
  return s;
}

std::vector<double> checked_weights(const FsMac& channel, std::span<const double> w) {
  if (w.size() != channel.states().size()) {
    throw InputError(fmt::format("initial-state weights have {} entries for {} states",
                                 w.size(), channel.states().size()));
  }
  return {w.begin(), w.end()};
}

}  // namespace

CausalChannelLaw channel_causal_law(const FsMac& channel, std::span<const double> s0_weights,
                                    std::size_t n, std::string label) {
  const BlockShape shape(channel.in1(), channel.in2(), channel.out(), n);
  const std::size_t ns = channel.states().size();
  const auto a1 = static_cast<Symbol>(channel.in1().size());
  const auto a2 = static_cast<Symbol>(channel.in2().size());
  const auto ay = static_cast<Symbol>(channel.out().size());
  std::vector<double> tensor(shape.cells(), 0.0);
  std::vector<std::vector<double>> alpha(n + 1, std::vector<double>(ns, 0.0));
  alpha[0] = checked_weights(channel, s0_weights);

  std::function<void(std::size_t, std::size_t, std::size_t, std::size_t)> walk =
      [&](std::size_t i, std::size_t c1, std::size_t c2, std::size_t cy) {
        if (i == n) {
          tensor[shape.index(c1, c2, cy)] = total(alpha[n]);
          return;
        }
        for (Symbol x1 = 0; x1 < a1; ++x1) {
          for (Symbol x2 = 0; x2 < a2; ++x2) {
            for (Symbol y = 0; y < ay; ++y) {
              forward_step(channel, alpha[i], x1, x2, y, alpha[i + 1]);
              walk(i + 1, c1 * static_cast<std::size_t>(a1) + static_cast<std::size_t>(x1),
                   c2 * static_cast<std::size_t>(a2) + static_cast<std::size_t>(x2),
                   cy * static_cast<std::size_t>(ay) + static_cast<std::size_t>(y));
            }
          }
        }
      };
  walk(0, 0, 0, 0);
  return {shape, std::move(tensor), std::move(label)};
}

CausalChannelLaw channel_causal_law(const FsMac& channel, const S0Mode& mode, std::size_t n) {
  switch (mode.kind) {
    case S0Mode::Kind::Given: {
      if (mode.state >= channel.states().size()) {
        throw InputError(fmt::format("initial state {} out of range", mode.state));
      }
      std::vector<double> w(channel.states().size(), 0.0);
      w[mode.state] = 1.0;
      return channel_causal_law(channel, w, n, mode.label());
    }
    case S0Mode::Kind::Stationary:
      return channel_causal_law(channel, initial_state_distribution(channel), n, mode.label());
    case S0Mode::Kind::Worst:
      break;
  }
  throw InputError("the worst-case initial state does not define a single channel law");
}

std::vector<CausalChannelLaw> per_state_laws(const FsMac& channel, std::size_t n) {
  std::vector<CausalChannelLaw> laws;
  for (std::size_t s = 0; s < channel.states().size(); ++s) {
    laws.push_back(channel_causal_law(channel, S0Mode::given(s), n));
  }
  return laws;
}

SequenceLikelihood::SequenceLikelihood(const FsMac& channel, std::vector<double> s0_weights)
    : channel_(&channel), weights_(checked_weights(channel, s0_weights)) {}

double SequenceLikelihood::probability(std::span<const Symbol> x1, std::span<const Symbol> x2,
                                       std::span<const Symbol> y) const {
  const std::size_t ns = channel_->states().size();
  std::vector<double> alpha = weights_, next(ns);
  for (std::size_t i = 0; i < y.size(); ++i) {
    forward_step(*channel_, alpha, x1[i], x2[i], y[i], next);
    alpha.swap(next);
  }
  return total(alpha);
}

double SequenceLikelihood::log_probability(std::span<const Symbol> x1,
                                           std::span<const Symbol> x2,
                                           std::span<const Symbol> y) const {
  const std::size_t ns = channel_->states().size();
  std::vector<double> alpha = weights_, next(ns);
  double log_scale = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    forward_step(*channel_, alpha, x1[i], x2[i], y[i], next);
    const double s = total(next);
    if (s == 0.0) return -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < ns; ++t) alpha[t] = next[t] / s;
    log_scale += std::log(s);
  }
  return log_scale;
}

}  // namespace dimac
