#include "dimac/channels.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "dimac/errors.hpp"
#include "dimac/pmf.hpp"

namespace dimac {
namespace {

void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InputError(fmt::format("{} = {} is not in [0, 1]", name, p));
  }
}

}  // namespace

MarkovChain two_state_chain(double alpha, double beta) {
  require_probability(alpha, "alpha");
  require_probability(beta, "beta");
  return {2, {1.0 - alpha, alpha, beta, 1.0 - beta}};
}

NoiseChain NoiseChain::iid(std::vector<double> pmf) {
  NoiseChain n;
  n.arity = pmf.size();
  n.chain = {1, {1.0}};
  n.emission = std::move(pmf);
  n.validate();
  return n;
}

NoiseChain NoiseChain::bernoulli(double p) {
  require_probability(p, "p");
  return iid({1.0 - p, p});
}

NoiseChain NoiseChain::gilbert_elliott(double alpha, double beta, double p_good, double p_bad) {
  require_probability(p_good, "p_good");
  require_probability(p_bad, "p_bad");
  NoiseChain n;
  n.arity = 2;
  n.chain = two_state_chain(alpha, beta);
  n.emission = {1.0 - p_good, p_good, 1.0 - p_bad, p_bad};
  n.validate();
  return n;
}

void NoiseChain::validate() const {
  if (arity < 1 || chain.states < 1) throw InputError("noise chain needs states and symbols");
  if (chain.transition.size() != chain.states * chain.states) {
    throw InputError("noise transition matrix has the wrong size");
  }
  if (emission.size() != chain.states * arity) {
    throw InputError("noise emission matrix has the wrong size");
  }
  auto t = chain.transition;
  normalize_rows(t, chain.states, "noise transition");
  auto e = emission;
  normalize_rows(e, arity, "noise emission");
}

FsMac additive_modq_mac(std::size_t q, const NoiseChain& noise) {
  if (q < 2) throw InputError("additive MAC needs q >= 2");
  if (noise.arity != q) {
    throw InputError(fmt::format("noise arity {} does not match q = {}", noise.arity, q));
  }
  noise.validate();
  const std::size_t ns = noise.chain.states;
  std::vector<double> kernel;
  kernel.reserve(q * q * ns * q * ns);
  for (std::size_t x1 = 0; x1 < q; ++x1) {
    for (std::size_t x2 = 0; x2 < q; ++x2) {
      for (std::size_t s = 0; s < ns; ++s) {
        for (std::size_t y = 0; y < q; ++y) {
          const std::size_t v = (y + 2 * q - x1 - x2) % q;
          for (std::size_t t = 0; t < ns; ++t) {
            kernel.push_back(noise.emit(s, v) * noise.chain.at(s, t));
          }
        }
      }
    }
  }
  return FsMac(Alphabet(ns), Alphabet(q), Alphabet(q), Alphabet(q), std::move(kernel));
}

FsMac gilbert_elliott_mac(double alpha, double beta, double p_good, double p_bad) {
  return additive_modq_mac(2, NoiseChain::gilbert_elliott(alpha, beta, p_good, p_bad));
}

MuxTable MuxTable::from(std::size_t q, const std::function<Symbol(Symbol, Symbol)>& f) {
  MuxTable m;
  m.q = q;
  for (std::size_t a = 0; a < q; ++a) {
    for (std::size_t b = 0; b < q; ++b) {
      const Symbol v = f(static_cast<Symbol>(a), static_cast<Symbol>(b));
      if (v < 0 || static_cast<std::size_t>(v) >= q) {
        throw InputError("multiplexer output outside the common alphabet");
      }
      m.table.push_back(v);
    }
  }
  return m;
}

MuxTable MuxTable::xor_table(std::size_t q) {
  return from(q, [q](Symbol a, Symbol b) { return static_cast<Symbol>((a + b) % q); });
}

MuxCheck check_multiplexer(const MuxTable& mux) {
  MuxCheck check;
  const auto q = static_cast<Symbol>(mux.q);
  for (Symbol fix = 0; fix < q && !check.fixing1; ++fix) {
    bool ok = true;
    for (Symbol x = 0; x < q && ok; ++x) ok = mux(x, fix) == x;
    if (ok) check.fixing1 = fix;
  }
  for (Symbol fix = 0; fix < q && !check.fixing2; ++fix) {
    bool ok = true;
    for (Symbol x = 0; x < q && ok; ++x) ok = mux(fix, x) == x;
    if (ok) check.fixing2 = fix;
  }
  if (!check.fixing1) {
    check.ok = false;
    check.failed_user = 1;
  } else if (!check.fixing2) {
    check.ok = false;
    check.failed_user = 2;
  }
  return check;
}

FsMac mux_p2p_compose(const MuxTable& mux, const FsMac& p2p) {
  if (!p2p.single_user()) throw InputError("mux_p2p_compose needs a single-user channel");
  if (p2p.in1().size() != mux.q) {
    throw InputError(fmt::format("p2p input alphabet {} does not match multiplexer alphabet {}",
                                 p2p.in1().size(), mux.q));
  }
  if (mux.table.size() != mux.q * mux.q) throw InputError("multiplexer table has wrong size");
  const MuxCheck check = check_multiplexer(mux);
  if (!check.ok) {
    throw InputError(fmt::format("not a multiplexer: no fixing of the other input makes the "
                                 "output equal user {}'s input",
                                 check.failed_user));
  }
  const std::size_t ns = p2p.states().size();
  std::vector<double> kernel;
  for (Symbol x1 = 0; x1 < static_cast<Symbol>(mux.q); ++x1) {
    for (Symbol x2 = 0; x2 < static_cast<Symbol>(mux.q); ++x2) {
      for (std::size_t s = 0; s < ns; ++s) {
        auto row = p2p.row(mux(x1, x2), 0, s);
        kernel.insert(kernel.end(), row.begin(), row.end());
      }
    }
  }
  return FsMac(p2p.states(), Alphabet(mux.q), Alphabet(mux.q), p2p.out(), std::move(kernel),
               p2p.initial_dist());
}

FsMac erasure_p2p(std::size_t q, const MarkovChain& z_chain) {
  if (q < 1) throw InputError("erasure channel needs q >= 1");
  if (z_chain.states != 2 || z_chain.transition.size() != 4) {
    throw InputError("erasure channel needs a two-state z chain");
  }
  auto t = z_chain.transition;
  normalize_rows(t, 2, "erasure z chain");
  const std::size_t erasure = q;
  std::vector<double> kernel;
  for (std::size_t x = 0; x < q; ++x) {
    for (std::size_t s = 0; s < 2; ++s) {
      for (std::size_t y = 0; y <= q; ++y) {
        const bool emitted = s == 0 ? y == x : y == erasure;
        for (std::size_t next = 0; next < 2; ++next) {
          kernel.push_back(emitted ? t[s * 2 + next] : 0.0);
        }
      }
    }
  }
  return FsMac(Alphabet(2), Alphabet(q), Alphabet(1), Alphabet(q + 1), std::move(kernel));
}

FsMac memoryless_p2p(std::size_t inputs, std::size_t outputs, std::vector<double> matrix) {
  return memoryless_mac(inputs, 1, outputs, std::move(matrix));
}

FsMac memoryless_mac(std::size_t in1, std::size_t in2, std::size_t outputs,
                     std::vector<double> matrix) {
  return FsMac(Alphabet(1), Alphabet(in1), Alphabet(in2), Alphabet(outputs), std::move(matrix));
}

FsMac limited_isi_to_fsmac(const LimitedIsiSpec& spec) {
  const std::size_t nz = spec.z_chain.states;
  if (nz == 0 || spec.z_chain.transition.size() != nz * nz) {
    throw InputError("limited-ISI z chain is malformed");
  }
  const std::size_t w1 = checked_pow(spec.in1, spec.m);
  const std::size_t w2 = checked_pow(spec.in2, spec.m);
  const double states = static_cast<double>(nz) * static_cast<double>(w1) * static_cast<double>(w2);
  if (states > static_cast<double>(kMaxCompositeStates)) {
    throw SizingError(fmt::format("limited-ISI state space has {:.0f} states, above {}", states,
                                  kMaxCompositeStates));
  }
  const std::size_t ns = nz * w1 * w2;
  const std::size_t full1 = w1 * spec.in1;
  const std::size_t full2 = w2 * spec.in2;
  const std::size_t ny = spec.outputs;
  if (spec.output.size() != nz * full1 * full2 * ny) {
    throw InputError(fmt::format("limited-ISI output kernel has {} entries, expected {}",
                                 spec.output.size(), nz * full1 * full2 * ny));
  }
  auto output = spec.output;
  normalize_rows(output, ny, "limited-ISI output kernel");
  auto zt = spec.z_chain.transition;
  normalize_rows(zt, nz, "limited-ISI z chain");

  std::vector<double> window = spec.initial_window;
  if (spec.m == 0 && window.empty()) window = {1.0};
  if (window.size() != w1 * w2) {
    throw InputError(fmt::format("initial window pmf has {} entries, expected {}", window.size(),
                                 w1 * w2));
  }
  normalize_row(window, "initial window pmf");

  std::vector<double> kernel(spec.in1 * spec.in2 * ns * ny * ns, 0.0);
  for (std::size_t x1 = 0; x1 < spec.in1; ++x1) {
    for (std::size_t x2 = 0; x2 < spec.in2; ++x2) {
      for (std::size_t z = 0; z < nz; ++z) {
        for (std::size_t a = 0; a < w1; ++a) {
          for (std::size_t b = 0; b < w2; ++b) {
            const std::size_t s = (z * w1 + a) * w2 + b;
            const std::size_t fw1 = a * spec.in1 + x1;
            const std::size_t fw2 = b * spec.in2 + x2;
            const std::size_t na = w1 == 1 ? 0 : fw1 % w1;
            const std::size_t nb = w2 == 1 ? 0 : fw2 % w2;
            const std::size_t row = ((x1 * spec.in2 + x2) * ns + s) * ny * ns;
            for (std::size_t y = 0; y < ny; ++y) {
              const double py = output[((z * full1 + fw1) * full2 + fw2) * ny + y];
              for (std::size_t z2 = 0; z2 < nz; ++z2) {
                const std::size_t next = (z2 * w1 + na) * w2 + nb;
                kernel[row + y * ns + next] += py * zt[z * nz + z2];
              }
            }
          }
        }
      }
    }
  }
  const auto pz = nz == 1 ? std::vector<double>{1.0} : stationary_distribution({nz, zt});
  std::vector<double> initial(ns);
  for (std::size_t z = 0; z < nz; ++z) {
    for (std::size_t w = 0; w < w1 * w2; ++w) initial[z * w1 * w2 + w] = pz[z] * window[w];
  }
  return FsMac(Alphabet(ns), Alphabet(spec.in1), Alphabet(spec.in2), Alphabet(ny),
               std::move(kernel), std::move(initial));
}

FactorizationReport markov_factorization_check(const FsMac& channel, double tol) {
  const std::size_t ns = channel.states().size();
  const std::size_t ny = channel.out().size();
  const auto n1 = static_cast<Symbol>(channel.in1().size());
  const auto n2 = static_cast<Symbol>(channel.in2().size());
  // Reference chain P(s'|s) from the first input pair.
  std::vector<double> chain(ns * ns, 0.0);
  for (std::size_t s = 0; s < ns; ++s) {
    auto row = channel.row(0, 0, s);
    for (std::size_t y = 0; y < ny; ++y) {
      for (std::size_t t = 0; t < ns; ++t) chain[s * ns + t] += row[y * ns + t];
    }
  }
  double violation = 0.0;
  for (Symbol x1 = 0; x1 < n1; ++x1) {
    for (Symbol x2 = 0; x2 < n2; ++x2) {
      for (std::size_t s = 0; s < ns; ++s) {
        auto row = channel.row(x1, x2, s);
        std::vector<double> ps(ns, 0.0), py(ny, 0.0);
        for (std::size_t y = 0; y < ny; ++y) {
          for (std::size_t t = 0; t < ns; ++t) {
            ps[t] += row[y * ns + t];
            py[y] += row[y * ns + t];
          }
        }
        for (std::size_t t = 0; t < ns; ++t) {
          violation = std::max(violation, std::abs(ps[t] - chain[s * ns + t]));
        }
        for (std::size_t y = 0; y < ny; ++y) {
          for (std::size_t t = 0; t < ns; ++t) {
            violation =
                std::max(violation, std::abs(row[y * ns + t] - chain[s * ns + t] * py[y]));
          }
        }
      }
    }
  }
  return {violation <= tol, violation};
}

IndecomposabilityReport indecomposability_diagnostic(const FsMac& channel, std::size_t n,
                                                     double eps) {
  const std::size_t ns = channel.states().size();
  const std::size_t ny = channel.out().size();
  const std::size_t n1 = channel.in1().size();
  const std::size_t n2 = channel.in2().size();
  const std::size_t pairs = n1 * n2;
  double cells = static_cast<double>(ns * ns);
  for (std::size_t i = 0; i < n; ++i) cells *= static_cast<double>(pairs);
  require_cells(cells, "indecomposability sweep");

  // Per input pair: state transition matrix M(s, s') = sum_y P(y, s'|x, s).
  std::vector<std::vector<double>> step(pairs, std::vector<double>(ns * ns, 0.0));
  for (std::size_t p = 0; p < pairs; ++p) {
    const auto x1 = static_cast<Symbol>(p / n2);
    const auto x2 = static_cast<Symbol>(p % n2);
    for (std::size_t s = 0; s < ns; ++s) {
      auto row = channel.row(x1, x2, s);
      for (std::size_t y = 0; y < ny; ++y) {
        for (std::size_t t = 0; t < ns; ++t) step[p][s * ns + t] += row[y * ns + t];
      }
    }
  }

  double spread = 0.0;
  // Depth-first over input sequences; `stack[d]` holds the rows P(s_d | s0).
  std::vector<std::vector<double>> stack(n + 1, std::vector<double>(ns * ns, 0.0));
  for (std::size_t s = 0; s < ns; ++s) stack[0][s * ns + s] = 1.0;
  std::vector<std::size_t> choice(n, 0);
  std::size_t depth = 0;
  if (n == 0) return {true, 0.0};
  while (true) {
    if (depth == n) {
      const auto& d = stack[n];
      for (std::size_t a = 0; a < ns; ++a) {
        for (std::size_t b = a + 1; b < ns; ++b) {
          for (std::size_t t = 0; t < ns; ++t) {
            spread = std::max(spread, std::abs(d[a * ns + t] - d[b * ns + t]));
          }
        }
      }
      // backtrack
      while (depth > 0 && choice[depth - 1] + 1 == pairs) {
        choice[depth - 1] = 0;
        --depth;
      }
      if (depth == 0) break;
      ++choice[depth - 1];
      depth -= 1;
    }
    const auto& m = step[choice[depth]];
    const auto& cur = stack[depth];
    auto& next = stack[depth + 1];
    for (std::size_t s0 = 0; s0 < ns; ++s0) {
      for (std::size_t t = 0; t < ns; ++t) {
        double v = 0.0;
        for (std::size_t s = 0; s < ns; ++s) v += cur[s0 * ns + s] * m[s * ns + t];
        next[s0 * ns + t] = v;
      }
    }
    ++depth;
  }
  return {spread <= eps, spread};
}

}  // namespace dimac
