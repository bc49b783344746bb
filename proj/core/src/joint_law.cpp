#include "dimac/joint_law.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "dimac/errors.hpp"

namespace dimac {

InputPolicies InputPolicies::uniform(Alphabet x1, Alphabet x2, Alphabet y, std::size_t n) {
  return {CausalKernel::uniform(x1, Alphabet(1), n), CausalKernel::uniform(x2, Alphabet(1), n),
          FeedbackFn::none(y), FeedbackFn::none(y)};
}

std::vector<double> kernel_weights(const CausalKernel& kernel, const FeedbackFn& feedback,
                                   std::size_t n) {
  if (kernel.depth() != n) {
    throw InputError(fmt::format("kernel depth {} does not match block length {}",
                                 kernel.depth(), n));
  }
  if (!(kernel.feedback() == feedback.range())) {
    throw InputError(fmt::format("kernel expects {} feedback symbols but the feedback map has {}",
                                 kernel.feedback().size(), feedback.range().size()));
  }
  const std::size_t ax = kernel.input().size();
  const std::size_t ay = feedback.output().size();
  const std::size_t nx = checked_pow(ax, n);
  const std::size_t ny = checked_pow(ay, n);
  require_cells(static_cast<double>(nx) * static_cast<double>(ny), "kernel weight table");
  std::vector<double> w(nx * ny);
  std::vector<Symbol> x(n), z(n);
  for (std::size_t cy = 0; cy < ny; ++cy) {
    for (std::size_t i = 0; i < n; ++i) z[i] = feedback(symbol_at(cy, ay, n, i));
    for (std::size_t cx = 0; cx < nx; ++cx) {
      for (std::size_t i = 0; i < n; ++i) x[i] = symbol_at(cx, ax, n, i);
      w[cx * ny + cy] = kernel.path_probability(x, z);
    }
  }
  return w;
}

PolicyWeights policy_weights(const InputPolicies& policies, const BlockShape& shape) {
  if (policies.q1.depth() != policies.q2.depth()) {
    throw InputError("the two kernels have different depths");
  }
  if (!(policies.q1.input() == shape.x1()) || !(policies.q2.input() == shape.x2())) {
    throw InputError("kernel input alphabets do not match the channel");
  }
  if (!(policies.f1.output() == shape.y()) || !(policies.f2.output() == shape.y())) {
    throw InputError("feedback maps are not defined on the channel output alphabet");
  }
  return {shape, kernel_weights(policies.q1, policies.f1, shape.n()),
          kernel_weights(policies.q2, policies.f2, shape.n())};
}

JointLaw::JointLaw(BlockShape shape, std::vector<double> tensor)
    : shape_(shape), tensor_(std::move(tensor)) {
  if (tensor_.size() != shape_.cells()) throw InputError("joint tensor has the wrong size");
  double sum = 0.0;
  for (double v : tensor_) {
    if (!(v >= 0.0)) throw InputError("joint tensor has a negative or NaN entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw InputError(fmt::format("joint tensor sums to {:.17g}", sum));
  }
}

JointLaw joint_law(const PolicyWeights& weights, const CausalChannelLaw& law) {
  const BlockShape& shape = law.shape();
  if (!(weights.shape == shape)) throw InputError("policy weights and law disagree on shape");
  std::vector<double> t(shape.cells());
  for (std::size_t c1 = 0; c1 < shape.nx1(); ++c1) {
    for (std::size_t c2 = 0; c2 < shape.nx2(); ++c2) {
      for (std::size_t cy = 0; cy < shape.ny(); ++cy) {
        const std::size_t idx = shape.index(c1, c2, cy);
        t[idx] = weights.q1(c1, cy) * weights.q2(c2, cy) * law.tensor()[idx];
      }
    }
  }
  return {shape, std::move(t)};
}

JointLaw joint_law(const InputPolicies& policies, const CausalChannelLaw& law) {
  return joint_law(policy_weights(policies, law.shape()), law);
}

JointLaw merge_inputs(const JointLaw& joint, Alphabet x0, const std::vector<Symbol>& mux_table) {
  const BlockShape& in = joint.shape();
  const std::size_t a1 = in.x1().size();
  const std::size_t a2 = in.x2().size();
  if (mux_table.size() != a1 * a2) throw InputError("multiplexer table has the wrong size");
  const std::size_t n = in.n();
  const BlockShape out(x0, Alphabet(1), in.y(), n);
  std::vector<double> t(out.cells(), 0.0);
  for (std::size_t c1 = 0; c1 < in.nx1(); ++c1) {
    for (std::size_t c2 = 0; c2 < in.nx2(); ++c2) {
      std::size_t c0 = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const auto s1 = static_cast<std::size_t>(symbol_at(c1, a1, n, i));
        const auto s2 = static_cast<std::size_t>(symbol_at(c2, a2, n, i));
        const Symbol v = mux_table[s1 * a2 + s2];
        if (!x0.contains(v)) throw InputError("multiplexer output outside its alphabet");
        c0 = c0 * x0.size() + static_cast<std::size_t>(v);
      }
      for (std::size_t cy = 0; cy < in.ny(); ++cy) {
        t[out.index(c0, 0, cy)] += joint(c1, c2, cy);
      }
    }
  }
  return {out, std::move(t)};
}

PrefixMarginal::PrefixMarginal(const JointLaw& joint, PrefixLengths lengths) : len_(lengths) {
  const BlockShape& s = joint.shape();
  const std::size_t n = s.n();
  if (len_.x1 > n || len_.x2 > n || len_.y > n) throw InputError("prefix longer than block");
  r1_ = s.x1().size();
  r2_ = s.x2().size();
  ry_ = s.y().size();
  n1_ = checked_pow(r1_, len_.x1);
  n2_ = checked_pow(r2_, len_.x2);
  n3_ = checked_pow(ry_, len_.y);
  const std::size_t d1 = checked_pow(r1_, n - len_.x1);
  const std::size_t d2 = checked_pow(r2_, n - len_.x2);
  const std::size_t d3 = checked_pow(ry_, n - len_.y);
  p_.assign(n1_ * n2_ * n3_, 0.0);
  const auto& t = joint.tensor();
  std::size_t idx = 0;
  for (std::size_t c1 = 0; c1 < s.nx1(); ++c1) {
    const std::size_t p1 = c1 / d1;
    for (std::size_t c2 = 0; c2 < s.nx2(); ++c2) {
      const std::size_t base = (p1 * n2_ + c2 / d2) * n3_;
      for (std::size_t cy = 0; cy < s.ny(); ++cy) p_[base + cy / d3] += t[idx++];
    }
  }
}

double PrefixMarginal::entropy_bits() const {
  double h = 0.0;
  for (double p : p_) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

namespace {

std::size_t& length_of(PrefixLengths& l, Var v) {
  switch (v) {
    case Var::X1:
      return l.x1;
    case Var::X2:
      return l.x2;
    case Var::Y:
      break;
  }
  return l.y;
}

std::size_t radix_of(const BlockShape& s, Var v) {
  switch (v) {
    case Var::X1:
      return s.x1().size();
    case Var::X2:
      return s.x2().size();
    case Var::Y:
      break;
  }
  return s.y().size();
}

bool supported(const CausalQuery& q) {
  auto given = q.given;
  std::sort(given.begin(), given.end());
  using G = std::vector<std::pair<Var, int>>;
  switch (q.target) {
    case Var::Y:
      return given == G{} || given == G{{Var::X1, 0}} || given == G{{Var::X2, 0}} ||
             given == G{{Var::X1, 0}, {Var::X2, 0}};
    case Var::X1:
      return given == G{{Var::Y, 1}} || given == G{{Var::X2, 0}, {Var::Y, 1}};
    case Var::X2:
      return given == G{{Var::Y, 1}} || given == G{{Var::X1, 0}, {Var::Y, 1}};
  }
  return false;
}

}  // namespace

PrefixLengths CausalTable::lengths_at(std::size_t i, bool include_current) const {
  PrefixLengths l;
  length_of(l, query_.target) = include_current ? i + 1 : i;
  for (const auto& [v, d] : query_.given) {
    const std::size_t avail = i + 1;
    length_of(l, v) = avail >= static_cast<std::size_t>(d) ? avail - static_cast<std::size_t>(d) : 0;
  }
  return l;
}

CausalTable::CausalTable(const JointLaw& joint, const CausalQuery& query)
    : query_(query), shape_(joint.shape()), n_(joint.n()) {
  target_size_ = radix_of(shape_, query.target);
  const std::size_t t = target_size_;
  for (std::size_t i = 0; i < n_; ++i) {
    const PrefixLengths num_len = lengths_at(i, true);
    const PrefixLengths den_len = lengths_at(i, false);
    const PrefixMarginal num(joint, num_len);
    const PrefixMarginal den(joint, den_len);
    den_len_.push_back(den_len);
    std::vector<double> cond(den.size() * t, 0.0);
    std::vector<char> defined(den.size(), 0);
    for (std::size_t k = 0; k < den.size(); ++k) defined[k] = den[k] > 0.0;
    for (std::size_t p1 = 0; p1 < num.count_x1(); ++p1) {
      for (std::size_t p2 = 0; p2 < num.count_x2(); ++p2) {
        for (std::size_t p3 = 0; p3 < num.count_y(); ++p3) {
          std::size_t q1 = p1, q2 = p2, q3 = p3, sym = 0;
          switch (query.target) {
            case Var::X1:
              q1 = p1 / t;
              sym = p1 % t;
              break;
            case Var::X2:
              q2 = p2 / t;
              sym = p2 % t;
              break;
            case Var::Y:
              q3 = p3 / t;
              sym = p3 % t;
              break;
          }
          const std::size_t key = den.index(q1, q2, q3);
          if (defined[key]) cond[key * t + sym] = num[num.index(p1, p2, p3)] / den[key];
        }
      }
    }
    cond_.push_back(std::move(cond));
    defined_.push_back(std::move(defined));
  }
}

std::optional<double> CausalTable::evaluate(std::size_t c1, std::size_t c2,
                                            std::size_t cy) const {
  const std::size_t r1 = shape_.x1().size();
  const std::size_t r2 = shape_.x2().size();
  const std::size_t ry = shape_.y().size();
  double p = 1.0;
  for (std::size_t i = 0; i < n_; ++i) {
    const PrefixLengths& l = den_len_[i];
    const std::size_t p1 = prefix_code(c1, r1, n_, l.x1);
    const std::size_t p2 = prefix_code(c2, r2, n_, l.x2);
    const std::size_t p3 = prefix_code(cy, ry, n_, l.y);
    const std::size_t key = (p1 * checked_pow(r2, l.x2) + p2) * checked_pow(ry, l.y) + p3;
    if (!defined_[i][key]) return std::nullopt;
    std::size_t sym = 0;
    switch (query_.target) {
      case Var::X1:
        sym = static_cast<std::size_t>(symbol_at(c1, r1, n_, i));
        break;
      case Var::X2:
        sym = static_cast<std::size_t>(symbol_at(c2, r2, n_, i));
        break;
      case Var::Y:
        sym = static_cast<std::size_t>(symbol_at(cy, ry, n_, i));
        break;
    }
    p *= cond_[i][key * target_size_ + sym];
  }
  return p;
}

CausalTable causal_conditional(const JointLaw& joint, const CausalQuery& query) {
  if (!supported(query)) {
    throw InputError("unsupported causal-conditioning request; supported: P(y), P(y||x1), "
                     "P(y||x2), P(y||x1,x2), Q(x1||y^{n-1}), Q(x2||y^{n-1}), "
                     "Q(x1||y^{n-1},x2), Q(x2||y^{n-1},x1)");
  }
  return CausalTable(joint, query);
}

}  // namespace dimac
