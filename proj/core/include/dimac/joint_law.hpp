#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dimac/alphabet.hpp"
#include "dimac/channel_law.hpp"
#include "dimac/feedback.hpp"
#include "dimac/kernel.hpp"

namespace dimac {

/// Both encoders' code-tree distributions and feedback maps.
struct InputPolicies {
  CausalKernel q1;
  CausalKernel q2;
  FeedbackFn f1;
  FeedbackFn f2;

  std::size_t depth() const { return q1.depth(); }
  /// Uniform iid inputs with no feedback.
  static InputPolicies uniform(Alphabet x1, Alphabet x2, Alphabet y, std::size_t n);
};

/// Q_l(x_l^n || z_l^{n-1}) with z = f_l(y) tabulated over (x^n, y^n):
/// entry x_code * |Y|^n + y_code.
std::vector<double> kernel_weights(const CausalKernel& kernel, const FeedbackFn& feedback,
                                   std::size_t n);

/// Kernel weights for both users.
struct PolicyWeights {
  BlockShape shape;
  std::vector<double> w1;  // (x1^n, y^n)
  std::vector<double> w2;  // (x2^n, y^n)

  double q1(std::size_t c1, std::size_t cy) const { return w1[c1 * shape.ny() + cy]; }
  double q2(std::size_t c2, std::size_t cy) const { return w2[c2 * shape.ny() + cy]; }
};
PolicyWeights policy_weights(const InputPolicies& policies, const BlockShape& shape);

/// Exact pmf over (x1^n, x2^n, y^n).
class JointLaw {
 public:
  /// Wraps an arbitrary normalized tensor.
  JointLaw(BlockShape shape, std::vector<double> tensor);

  const BlockShape& shape() const noexcept { return shape_; }
  std::size_t n() const noexcept { return shape_.n(); }
  double operator()(std::size_t c1, std::size_t c2, std::size_t cy) const {
    return tensor_[shape_.index(c1, c2, cy)];
  }
  const std::vector<double>& tensor() const noexcept { return tensor_; }

 private:
  BlockShape shape_;
  std::vector<double> tensor_;
};

/// Q1 Q2 P(y^n || x1^n, x2^n). Throws InputError on depth or alphabet
/// mismatch.
JointLaw joint_law(const InputPolicies& policies, const CausalChannelLaw& law);
JointLaw joint_law(const PolicyWeights& weights, const CausalChannelLaw& law);

/// Pushes both inputs through x0 = mux(x1, x2): the result has x1 = x0 and a
/// one-symbol second input.
JointLaw merge_inputs(const JointLaw& joint, Alphabet x0,
                      const std::vector<Symbol>& mux_table);

/// Lengths of the prefixes kept by a marginal.
struct PrefixLengths {
  std::size_t x1 = 0;
  std::size_t x2 = 0;
  std::size_t y = 0;
  friend bool operator==(const PrefixLengths&, const PrefixLengths&) = default;
};

/// Marginal pmf over (x1^{a}, x2^{b}, y^{c}) prefixes, indexed
/// ((p1 * |X2|^b) + p2) * |Y|^c + p3.
class PrefixMarginal {
 public:
  PrefixMarginal(const JointLaw& joint, PrefixLengths lengths);

  const PrefixLengths& lengths() const noexcept { return len_; }
  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t idx) const { return p_[idx]; }
  const std::vector<double>& values() const noexcept { return p_; }
  std::size_t radix_x1() const noexcept { return r1_; }
  std::size_t radix_x2() const noexcept { return r2_; }
  std::size_t radix_y() const noexcept { return ry_; }
  std::size_t index(std::size_t p1, std::size_t p2, std::size_t p3) const {
    return (p1 * n2_ + p2) * n3_ + p3;
  }
  std::size_t count_x1() const noexcept { return n1_; }
  std::size_t count_x2() const noexcept { return n2_; }
  std::size_t count_y() const noexcept { return n3_; }
  double entropy_bits() const;

 private:
  PrefixLengths len_;
  std::size_t r1_, r2_, ry_;
  std::size_t n1_, n2_, n3_;
  std::vector<double> p_;
};

enum class Var { X1, X2, Y };

/// A causal conditional P(t^n || a^{n-d_a}, ...): the target variable and the
/// conditioning variables with their delays (0 or 1).
struct CausalQuery {
  Var target = Var::Y;
  std::vector<std::pair<Var, int>> given;
};

/// Per-step conditional tables of a causal conditional extracted from a joint
/// law. Rows whose conditioning history has zero probability are undefined.
class CausalTable {
 public:
  CausalTable(const JointLaw& joint, const CausalQuery& query);

  const CausalQuery& query() const noexcept { return query_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t target_size() const noexcept { return target_size_; }
  /// Rows at 0-based step i.
  std::size_t rows(std::size_t i) const { return defined_[i].size(); }
  bool defined(std::size_t i, std::size_t row) const { return defined_[i][row] != 0; }
  std::span<const double> row(std::size_t i, std::size_t row) const {
    return {cond_[i].data() + row * target_size_, target_size_};
  }
  /// Product of the per-step conditionals along a full cell, or nullopt if
  /// any step conditions on a zero-probability history.
  std::optional<double> evaluate(std::size_t c1, std::size_t c2, std::size_t cy) const;

 private:
  PrefixLengths lengths_at(std::size_t i, bool include_current) const;

  CausalQuery query_;
  BlockShape shape_;
  std::size_t n_;
  std::size_t target_size_;
  std::vector<PrefixLengths> den_len_;
  std::vector<std::vector<double>> cond_;
  std::vector<std::vector<char>> defined_;
};

/// Validates the query against the supported combinations and builds the
/// table. Supported: P(y), P(y||x1), P(y||x2), P(y||x1,x2), Q(x1||y^{n-1}),
/// Q(x2||y^{n-1}), Q(x1||y^{n-1},x2), Q(x2||y^{n-1},x1). Others raise
/// InputError.
CausalTable causal_conditional(const JointLaw& joint, const CausalQuery& query);

}  // namespace dimac
