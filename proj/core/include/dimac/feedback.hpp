#pragma once

#include <string>
#include <vector>

#include "dimac/alphabet.hpp"

namespace dimac {

/// Deterministic, time-invariant feedback map z = f(y) for one encoder.
class FeedbackFn {
 public:
  FeedbackFn(Alphabet output, Alphabet range, std::vector<Symbol> map);

  /// z = y.
  static FeedbackFn perfect(Alphabet output);
  /// Constant map onto a one-symbol alphabet (no feedback).
  static FeedbackFn none(Alphabet output);
  /// z = floor(y * levels / |Y|), a uniform quantizer onto `levels` symbols.
  static FeedbackFn quantized(Alphabet output, std::size_t levels);
  /// Parses "perfect", "none" or "quantized:K".
  static FeedbackFn parse(const std::string& mode, Alphabet output);

  Symbol operator()(Symbol y) const { return map_[static_cast<std::size_t>(y)]; }
  Alphabet output() const noexcept { return output_; }
  Alphabet range() const noexcept { return range_; }
  bool is_null() const noexcept { return range_.size() == 1; }
  const std::vector<Symbol>& table() const noexcept { return map_; }

  friend bool operator==(const FeedbackFn&, const FeedbackFn&) = default;

 private:
  Alphabet output_;
  Alphabet range_;
  std::vector<Symbol> map_;
};

}  // namespace dimac
