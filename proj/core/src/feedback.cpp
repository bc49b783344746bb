#include "dimac/feedback.hpp"

#include <charconv>

#include <fmt/format.h>

#include "dimac/errors.hpp"

namespace dimac {

FeedbackFn::FeedbackFn(Alphabet output, Alphabet range, std::vector<Symbol> map)
    : output_(output), range_(range), map_(std::move(map)) {
  if (map_.size() != output_.size()) {
    throw InputError(fmt::format("feedback map has {} entries for an output alphabet of {}",
                                 map_.size(), output_.size()));
  }
  for (Symbol z : map_) {
    if (!range_.contains(z)) throw InputError("feedback map value outside its range");
  }
}

FeedbackFn FeedbackFn::perfect(Alphabet output) {
  std::vector<Symbol> map(output.size());
  for (std::size_t y = 0; y < map.size(); ++y) map[y] = static_cast<Symbol>(y);
  return {output, output, std::move(map)};
}

FeedbackFn FeedbackFn::none(Alphabet output) {
  return {output, Alphabet(1), std::vector<Symbol>(output.size(), 0)};
}

FeedbackFn FeedbackFn::quantized(Alphabet output, std::size_t levels) {
  if (levels == 0 || levels > output.size()) {
    throw InputError(fmt::format("quantizer needs 1..{} levels, got {}", output.size(), levels));
  }
  std::vector<Symbol> map(output.size());
  for (std::size_t y = 0; y < map.size(); ++y) {
    map[y] = static_cast<Symbol>(y * levels / output.size());
  }
  return {output, Alphabet(levels), std::move(map)};
}

FeedbackFn FeedbackFn::parse(const std::string& mode, Alphabet output) {
  if (mode == "perfect") return perfect(output);
  if (mode == "none") return none(output);
  constexpr std::string_view prefix = "quantized:";
  if (mode.starts_with(prefix)) {
    std::size_t levels = 0;
    const char* first = mode.data() + prefix.size();
    const char* last = mode.data() + mode.size();
    auto [ptr, ec] = std::from_chars(first, last, levels);
    if (ec == std::errc() && ptr == last) return quantized(output, levels);
  }
  throw InputError(fmt::format("unknown feedback mode '{}'", mode));
}

}  // namespace dimac
