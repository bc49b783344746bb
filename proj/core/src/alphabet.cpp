#include "dimac/alphabet.hpp"

#include <cstdlib>
#include <limits>
#include <string>

#include <fmt/format.h>

#include "dimac/errors.hpp"

namespace dimac {

Alphabet::Alphabet(std::size_t size) : size_(size) {
  if (size == 0) throw InputError("alphabet size must be at least 1");
}

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base) {
      throw SizingError(fmt::format("{}^{} overflows 64 bits", base, exp));
    }
    r *= base;
  }
  return r;
}

SeqIndex seq_encode(std::span<const Symbol> symbols, Alphabet alphabet) {
  std::uint64_t code = 0;
  checked_pow(alphabet.size(), symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (!alphabet.contains(symbols[i])) {
      throw InputError(fmt::format("symbol {} at position {} outside alphabet of size {}",
                                   symbols[i], i, alphabet.size()));
    }
    code = code * alphabet.size() + static_cast<std::uint64_t>(symbols[i]);
  }
  return {alphabet, symbols.size(), code};
}

std::vector<Symbol> seq_decode(const SeqIndex& index) {
  if (index.code >= checked_pow(index.alphabet.size(), index.length)) {
    throw InputError("sequence code out of range");
  }
  std::vector<Symbol> out(index.length);
  std::uint64_t code = index.code;
  for (std::size_t i = index.length; i-- > 0;) {
    out[i] = static_cast<Symbol>(code % index.alphabet.size());
    code /= index.alphabet.size();
  }
  return out;
}

std::size_t max_cells() {
  if (const char* env = std::getenv("DIRINFO_MAC_MAX_CELLS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::size_t{1} << 24;
}

void require_cells(double cells, const char* what) {
  const auto limit = static_cast<double>(max_cells());
  if (cells > limit) {
    throw SizingError(fmt::format("{} needs {:.0f} cells, above the limit of {:.0f} "
                                  "(set DIRINFO_MAC_MAX_CELLS to raise it)",
                                  what, cells, limit));
  }
}

BlockShape::BlockShape(Alphabet x1, Alphabet x2, Alphabet y, std::size_t n)
    : x1_(x1), x2_(x2), y_(y), n_(n) {
  if (n == 0) throw InputError("block length n must be at least 1");
  const double per_step = static_cast<double>(x1.size() * x2.size() * y.size());
  double cells = 1.0;
  for (std::size_t i = 0; i < n; ++i) cells *= per_step;
  require_cells(cells, "joint tensor");
  nx1_ = checked_pow(x1.size(), n);
  nx2_ = checked_pow(x2.size(), n);
  ny_ = checked_pow(y.size(), n);
}

}  // namespace dimac
