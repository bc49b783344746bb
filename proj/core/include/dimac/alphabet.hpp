#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dimac {

using Symbol = int;

/// Finite alphabet {0, ..., size-1}.
class Alphabet {
 public:
  explicit Alphabet(std::size_t size);

  std::size_t size() const noexcept { return size_; }
  bool contains(Symbol s) const noexcept {
    return s >= 0 && static_cast<std::size_t>(s) < size_;
  }
  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::size_t size_;
};

/// A fixed-length sequence over an alphabet, stored as its radix code
/// (most significant symbol first).
struct SeqIndex {
  Alphabet alphabet;
  std::size_t length;
  std::uint64_t code;
};

SeqIndex seq_encode(std::span<const Symbol> symbols, Alphabet alphabet);
std::vector<Symbol> seq_decode(const SeqIndex& index);

/// base^exp; throws SizingError on 64-bit overflow.
std::uint64_t checked_pow(std::uint64_t base, std::size_t exp);

/// Code of the length-`prefix` prefix of a length-`length` sequence.
inline std::uint64_t prefix_code(std::uint64_t code, std::size_t radix, std::size_t length,
                                 std::size_t prefix) {
  for (std::size_t k = prefix; k < length; ++k) code /= radix;
  return code;
}

/// Symbol at 0-based position `pos` of a length-`length` sequence.
inline Symbol symbol_at(std::uint64_t code, std::size_t radix, std::size_t length,
                        std::size_t pos) {
  for (std::size_t k = pos + 1; k < length; ++k) code /= radix;
  return static_cast<Symbol>(code % radix);
}

/// Cell budget for dense tensors. Defaults to 2^24; overridden by the
/// DIRINFO_MAC_MAX_CELLS environment variable.
std::size_t max_cells();

/// Throws SizingError when `cells` exceeds max_cells().
void require_cells(double cells, const char* what);

/// Shape of a block tensor over (x1^n, x2^n, y^n), laid out as
/// ((x1 * |X2|^n) + x2) * |Y|^n + y. Construction enforces n >= 1 and the
/// cell budget.
class BlockShape {
 public:
  BlockShape(Alphabet x1, Alphabet x2, Alphabet y, std::size_t n);

  Alphabet x1() const noexcept { return x1_; }
  Alphabet x2() const noexcept { return x2_; }
  Alphabet y() const noexcept { return y_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t nx1() const noexcept { return nx1_; }
  std::size_t nx2() const noexcept { return nx2_; }
  std::size_t ny() const noexcept { return ny_; }
  std::size_t cells() const noexcept { return nx1_ * nx2_ * ny_; }
  std::size_t index(std::size_t c1, std::size_t c2, std::size_t cy) const noexcept {
    return (c1 * nx2_ + c2) * ny_ + cy;
  }
  friend bool operator==(const BlockShape&, const BlockShape&) = default;

 private:
  Alphabet x1_, x2_, y_;
  std::size_t n_;
  std::size_t nx1_, nx2_, ny_;
};

}  // namespace dimac
