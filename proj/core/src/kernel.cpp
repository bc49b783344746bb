#include "dimac/kernel.hpp"

#include <fmt/format.h>

#include "dimac/errors.hpp"
#include "dimac/pmf.hpp"

namespace dimac {
namespace {

std::shared_ptr<CausalKernel::Block> make_block(std::size_t a, std::size_t z, std::size_t depth) {
  if (depth == 0) throw InputError("kernel depth must be at least 1");
  auto block = std::make_shared<CausalKernel::Block>();
  block->depth = depth;
  double total = 0.0;
  double rows = 1.0;
  for (std::size_t j = 0; j < depth; ++j) {
    total += rows * static_cast<double>(a);
    rows *= static_cast<double>(a * z);
  }
  require_cells(total, "causal kernel table");
  std::size_t offset = 0;
  std::size_t r = 1;
  for (std::size_t j = 0; j < depth; ++j) {
    block->offsets.push_back(offset);
    offset += r * a;
    r *= a * z;
  }
  block->table.assign(offset, 0.0);
  return block;
}

std::size_t rows_at(std::size_t a, std::size_t z, std::size_t j) {
  return static_cast<std::size_t>(checked_pow(a * z, j));
}

}  // namespace

CausalKernel::CausalKernel(Alphabet input, Alphabet feedback, std::size_t depth,
                           std::vector<double> table)
    : input_(input), feedback_(feedback), depth_(depth) {
  auto block = make_block(input.size(), feedback.size(), depth);
  if (table.size() != block->table.size()) {
    throw InputError(fmt::format("kernel table has {} entries, expected {}", table.size(),
                                 block->table.size()));
  }
  normalize_rows(table, input.size(), "causal kernel");
  block->table = std::move(table);
  blocks_.push_back(std::move(block));
  block_start_.push_back(0);
}

CausalKernel CausalKernel::iid(Alphabet input, Alphabet feedback, std::size_t depth,
                               std::vector<double> pmf) {
  return time_varying(input, feedback, std::vector<std::vector<double>>(depth, std::move(pmf)));
}

CausalKernel CausalKernel::uniform(Alphabet input, Alphabet feedback, std::size_t depth) {
  return iid(input, feedback, depth, uniform_pmf(input.size()));
}

CausalKernel CausalKernel::time_varying(Alphabet input, Alphabet feedback,
                                        const std::vector<std::vector<double>>& pmfs) {
  std::vector<std::vector<std::vector<double>>> rows(pmfs.size());
  for (std::size_t j = 0; j < pmfs.size(); ++j) {
    rows[j].assign(rows_at(1, feedback.size(), j), pmfs[j]);
  }
  return feedback_driven(input, feedback, rows);
}

CausalKernel CausalKernel::feedback_driven(
    Alphabet input, Alphabet feedback,
    const std::vector<std::vector<std::vector<double>>>& rows) {
  const std::size_t a = input.size();
  const std::size_t z = feedback.size();
  auto block = make_block(a, z, rows.size());
  for (std::size_t j = 0; j < rows.size(); ++j) {
    const std::size_t zrows = rows_at(1, z, j);
    if (rows[j].size() != zrows) {
      throw InputError(fmt::format("step {} needs {} feedback rows, got {}", j, zrows,
                                   rows[j].size()));
    }
    const std::size_t xrows = rows_at(a, 1, j);
    for (std::size_t xc = 0; xc < xrows; ++xc) {
      for (std::size_t zc = 0; zc < zrows; ++zc) {
        const auto& pmf = rows[j][zc];
        if (pmf.size() != a) throw InputError("kernel row has the wrong width");
        std::copy(pmf.begin(), pmf.end(),
                  block->table.begin() +
                      static_cast<std::ptrdiff_t>(block->offsets[j] + (xc * zrows + zc) * a));
      }
    }
  }
  normalize_rows(block->table, a, "causal kernel");
  CausalKernel k(input, feedback);
  k.depth_ = rows.size();
  k.blocks_.push_back(std::move(block));
  k.block_start_.push_back(0);
  return k;
}

CausalKernel CausalKernel::then(const CausalKernel& next) const {
  if (!(next.input_ == input_) || !(next.feedback_ == feedback_)) {
    throw InputError("cannot concatenate kernels over different alphabets");
  }
  CausalKernel k = *this;
  for (std::size_t b = 0; b < next.blocks_.size(); ++b) {
    k.blocks_.push_back(next.blocks_[b]);
    k.block_start_.push_back(depth_ + next.block_start_[b]);
  }
  k.depth_ = depth_ + next.depth_;
  return k;
}

CausalKernel CausalKernel::repeated(std::size_t times) const {
  if (times == 0) throw InputError("repeat count must be at least 1");
  CausalKernel k = *this;
  for (std::size_t t = 1; t < times; ++t) k = k.then(*this);
  return k;
}

void CausalKernel::locate(std::size_t i, std::size_t& block, std::size_t& local,
                          std::size_t& start) const {
  if (i >= depth_) throw InputError(fmt::format("time {} beyond kernel depth {}", i, depth_));
  block = blocks_.size() - 1;
  while (block_start_[block] > i) --block;
  start = block_start_[block];
  local = i - start;
}

std::span<const double> CausalKernel::row(std::size_t i, std::span<const Symbol> past_x,
                                          std::span<const Symbol> past_z) const {
  std::size_t b = 0, j = 0, start = 0;
  locate(i, b, j, start);
  const std::size_t a = input_.size();
  const std::size_t z = feedback_.size();
  std::size_t xc = 0, zc = 0;
  for (std::size_t k = start; k < start + j; ++k) {
    xc = xc * a + static_cast<std::size_t>(past_x[k]);
    zc = zc * z + static_cast<std::size_t>(past_z[k]);
  }
  const Block& blk = *blocks_[b];
  const std::size_t zrows = rows_at(1, z, j);
  return {blk.table.data() + blk.offsets[j] + (xc * zrows + zc) * a, a};
}

double CausalKernel::path_probability(std::span<const Symbol> x,
                                      std::span<const Symbol> z) const {
  double p = 1.0;
  for (std::size_t i = 0; i < depth_ && p > 0.0; ++i) {
    p *= row(i, x, z)[static_cast<std::size_t>(x[i])];
  }
  return p;
}

bool CausalKernel::history_independent() const {
  const std::size_t a = input_.size();
  for (const auto& blk : blocks_) {
    for (std::size_t j = 0; j < blk->depth; ++j) {
      const std::size_t rows = rows_at(a, feedback_.size(), j);
      const double* first = blk->table.data() + blk->offsets[j];
      for (std::size_t r = 1; r < rows; ++r) {
        for (std::size_t s = 0; s < a; ++s) {
          if (first[r * a + s] != first[s]) return false;
        }
      }
    }
  }
  return true;
}

bool CausalKernel::feedback_independent() const {
  const std::size_t a = input_.size();
  for (const auto& blk : blocks_) {
    for (std::size_t j = 0; j < blk->depth; ++j) {
      const std::size_t nz = checked_pow(feedback_.size(), j);
      const std::size_t nx = checked_pow(a, j);
      const double* step = blk->table.data() + blk->offsets[j];
      for (std::size_t xc = 0; xc < nx; ++xc) {
        const double* first = step + xc * nz * a;
        for (std::size_t zc = 1; zc < nz; ++zc) {
          for (std::size_t s = 0; s < a; ++s) {
            if (first[zc * a + s] != first[s]) return false;
          }
        }
      }
    }
  }
  return true;
}

}  // namespace dimac
