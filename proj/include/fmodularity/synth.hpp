#pragma once

// Planted block-model distributions, multinomial graph sampling and the
// community contraction used to weaken block structure step by step.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "fmodularity/fdiv.hpp"
#include "fmodularity/netcore.hpp"

namespace fmodularity {

struct BlockModelConfig {
  std::size_t m = 1;   // communities
  std::size_t n = 1;   // vertices per community on each side
  double alpha = 0.0;  // cross-community weight relative to 1 within
};

/// Weight 1 inside the m diagonal n x n blocks, alpha elsewhere, normalized.
DistributionMatrix sbm_distribution(const BlockModelConfig& config);

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Independent stream seed for a position in a nested experiment loop.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

/// N i.i.d. cell draws from P by inverting the cumulative distribution over
/// cells in row-major order. Edges are returned sorted by (u, v).
BipartiteMultigraph sample_graph(const DistributionMatrix& p, std::uint64_t edges,
                                 std::uint64_t seed);

/// Block sizes along each side plus the current grouping of blocks.
class BlockGroups {
 public:
  BlockGroups(std::vector<std::size_t> row_sizes, std::vector<std::size_t> col_sizes,
              std::vector<std::vector<std::size_t>> groups);

  /// m equal blocks of n per side, each block its own group.
  static BlockGroups singletons(std::size_t m, std::size_t n);

  const std::vector<std::size_t>& row_sizes() const { return row_sizes_; }
  const std::vector<std::size_t>& col_sizes() const { return col_sizes_; }
  const std::vector<std::vector<std::size_t>>& groups() const { return groups_; }
  std::size_t group_count() const { return groups_.size(); }
  std::size_t total_rows() const;
  std::size_t total_cols() const;

  /// Row (column) indices covered by group g, ascending.
  std::vector<std::size_t> group_rows(std::size_t g) const;
  std::vector<std::size_t> group_cols(std::size_t g) const;

  /// Groups i and j replaced by their union at position min(i, j).
  BlockGroups merged(std::size_t i, std::size_t j) const;

  bool operator==(const BlockGroups&) const = default;

 private:
  std::vector<std::size_t> row_sizes_;
  std::vector<std::size_t> col_sizes_;
  std::vector<std::vector<std::size_t>> groups_;
};

struct Contraction {
  DistributionMatrix p;
  BlockGroups groups;
};

/// Spreads the mass of the rectangle (rows of i and j) x (cols of i and j)
/// evenly over it; every other entry is untouched.
Contraction contract(const DistributionMatrix& p, const BlockGroups& groups, std::size_t i,
                     std::size_t j);

/// Row and column channels whose composition realizes contract() whenever
/// the merged rows agree outside the rectangle (true for block models).
std::pair<StochasticChannel, StochasticChannel> contraction_channels(const BlockGroups& groups,
                                                                     std::size_t i,
                                                                     std::size_t j);

/// Ordered merges; each step names two groups by their current position.
struct ContractionSchedule {
  std::vector<std::pair<std::size_t, std::size_t>> steps;

  /// (1)(2)(3)(4)(5) -> (12)(3)(4)(5) -> (12)(34)(5) -> (12)(345) -> (12345).
  static ContractionSchedule five_block_full();
};

/// Stage 0 is the input; stage t applies step t to stage t-1.
std::vector<DistributionMatrix> run_schedule(const DistributionMatrix& p,
                                             const BlockGroups& groups,
                                             const ContractionSchedule& schedule);

}  // namespace fmodularity
