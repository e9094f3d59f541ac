#include "fmodularity/synth.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "fmodularity/error.hpp"

namespace fmodularity {

DistributionMatrix sbm_distribution(const BlockModelConfig& config) {
  if (config.m < 1 || config.n < 1) throw InputError("block model needs m >= 1 and n >= 1");
  if (!(config.alpha >= 0.0 && config.alpha <= 1.0)) {
    throw InputError("block model alpha must lie in [0, 1]");
  }
  const auto size = static_cast<Eigen::Index>(config.m * config.n);
  const auto n = static_cast<Eigen::Index>(config.n);
  Matrix w = Matrix::Constant(size, size, config.alpha);
  for (Eigen::Index b = 0; b < static_cast<Eigen::Index>(config.m); ++b) {
    w.block(b * n, b * n, n, n).setOnes();
  }
  // Closed-form total keeps the normalization independent of summation order.
  const double cells_in = static_cast<double>(config.m * config.n * config.n);
  const double cells_out = static_cast<double>(size) * static_cast<double>(size) - cells_in;
  return DistributionMatrix(w / (cells_in + config.alpha * cells_out));
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = mix64(master);
  for (std::uint64_t index : path) s = mix64(s ^ mix64(index + 0x632be59bd9b4e019ULL));
  return s;
}

BipartiteMultigraph sample_graph(const DistributionMatrix& p, std::uint64_t edges,
                                 std::uint64_t seed) {
  if (edges < 1) throw InputError("sample_graph needs at least one edge");
  const auto rows = static_cast<std::size_t>(p.rows());
  const auto cols = static_cast<std::size_t>(p.cols());
  std::vector<double> cdf(rows * cols);
  double running = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      running += p(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      cdf[r * cols + c] = running;
    }
  }
  const double total = cdf.back();
  std::size_t last_positive = cdf.size() - 1;
  while (last_positive > 0 && cdf[last_positive] == cdf[last_positive - 1]) --last_positive;

  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> counts(cdf.size(), 0);
  for (std::uint64_t k = 0; k < edges; ++k) {
    const double x = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
    // upper_bound never lands on a zero-mass cell (its cdf equals its
    // predecessor's); x == total can only happen through rounding.
    auto cell = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), x) - cdf.begin());
    if (cell == cdf.size()) cell = last_positive;
    ++counts[cell];
  }

  std::vector<Edge> out;
  for (std::size_t cell = 0; cell < counts.size(); ++cell) {
    if (counts[cell] > 0) out.push_back({cell / cols, cell % cols, counts[cell]});
  }
  return BipartiteMultigraph(rows, cols, std::move(out));
}

BlockGroups::BlockGroups(std::vector<std::size_t> row_sizes, std::vector<std::size_t> col_sizes,
                         std::vector<std::vector<std::size_t>> groups)
    : row_sizes_(std::move(row_sizes)),
      col_sizes_(std::move(col_sizes)),
      groups_(std::move(groups)) {
  if (row_sizes_.empty() || row_sizes_.size() != col_sizes_.size()) {
    throw InputError("block layout needs the same positive number of row and column blocks");
  }
  std::vector<int> cover(row_sizes_.size(), 0);
  for (auto& g : groups_) {
    if (g.empty()) throw InputError("empty block group");
    std::sort(g.begin(), g.end());
    for (std::size_t b : g) {
      if (b >= cover.size()) throw InputError("block id " + std::to_string(b) + " out of range");
      ++cover[b];
    }
  }
  if (std::any_of(cover.begin(), cover.end(), [](int c) { return c != 1; })) {
    throw InputError("block groups must cover every block exactly once");
  }
}

BlockGroups BlockGroups::singletons(std::size_t m, std::size_t n) {
  std::vector<std::vector<std::size_t>> groups(m);
  for (std::size_t b = 0; b < m; ++b) groups[b] = {b};
  return BlockGroups(std::vector<std::size_t>(m, n), std::vector<std::size_t>(m, n),
                     std::move(groups));
}

std::size_t BlockGroups::total_rows() const {
  return std::accumulate(row_sizes_.begin(), row_sizes_.end(), std::size_t{0});
}

std::size_t BlockGroups::total_cols() const {
  return std::accumulate(col_sizes_.begin(), col_sizes_.end(), std::size_t{0});
}

namespace {

std::vector<std::size_t> covered(const std::vector<std::size_t>& sizes,
                                 const std::vector<std::size_t>& blocks) {
  std::vector<std::size_t> offsets(sizes.size() + 1, 0);
  std::partial_sum(sizes.begin(), sizes.end(), offsets.begin() + 1);
  std::vector<std::size_t> out;
  for (std::size_t b : blocks) {
    for (std::size_t i = offsets[b]; i < offsets[b + 1]; ++i) out.push_back(i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void check_pair(const BlockGroups& groups, std::size_t i, std::size_t j) {
  if (i == j) throw InputError("cannot merge a group with itself");
  if (i >= groups.group_count() || j >= groups.group_count()) {
    throw InputError("unknown group id in merge (" + std::to_string(i) + ", " +
                     std::to_string(j) + ")");
  }
}

}  // namespace

std::vector<std::size_t> BlockGroups::group_rows(std::size_t g) const {
  return covered(row_sizes_, groups_.at(g));
}

std::vector<std::size_t> BlockGroups::group_cols(std::size_t g) const {
  return covered(col_sizes_, groups_.at(g));
}

BlockGroups BlockGroups::merged(std::size_t i, std::size_t j) const {
  check_pair(*this, i, j);
  auto groups = groups_;
  const std::size_t keep = std::min(i, j);
  const std::size_t drop = std::max(i, j);
  groups[keep].insert(groups[keep].end(), groups[drop].begin(), groups[drop].end());
  groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(drop));
  return BlockGroups(row_sizes_, col_sizes_, std::move(groups));
}

Contraction contract(const DistributionMatrix& p, const BlockGroups& groups, std::size_t i,
                     std::size_t j) {
  check_pair(groups, i, j);
  if (static_cast<std::size_t>(p.rows()) != groups.total_rows() ||
      static_cast<std::size_t>(p.cols()) != groups.total_cols()) {
    throw InputError("block layout does not match the distribution shape");
  }
  BlockGroups next = groups.merged(i, j);
  const std::size_t g = std::min(i, j);
  const auto rows = next.group_rows(g);
  const auto cols = next.group_cols(g);

  Matrix out = p.entries();
  double mass = 0.0;
  for (std::size_t c : cols) {
    for (std::size_t r : rows) mass += out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }
  const double spread = mass / (static_cast<double>(rows.size()) * static_cast<double>(cols.size()));
  for (std::size_t c : cols) {
    for (std::size_t r : rows) out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = spread;
  }
  return {DistributionMatrix(std::move(out)), std::move(next)};
}

std::pair<StochasticChannel, StochasticChannel> contraction_channels(const BlockGroups& groups,
                                                                     std::size_t i,
                                                                     std::size_t j) {
  const BlockGroups next = groups.merged(i, j);
  const std::size_t g = std::min(i, j);
  auto averaging = [](std::size_t size, const std::vector<std::size_t>& members) {
    const auto n = static_cast<Eigen::Index>(size);
    Matrix k = Matrix::Identity(n, n);
    const double w = 1.0 / static_cast<double>(members.size());
    for (std::size_t a : members) {
      for (std::size_t b : members) k(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = w;
    }
    return StochasticChannel(std::move(k));
  };
  return {averaging(groups.total_rows(), next.group_rows(g)),
          averaging(groups.total_cols(), next.group_cols(g))};
}

ContractionSchedule ContractionSchedule::five_block_full() {
  return {{{0, 1}, {1, 2}, {1, 2}, {0, 1}}};
}

std::vector<DistributionMatrix> run_schedule(const DistributionMatrix& p,
                                             const BlockGroups& groups,
                                             const ContractionSchedule& schedule) {
  std::vector<DistributionMatrix> stages{p};
  BlockGroups current = groups;
  for (const auto& [i, j] : schedule.steps) {
    Contraction next = contract(stages.back(), current, i, j);
    stages.push_back(std::move(next.p));
    current = std::move(next.groups);
  }
  return stages;
}

}  // namespace fmodularity
