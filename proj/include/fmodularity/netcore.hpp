#pragma once

// Bipartite multigraphs, their frequency matrices and the null models built
// from degree products.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fmodularity/matrix.hpp"

namespace fmodularity {

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  std::uint64_t multiplicity = 1;

  bool operator==(const Edge&) const = default;
};

class BipartiteMultigraph {
 public:
  /// Throws InputError on out-of-range endpoints, zero multiplicities or an
  /// empty edge list.
  BipartiteMultigraph(std::size_t u_count, std::size_t v_count, std::vector<Edge> edges);

  std::size_t u_count() const { return u_count_; }
  std::size_t v_count() const { return v_count_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Sum of multiplicities.
  std::uint64_t edge_count() const { return edge_count_; }

  /// Dense |U| x |V| multiplicity matrix; repeated (u, v) entries accumulate.
  Matrix biadjacency() const;

 private:
  std::size_t u_count_;
  std::size_t v_count_;
  std::vector<Edge> edges_;
  std::uint64_t edge_count_ = 0;
};

/// F = B / N with the retained edge count N.
class FrequencyMatrix {
 public:
  FrequencyMatrix(Matrix frequencies, std::uint64_t edges);

  const Matrix& frequencies() const { return f_; }
  std::uint64_t edges() const { return n_; }
  Eigen::Index rows() const { return f_.rows(); }
  Eigen::Index cols() const { return f_.cols(); }

  /// Normalized degrees deg(u) = sum_v F(u, v) and deg(v) = sum_u F(u, v).
  Vector row_degrees() const { return f_.rowwise().sum(); }
  Vector col_degrees() const { return f_.colwise().sum().transpose(); }

  /// The graph with the roles of U and V swapped.
  FrequencyMatrix transpose() const { return FrequencyMatrix(f_.transpose(), n_); }

 private:
  Matrix f_;
  std::uint64_t n_;
};

FrequencyMatrix frequency_from_graph(const BipartiteMultigraph& g);

/// Frequency matrix of a dense count matrix (nonnegative integers).
FrequencyMatrix frequency_from_counts(const Matrix& counts);

/// Reads a square adjacency matrix as a biadjacency matrix: u_i -> v_j with
/// multiplicity A(i, j). An undirected edge therefore appears twice.
BipartiteMultigraph induce_bipartite(const Matrix& adjacency, bool require_symmetric = false);

enum class NullVariant { Unbiased, Newman };

NullVariant parse_null_variant(const std::string& name);
const char* null_variant_name(NullVariant variant);

struct NullModelMatrix {
  Matrix j;
  NullVariant variant;
};

/// J(u, v) = (deg(u) deg(v) - F(u, v) / N) * N / (N - 1). Requires N >= 2.
NullModelMatrix null_model(const FrequencyMatrix& fm);

/// J'(u, v) = deg(u) deg(v).
NullModelMatrix newman_null(const FrequencyMatrix& fm);

NullModelMatrix make_null(const FrequencyMatrix& fm, NullVariant variant);

}  // namespace fmodularity
