#include "fmodularity/netcore.hpp"

#include <cmath>

#include "fmodularity/error.hpp"
#include "fmodularity/kernels.hpp"

namespace fmodularity {

BipartiteMultigraph::BipartiteMultigraph(std::size_t u_count, std::size_t v_count,
                                         std::vector<Edge> edges)
    : u_count_(u_count), v_count_(v_count), edges_(std::move(edges)) {
  if (edges_.empty()) throw InputError("graph has no edges");
  for (const Edge& e : edges_) {
    if (e.u >= u_count_ || e.v >= v_count_) throw InputError("edge endpoint out of range");
    if (e.multiplicity == 0) throw InputError("edge multiplicity must be positive");
    edge_count_ += e.multiplicity;
  }
}

Matrix BipartiteMultigraph::biadjacency() const {
  Matrix b = Matrix::Zero(static_cast<Eigen::Index>(u_count_), static_cast<Eigen::Index>(v_count_));
  for (const Edge& e : edges_) {
    b(static_cast<Eigen::Index>(e.u), static_cast<Eigen::Index>(e.v)) +=
        static_cast<double>(e.multiplicity);
  }
  return b;
}

FrequencyMatrix::FrequencyMatrix(Matrix frequencies, std::uint64_t edges)
    : f_(std::move(frequencies)), n_(edges) {
  if (n_ == 0) throw InputError("frequency matrix needs at least one edge");
  if (f_.size() == 0) throw InputError("frequency matrix is empty");
  const double n = static_cast<double>(n_);
  for (Eigen::Index i = 0; i < f_.size(); ++i) {
    const double count = f_.data()[i] * n;
    if (!(count >= 0.0) || std::fabs(count - std::round(count)) > 1e-9 * std::max(1.0, count)) {
      throw InputError("frequency matrix entries must be nonnegative multiples of 1/N");
    }
  }
  if (std::fabs(f_.sum() - 1.0) > 1e-12) throw InputError("frequency matrix must sum to 1");
}

FrequencyMatrix frequency_from_graph(const BipartiteMultigraph& g) {
  return FrequencyMatrix(g.biadjacency() / static_cast<double>(g.edge_count()), g.edge_count());
}

FrequencyMatrix frequency_from_counts(const Matrix& counts) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < counts.size(); ++i) {
    const double c = counts.data()[i];
    if (!(c >= 0.0) || c != std::round(c)) {
      throw InputError("counts must be nonnegative integers");
    }
    total += c;
  }
  if (total < 1.0) throw InputError("graph has no edges");
  return FrequencyMatrix(counts / total, static_cast<std::uint64_t>(total));
}

BipartiteMultigraph induce_bipartite(const Matrix& adjacency, bool require_symmetric) {
  if (adjacency.rows() != adjacency.cols()) throw InputError("adjacency matrix must be square");
  if (require_symmetric && !(adjacency.array() == adjacency.transpose().array()).all()) {
    throw InputError("adjacency matrix of an undirected graph must be symmetric");
  }
  std::vector<Edge> edges;
  for (Eigen::Index r = 0; r < adjacency.rows(); ++r) {
    for (Eigen::Index c = 0; c < adjacency.cols(); ++c) {
      const double a = adjacency(r, c);
      if (!(a >= 0.0)) throw InputError("adjacency matrix has a negative entry");
      if (a != std::round(a)) throw InputError("adjacency entries must be integer counts");
      if (a > 0.0) {
        edges.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(c),
                         static_cast<std::uint64_t>(a)});
      }
    }
  }
  if (edges.empty()) throw InputError("adjacency matrix describes an empty graph");
  const auto n = static_cast<std::size_t>(adjacency.rows());
  return BipartiteMultigraph(n, n, std::move(edges));
}

NullVariant parse_null_variant(const std::string& name) {
  if (name == "unbiased") return NullVariant::Unbiased;
  if (name == "newman") return NullVariant::Newman;
  throw InputError("unknown null model '" + name + "' (expected unbiased|newman)");
}

const char* null_variant_name(NullVariant variant) {
  return variant == NullVariant::Unbiased ? "unbiased" : "newman";
}

NullModelMatrix null_model(const FrequencyMatrix& fm) {
  if (fm.edges() < 2) throw DomainError("null model undefined for N < 2 (division by N - 1)");
  const Vector row_deg = fm.row_degrees();
  const Vector col_deg = fm.col_degrees();
  const double n = static_cast<double>(fm.edges());
  const double scale = n / (n - 1.0);
  Matrix j(fm.rows(), fm.cols());
  const auto& kt = kernels::active();
  const auto rows = static_cast<std::size_t>(fm.rows());
  for (Eigen::Index c = 0; c < fm.cols(); ++c) {
    kt.null_model_column(row_deg.data(), col_deg(c), fm.frequencies().col(c).data(), n, scale,
                         j.col(c).data(), rows);
  }
  // J >= 0 holds exactly (deg(u) deg(v) >= F^2 >= F / N); clear rounding residue.
  kt.clamp_below(j.data(), 0.0, static_cast<std::size_t>(j.size()));
  return {std::move(j), NullVariant::Unbiased};
}

NullModelMatrix newman_null(const FrequencyMatrix& fm) {
  return {fm.row_degrees() * fm.col_degrees().transpose(), NullVariant::Newman};
}

NullModelMatrix make_null(const FrequencyMatrix& fm, NullVariant variant) {
  return variant == NullVariant::Unbiased ? null_model(fm) : newman_null(fm);
}

}  // namespace fmodularity
