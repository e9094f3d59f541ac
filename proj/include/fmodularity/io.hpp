#pragma once

// Text formats: CSV matrices, TSV edge lists, partition files.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fmodularity/matrix.hpp"
#include "fmodularity/netcore.hpp"

namespace fmodularity {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

/// One row per line, comma-separated decimals, no header. Blank lines are
/// skipped; ragged rows are an InputError.
Matrix parse_matrix_csv(std::istream& in, const std::string& source = "<stream>");
Matrix read_matrix_csv(const std::filesystem::path& path);

void write_matrix_csv(std::ostream& out, const Matrix& m);
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m);

/// Edge list with node labels mapped to indices in order of first
/// appearance, separately for the U and V sides.
struct LabeledGraph {
  BipartiteMultigraph graph;
  std::vector<std::string> u_labels;
  std::vector<std::string> v_labels;
};

/// `u<TAB>v[<TAB>count]` per line; lines starting with '#' are comments.
LabeledGraph parse_edge_list(std::istream& in, const std::string& source = "<stream>");
LabeledGraph read_edge_list(const std::filesystem::path& path);

/// Writes `u<i>\tv<j>\tcount` lines.
void write_edge_list(std::ostream& out, const BipartiteMultigraph& g);
void write_edge_list(const std::filesystem::path& path, const BipartiteMultigraph& g);

/// One community id (nonnegative integer) per line, relabelled to contiguous
/// ids in order of first appearance.
std::vector<std::size_t> read_partition(const std::filesystem::path& path);

/// Writes `text` to `path`, throwing std::runtime_error naming the path on
/// failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace fmodularity
