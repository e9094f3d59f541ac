#include "fmodularity/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "fmodularity/error.hpp"

namespace fmodularity {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_failure(const std::string& source, std::size_t line,
                                const std::string& what) {
  throw InputError(source + ":" + std::to_string(line) + ": " + what);
}

double parse_number(std::string_view token, const std::string& source, std::size_t line) {
  token = trim(token);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    parse_failure(source, line, "not a number: '" + std::string(token) + "'");
  }
  return value;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("format_double: buffer too small");
  return std::string(buf, ptr);
}

Matrix parse_matrix_csv(std::istream& in, const std::string& source) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    for (;;) {
      const auto comma = body.find(',', start);
      row.push_back(parse_number(body.substr(start, comma - start), source, line_no));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      parse_failure(source, line_no, "row has " + std::to_string(row.size()) +
                                         " columns, expected " +
                                         std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError(source + ": empty matrix");
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
  }
  return m;
}

Matrix read_matrix_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_matrix_csv(in, path.string());
}

void write_matrix_csv(std::ostream& out, const Matrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_double(m(r, c));
    }
    out << '\n';
  }
}

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m) {
  auto out = open_output(path);
  write_matrix_csv(out, m);
  finish(out, path);
}

LabeledGraph parse_edge_list(std::istream& in, const std::string& source) {
  std::unordered_map<std::string, std::size_t> u_index, v_index;
  std::vector<std::string> u_labels, v_labels;
  auto intern = [](std::unordered_map<std::string, std::size_t>& index,
                   std::vector<std::string>& labels, std::string_view label) {
    auto [it, inserted] = index.emplace(std::string(label), labels.size());
    if (inserted) labels.emplace_back(label);
    return it->second;
  };

  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (;;) {
      const auto tab = rest.find('\t');
      fields.push_back(rest.substr(0, tab));
      if (tab == std::string_view::npos) break;
      rest.remove_prefix(tab + 1);
    }
    if (fields.size() < 2 || fields.size() > 3) {
      parse_failure(source, line_no, "expected u<TAB>v[<TAB>count]");
    }
    if (fields[0].empty() || fields[1].empty()) parse_failure(source, line_no, "empty node label");
    std::uint64_t count = 1;
    if (fields.size() == 3) {
      const auto token = trim(fields[2]);
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), count);
      if (ec != std::errc() || ptr != token.data() + token.size() || count == 0) {
        parse_failure(source, line_no, "count must be a positive integer");
      }
    }
    const std::size_t u = intern(u_index, u_labels, fields[0]);
    const std::size_t v = intern(v_index, v_labels, fields[1]);
    edges.push_back({u, v, count});
  }
  if (edges.empty()) throw InputError(source + ": edge list is empty");
  BipartiteMultigraph g(u_labels.size(), v_labels.size(), std::move(edges));
  return {std::move(g), std::move(u_labels), std::move(v_labels)};
}

LabeledGraph read_edge_list(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_edge_list(in, path.string());
}

void write_edge_list(std::ostream& out, const BipartiteMultigraph& g) {
  for (const Edge& e : g.edges()) {
    out << 'u' << e.u << "\tv" << e.v << '\t' << e.multiplicity << '\n';
  }
}

void write_edge_list(const std::filesystem::path& path, const BipartiteMultigraph& g) {
  auto out = open_output(path);
  write_edge_list(out, g);
  finish(out, path);
}

std::vector<std::size_t> read_partition(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::map<std::uint64_t, std::size_t> relabel;
  std::vector<std::size_t> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto token = trim(line);
    if (token.empty() || token.front() == '#') continue;
    std::uint64_t id = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), id);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      parse_failure(path.string(), line_no, "community id must be a nonnegative integer");
    }
    auto [it, inserted] = relabel.emplace(id, relabel.size());
    labels.push_back(it->second);
  }
  if (labels.empty()) throw InputError(path.string() + ": empty partition");
  return labels;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  auto out = open_output(path);
  out << text;
  finish(out, path);
}

std::string read_text_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace fmodularity
