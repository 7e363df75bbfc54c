#include "pstkit/graph_io.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "pstkit/error.hpp"

namespace pst {

namespace {

constexpr std::size_t kMaxFileOrder = 1 << 14;

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& msg) {
  fail(Errc::parse_error, "line " + std::to_string(line_no) + ": " + msg);
}

std::vector<std::string_view> split_ws(std::string_view line, std::size_t max_fields) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    if (out.size() + 1 == max_fields) {
      std::size_t end = line.size();
      while (end > i && (line[end - 1] == ' ' || line[end - 1] == '\t' || line[end - 1] == '\r')) --end;
      out.push_back(line.substr(i, end - i));
      break;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::size_t parse_index(std::string_view s, std::size_t line_no) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    parse_fail(line_no, "expected a non-negative integer, got '" + std::string(s) + "'");
  }
  return value;
}

double parse_weight(std::string_view s, std::size_t line_no) {
  // strtod rather than from_chars<double>: the latter is missing on some
  // standard libraries still in use.
  const std::string buf(s);
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size() || errno == ERANGE || !std::isfinite(value)) {
    parse_fail(line_no, "expected a finite real weight, got '" + buf + "'");
  }
  return value;
}

}  // namespace

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Graph parse_graph(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool seen_header = false;
  std::optional<std::size_t> n;
  std::map<std::size_t, std::string> labels;
  std::map<std::pair<std::size_t, std::size_t>, double> edges;

  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    const auto head = split_ws(line, 2);
    if (head.empty() || head[0].starts_with('#')) continue;

    if (!seen_header) {
      const auto f = split_ws(line, 0);
      if (f.size() != 2 || f[0] != "pstgraph" || f[1] != "1") {
        parse_fail(line_no, "expected header 'pstgraph 1'");
      }
      seen_header = true;
      continue;
    }
    if (!n) {
      const auto f = split_ws(line, 0);
      if (f.size() != 2 || f[0] != "n") parse_fail(line_no, "expected 'n <count>'");
      n = parse_index(f[1], line_no);
      if (*n == 0) parse_fail(line_no, "vertex count must be positive");
      if (*n > kMaxFileOrder) parse_fail(line_no, "vertex count exceeds " + std::to_string(kMaxFileOrder));
      continue;
    }

    if (head[0] == "label") {
      const auto f = split_ws(line, 3);
      if (f.size() != 3) parse_fail(line_no, "expected 'label <i> <string>'");
      const std::size_t i = parse_index(f[1], line_no);
      if (i >= *n) parse_fail(line_no, "label index out of range");
      if (!labels.emplace(i, std::string(f[2])).second) parse_fail(line_no, "duplicate label");
    } else if (head[0] == "edge") {
      const auto f = split_ws(line, 0);
      if (f.size() != 4) parse_fail(line_no, "expected 'edge <u> <v> <weight>'");
      std::size_t u = parse_index(f[1], line_no);
      std::size_t v = parse_index(f[2], line_no);
      if (u >= *n || v >= *n) parse_fail(line_no, "edge endpoint out of range");
      if (u > v) std::swap(u, v);
      const double w = parse_weight(f[3], line_no);
      const auto [it, inserted] = edges.emplace(std::pair{u, v}, w);
      if (!inserted && it->second != w) {
        parse_fail(line_no, "conflicting duplicate edge " + std::to_string(u) + " " + std::to_string(v));
      }
    } else {
      parse_fail(line_no, "unknown record '" + std::string(head[0]) + "'");
    }
  }
  if (!seen_header) parse_fail(line_no, "missing header 'pstgraph 1'");
  if (!n) parse_fail(line_no, "missing vertex count");

  const auto m = static_cast<Eigen::Index>(*n);
  Matrix a = Matrix::Zero(m, m);
  for (const auto& [uv, w] : edges) {
    a(static_cast<Eigen::Index>(uv.first), static_cast<Eigen::Index>(uv.second)) = w;
    a(static_cast<Eigen::Index>(uv.second), static_cast<Eigen::Index>(uv.first)) = w;
  }
  std::vector<std::string> label_vec;
  if (!labels.empty()) {
    label_vec.resize(*n);
    for (std::size_t i = 0; i < *n; ++i) {
      const auto it = labels.find(i);
      label_vec[i] = it == labels.end() ? std::to_string(i) : it->second;
    }
  }
  return Graph(std::move(a), std::move(label_vec));
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << "pstgraph 1\n";
  out << "n " << g.order() << '\n';
  for (std::size_t i = 0; i < g.labels().size(); ++i) {
    const std::string& l = g.labels()[i];
    if (l.empty() || l.find_first_of("\r\n") != std::string::npos || l.front() == ' ' || l.front() == '\t' ||
        l.back() == ' ' || l.back() == '\t') {
      fail(Errc::invalid_argument, "label of vertex " + std::to_string(i) + " cannot be written on one line");
    }
    out << "label " << i << ' ' << l << '\n';
  }
  const Matrix& a = g.adjacency();
  for (Eigen::Index u = 0; u < a.rows(); ++u) {
    for (Eigen::Index v = u; v < a.cols(); ++v) {
      if (a(u, v) != 0.0) out << "edge " << u << ' ' << v << ' ' << format_real(a(u, v)) << '\n';
    }
  }
  return out.str();
}

Graph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot open graph file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

}  // namespace pst
