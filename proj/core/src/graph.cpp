#include "pstkit/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "pstkit/error.hpp"

namespace pst {

namespace {

std::string binary_label(std::size_t value, std::size_t bits) {
  std::string s(bits, '0');
  for (std::size_t b = 0; b < bits; ++b) {
    if ((value >> b) & 1U) s[bits - 1 - b] = '1';
  }
  return s;
}

void require_positive(std::size_t n, const char* what) {
  if (n == 0) fail(Errc::invalid_size, std::string(what) + " needs at least one vertex");
}

}  // namespace

Graph::Graph(Matrix adjacency, std::vector<std::string> labels)
    : adj_(std::move(adjacency)), labels_(std::move(labels)) {
  if (adj_.rows() == 0) fail(Errc::invalid_size, "graph must have at least one vertex");
  if (adj_.rows() != adj_.cols()) fail(Errc::invalid_argument, "adjacency matrix must be square");
  const auto n = adj_.rows();
  for (Eigen::Index u = 0; u < n; ++u) {
    for (Eigen::Index v = 0; v < n; ++v) {
      const double w = adj_(u, v);
      if (!std::isfinite(w)) fail(Errc::invalid_argument, "adjacency entries must be finite");
      // Bitwise symmetry, not approximate.
      if (w != adj_(v, u)) {
        fail(Errc::invalid_argument, "adjacency matrix is not symmetric at (" + std::to_string(u) +
                                         "," + std::to_string(v) + ")");
      }
    }
  }
  if (!labels_.empty() && labels_.size() != order()) {
    fail(Errc::invalid_argument, "label count does not match vertex count");
  }
}

std::size_t Graph::check(std::size_t v) const {
  if (v >= order()) {
    fail(Errc::invalid_argument,
         "vertex " + std::to_string(v) + " out of range for graph of order " + std::to_string(order()));
  }
  return v;
}

std::string Graph::label(std::size_t v) const {
  check(v);
  return labels_.empty() ? std::to_string(v) : labels_[v];
}

std::optional<VertexId> Graph::find_label(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return VertexId(i);
  }
  return std::nullopt;
}

bool Graph::has_loops() const noexcept {
  for (Eigen::Index i = 0; i < adj_.rows(); ++i) {
    if (adj_(i, i) != 0.0) return true;
  }
  return false;
}

bool Graph::is_unweighted() const noexcept {
  return (adj_.array() == 0.0 || adj_.array() == 1.0).all();
}

bool Graph::is_nonnegative() const noexcept { return (adj_.array() >= 0.0).all(); }

double Graph::max_abs_weight() const noexcept { return adj_.cwiseAbs().maxCoeff(); }

bool Graph::is_connected() const {
  const auto d = distances_from(*this, VertexId(0));
  return std::none_of(d.begin(), d.end(), [](std::size_t x) { return x == kUnreachable; });
}

bool operator==(const Graph& a, const Graph& b) {
  return a.adj_.rows() == b.adj_.rows() && a.adj_ == b.adj_ && a.labels_ == b.labels_;
}

Graph make_complete(std::size_t n) {
  require_positive(n, "K_n");
  const auto m = static_cast<Eigen::Index>(n);
  Matrix a = Matrix::Ones(m, m);
  a.diagonal().setZero();
  return Graph(std::move(a));
}

Graph make_empty(std::size_t n) {
  require_positive(n, "empty graph");
  const auto m = static_cast<Eigen::Index>(n);
  return Graph(Matrix::Zero(m, m));
}

Graph make_path(std::span<const double> weights, std::span<const double> loops) {
  require_positive(loops.size(), "path");
  if (weights.size() + 1 != loops.size()) {
    fail(Errc::invalid_argument, "path with " + std::to_string(loops.size()) + " vertices needs " +
                                     std::to_string(loops.size() - 1) + " edge weights, got " +
                                     std::to_string(weights.size()));
  }
  const auto m = static_cast<Eigen::Index>(loops.size());
  Matrix a = Matrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) a(i, i) = loops[static_cast<std::size_t>(i)];
  for (Eigen::Index i = 0; i + 1 < m; ++i) {
    a(i, i + 1) = a(i + 1, i) = weights[static_cast<std::size_t>(i)];
  }
  return Graph(std::move(a));
}

Graph make_path(std::size_t n) {
  require_positive(n, "path");
  std::vector<double> w(n - 1, 1.0);
  std::vector<double> loops(n, 0.0);
  return make_path(w, loops);
}

Graph make_cycle(std::size_t n) {
  if (n < 3) fail(Errc::invalid_size, "cycle needs at least 3 vertices");
  const std::size_t one[] = {1};
  return make_circulant(n, one);
}

Graph make_circulant(std::size_t n, std::span<const std::size_t> connection_set) {
  require_positive(n, "circulant");
  std::set<std::size_t> offsets;
  for (std::size_t s : connection_set) {
    if (s == 0) fail(Errc::self_loop_rejected, "circulant connection set may not contain 0");
    if (s >= n) {
      fail(Errc::invalid_argument,
           "connection " + std::to_string(s) + " out of range for Circ(" + std::to_string(n) + ")");
    }
    offsets.insert(s);
    offsets.insert(n - s);
  }
  const auto m = static_cast<Eigen::Index>(n);
  Matrix a = Matrix::Zero(m, m);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t s : offsets) {
      a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>((j + s) % n)) = 1.0;
    }
  }
  return Graph(std::move(a));
}

Graph make_hypercube(std::size_t d) {
  if (d == 0) fail(Errc::invalid_size, "hypercube dimension must be at least 1");
  if (d > 20) fail(Errc::invalid_size, "hypercube dimension too large for dense storage");
  const std::size_t n = std::size_t{1} << d;
  const auto m = static_cast<Eigen::Index>(n);
  Matrix a = Matrix::Zero(m, m);
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = binary_label(i, d);
    for (std::size_t b = 0; b < d; ++b) {
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i ^ (std::size_t{1} << b))) = 1.0;
    }
  }
  return Graph(std::move(a), std::move(labels));
}

Graph make_identity(std::size_t n) {
  require_positive(n, "identity");
  const auto m = static_cast<Eigen::Index>(n);
  return Graph(Matrix::Identity(m, m));
}

Graph make_all_ones(std::size_t n) {
  require_positive(n, "all-ones");
  const auto m = static_cast<Eigen::Index>(n);
  return Graph(Matrix::Ones(m, m));
}

Graph complement(const Graph& g) {
  if (!g.is_unweighted() || g.has_loops()) {
    fail(Errc::unsupported, "complement requires an unweighted loop-free graph");
  }
  const auto m = static_cast<Eigen::Index>(g.order());
  Matrix a = Matrix::Ones(m, m) - g.adjacency();
  a.diagonal().setZero();
  return Graph(std::move(a), g.labels());
}

Graph join(const Graph& g, const Graph& h) {
  const auto n = static_cast<Eigen::Index>(g.order());
  const auto m = static_cast<Eigen::Index>(h.order());
  Matrix a(n + m, n + m);
  a.topLeftCorner(n, n) = g.adjacency();
  a.bottomRightCorner(m, m) = h.adjacency();
  a.topRightCorner(n, m).setOnes();
  a.bottomLeftCorner(m, n).setOnes();
  std::vector<std::string> labels;
  if (g.has_labels() || h.has_labels()) {
    for (std::size_t i = 0; i < g.order(); ++i) labels.push_back(g.label(i));
    for (std::size_t i = 0; i < h.order(); ++i) labels.push_back(h.label(i));
  }
  return Graph(std::move(a), std::move(labels));
}

Graph scaled(const Graph& g, double factor) {
  if (!std::isfinite(factor)) fail(Errc::invalid_argument, "scale factor must be finite");
  return Graph(g.adjacency() * factor, g.labels());
}

std::optional<double> is_regular(const Graph& g) {
  const Vector rows = g.adjacency().rowwise().sum();
  const double first = rows(0);
  const double tol = 1e-12 * std::max(1.0, std::abs(first));
  for (Eigen::Index i = 1; i < rows.size(); ++i) {
    if (std::abs(rows(i) - first) > tol) return std::nullopt;
  }
  return first;
}

bool is_circulant(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.order());
  const Matrix& a = g.adjacency();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      if (a(j, k) != a(0, ((k - j) % n + n) % n)) return false;
    }
  }
  return true;
}

std::vector<std::size_t> distances_from(const Graph& g, VertexId source) {
  const std::size_t n = g.order();
  const std::size_t s = g.vertex(source.index).index;
  std::vector<std::size_t> dist(n, kUnreachable);
  std::deque<std::size_t> queue{s};
  dist[s] = 0;
  const Matrix& a = g.adjacency();
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t v = 0; v < n; ++v) {
      if (v == u || dist[v] != kUnreachable) continue;
      if (a(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) != 0.0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

std::vector<std::vector<std::size_t>> distance_matrix(const Graph& g) {
  std::vector<std::vector<std::size_t>> d;
  d.reserve(g.order());
  for (std::size_t v = 0; v < g.order(); ++v) d.push_back(distances_from(g, VertexId(v)));
  return d;
}

}  // namespace pst
