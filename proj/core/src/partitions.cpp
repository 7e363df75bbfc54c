#include "pstkit/partitions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "pstkit/error.hpp"
#include "pstkit/spectral.hpp"

namespace pst {

namespace {

double weight_tolerance(const Graph& g) { return 1e-10 * (1.0 + g.max_abs_weight()); }

std::vector<std::size_t> validate_cells(const Graph& g, const Cells& cells) {
  const std::size_t n = g.order();
  std::vector<std::size_t> cell_of(n, kUnreachable);
  for (std::size_t j = 0; j < cells.size(); ++j) {
    if (cells[j].empty()) fail(Errc::invalid_argument, "cell " + std::to_string(j) + " is empty");
    for (std::size_t v : cells[j]) {
      if (v >= n) fail(Errc::invalid_argument, "cell " + std::to_string(j) + " names vertex " + std::to_string(v));
      if (cell_of[v] != kUnreachable) {
        fail(Errc::invalid_argument, "vertex " + std::to_string(v) + " appears in two cells");
      }
      cell_of[v] = j;
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (cell_of[v] == kUnreachable) fail(Errc::invalid_argument, "vertex " + std::to_string(v) + " is in no cell");
  }
  return cell_of;
}

// Row u of A summed over each cell.
Matrix cell_sums(const Graph& g, const std::vector<std::size_t>& cell_of, std::size_t m) {
  const auto n = static_cast<Eigen::Index>(g.order());
  Matrix s = Matrix::Zero(n, static_cast<Eigen::Index>(m));
  const Matrix& a = g.adjacency();
  for (Eigen::Index u = 0; u < n; ++u) {
    for (Eigen::Index v = 0; v < n; ++v) s(u, static_cast<Eigen::Index>(cell_of[static_cast<std::size_t>(v)])) += a(u, v);
  }
  return s;
}

bool signature_less(const Matrix& s, Eigen::Index u, Eigen::Index v, double tol) {
  for (Eigen::Index k = 0; k < s.cols(); ++k) {
    if (s(u, k) < s(v, k) - tol) return true;
    if (s(u, k) > s(v, k) + tol) return false;
  }
  return false;
}

bool signature_equal(const Matrix& s, Eigen::Index u, Eigen::Index v, double tol) {
  return ((s.row(u) - s.row(v)).cwiseAbs().array() <= tol).all();
}

Cells ordered(Cells cells) {
  for (auto& c : cells) std::sort(c.begin(), c.end());
  std::sort(cells.begin(), cells.end(), [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return cells;
}

}  // namespace

std::optional<EquitablePartition> is_equitable(const Graph& g, const Cells& cells) {
  const auto cell_of = validate_cells(g, cells);
  const std::size_t m = cells.size();
  const Matrix s = cell_sums(g, cell_of, m);
  const double tol = weight_tolerance(g);
  EquitablePartition p;
  p.cells = cells;
  p.cell_of = cell_of;
  p.degrees.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t j = 0; j < m; ++j) {
    const auto first = static_cast<Eigen::Index>(cells[j].front());
    for (std::size_t v : cells[j]) {
      if (!signature_equal(s, first, static_cast<Eigen::Index>(v), tol)) return std::nullopt;
    }
    p.degrees.row(static_cast<Eigen::Index>(j)) = s.row(first);
  }
  return p;
}

std::optional<EquitablePartition> distance_partition(const Graph& g, VertexId a, bool require_antipode) {
  const auto dist = distances_from(g, g.vertex(a.index));
  std::size_t ecc = 0;
  for (std::size_t d : dist) {
    if (d == kUnreachable) fail(Errc::not_connected, "distance partition needs a connected graph");
    ecc = std::max(ecc, d);
  }
  Cells cells(ecc + 1);
  for (std::size_t v = 0; v < dist.size(); ++v) cells[dist[v]].push_back(v);
  if (require_antipode && cells.back().size() != 1) return std::nullopt;
  return is_equitable(g, cells);
}

EquitablePartition coarsest_equitable_refinement(const Graph& g, const Cells& initial) {
  validate_cells(g, initial);
  const double tol = weight_tolerance(g);
  Cells cells = ordered(initial);
  for (;;) {
    std::vector<std::size_t> cell_of(g.order());
    for (std::size_t j = 0; j < cells.size(); ++j) {
      for (std::size_t v : cells[j]) cell_of[v] = j;
    }
    const Matrix s = cell_sums(g, cell_of, cells.size());
    Cells next;
    for (const auto& cell : cells) {
      std::vector<std::size_t> members = cell;
      std::stable_sort(members.begin(), members.end(), [&](std::size_t u, std::size_t v) {
        return signature_less(s, static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v), tol);
      });
      std::vector<std::size_t> current = {members.front()};
      for (std::size_t i = 1; i < members.size(); ++i) {
        if (signature_equal(s, static_cast<Eigen::Index>(current.front()), static_cast<Eigen::Index>(members[i]), tol)) {
          current.push_back(members[i]);
        } else {
          next.push_back(std::move(current));
          current = {members[i]};
        }
      }
      next.push_back(std::move(current));
    }
    next = ordered(std::move(next));
    if (next.size() == cells.size()) {
      cells = std::move(next);
      break;
    }
    cells = std::move(next);
  }
  auto p = is_equitable(g, cells);
  if (!p) fail(Errc::numeric_failure, "refinement did not reach an equitable partition");
  return *p;
}

QuotientGraph quotient_symmetrized(const Graph& g, const EquitablePartition& p) {
  // Re-check rather than trust the caller's degree matrix.
  const auto checked = is_equitable(g, p.cells);
  if (!checked) fail(Errc::non_equitable, "partition is not equitable");
  const Matrix& d = checked->degrees;
  const auto m = d.rows();
  Matrix b = Matrix::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    b(j, j) = d(j, j);
    for (Eigen::Index k = j + 1; k < m; ++k) {
      const double prod = d(j, k) * d(k, j);
      if (d(j, k) == 0.0 || d(k, j) == 0.0 || prod <= 0.0) continue;
      const double w = std::copysign(std::sqrt(prod), d(j, k));
      b(j, k) = b(k, j) = w;
    }
  }
  return {Graph(std::move(b)), checked->cell_of};
}

QuotientGraph quotient_symmetrized(const Graph& g, const Cells& cells) {
  const auto p = is_equitable(g, cells);
  if (!p) fail(Errc::non_equitable, "partition is not equitable");
  return quotient_symmetrized(g, *p);
}

Matrix normalized_characteristic_matrix(const EquitablePartition& p, std::size_t n) {
  Matrix q = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p.cells.size()));
  for (std::size_t j = 0; j < p.cells.size(); ++j) {
    const double w = 1.0 / std::sqrt(static_cast<double>(p.cells[j].size()));
    for (std::size_t v : p.cells[j]) q(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(j)) = w;
  }
  return q;
}

CollapseReport collapse_fidelity_check(const Graph& g, const Cells& cells, VertexId a, VertexId b,
                                       std::span<const double> times) {
  const auto p = is_equitable(g, cells);
  if (!p) fail(Errc::partition_failure, "cells are not equitable");
  const std::size_t ca = p->cell_of[g.vertex(a.index).index];
  const std::size_t cb = p->cell_of[g.vertex(b.index).index];
  if (p->cells[ca].size() != 1 || p->cells[cb].size() != 1) {
    fail(Errc::partition_failure, "source and target must be singleton cells");
  }
  CollapseReport rep{*p, quotient_symmetrized(g, *p), 0.0};
  const auto dg = eigendecompose(g);
  const auto dq = eigendecompose(rep.quotient.graph);
  const TransferKernel kg(dg, a, b);
  const TransferKernel kq(dq, VertexId(ca), VertexId(cb));
  for (double t : times) {
    rep.max_deviation = std::max(rep.max_deviation, std::abs(kg.at(t).magnitude() - kq.at(t).magnitude()));
  }
  return rep;
}

CollapseReport collapse_fidelity_check(const Graph& g, VertexId a, VertexId b, std::span<const double> times) {
  const auto p = distance_partition(g, a, true);
  if (!p) fail(Errc::partition_failure, "distance partition from the source is not equitable with a single antipode");
  if (p->cells.back().front() != b.index) {
    fail(Errc::partition_failure, "target is not the antipode of the source");
  }
  return collapse_fidelity_check(g, p->cells, a, b, times);
}

std::optional<ScaledP4> as_scaled_p4(const Graph& q, double tol) {
  if (q.order() != 4) return std::nullopt;
  const Matrix& a = q.adjacency();
  const double outer = a(0, 1);
  if (outer == 0.0) return std::nullopt;
  const double scale_tol = tol * std::max(1.0, q.max_abs_weight());
  auto near = [scale_tol](double x, double y) { return std::abs(x - y) <= scale_tol; };
  if (!near(a(2, 3), outer) || !near(a(0, 0), 0.0) || !near(a(3, 3), 0.0) || !near(a(1, 1), a(2, 2)) ||
      !near(a(0, 2), 0.0) || !near(a(0, 3), 0.0) || !near(a(1, 3), 0.0) || a(1, 2) == 0.0) {
    return std::nullopt;
  }
  return ScaledP4{outer, a(1, 2) / outer, a(1, 1) / outer};
}

std::string format_partition(const Cells& cells) {
  std::ostringstream out;
  for (std::size_t j = 0; j < cells.size(); ++j) {
    out << "cell " << j << ':';
    for (std::size_t v : cells[j]) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

}  // namespace pst
