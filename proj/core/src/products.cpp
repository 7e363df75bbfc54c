#include "pstkit/products.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

#include "pstkit/error.hpp"
#include "pstkit/graph_io.hpp"

namespace pst {

namespace {

constexpr double kPi = std::numbers::pi;

Matrix identity(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.order());
  return Matrix::Identity(n, n);
}

// The Kronecker formulas give symmetric matrices mathematically, but the sum
// of two products can differ in the last bit between (u,v) and (v,u).
Graph symmetric_graph(Matrix a) {
  const Matrix sym = 0.5 * (a + a.transpose());
  return Graph(sym);
}

std::string in_pi_units(const std::vector<double>& xs) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out << (i ? ", " : "");
    const double u = xs[i] / kPi;
    if (const auto r = rational_reconstruct(u, 1000)) {
      out << Rational(r->first, r->second).str() << "pi";
    } else {
      out << format_real(u) << "pi";
    }
  }
  out << '}';
  return out.str();
}

std::vector<double> distinct_spectrum(const Graph& g) {
  std::vector<double> out;
  for (double x : spectrum(g)) {
    if (out.empty() || std::abs(out.back() - x) > 1e-8 * std::max(1.0, std::abs(x))) out.push_back(x);
  }
  return out;
}

// Checks that every t * lambda lies in period * Z and records the products.
bool all_multiples(const std::vector<double>& spec, double factor, double period, std::vector<double>& products,
                   std::string& offender) {
  bool ok = true;
  for (double lambda : spec) {
    const double x = factor * lambda;
    products.push_back(x);
    if (!near_multiple(x, period) && ok) {
      ok = false;
      offender = format_real(x / kPi) + "pi";
    }
  }
  return ok;
}

}  // namespace

std::string_view to_string(ProductKind k) noexcept {
  switch (k) {
    case ProductKind::cartesian: return "cartesian";
    case ProductKind::weak: return "weak";
    case ProductKind::lexicographic: return "lexicographic";
    case ProductKind::generalized_lexicographic: return "generalized-lexicographic";
  }
  return "?";
}

Graph cartesian(const Graph& g, const Graph& h) {
  return symmetric_graph(Eigen::kroneckerProduct(g.adjacency(), identity(h)).eval() +
                         Eigen::kroneckerProduct(identity(g), h.adjacency()).eval());
}

Graph weak(const Graph& g, const Graph& h) {
  return Graph(Eigen::kroneckerProduct(g.adjacency(), h.adjacency()).eval());
}

Graph lexicographic(const Graph& g, const Graph& h) {
  const auto m = static_cast<Eigen::Index>(h.order());
  return symmetric_graph(Eigen::kroneckerProduct(g.adjacency(), Matrix::Ones(m, m)).eval() +
                         Eigen::kroneckerProduct(identity(g), h.adjacency()).eval());
}

Graph generalized_lexicographic(const Graph& g, const Graph& c, const Graph& h) {
  if (c.order() != h.order()) {
    fail(Errc::invalid_argument, "connection graph has order " + std::to_string(c.order()) +
                                     " but H has order " + std::to_string(h.order()));
  }
  return symmetric_graph(Eigen::kroneckerProduct(g.adjacency(), c.adjacency()).eval() +
                         Eigen::kroneckerProduct(identity(g), h.adjacency()).eval());
}

double commutator_residual(const Matrix& a, const Matrix& b) {
  return (a * b - b * a).cwiseAbs().maxCoeff();
}

CommonEigenbasis common_eigenbasis(const Graph& h, const Graph& c) {
  if (c.order() != h.order()) fail(Errc::invalid_argument, "H and C must have the same order");
  const Matrix& ah = h.adjacency();
  const Matrix& ac = c.adjacency();
  const double scale = std::max({1.0, h.max_abs_weight(), c.max_abs_weight()});
  const double residual = commutator_residual(ah, ac);
  if (residual > 1e-10 * static_cast<double>(h.order()) * scale * scale) {
    fail(Errc::non_commuting, "[A_H, A_C] has max entry " + format_real(residual));
  }

  // Diagonalise H, then diagonalise C inside each eigenspace of H.
  const auto dh = eigendecompose(h);
  const auto groups = spectral_projectors(dh);
  const auto n = ah.rows();
  CommonEigenbasis out;
  out.vectors.resize(n, n);
  out.mu.resize(n);
  out.gamma.resize(n);
  Eigen::Index col = 0;
  for (const auto& grp : groups.groups) {
    const auto r = static_cast<Eigen::Index>(grp.rank());
    Matrix basis(n, r);
    for (Eigen::Index j = 0; j < r; ++j) basis.col(j) = dh.eigenvectors.col(static_cast<Eigen::Index>(grp.columns[j]));
    const Matrix restricted = basis.transpose() * ac * basis;
    const auto dc = eigendecompose(Matrix(0.5 * (restricted + restricted.transpose())));
    const Matrix rotated = basis * dc.eigenvectors;
    for (Eigen::Index j = 0; j < r; ++j, ++col) {
      out.vectors.col(col) = rotated.col(j);
      out.mu(col) = dh.eigenvalues(static_cast<Eigen::Index>(grp.columns[j]));
      out.gamma(col) = dc.eigenvalues(j);
    }
  }
  return out;
}

Amplitude weak_fidelity(const EigenDecomposition& g, const EigenDecomposition& h, VertexId g1, VertexId h1,
                        VertexId g2, VertexId h2, double t) {
  const auto a1 = static_cast<Eigen::Index>(g1.index), a2 = static_cast<Eigen::Index>(g2.index);
  const auto b1 = static_cast<Eigen::Index>(h1.index), b2 = static_cast<Eigen::Index>(h2.index);
  if (g1.index >= g.source_dim || g2.index >= g.source_dim || h1.index >= h.source_dim ||
      h2.index >= h.source_dim) {
    fail(Errc::invalid_argument, "vertex out of range");
  }
  std::complex<double> sum = 0.0;
  for (Eigen::Index k = 0; k < g.eigenvalues.size(); ++k) {
    const double cg = g.eigenvectors(a2, k) * g.eigenvectors(a1, k);
    if (cg == 0.0) continue;
    for (Eigen::Index l = 0; l < h.eigenvalues.size(); ++l) {
      const double ch = h.eigenvectors(b2, l) * h.eigenvectors(b1, l);
      sum += cg * ch * std::polar(1.0, -t * g.eigenvalues(k) * h.eigenvalues(l));
    }
  }
  return {sum.real(), sum.imag()};
}

Amplitude generalized_lexicographic_fidelity(const EigenDecomposition& g, const CommonEigenbasis& hc,
                                             VertexId g1, VertexId h1, VertexId g2, VertexId h2, double t) {
  const auto a1 = static_cast<Eigen::Index>(g1.index), a2 = static_cast<Eigen::Index>(g2.index);
  const auto b1 = static_cast<Eigen::Index>(h1.index), b2 = static_cast<Eigen::Index>(h2.index);
  if (g1.index >= g.source_dim || g2.index >= g.source_dim || b1 >= hc.vectors.rows() ||
      b2 >= hc.vectors.rows()) {
    fail(Errc::invalid_argument, "vertex out of range");
  }
  std::complex<double> sum = 0.0;
  for (Eigen::Index k = 0; k < g.eigenvalues.size(); ++k) {
    const double cg = g.eigenvectors(a2, k) * g.eigenvectors(a1, k);
    if (cg == 0.0) continue;
    for (Eigen::Index l = 0; l < hc.mu.size(); ++l) {
      const double ch = hc.vectors(b2, l) * hc.vectors(b1, l);
      sum += cg * ch * std::polar(1.0, -t * (g.eigenvalues(k) * hc.gamma(l) + hc.mu(l)));
    }
  }
  return {sum.real(), sum.imag()};
}

ConditionReport check_weak_pst_condition(const Graph& g, double t_g, const Graph& h) {
  ConditionReport rep;
  std::vector<double> products;
  std::string offender;
  const bool time_ok = all_multiples(distinct_spectrum(g), t_g, kPi, products, offender);
  rep.witness = "t*Spec(G) = " + in_pi_units(products);

  const bool circulant = is_circulant(h);
  std::string odd_offender;
  for (double mu : distinct_spectrum(h)) {
    const double r = std::round(mu);
    const bool odd_integer = std::abs(mu - r) <= 1e-8 && std::fmod(std::abs(r), 2.0) == 1.0;
    if (!odd_integer && odd_offender.empty()) odd_offender = format_real(mu);
  }

  if (!time_ok) {
    rep.failure = ConditionFailure::wrong_class;
    rep.detail = "t_G * lambda = " + offender + " is not a multiple of pi";
  } else if (!circulant) {
    rep.failure = ConditionFailure::precondition;
    rep.detail = "H is not circulant";
  } else if (!odd_offender.empty()) {
    rep.failure = ConditionFailure::precondition;
    rep.detail = "H has eigenvalue " + odd_offender + ", not an odd integer";
  } else {
    rep.holds = true;
    rep.detail = "t_G*Spec(G) lies in pi*Z and H is circulant with odd eigenvalues";
    rep.time = exact_time(Rational(1), kPi / t_g);
  }
  return rep;
}

ConditionReport check_lexico_clique_condition(const Graph& g, const Graph& h, double t) {
  ConditionReport rep;
  const auto m = static_cast<double>(h.order());
  std::vector<double> products;
  std::string offender;
  const bool ok = all_multiples(distinct_spectrum(g), t * m, 2.0 * kPi, products, offender);
  rep.witness = "t*|V_H|*Spec(G) = " + in_pi_units(products);
  if (!is_regular(h)) {
    rep.failure = ConditionFailure::precondition;
    rep.detail = "H is not regular, so it does not commute with K_m";
  } else if (!ok) {
    rep.failure = ConditionFailure::wrong_class;
    rep.detail = "t*|V_H|*lambda = " + offender + " is not in 2*pi*Z";
  } else {
    rep.holds = true;
    rep.detail = "t*|V_H|*Spec(G) lies in 2*pi*Z";
    rep.time = exact_time(Rational(1), kPi / t);
  }
  return rep;
}

ConditionReport check_std_lexico_condition(const Graph& g, const Graph& h, double t_h) {
  ConditionReport rep;
  const auto m = static_cast<double>(h.order());
  const auto spec = distinct_spectrum(g);
  std::vector<double> products;
  std::string offender;
  const bool ok = all_multiples(spec, t_h * m, 2.0 * kPi, products, offender);
  rep.witness = "t_H*|V_H|*Spec(G) = " + in_pi_units(products);
  const auto k_h = is_regular(h);
  if (k_h && is_integral(g)) {
    bool in_4z = true;
    for (double lambda : spec) {
      const double x = std::round(lambda) * *k_h * m;
      in_4z = in_4z && std::fmod(std::abs(x), 4.0) == 0.0;
    }
    rep.integer_form = in_4z;
  }
  if (!k_h) {
    rep.failure = ConditionFailure::precondition;
    rep.detail = "H is not regular";
  } else if (!ok) {
    rep.failure = ConditionFailure::wrong_class;
    rep.detail = "t_H*|V_H|*lambda = " + offender + " is not in 2*pi*Z";
  } else {
    rep.holds = true;
    rep.detail = "t_H*|V_H|*Spec(G) lies in 2*pi*Z";
    rep.time = exact_time(Rational(1), kPi / t_h);
  }
  return rep;
}

}  // namespace pst
