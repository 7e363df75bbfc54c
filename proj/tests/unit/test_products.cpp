#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <numbers>

#include "expect_errc.hpp"
#include "oracles.hpp"
#include "pstkit/products.hpp"
#include "pstkit/spectral.hpp"

using namespace pst;
using std::numbers::pi;

namespace {

std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

void expect_same_spectrum(const std::vector<double>& got, std::vector<double> want, double tol) {
  want = sorted_desc(std::move(want));
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], tol) << "index " << i;
}

oracle::RandomGraphOptions small_factor(bool weighted) {
  oracle::RandomGraphOptions o;
  o.min_order = 2;
  o.max_order = 6;
  o.weighted = weighted;
  o.loops = weighted;
  return o;
}

}  // namespace

TEST(Products, IndexLayout) {
  const auto p = cartesian(make_path(2), make_path(3));
  EXPECT_EQ(p.order(), 6u);
  EXPECT_EQ(product_index(1, 2, 3), 5u);
  // (0,0)-(0,1) is an H edge, (0,0)-(1,0) a G edge.
  EXPECT_EQ(p.weight(0, 1), 1.0);
  EXPECT_EQ(p.weight(0, 3), 1.0);
  EXPECT_EQ(p.weight(0, 4), 0.0);
}

TEST(Products, CartesianAndWeakSpectra) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto g = oracle::random_graph(seed, small_factor(seed % 2 == 0));
    const auto h = oracle::random_graph(seed + 1000, small_factor(seed % 3 == 0));
    const auto sg = spectrum(g);
    const auto sh = spectrum(h);
    std::vector<double> sum, prod;
    for (double l : sg) {
      for (double m : sh) {
        sum.push_back(l + m);
        prod.push_back(l * m);
      }
    }
    expect_same_spectrum(spectrum(cartesian(g, h)), sum, 1e-9);
    expect_same_spectrum(spectrum(weak(g, h)), prod, 1e-9);
  }
}

TEST(Products, LexicographicSpectrumWithRegularH) {
  // H k-regular on m vertices: m*lambda + k for each lambda of G, and every
  // non-principal eigenvalue of H with multiplicity |V_G|.
  for (std::size_t m = 3; m <= 6; ++m) {
    const auto h = make_cycle(m);
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      const auto g = oracle::random_graph(seed, small_factor(false));
      std::vector<double> want;
      for (double l : spectrum(g)) want.push_back(static_cast<double>(m) * l + 2.0);
      const auto sh = spectrum(h);
      for (std::size_t i = 1; i < sh.size(); ++i) {
        for (std::size_t k = 0; k < g.order(); ++k) want.push_back(sh[i]);
      }
      expect_same_spectrum(spectrum(lexicographic(g, h)), want, 1e-9);
    }
  }
}

TEST(Products, GeneralizedLexicographicReducesToLexWithJ) {
  const auto g = make_path(3);
  const auto h = make_cycle(4);
  EXPECT_EQ(generalized_lexicographic(g, make_all_ones(4), h).adjacency(), lexicographic(g, h).adjacency());
  EXPECT_EQ(generalized_lexicographic(g, make_identity(4), h).adjacency(), cartesian(g, h).adjacency());
  EXPECT_ERRC(generalized_lexicographic(g, make_all_ones(3), h), Errc::invalid_argument);
}

TEST(Products, WeakFidelityMatchesFullMatrix) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto g = oracle::random_graph(seed, small_factor(true));
    const auto h = oracle::random_graph(seed + 77, small_factor(false));
    const auto dg = eigendecompose(g);
    const auto dh = eigendecompose(h);
    const auto prod = weak(g, h);
    const std::size_t m = h.order();
    const std::size_t g2 = g.order() - 1, h2 = m - 1;
    for (double t : {0.0, 0.3, 1.7, 4.2}) {
      const auto f = weak_fidelity(dg, dh, VertexId{0}, VertexId{0}, VertexId{g2}, VertexId{h2}, t);
      const auto ref = oracle::amplitude(prod, 0, product_index(g2, h2, m), t);
      EXPECT_NEAR(f.re, ref.real(), 1e-10);
      EXPECT_NEAR(f.im, ref.imag(), 1e-10);
    }
  }
}

TEST(Products, GeneralizedLexicographicFidelityMatchesFullMatrix) {
  const std::array<std::size_t, 3> s{1, 2, 4};
  const std::array<std::size_t, 4> c{1, 2, 4, 7};
  const std::array<std::size_t, 1> one{1};
  struct Case {
    Graph g, conn, h;
  };
  const std::vector<Case> cases{
      {make_path(3), make_circulant(15, c), make_circulant(15, s)},
      {make_hypercube(2), make_complete(4), make_cycle(4)},
      {make_complete(2), make_circulant(6, one), make_all_ones(6)},
  };
  for (const auto& [g, conn, h] : cases) {
    const auto dg = eigendecompose(g);
    const auto hc = common_eigenbasis(h, conn);
    const auto full = generalized_lexicographic(g, conn, h);
    const std::size_t m = h.order();
    for (double t : {0.0, 0.5, 2.0, 3.3}) {
      const auto f = generalized_lexicographic_fidelity(dg, hc, VertexId{0}, VertexId{1}, VertexId{g.order() - 1},
                                                        VertexId{2}, t);
      const auto ref = oracle::amplitude(full, product_index(0, 1, m), product_index(g.order() - 1, 2, m), t);
      EXPECT_NEAR(f.re, ref.real(), 1e-9);
      EXPECT_NEAR(f.im, ref.imag(), 1e-9);
    }
  }
}

TEST(Products, CommonEigenbasisRejectsNonCommuting) {
  EXPECT_ERRC(common_eigenbasis(make_path(4), make_cycle(4)), Errc::non_commuting);
  const auto b = common_eigenbasis(make_cycle(5), make_complete(5));
  const Matrix& v = b.vectors;
  const Matrix dh = v.transpose() * make_cycle(5).adjacency() * v;
  const Matrix dc = v.transpose() * make_complete(5).adjacency() * v;
  EXPECT_LE((dh - Matrix(b.mu.asDiagonal())).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE((dc - Matrix(b.gamma.asDiagonal())).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Products, WeakK2K4ClosedForm) {
  const auto p = weak(make_complete(2), make_complete(4));
  const auto d = eigendecompose(p);
  for (int i = 0; i <= 200; ++i) {
    const double t = 0.05 * i;
    EXPECT_NEAR(fidelity(d, VertexId{0}, VertexId{4}, t).magnitude(), oracle::weak_k2_k4_magnitude(t), 1e-10);
  }
  EXPECT_NEAR(fidelity(d, VertexId{0}, VertexId{4}, pi / 2).magnitude(), 1.0, 1e-12);
}

TEST(Products, WeakP3K4AtPiOverRootTwo) {
  const auto p = weak(make_path(3), make_complete(4));
  const double t = pi / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(oracle::amplitude(p, 0, 8, t)), 1.0, 1e-10);
  const auto r = check_weak_pst_condition(make_path(3), t, make_complete(4));
  EXPECT_TRUE(r.holds) << r.detail;
}

TEST(Products, WeakConditionExamples) {
  // Q2 transfers antipodally at pi/2 and K2 at pi/2; K4 has eigenvalues 3, -1.
  const auto q2 = check_weak_pst_condition(make_hypercube(2), pi / 2, make_complete(4));
  EXPECT_TRUE(q2.holds) << q2.detail;
  const auto k2 = check_weak_pst_condition(make_complete(2), pi / 2, make_complete(4));
  EXPECT_FALSE(k2.holds);
  EXPECT_EQ(k2.failure, ConditionFailure::wrong_class);
  const auto not_circ = check_weak_pst_condition(make_hypercube(2), pi / 2, make_path(3));
  EXPECT_FALSE(not_circ.holds);
  EXPECT_EQ(not_circ.failure, ConditionFailure::precondition);
  // The sufficient condition agrees with the walk where it holds.
  EXPECT_NEAR(std::abs(oracle::amplitude(weak(make_hypercube(2), make_complete(4)), 0, 12, pi / 2)), 1.0, 1e-10);
}

TEST(Products, LexicoCliqueCondition) {
  const auto r = check_lexico_clique_condition(make_hypercube(2), make_hypercube(2), pi / 2);
  EXPECT_TRUE(r.holds) << r.detail;
  const auto full = generalized_lexicographic(make_hypercube(2), make_complete(4), make_hypercube(2));
  EXPECT_NEAR(std::abs(oracle::amplitude(full, 0, 15, pi / 2)), 1.0, 1e-10);
  const auto bad = check_lexico_clique_condition(make_hypercube(2), make_path(4), pi / 2);
  EXPECT_FALSE(bad.holds);
  EXPECT_EQ(bad.failure, ConditionFailure::precondition);
}

TEST(Products, StdLexicoCondition) {
  const auto r = check_std_lexico_condition(make_complete(2), make_hypercube(2), pi / 2);
  EXPECT_TRUE(r.holds) << r.detail;
  ASSERT_TRUE(r.integer_form.has_value());
  EXPECT_TRUE(*r.integer_form);
  const auto p = lexicographic(make_complete(2), make_hypercube(2));
  EXPECT_NEAR(std::abs(oracle::amplitude(p, 0, 3, pi / 2)), 1.0, 1e-10);
  EXPECT_NEAR(std::abs(oracle::amplitude(p, 4, 7, pi / 2)), 1.0, 1e-10);
  // Any integral G passes at pi/2; P3 has eigenvalue sqrt(2).
  const auto p3 = check_std_lexico_condition(make_path(3), make_hypercube(2), pi / 2);
  EXPECT_FALSE(p3.holds);
  EXPECT_TRUE(check_std_lexico_condition(make_complete(3), make_hypercube(2), pi / 2).holds);
}
