#include <gtest/gtest.h>

#include <array>

#include "expect_errc.hpp"
#include "oracles.hpp"
#include "pstkit/graph.hpp"
#include "pstkit/spectral.hpp"

using namespace pst;

TEST(Graph, RejectsAsymmetricAndEmpty) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_ERRC(Graph{m}, Errc::invalid_argument);
  EXPECT_ERRC(Graph{Matrix(0, 0)}, Errc::invalid_size);
}

TEST(Graph, CompleteAndEmpty) {
  EXPECT_EQ(make_complete(1).order(), 1u);
  EXPECT_EQ(make_complete(1).adjacency()(0, 0), 0.0);
  const auto k4 = make_complete(4);
  EXPECT_EQ(is_regular(k4), 3.0);
  const auto s = spectrum(make_complete(3));
  EXPECT_NEAR(s[0], 2.0, 1e-12);
  EXPECT_NEAR(s[1], -1.0, 1e-12);
  EXPECT_NEAR(s[2], -1.0, 1e-12);
  EXPECT_TRUE(make_empty(5).adjacency().isZero());
  EXPECT_ERRC(make_complete(0), Errc::invalid_size);
  EXPECT_ERRC(make_empty(0), Errc::invalid_size);
}

TEST(Graph, WeightedPath) {
  const std::array<double, 3> w{1, 1, 1};
  const std::array<double, 4> loops{0, 0, 0, 0};
  EXPECT_EQ(make_path(w, loops), make_path(4));
  const std::array<double, 2> w2{std::sqrt(3.0), std::sqrt(3.0)};
  const std::array<double, 3> l2{0, 2, 0};
  const auto a1 = make_path(w2, l2);
  EXPECT_EQ(a1.adjacency()(1, 1), 2.0);
  EXPECT_TRUE(a1.has_loops());
  const std::array<double, 2> bad{0, 0};
  EXPECT_ERRC(make_path(w, bad), Errc::invalid_argument);
}

TEST(Graph, Circulants) {
  const std::array<std::size_t, 3> s{1, 2, 4};
  const std::array<std::size_t, 4> c{1, 2, 4, 7};
  const auto g = make_circulant(15, s);
  const auto conn = make_circulant(15, c);
  EXPECT_EQ(is_regular(g), 6.0);
  EXPECT_EQ(is_regular(conn), 8.0);
  EXPECT_TRUE(is_circulant(g));
  EXPECT_FALSE(is_integral(g));
  EXPECT_TRUE(is_integral(conn));
  const Matrix comm = g.adjacency() * conn.adjacency() - conn.adjacency() * g.adjacency();
  EXPECT_LE(comm.cwiseAbs().maxCoeff(), 1e-12 * 15);
  const std::array<std::size_t, 1> one{1};
  EXPECT_EQ(make_circulant(4, one), make_cycle(4));
  const std::array<std::size_t, 1> zero{0};
  EXPECT_ERRC(make_circulant(4, zero), Errc::self_loop_rejected);
  const std::array<std::size_t, 1> big{4};
  EXPECT_ERRC(make_circulant(4, big), Errc::invalid_argument);
}

TEST(Graph, CirculantsCommuteOnCorpusSets) {
  for (std::size_t n = 3; n <= 12; ++n) {
    for (std::size_t a = 1; a < n; ++a) {
      const std::array<std::size_t, 1> s1{a};
      const std::array<std::size_t, 2> s2{1, n > 2 ? std::size_t{2} : std::size_t{1}};
      const auto x = make_circulant(n, s1).adjacency();
      const auto y = make_circulant(n, s2).adjacency();
      EXPECT_LE((x * y - y * x).cwiseAbs().maxCoeff(), 1e-12 * static_cast<double>(n));
    }
  }
}

TEST(Graph, Hypercube) {
  EXPECT_EQ(make_hypercube(1).adjacency(), make_complete(2).adjacency());
  const auto q3 = make_hypercube(3);
  EXPECT_EQ(q3.label(7), "111");
  EXPECT_EQ(q3.find_label("101")->index, 5u);
  EXPECT_EQ(distance_matrix(q3)[0][7], 3u);
  const auto s = spectrum(q3);
  const std::array<double, 8> expected{3, 1, 1, 1, -1, -1, -1, -3};
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(s[i], expected[i], 1e-12);
  EXPECT_ERRC(make_hypercube(0), Errc::invalid_size);
}

TEST(Graph, ComplementAndJoin) {
  EXPECT_EQ(complement(make_empty(2)), make_complete(2));
  const auto k5e = join(make_empty(2), make_complete(3));
  Matrix expect = make_complete(5).adjacency();
  expect(0, 1) = expect(1, 0) = 0.0;
  EXPECT_EQ(k5e.adjacency(), expect);
  const auto comp = complement(k5e);
  EXPECT_EQ(comp.adjacency().sum(), 2.0);
  EXPECT_EQ(comp.adjacency()(0, 1), 1.0);
  const std::array<std::size_t, 1> one{1};
  const auto c5 = make_circulant(5, one);
  const std::array<std::size_t, 1> two{2};
  EXPECT_EQ(complement(c5), make_circulant(5, two));
  EXPECT_EQ(join(make_complete(1), make_complete(1)), make_complete(2));
  EXPECT_ERRC(complement(scaled(make_complete(3), 2.0)), Errc::unsupported);
}

TEST(Graph, ComplementInvolutionOnCorpus) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto g = oracle::random_graph(seed);
    EXPECT_EQ(complement(complement(g)), g);
  }
}

TEST(Graph, RegularityAndDistances) {
  EXPECT_FALSE(is_regular(make_path(4)));
  const auto d = distance_matrix(make_path(4));
  EXPECT_EQ(d[0][3], 3u);
  const auto disc = make_empty(3);
  EXPECT_EQ(distance_matrix(disc)[0][1], kUnreachable);
}

TEST(Graph, DistanceMatrixMetricOnCorpus) {
  for (const auto& g : oracle::corpus()) {
    const auto d = distance_matrix(g);
    const auto n = g.order();
    for (std::size_t u = 0; u < n; ++u) {
      EXPECT_EQ(d[u][u], 0u);
      const auto ref = oracle::bfs(g.adjacency(), u);
      for (std::size_t v = 0; v < n; ++v) {
        EXPECT_EQ(d[u][v], d[v][u]);
        EXPECT_EQ(ref[v] < 0 ? kUnreachable : static_cast<std::size_t>(ref[v]), d[u][v]);
        for (std::size_t w = 0; w < n; ++w) {
          if (d[u][v] != kUnreachable && d[v][w] != kUnreachable) {
            EXPECT_LE(d[u][w], d[u][v] + d[v][w]);
          }
        }
      }
    }
  }
}

TEST(Graph, ConstructorsAreExactlySymmetric) {
  const std::array<std::size_t, 2> s{1, 3};
  for (const auto& g : {make_complete(6), make_cycle(7), make_circulant(9, s), make_hypercube(4), make_path(5),
                        join(make_cycle(5), make_empty(2)), complement(make_cycle(6))}) {
    EXPECT_TRUE(g.adjacency() == g.adjacency().transpose());
  }
}

TEST(Graph, VertexChecks) {
  const auto g = make_complete(3);
  EXPECT_ERRC(g.vertex(3), Errc::invalid_argument);
  EXPECT_EQ(g.label(2), "2");
  EXPECT_FALSE(g.find_label("x"));
}
