#include <gtest/gtest.h>

#include <array>
#include <numbers>
#include <sstream>

#include "expect_errc.hpp"
#include "oracles.hpp"
#include "pstkit/cones.hpp"
#include "pstkit/products.hpp"
#include "pstkit/table.hpp"
#include "pstkit/transfer.hpp"

using namespace pst;
using std::numbers::pi;

TEST(Transfer, SeriesAndCsv) {
  const auto s = fidelity_series(make_cycle(4), VertexId{0}, VertexId{2}, pi, 5);
  ASSERT_EQ(s.times.size(), 5u);
  EXPECT_DOUBLE_EQ(s.times.back(), pi);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_NEAR(std::abs(s.amplitudes[i]), oracle::c4_antipodal_magnitude(s.times[i]), 1e-12);
  }
  const auto csv = to_csv(s);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,re,im,abs");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 5);
  EXPECT_ERRC(fidelity_series(make_cycle(4), VertexId{0}, VertexId{2}, pi, 1), Errc::invalid_argument);
  EXPECT_ERRC(fidelity_series(make_cycle(4), VertexId{0}, VertexId{2}, -1.0, 10), Errc::invalid_argument);
}

TEST(Transfer, ScanFindsEarliestRevival) {
  const auto s = max_fidelity_scan(make_hypercube(3), VertexId{0}, VertexId{7}, 2 * pi, 4096, 60);
  EXPECT_NEAR(s.time, pi / 2, 1e-9);
  EXPECT_NEAR(s.fidelity, 1.0, 1e-12);
}

TEST(Transfer, ScanRefinementIsGridIndependent) {
  // |F| on K3 between distinct vertices is |e^{-2it} - e^{it}| / 3, peak 2/3 at pi/3.
  for (std::size_t steps : {50u, 50000u}) {
    const auto s = max_fidelity_scan(make_complete(3), VertexId{0}, VertexId{1}, 2.0, steps, 60);
    EXPECT_NEAR(s.fidelity, 2.0 / 3.0, 1e-12) << steps;
    EXPECT_NEAR(s.time, pi / 3, 1e-7) << steps;
  }
  const auto raw = max_fidelity_scan(make_complete(3), VertexId{0}, VertexId{1}, 2.0, 50, 0);
  EXPECT_LT(raw.fidelity, 2.0 / 3.0);
}

TEST(Transfer, ScanGluedCone) {
  const std::array<std::size_t, 3> s{1, 2, 4};
  const std::array<std::size_t, 4> c{1, 2, 4, 7};
  const auto g = glued_double_cone(make_circulant(15, s), make_circulant(15, s), make_circulant(15, c));
  const auto r = max_fidelity_scan(g, VertexId{0}, VertexId{31}, 2 * pi, 8192, 60);
  EXPECT_NEAR(r.time, pi / 4, 1e-9);
  EXPECT_GE(r.fidelity, kNumericPst);
}

TEST(Transfer, ScanThreadCountDoesNotMatter) {
  const auto g = weak(make_path(3), make_complete(4));
  const auto one = max_fidelity_scan(g, VertexId{0}, VertexId{8}, 30.0, 40000, 40, 1);
  const auto four = max_fidelity_scan(g, VertexId{0}, VertexId{8}, 30.0, 40000, 40, 4);
  EXPECT_EQ(one.time, four.time);
  EXPECT_EQ(one.fidelity, four.fidelity);
}

TEST(Transfer, NumericReading) {
  EXPECT_EQ(read_numeric(1.0), NumericReading::pst);
  EXPECT_EQ(read_numeric(1.0 - 1e-9), NumericReading::pst);
  EXPECT_EQ(read_numeric(1.0 - 1e-5), NumericReading::inconclusive);
  EXPECT_EQ(read_numeric(0.99), NumericReading::no);
  EXPECT_EQ(to_string(NumericReading::no), "no");
}

TEST(Transfer, StrongCospectralitySigns) {
  const auto q3 = strong_cospectrality(make_hypercube(3), VertexId{0}, VertexId{7});
  ASSERT_TRUE(q3);
  std::vector<int> signs;
  std::vector<double> eig;
  for (const auto& c : *q3) {
    signs.push_back(c.sign);
    eig.push_back(c.eigenvalue);
  }
  EXPECT_EQ(signs, (std::vector<int>{0, 1, 0, 1}));
  EXPECT_NEAR(eig.front(), 3.0, 1e-12);
  EXPECT_NEAR(eig.back(), -3.0, 1e-12);

  const auto c4 = strong_cospectrality(make_cycle(4), VertexId{0}, VertexId{2});
  ASSERT_TRUE(c4);
  signs.clear();
  for (const auto& c : *c4) signs.push_back(c.sign);
  EXPECT_EQ(signs, (std::vector<int>{0, 1, 0}));

  EXPECT_FALSE(strong_cospectrality(make_complete(3), VertexId{0}, VertexId{1}));
  EXPECT_FALSE(strong_cospectrality(make_path(3), VertexId{0}, VertexId{1}));
}

TEST(Transfer, CertificatePositiveCases) {
  struct Case {
    Graph g;
    std::size_t a, b;
    double time;
    std::string text;
  };
  const std::vector<Case> cases{
      {make_complete(2), 0, 1, pi / 2, "pi/2"},
      {make_path(3), 0, 2, pi / std::sqrt(2.0), "pi/sqrt(2)"},
      {make_hypercube(3), 0, 7, pi / 2, "pi/2"},
      {make_hypercube(4), 0, 15, pi / 2, "pi/2"},
      {make_cycle(4), 0, 2, pi / 2, "pi/2"},
      {weak(make_hypercube(2), make_complete(4)), 0, 12, pi / 2, "pi/2"},
      {lexicographic(make_complete(2), make_hypercube(2)), 0, 3, pi / 2, "pi/2"},
  };
  for (const auto& c : cases) {
    const auto cert = pst_certificate(c.g, VertexId{c.a}, VertexId{c.b});
    ASSERT_EQ(cert.verdict, Verdict::yes) << c.text << ": " << cert.reason;
    ASSERT_TRUE(cert.time);
    EXPECT_NEAR(cert.time_num(), c.time, 1e-12);
    EXPECT_EQ(cert.time->str(), c.text);
    EXPECT_NEAR(std::abs(oracle::amplitude(c.g, c.a, c.b, cert.time_num())), 1.0, 1e-10);
  }
}

TEST(Transfer, CertificateNegativeCases) {
  const auto k3 = pst_certificate(make_complete(3), VertexId{0}, VertexId{1});
  EXPECT_EQ(k3.verdict, Verdict::no);
  EXPECT_NE(k3.reason.find("not strongly cospectral"), std::string::npos);

  const auto p4 = pst_certificate(make_path(4), VertexId{0}, VertexId{3});
  EXPECT_EQ(p4.verdict, Verdict::no);
  EXPECT_NE(p4.reason.find("incommensurate"), std::string::npos);

  // C6 antipodal: steps (0,-1,-3,-4) with signs (0,1,0,1); odd c gives (0,1,1,0).
  const auto c6 = pst_certificate(make_cycle(6), VertexId{0}, VertexId{3});
  EXPECT_EQ(c6.verdict, Verdict::no);
  EXPECT_NE(c6.reason.find("parity obstruction"), std::string::npos) << c6.reason;
  // Periodic walk (integral spectrum, period 2 pi), so one period bounds it.
  const auto s = max_fidelity_scan(make_cycle(6), VertexId{0}, VertexId{3}, 2 * pi, 20000, 60);
  EXPECT_LT(s.fidelity, kNumericNo);

  EXPECT_ERRC(pst_certificate(make_cycle(4), VertexId{1}, VertexId{1}), Errc::invalid_argument);
  EXPECT_ERRC(pst_certificate(make_cycle(4), VertexId{0}, VertexId{9}), Errc::invalid_argument);
}

TEST(Transfer, CertificateIsSoundOnCorpus) {
  // Every yes is a genuine transfer; every no stays clear of 1 on a window.
  const auto graphs = oracle::corpus();
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const auto& g = graphs[i];
    const std::size_t b = g.order() - 1;
    const auto cert = pst_certificate(g, VertexId{0}, VertexId{b});
    EXPECT_NE(cert.verdict, Verdict::unknown) << "graph " << i << ": " << cert.reason;
    if (cert.verdict == Verdict::yes) {
      EXPECT_NEAR(std::abs(oracle::amplitude(g, 0, b, cert.time_num())), 1.0, 1e-9) << "graph " << i;
    } else if (g.is_connected()) {
      const auto s = max_fidelity_scan(g, VertexId{0}, VertexId{b}, 50.0, 5000, 30);
      EXPECT_LT(s.fidelity, kNumericPst) << "graph " << i << ": " << cert.reason;
    }
  }
}

TEST(Transfer, CertificateOnCartesianSquare) {
  const auto p3k2 = cartesian(make_path(3), make_path(3));
  const auto cert = pst_certificate(p3k2, VertexId{0}, VertexId{8});
  ASSERT_EQ(cert.verdict, Verdict::yes) << cert.reason;
  EXPECT_NEAR(cert.time_num(), pi / std::sqrt(2.0), 1e-12);
}

TEST(Table, AllRowsMatch) {
  const auto rows = pst_table();
  ASSERT_EQ(rows.size(), 8u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.matches()) << r.family << " " << r.instance << ": " << r.note;
    if (r.observed == Verdict::yes) {
      EXPECT_FALSE(r.time.empty()) << r.family;
      EXPECT_GE(r.fidelity, kNumericPst) << r.family;
    } else {
      EXPECT_LT(r.fidelity, kNumericNo) << r.family;
    }
  }
  EXPECT_EQ(rows[2].time, "pi/4");
  EXPECT_EQ(rows[0].time, "pi/sqrt(2)");
}
