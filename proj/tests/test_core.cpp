#include <gtest/gtest.h>

#include "bck/core.hpp"
#include "bck/fd.hpp"
#include "support.hpp"

using namespace bck;

TEST(ChartPoint, RejectsNonFiniteAndEmpty) {
  EXPECT_THROW(ChartPoint(Vector(0)), Error);
  EXPECT_THROW(ChartPoint({Complex(std::nan(""), 0.0)}), Error);
  EXPECT_THROW(ChartPoint({Complex(0.0, INFINITY)}), Error);
}

TEST(ChartPoint, ShiftAndConjugate) {
  const ChartPoint z{Complex(0.1, 0.2), Complex(-0.3, 0.4)};
  const ChartPoint c = z.conjugated();
  EXPECT_EQ(c[0], Complex(0.1, -0.2));
  EXPECT_EQ(c[1], Complex(-0.3, -0.4));
  EXPECT_EQ(z.shifted(test::vec({1.0, kI}))[1], Complex(-0.3, 1.4));
}

TEST(Domain, PolydiscAndMargin) {
  const Domain d = Domain::polydisc(1, 1.0);
  EXPECT_TRUE(d.contains(ChartPoint{0.99}));
  EXPECT_FALSE(d.contains(ChartPoint{1.0}));
  EXPECT_TRUE(d.contains_with_margin(ChartPoint{0.9}, 0.01));
  EXPECT_FALSE(d.contains_with_margin(ChartPoint{0.995}, 0.01));
  EXPECT_THROW(d.require(ChartPoint{1.5}, "test"), DomainError);
  EXPECT_TRUE(d.conjugated().contains(ChartPoint{Complex(0.0, 0.5)}));
}

TEST(ChartGrid, RowMajorFirstAxisSlowest) {
  const ChartGrid g(test::vec({Complex(-1.0, -2.0)}), test::vec({Complex(1.0, 2.0)}), {3, 5});
  ASSERT_EQ(g.size(), 15u);
  EXPECT_EQ(g.point(0)[0], Complex(-1.0, -2.0));
  EXPECT_EQ(g.point(1)[0], Complex(-1.0, -1.0));
  EXPECT_EQ(g.point(5)[0], Complex(0.0, -2.0));
  EXPECT_EQ(g.point(14)[0], Complex(1.0, 2.0));
  EXPECT_EQ(g.multi_index(7), (std::vector<int>{1, 2}));
}

TEST(ChartGrid, RejectsBadResolution) {
  EXPECT_THROW(ChartGrid(test::vec({0.0}), test::vec({Complex(1.0, 1.0)}), {0, 3}), Error);
  EXPECT_THROW(ChartGrid(test::vec({0.0}), test::vec({Complex(1.0, 1.0)}), {3, 3, 3}), Error);
}

TEST(FiniteDifference, RichardsonImprovesCubic) {
  const Domain whole = Domain::whole(1);
  const auto f = [](const ChartPoint& z) -> Matrix {
    return test::scalar(std::pow(z[0], 3) + std::exp(z[0]));
  };
  const ChartPoint z{Complex(0.3, 0.2)};
  const Complex exact = 3.0 * z[0] * z[0] + std::exp(z[0]);
  const Matrix plain = fd::real_partial(f, z, 0, 1e-3, false, whole);
  const Matrix rich = fd::real_partial(f, z, 0, 1e-3, true, whole);
  EXPECT_LT(std::abs(rich(0, 0) - exact), std::abs(plain(0, 0) - exact) / 100.0);
}

TEST(FiniteDifference, WirtingerOfModulusSquared) {
  const auto f = [](const ChartPoint& z) -> Matrix { return test::scalar(std::norm(z[0])); };
  const ChartPoint z{Complex(0.4, -0.7)};
  const auto [d, dbar] = fd::wirtinger(f, z, 0, FdOptions{}, Domain::whole(1));
  EXPECT_NEAR(std::abs(d(0, 0) - std::conj(z[0])), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(dbar(0, 0) - z[0]), 0.0, 1e-9);
}

TEST(Helpers, SmallestSingularValueAndEigenvalue) {
  Matrix m(2, 2);
  m << 2.0, 0.0, 0.0, -3.0;
  EXPECT_NEAR(smallest_singular_value(m), 2.0, 1e-14);
  EXPECT_NEAR(smallest_eigenvalue(m), -3.0, 1e-14);
  EXPECT_EQ(real_axis(2, 3), test::vec({0.0, kI}));
}
