#include "fraclap/errors.hpp"
#include "fraclap/tables.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace fraclap;

namespace {

const ReferenceCell& cell(int table, int N, const std::string& alpha) {
  for (const auto& c : reference_tables())
    if (c.table == table && c.N == N && c.alpha == alpha) return c;
  throw std::out_of_range("no such cell");
}

}  // namespace

TEST(Reference, ShapeAndSpotValues) {
  ASSERT_EQ(reference_tables().size(), 192u);
  for (int t = 1; t <= 4; ++t) {
    auto cells = reference_table(t);
    ASSERT_EQ(cells.size(), 48u);
    std::set<std::pair<int, std::string>> keys;
    for (const auto& c : cells) keys.insert({c.N, c.alpha});
    EXPECT_EQ(keys.size(), 48u);
  }
  EXPECT_EQ(cell(1, 4, "2").lower, "2.467401100");
  EXPECT_EQ(cell(1, 4, "2").upper, "2.467401101");
  EXPECT_EQ(cell(3, 2, "0.01").upper, "1.018704583");
  EXPECT_EQ(cell(3, 2, "0.01").lower, "1.016785647");
  EXPECT_EQ(cell(4, 1, "2").upper, "inf");
  EXPECT_EQ(cell(4, 1, "2").lower, "64.000000000");
  EXPECT_EQ(cell(3, 1, "2").lower, "18.000000000");
  EXPECT_THROW(reference_table(5), DomainError);
}

TEST(Render, DirectedDigits) {
  Real x = Real::parse("1.23456789012345", 256);
  EXPECT_EQ(render_bound(x, 10, false), "1.234567890");
  EXPECT_EQ(render_bound(x, 10, true), "1.234567891");
  EXPECT_EQ(render_bound(Real(2L, 256), 10, false), "2.000000000");
  EXPECT_EQ(render_bound(Real::parse("48.8283769876", 256), 10, false), "48.82837698");
  EXPECT_EQ(render_bound(Real::parse("-0.5", 256), 3, false), "-0.500");
  EXPECT_EQ(render_bound(Real(std::ldexp(1.0, -30), 64), 3, true), "9.32e-10");  // 9.3132e-10
  EXPECT_EQ(render_bound(Real::infinity(64), 10, true), "inf");
  EXPECT_EQ(render_fixed(Real::parse("0.9966352", 256), 6, true), "0.996636");
  EXPECT_EQ(render_fixed(Real::parse("0.9966352", 256), 6, false), "0.996635");
  EXPECT_EQ(render_radius(Real(0L, 64)), "0");
}

TEST(Render, ConservativeProperty) {
  // rendered lower <= x <= rendered upper, and both within one unit of x
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> mant(1.0, 10.0);
  std::uniform_int_distribution<int> ex(-5, 8), dg(2, 15);
  for (int i = 0; i < 2000; ++i) {
    const double v = mant(rng) * std::pow(10.0, ex(rng)) * (i % 5 == 0 ? -1 : 1);
    Real x = Real(v, 256) / Real(3L, 256);
    const int digits = dg(rng);
    Real lo = Real::parse(render_bound(x, digits, false), 512);
    Real hi = Real::parse(render_bound(x, digits, true), 512);
    ASSERT_TRUE(lo <= x && x <= hi) << v << " " << digits;
    ASSERT_TRUE(lo < hi);
    // one unit in the last place
    Real unit = abs(x) * std::pow(10.0, 1 - digits);
    ASSERT_TRUE(hi - lo <= unit * 20.0);
  }
}

TEST(Units, Apart) {
  EXPECT_EQ(units_apart("1.157615128", "1.157615128"), 0);
  EXPECT_EQ(units_apart("1.157615127", "1.157615128"), -1);
  EXPECT_EQ(units_apart("48.831283299", "48.831283297"), 2);
  EXPECT_EQ(units_apart("inf", "inf"), 0);
  EXPECT_EQ(units_apart("64.000000000", "inf"), kUnitsInfinite);
  EXPECT_THROW(units_apart("1.0", "1.00"), DomainError);
}

TEST(Table, PrintedCellsReproduce) {
  for (int t = 1; t <= 4; ++t) {
    for (const auto& c : compute_table(t)) {
      EXPECT_TRUE(c.matches()) << t << " N=" << c.ref.N << " a=" << c.ref.alpha << " " << c.lower << "/" << c.upper;
      EXPECT_TRUE(c.bound.lower <= c.bound.upper);
    }
  }
  for (const auto& c : compute_table(1)) {
    if (c.ref.N == 4 && c.ref.alpha == "2") {
      EXPECT_EQ(c.lower, "2.467401100");
      EXPECT_EQ(c.upper, "2.467401101");
    }
  }
}
