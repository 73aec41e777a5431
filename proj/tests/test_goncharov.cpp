#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace jsob;
using namespace jsob::testing;

namespace {

ld factorial(int k) {
  ld f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

TEST(Goncharov, Examples) {
  const std::vector<ld> nodes{0.4L, -0.2L, 0.9L};
  EXPECT_EQ(goncharov_poly<ld>(nodes, 0), (poly{1}));
  EXPECT_EQ(goncharov_poly<ld>(nodes, 1), (poly{-0.4L, 1}));
  const std::vector<ld> zero_one{0, 1};
  const auto g2 = goncharov_poly<ld>(zero_one, 1);
  EXPECT_EQ(g2, (poly{0, 1}));
  const std::vector<ld> zero_one_x{0, 1, 5};
  EXPECT_EQ(goncharov_poly<ld>(zero_one_x, 2), (poly{0, -1, 0.5L}));
}

TEST(Goncharov, IndexOutOfRange) {
  const std::vector<ld> nodes{0, 1};
  EXPECT_THROW(goncharov_poly<ld>(nodes, 2), jsob::error);
  EXPECT_THROW(goncharov_poly<ld>(nodes, -1), jsob::error);
  EXPECT_THROW(goncharov_poly<ld>(std::vector<ld>{}, 0), jsob::error);
}

TEST(Goncharov, DeltaPropertyRandomNodes) {
  auto g = rng(301);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = uniform_int(g, 1, 8);
    std::vector<ld> x(m);
    ld biggest = 0;
    for (auto& v : x) {
      v = uniform(g, -1.5, 1.5);
      biggest = std::max(biggest, std::fabs(v));
    }
    const ld tol = 1e-10L * std::pow(1 + biggest, m);
    for (int k = 0; k < m; ++k) {
      const auto gk = goncharov_poly<ld>(x, k);
      EXPECT_EQ(gk.degree(), k);
      EXPECT_LT(std::fabs(gk.leading() * factorial(k) - 1), 1e-12L);
      for (int nu = 0; nu < m; ++nu)
        EXPECT_LT(std::fabs(eval(derivative(gk, nu), x[nu]) - (nu == k ? 1 : 0)), tol);
    }
  }
}

TEST(AbelGoncharov, ZeroData) {
  const std::vector<ld> x{0.1L, 0.2L, 0.3L}, y{0, 0, 0};
  EXPECT_TRUE(abel_goncharov_interpolant<ld>(x, y).is_zero());
}

TEST(AbelGoncharov, ConstantNodesGiveTaylor) {
  const ld c = 0.7L;
  const std::vector<ld> x(5, c), y{1.5L, -2, 0.25L, 3, -1};
  poly taylor;
  const poly shift{-c, 1};
  poly power{1};
  for (int k = 0; k < 5; ++k) {
    taylor = taylor + (y[k] / factorial(k)) * power;
    power = power * shift;
  }
  EXPECT_LT(coeff_rel_diff(abel_goncharov_interpolant<ld>(x, y), taylor), 1e-14L);
}

TEST(AbelGoncharov, ReproducesRandomPolynomials) {
  auto g = rng(302);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = uniform_int(g, 1, 8);
    const poly q = random_poly(g, m - 1);
    std::vector<ld> x(m), y(m);
    for (int k = 0; k < m; ++k) {
      x[k] = uniform(g, -1.5, 1.5);
      y[k] = eval(derivative(q, k), x[k]);
    }
    EXPECT_LT(coeff_rel_diff(abel_goncharov_interpolant<ld>(x, y), q), 1e-10L);
  }
}

TEST(AbelGoncharov, LengthMismatch) {
  const std::vector<ld> x{0, 1}, y{1};
  EXPECT_THROW(abel_goncharov_interpolant<ld>(x, y), jsob::error);
}
