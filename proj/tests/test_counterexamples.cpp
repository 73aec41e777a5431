#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <sstream>

#include "support.hpp"

using namespace jsob;
using namespace jsob::testing;

namespace {

ld factorial(int k) {
  ld f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// m-th central difference with step h, then one Richardson step.
ld fd_derivative(const std::function<ld(ld)>& f, int m, ld x, ld h = 1e-3L) {
  auto central = [&](ld step) {
    ld sum = 0;
    for (int k = 0; k <= m; ++k) {
      const ld c = binom(m, k) * ((k % 2 == 0) ? 1 : -1);
      sum += c * f(x + (m / 2.0L - k) * step);
    }
    return sum / std::pow(step, m);
  };
  return (4 * central(h / 2) - central(h)) / 3;
}

ld log_base(int sign, ld x) {
  const ld u = 1 + sign * x;
  return 1 / (u * std::log(u));
}

}  // namespace

TEST(LambdaTable, Examples) {
  const lambda_table<ld> t(25);
  EXPECT_EQ(t.max_order(), 25);
  EXPECT_EQ(t(0, 0), 1);
  EXPECT_EQ(t(1, 0), 1);
  EXPECT_EQ(t(1, 1), 1);
  EXPECT_EQ(t(2, 1), 3);
  for (int m = 0; m <= 20; ++m) {
    EXPECT_EQ(t(m, 0), factorial(m)) << "m=" << m;
    EXPECT_EQ(t(m, m), factorial(m)) << "m=" << m;
    for (int k = 0; k <= m; ++k) EXPECT_GT(t(m, k), 0);
  }
  EXPECT_THROW(lambda_table<ld>(26), jsob::error);
  EXPECT_THROW(lambda_table<ld>(-1), jsob::error);
}

TEST(LambdaTable, IntegerExactUpToTwelve) {
  std::vector<std::vector<detail::int128>> exact{{1}};
  for (int n = 0; n < 12; ++n) {
    std::vector<detail::int128> next(n + 2, 0);
    for (int k = 0; k <= n + 1; ++k)
      next[k] = (k <= n ? (n + 1) * exact[n][k] : 0) + (k >= 1 ? k * exact[n][k - 1] : 0);
    exact.push_back(next);
  }
  const lambda_table<ld> t(12);
  for (int m = 0; m <= 12; ++m)
    for (int k = 0; k <= m; ++k) EXPECT_EQ(t(m, k), static_cast<ld>(exact[m][k])) << m << "," << k;
}

TEST(LogDerivative, OrderZeroIsTheBaseFunction) {
  for (const int sign : {1, -1})
    for (const ld x : {0.3L, 0.5L, 0.7L}) EXPECT_EQ(log_derivative<ld>(sign, 0, x), log_base(sign, x));
}

TEST(LogDerivative, MatchesFiniteDifferences) {
  for (const int sign : {1, -1})
    for (int m = 1; m <= 4; ++m)
      for (const ld x : {0.3L, 0.5L, 0.7L}) {
        const ld exact = log_derivative<ld>(sign, m, x);
        const ld fd = fd_derivative([sign](ld t) { return log_base(sign, t); }, m, x);
        EXPECT_LT(std::fabs(fd / exact - 1), 1e-6L) << "sign=" << sign << " m=" << m << " x=" << x;
      }
}

TEST(LogDerivative, SignSymmetry) {
  for (int m = 0; m <= 6; ++m)
    for (const ld x : {0.3L, 0.5L, 0.7L, -0.4L}) {
      const ld mirror = (m % 2 == 0 ? 1 : -1) * log_derivative<ld>(-1, m, -x);
      EXPECT_LT(std::fabs(log_derivative<ld>(1, m, x) - mirror), 1e-15L * std::fabs(mirror));
    }
}

TEST(LogDerivative, DomainErrors) {
  EXPECT_THROW(log_derivative<ld>(1, 2, 0.0L), jsob::error);
  EXPECT_THROW(log_derivative<ld>(-1, 2, 1.0L), jsob::error);
  EXPECT_THROW(log_derivative<ld>(1, 2, -1.5L), jsob::error);
  EXPECT_THROW(log_derivative<ld>(0, 2, 0.5L), jsob::error);
}

TEST(Phi, FirstOrderLogBranch) {
  const phi_params params{1, 1, 3, 0, 2};
  EXPECT_FALSE(params.critical());
  for (const ld x : {0.1L, 0.5L, 0.99L}) EXPECT_NEAR(static_cast<double>(phi<ld>(params, x)), 1 / (1 - (double)x), 1e-12);
}

TEST(Phi, MatchesFiniteDifferencesBothBranches) {
  auto log_branch = [](ld x) { return std::log(1 / (1 - x)); };
  auto critical_branch = [](ld x) { return std::log(std::log(1 / (1 - x))); };
  for (int m = 1; m <= 4; ++m) {
    const phi_params loose{1, m, 2.0 * m + 1, 0, 2};
    const phi_params tight{1, m, 2.0 * m - 1, 0, 2};
    ASSERT_TRUE(tight.critical());
    for (const ld x : {0.3L, 0.5L, 0.7L}) {
      const ld a = phi<ld>(loose, x), b = phi<ld>(tight, x);
      EXPECT_LT(std::fabs(fd_derivative(log_branch, m, x) / a - 1), 1e-6L) << "m=" << m;
      EXPECT_LT(std::fabs(fd_derivative(critical_branch, m, x) / b - 1), 1e-6L) << "m=" << m << " x=" << x;
    }
  }
}

TEST(Phi, MinusBranchMirrorsPlusBranch) {
  for (int m = 1; m <= 4; ++m)
    for (const double p : {1.5, 2.0}) {
      const double crit = m * p - 1;
      const phi_params minus{-1, m, 0, crit, p};
      const phi_params plus{1, m, crit, 0, p};
      for (const ld x : {0.3L, 0.8L}) {
        const ld expected = (m % 2 == 0 ? 1 : -1) * phi<ld>(plus, x);
        EXPECT_LT(std::fabs(phi<ld>(minus, -x) - expected), 1e-15L * std::fabs(expected));
      }
    }
}

TEST(Phi, HypothesisAndDomain) {
  EXPECT_THROW(phi<ld>({1, 2, 2.9, 0, 2}, 0.5L), jsob::error);   // alpha < mp - 1
  EXPECT_THROW(phi<ld>({1, 2, 1.0, 0, 1}, 0.5L), jsob::error);   // p = 1 needs alpha > m - 1
  EXPECT_NO_THROW(phi<ld>({1, 2, 1.01, 0, 1}, 0.5L));
  EXPECT_THROW(phi<ld>({-1, 2, 9, 0, 2}, -0.5L), jsob::error);  // beta governs the minus branch
  EXPECT_THROW(phi<ld>({1, 1, 3, 0, 2}, 1.0L), jsob::error);
  EXPECT_THROW(phi<ld>({1, 1, 3, 0, 2}, -0.5L), jsob::error);
  EXPECT_THROW(phi<ld>({-1, 1, 0, 3, 2}, 0.5L), jsob::error);
}

TEST(IteratedIntegral, ClosedFormLogBranch) {
  const ld a = 0.5L;
  for (int m = 1; m <= 4; ++m) {
    const phi_params params{1, m, 2.0 * m + 3, 0, 2};
    for (const ld x : {0.6L, 0.9L, 0.999L, 1 - std::ldexp(1.0L, -30)}) {
      // F = ln(1/(1-x)) minus its Taylor polynomial of order m-1 at a.
      ld expected = std::log(1 / (1 - x)) - std::log(1 / (1 - a));
      for (int k = 1; k < m; ++k) expected -= factorial(k - 1) / std::pow(1 - a, k) * std::pow(x - a, k) / factorial(k);
      const ld got = iterated_integral_of_phi<ld>(params, a, x);
      EXPECT_LT(std::fabs(got - expected), 1e-10L * std::max<ld>(1, std::fabs(expected))) << "m=" << m << " x=" << x;
    }
  }
}

TEST(IteratedIntegral, ClosedFormCriticalBranch) {
  const ld a = 0.5L;
  auto F = [](ld x) { return std::log(std::log(1 / (1 - x))); };
  auto F1 = [](ld x) { return -1 / ((1 - x) * std::log(1 - x)); };
  auto F2 = [](ld x) {
    const ld L = std::log(1 - x);
    return -(L + 1) / std::pow((1 - x) * L, 2);
  };
  for (int m = 1; m <= 3; ++m) {
    const phi_params params{1, m, 2.0 * m - 1, 0, 2};
    for (const ld x : {0.7L, 0.99L, 1 - std::ldexp(1.0L, -40)}) {
      ld expected = F(x) - F(a);
      if (m >= 2) expected -= F1(a) * (x - a);
      if (m >= 3) expected -= F2(a) * (x - a) * (x - a) / 2;
      const ld got = iterated_integral_of_phi<ld>(params, a, x);
      EXPECT_LT(std::fabs(got - expected), 1e-10L * std::max<ld>(1, std::fabs(expected))) << "m=" << m << " x=" << x;
    }
  }
}

TEST(IteratedIntegral, MirrorAndEdges) {
  const phi_params plus{1, 2, 3, 0, 2}, minus{-1, 2, 0, 3, 2};
  EXPECT_EQ(iterated_integral_of_phi<ld>(plus, 0.5L, 0.5L), 0);
  EXPECT_LT(std::fabs(iterated_integral_of_phi<ld>(minus, 0.5L, -0.9L) - iterated_integral_of_phi<ld>(plus, 0.5L, 0.9L)),
            1e-14L);
  EXPECT_THROW(iterated_integral_of_phi<ld>(plus, 0.5L, 0.4L), jsob::error);
  EXPECT_THROW(iterated_integral_of_phi<ld>(plus, 0.0L, 0.4L), jsob::error);
}

TEST(PhiLpIntegral, TailAgreesWithDirectIntegration) {
  for (const phi_params params : {phi_params{1, 2, 3, 0, 2}, phi_params{1, 2, 3.5, 0.5, 2}, phi_params{1, 1, 2, 1, 2},
                                  phi_params{-1, 2, 1, 3, 2}, phi_params{1, 1, 1, -0.5, 1.5}}) {
    const ld lo = params.sign * 0.5L;
    const ld total = phi_tail_integral<ld>(params, lo);
    ld previous = 0;
    for (const int j : {5, 10, 20, 30}) {
      const ld edge = params.sign * (1 - std::ldexp(1.0L, -j));
      const ld head = params.sign > 0 ? phi_lp_integral<ld>(params, lo, edge) : phi_lp_integral<ld>(params, edge, lo);
      EXPECT_GT(head, previous);
      previous = head;
      EXPECT_LT(std::fabs(head + phi_tail_integral<ld>(params, edge) - total), 1e-9L * total)
          << "alpha=" << params.alpha << " j=" << j;
    }
  }
}

TEST(PhiLpIntegral, DirectIntegralStabilizes) {
  const phi_params params{1, 2, 5, 0, 2};  // log branch, (1-x)^{1} density
  ld last = 0, gap = 1;
  for (int j = 10; j <= 40; j += 10) {
    const ld v = phi_lp_integral<ld>(params, 0.5L, 1 - std::ldexp(1.0L, -j));
    if (j > 10) {
      const ld next_gap = v - last;
      EXPECT_LT(next_gap, gap);
      gap = next_gap;
    }
    last = v;
  }
  EXPECT_LT(gap, 1e-9L);
  EXPECT_LT(std::fabs(last - phi_tail_integral<ld>(params, 0.5L)), 1e-9L);
}

TEST(DenseApproximant, ZeroDataGivesIteratedIntegral) {
  const sobolev_config cfg{0.5, -0.3, 2, {-0.5, 0.5}, 2};
  sampled_function<ld> zero{"zero", {}};
  for (int k = 0; k <= 2; ++k) zero.derivatives.emplace_back([](ld) { return 0.0L; });
  const auto p0 = orthonormal_jacobi<ld>(cfg.jacobi(), 0);
  EXPECT_LT(coeff_rel_diff(dense_approximant<ld>(cfg, zero, p0), sobolev_basis<ld>(cfg, cfg.ell)), 1e-15L);
}

TEST(DenseApproximant, NormIdentityAndNodeMatching) {
  auto g = rng(601);
  const auto& names = registry_names();
  for (int trial = 0; trial < 40; ++trial) {
    const int ell = uniform_int(g, 1, 3);
    std::vector<double> omega(ell);
    for (auto& w : omega) w = uniform(g, -1.2, 1.2);
    const sobolev_config cfg{uniform(g, -0.9, 3), uniform(g, -0.9, 3), ell, omega, trial % 2 == 0 ? 2.0 : 4.0};
    const auto f = make_test_function<ld>(names[trial % 2]);  // exp, sin5: entire, so 256 nodes resolve them
    const poly p_approx = random_poly(g, uniform_int(g, 0, 10));
    const auto P = dense_approximant<ld>(cfg, f, p_approx);

    for (int k = 0; k < ell; ++k)
      EXPECT_LT(std::fabs(eval(derivative(P, k), static_cast<ld>(omega[k])) - f(k, omega[k])), 1e-10L);
    EXPECT_LT(coeff_rel_diff(derivative(P, ell), p_approx), 1e-12L);

    const ld lhs = sobolev_norm<ld>(cfg, subtract(f, P));
    const auto rule = gauss_jacobi_rule<ld>(cfg.jacobi(), 256);
    const ld integral =
        integrate(rule, [&](ld x) { return std::pow(std::fabs(f(ell, x) - eval(p_approx, x)), static_cast<ld>(cfg.p)); });
    const ld rhs = std::pow(integral, 1 / static_cast<ld>(cfg.p));
    EXPECT_LT(std::fabs(lhs - rhs), 1e-9L * rhs) << "trial " << trial;
  }
}

TEST(IncompletenessDemo, Guards) {
  EXPECT_THROW(incompleteness_demo(3, 0, 2, 1, 1, 5), jsob::error);  // ell = 1 is always complete
  EXPECT_THROW(incompleteness_demo(3, 0, 2, 3, 3, 5), jsob::error);
  EXPECT_THROW(incompleteness_demo(3, 0, 2, 3, 0, 5), jsob::error);
  EXPECT_THROW(incompleteness_demo(2.9, 0, 2, 3, 2, 5), jsob::error);  // omega = 1 admissible at m = 2
  EXPECT_THROW(incompleteness_demo(3, 0, 2, 3, 2, 0), jsob::error);
  EXPECT_THROW(incompleteness_demo(3, 0, 2, 3, 2, demo_max_steps + 1), jsob::error);
  // Regions and the demo agree on where omega_{ell-m} = 1 is excluded.
  EXPECT_FALSE(admissible_nodes(3, 0, 2, 2).contains(1));
  EXPECT_NO_THROW(incompleteness_demo(3, 0, 2, 3, 2, 2));
  EXPECT_NO_THROW(incompleteness_demo(1.5, 0, 1, 2, 1, 2));  // p = 1: alpha > m - 1
}

TEST(IncompletenessDemo, ValuesGrowFromTheSecondStepOn) {
  const auto rows = incompleteness_demo(3, 0, 2, 3, 2, 20);
  ASSERT_EQ(rows.size(), 20u);
  EXPECT_EQ(rows[0].value, 0);  // x_1 = a
  for (std::size_t i = 2; i < rows.size(); ++i) EXPECT_GT(rows[i].value, rows[i - 1].value) << "j=" << rows[i].j;
  EXPECT_GT(rows.back().value, rows[4].value);
}

TEST(IncompletenessDemo, FirstStepDipsBelowZero) {
  // phi_2 is negative for x < 1 - 1/e, so the integral first dips below its start.
  const auto rows = incompleteness_demo(3, 0, 2, 3, 2, 3);
  EXPECT_LT(rows[1].value, rows[0].value);
  EXPECT_LT(phi<ld>({1, 2, 3, 0, 2}, 0.6L), 0);
  EXPECT_GT(phi<ld>({1, 2, 3, 0, 2}, 0.7L), 0);
}

TEST(IncompletenessDemo, LogBranchDivergesFaster) {
  const auto rows = incompleteness_demo(5, 0, 2, 3, 2, 20);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GT(rows[i].value, rows[i - 1].value);
  // ln(1/(1-x)) grows like j ln 2.
  EXPECT_GT(rows[19].value, 12);
}

TEST(IncompletenessDemo, TailsDecreaseToZero) {
  const auto rows = incompleteness_demo(3, 0, 2, 3, 2, 60);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i].tail, rows[i - 1].tail);
  EXPECT_LT(rows[59].tail, rows[19].tail / 2.5L);
  const auto fast = incompleteness_demo(5, 0, 2, 3, 2, 40);
  EXPECT_LT(fast[39].tail, 1e-10L);
}

TEST(IncompletenessDemo, CsvLayout) {
  std::ostringstream out;
  write_demo_csv(out, incompleteness_demo(3, 0, 2, 3, 2, 1));
  EXPECT_EQ(out.str(), "j,x,iterated_integral_value,tail_integral\n1,0.5,0," +
                           format_decimal(static_cast<double>(phi_tail_integral<ld>({1, 2, 3, 0, 2}, 0.5L))) + "\n");
}
