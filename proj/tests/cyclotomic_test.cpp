#include "cdm/cyclotomic.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <thread>

namespace cdm {
namespace {

TEST(Cyclotomic, SmallConductors) {
  EXPECT_EQ(cyclotomic_poly(1), (Poly{-1, 1}));
  EXPECT_EQ(cyclotomic_poly(2), (Poly{1, 1}));
  EXPECT_EQ(cyclotomic_poly(6), (Poly{1, -1, 1}));
  EXPECT_EQ(cyclotomic_poly(8), (Poly{1, 0, 0, 0, 1}));
  EXPECT_EQ(cyclotomic_poly(12), (Poly{1, 0, -1, 0, 1}));
  EXPECT_THROW(cyclotomic_poly(0), std::invalid_argument);
}

TEST(Cyclotomic, Phi105HasCoefficientMinusTwo) {
  const auto& phi = cyclotomic_poly(105);
  EXPECT_EQ(phi.size(), 49u);
  EXPECT_EQ(*std::min_element(phi.begin(), phi.end()), -2);
}

// x^n - 1 equals the product of Phi_d over the divisors d of n.
TEST(Cyclotomic, ProductOverDivisorsIsXnMinusOne) {
  for (Int n = 1; n <= 150; ++n) {
    Poly product{1};
    for (Int d : divisors(n)) product = poly_mul(product, cyclotomic_poly(d));
    Poly expected(static_cast<std::size_t>(n + 1), 0);
    expected.front() = -1;
    expected.back() = 1;
    EXPECT_EQ(product, expected) << "n=" << n;
  }
}

TEST(Cyclotomic, ConcurrentAccessIsConsistent) {
  std::vector<std::thread> threads;
  std::vector<Poly> seen(8);
  for (std::size_t i = 0; i < seen.size(); ++i)
    threads.emplace_back([&seen, i] { seen[i] = cyclotomic_poly(360 + static_cast<Int>(i % 2)); });
  for (auto& t : threads) t.join();
  for (std::size_t i = 0; i < seen.size(); ++i) EXPECT_EQ(seen[i], cyclotomic_poly(360 + static_cast<Int>(i % 2)));
}

TEST(PolyArith, ReduceMonicGivesQuotientAndRemainder) {
  Poly p{-1, 0, 0, 0, 0, 0, 1};  // x^6 - 1
  const Poly q = poly_reduce_monic(p, cyclotomic_poly(3));
  EXPECT_TRUE(std::all_of(p.begin(), p.end(), [](Int c) { return c == 0; }));
  EXPECT_EQ(poly_mul(q, cyclotomic_poly(3)), (Poly{-1, 0, 0, 0, 0, 0, 1}));
}

TEST(PolyArith, ExactDivisionRejectsRemainder) {
  EXPECT_THROW(poly_exact_div(Poly{1, 0, 1}, Poly{-1, 1}), std::logic_error);
}

TEST(PolyArith, OverflowIsDetected) {
  const Poly big{std::numeric_limits<Int>::max() / 2 + 1};
  EXPECT_THROW(poly_mul(big, Poly{4}), std::overflow_error);
}

std::complex<double> evaluate(const Poly& p, std::complex<double> z) {
  std::complex<double> acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + static_cast<double>(*it);
  return acc;
}

TEST(CyclotomicResidue, MatchesComplexEvaluation) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const Int n = std::uniform_int_distribution<Int>(1, 60)(rng);
    Poly a(8), b(8);
    for (auto& c : a) c = std::uniform_int_distribution<Int>(-5, 5)(rng);
    for (auto& c : b) c = std::uniform_int_distribution<Int>(-5, 5)(rng);
    const CyclotomicResidue ra(n, a), rb(n, b);
    const auto zeta = std::polar(1.0, 2.0 * std::numbers::pi / static_cast<double>(n));
    EXPECT_LT(std::abs(evaluate((ra * rb).coefficients(), zeta) - evaluate(a, zeta) * evaluate(b, zeta)), 1e-6);
    EXPECT_LT(std::abs(evaluate((ra + rb).coefficients(), zeta) - evaluate(a, zeta) - evaluate(b, zeta)), 1e-6);
    EXPECT_EQ(ra - ra, CyclotomicResidue(n));
  }
}

TEST(CyclotomicResidue, MonomialPeriodicity) {
  EXPECT_EQ(CyclotomicResidue::monomial(12, 13), CyclotomicResidue::monomial(12, 1));
  EXPECT_EQ(CyclotomicResidue::monomial(12, -1), CyclotomicResidue::monomial(12, 11));
  EXPECT_THROW(CyclotomicResidue(5) + CyclotomicResidue(7), std::invalid_argument);
}

TEST(VanishingSum, KnownRelations) {
  const std::vector<Int> all6{0, 1, 2, 3, 4, 5};
  EXPECT_TRUE(is_vanishing_sum(6, all6));
  const std::vector<Int> antipodal{0, 5};
  EXPECT_TRUE(is_vanishing_sum(10, antipodal));
  const std::vector<Int> mixed{0, 10, 20, 3, 9, 15, 21, 27};  // triangle plus rotated pentagon
  EXPECT_TRUE(is_vanishing_sum(30, mixed));
  const std::vector<Int> two{0, 15, 10, 20, 6, 12, 18, 24, 0};  // the same minus a lone -1
  EXPECT_FALSE(is_vanishing_sum(30, two));
  const std::vector<Int> one{0};
  EXPECT_FALSE(is_vanishing_sum(1, one));
}

// Exact vanishing agrees with a numeric evaluation whose margin is huge for
// these small sums.
TEST(VanishingSum, AgreesWithNumericForSmallSums) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 5000; ++trial) {
    const Int m = std::uniform_int_distribution<Int>(1, 40)(rng);
    const int k = std::uniform_int_distribution<int>(1, 6)(rng);
    std::vector<Int> e;
    for (int i = 0; i < k; ++i) e.push_back(std::uniform_int_distribution<Int>(0, m - 1)(rng));
    std::complex<double> sum = 0;
    for (Int x : e) sum += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(x) / static_cast<double>(m));
    EXPECT_EQ(is_vanishing_sum(m, e), std::abs(sum) < 1e-9) << "m=" << m;
  }
}

}  // namespace
}  // namespace cdm
