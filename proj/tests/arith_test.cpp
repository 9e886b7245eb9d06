#include "cdm/arith.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <stdexcept>

namespace cdm {
namespace {

TEST(TwoAdicSplit, SplitsAndRecombines) {
  EXPECT_EQ(two_adic_split(1), (TwoAdicSplit{0, 1}));
  EXPECT_EQ(two_adic_split(24), (TwoAdicSplit{3, 3}));
  EXPECT_EQ(two_adic_split(7), (TwoAdicSplit{0, 7}));
  EXPECT_EQ(two_adic_split(Int{1} << 40), (TwoAdicSplit{40, 1}));
  for (Int m = 1; m <= 2000; ++m) {
    const auto s = two_adic_split(m);
    EXPECT_EQ(s.value(), m);
    EXPECT_EQ(s.odd % 2, 1);
  }
}

TEST(TwoAdicSplit, RejectsNonPositive) {
  EXPECT_THROW(two_adic_split(0), std::invalid_argument);
  EXPECT_THROW(two_adic_split(-4), std::invalid_argument);
}

TEST(PPart, MatchesRepeatedDivision) {
  EXPECT_EQ(p_part(72, 2), 8);
  EXPECT_EQ(p_part(72, 3), 9);
  EXPECT_EQ(p_part(72, 5), 1);
  EXPECT_EQ(p_part(3 * 3 * 3 * 7, 3), 27);
  for (Int m = 1; m <= 500; ++m)
    for (Int p : {2, 3, 5, 7}) {
      const Int part = p_part(m, p);
      EXPECT_EQ(m % part, 0);
      EXPECT_NE((m / part) % p, 0);
    }
}

TEST(PPart, RejectsBadArguments) {
  EXPECT_THROW(p_part(12, 4), std::invalid_argument);
  EXPECT_THROW(p_part(12, 1), std::invalid_argument);
  EXPECT_THROW(p_part(0, 2), std::invalid_argument);
}

TEST(Units, CountMatchesTotient) {
  EXPECT_TRUE(units(1).empty());
  EXPECT_EQ(units(12), (std::vector<Int>{1, 5, 7, 11}));
  for (Int n = 2; n <= 300; ++n) {
    Int phi = n;
    for (Int p = 2, m = n; m > 1; ++p)
      if (m % p == 0) {
        phi -= phi / p;
        while (m % p == 0) m /= p;
      }
    EXPECT_EQ(static_cast<Int>(units(n).size()), phi) << "n=" << n;
  }
}

TEST(Divisors, AscendingAndComplete) {
  EXPECT_EQ(divisors(1), (std::vector<Int>{1}));
  EXPECT_EQ(divisors(36), (std::vector<Int>{1, 2, 3, 4, 6, 9, 12, 18, 36}));
  for (Int n = 1; n <= 400; ++n) {
    std::vector<Int> naive;
    for (Int d = 1; d <= n; ++d)
      if (n % d == 0) naive.push_back(d);
    EXPECT_EQ(divisors(n), naive);
  }
}

TEST(Mod, NonNegativeResidue) {
  EXPECT_EQ(mod(-1, 7), 6);
  EXPECT_EQ(mod(14, 7), 0);
  EXPECT_EQ(mod(-15, 7), 6);
}

TEST(DecompositionWitness, FieldsRecombine) {
  for (Int n = 6; n <= 400; n += 2)
    for (Int c = 2; 2 * c < n; ++c) {
      const auto w = decomposition_witness(n, c);
      EXPECT_EQ((Int{1} << w.t) * w.ell, n);
      EXPECT_EQ((Int{1} << w.alpha) * w.ell1, c + 1);
      EXPECT_EQ((Int{1} << w.beta) * w.ell2, c - 1);
      EXPECT_EQ(w.d1 * w.n1, w.ell);
      EXPECT_EQ(w.d2 * w.n2, w.ell);
      EXPECT_EQ(w.d1 * w.m1, w.ell1);
      EXPECT_EQ(w.d2 * w.m2, w.ell2);
      EXPECT_EQ(std::gcd(w.n1, w.m1), 1);
      EXPECT_EQ(std::gcd(w.n2, w.m2), 1);
    }
}

TEST(DecompositionWitness, Order24) {
  const auto w = decomposition_witness(24, 5);
  EXPECT_EQ(w.t, 3);
  EXPECT_EQ(w.ell, 3);
  EXPECT_EQ(w.alpha, 1);
  EXPECT_EQ(w.ell1, 3);
  EXPECT_EQ(w.beta, 2);
  EXPECT_EQ(w.ell2, 1);
  EXPECT_EQ(w.d1, 3);
  EXPECT_EQ(w.n1, 1);
}

TEST(DecompositionWitness, RejectsInvalidPairs) {
  EXPECT_THROW(decomposition_witness(7, 2), std::invalid_argument);
  EXPECT_THROW(decomposition_witness(4, 1), std::invalid_argument);
  EXPECT_THROW(decomposition_witness(12, 6), std::invalid_argument);
  EXPECT_THROW(decomposition_witness(12, 1), std::invalid_argument);
}

}  // namespace
}  // namespace cdm
