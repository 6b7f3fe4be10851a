#include <random>

#include <gtest/gtest.h>

#include "convolutive/dissections.hpp"
#include "convolutive/eta.hpp"
#include "convolutive/partitions.hpp"
#include "convolutive/series.hpp"

using namespace convolutive;

namespace {

TruncatedSeries series(std::initializer_list<long> c) {
  std::vector<BigInt> v;
  for (long x : c) v.emplace_back(x);
  return TruncatedSeries(std::move(v));
}

TruncatedSeries random_series(std::mt19937& rng, std::size_t order, int lo = -9, int hi = 9) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<BigInt> v(order + 1);
  for (auto& x : v) x = d(rng);
  return TruncatedSeries(std::move(v));
}

// Brute-force prod_{k=1..order} (1 - q^{level k}) by polynomial multiplication.
std::vector<long> brute_eta(int level, std::size_t order) {
  std::vector<long> c(order + 1, 0);
  c[0] = 1;
  for (std::size_t k = 1; level * k <= order; ++k) {
    for (std::size_t n = order; n >= level * k; --n) c[n] -= c[n - level * k];
  }
  return c;
}

const EtaProductSpec kPdo{{1, -1}, {3, -1}, {4, 1}, {6, 2}, {12, -1}};

}  // namespace

TEST(TruncatedSeries, RejectsEmptyCoefficients) {
  EXPECT_THROW(TruncatedSeries(std::vector<BigInt>{}), std::invalid_argument);
}

TEST(TruncatedSeries, OrderIsLengthMinusOne) {
  EXPECT_EQ(series({1, 2, 3}).order(), 2U);
  EXPECT_EQ(TruncatedSeries::one(5).coeffs().size(), 6U);
}

TEST(Mul, BinomialSquareTruncated) { EXPECT_EQ(mul(series({1, 1}), series({1, 1})), series({1, 2})); }

TEST(Mul, IdentityIsNeutral) {
  const auto b = series({3, -1, 4, 1, -5});
  EXPECT_EQ(mul(TruncatedSeries::one(4), b), b);
}

TEST(Mul, EtaSquaredMatchesBruteForce) {
  EXPECT_EQ(mul(eta_factor(1, 7), eta_factor(1, 7)), series({1, -2, -1, 2, 1, 2, -2, 0}));
}

TEST(Mul, MixedOrdersTruncateToMinimum) {
  const auto r = mul(series({1, 1, 1, 1, 1}), series({1, 1}));
  EXPECT_EQ(r.order(), 1U);
  EXPECT_EQ(add(series({1, 1, 1}), series({1})).order(), 0U);
}

TEST(Mul, CommutativeAndAssociative) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_series(rng, 64), b = random_series(rng, 40 + trial), c = random_series(rng, 64);
    EXPECT_EQ(mul(a, b), mul(b, a));
    EXPECT_EQ(mul(mul(a, b), c), mul(a, mul(b, c)));
  }
}

TEST(Pow, ExponentOneAndZero) {
  const auto a = series({2, 3, 5, 7});
  EXPECT_EQ(pow(a, 1), a);
  EXPECT_EQ(pow(a, 0), TruncatedSeries::one(3));
  EXPECT_EQ(pow(series({1, 1}), 2), series({1, 2}));
}

TEST(Pow, MatchesRepeatedMultiplication) {
  std::mt19937 rng(11);
  for (unsigned m = 2; m <= 6; ++m) {
    const auto a = random_series(rng, 30);
    TruncatedSeries expected = a;
    for (unsigned i = 1; i < m; ++i) expected = mul(expected, a);
    EXPECT_EQ(pow(a, m), expected);
  }
}

TEST(Pow, PdoSquareIsEvenBisection) {
  const auto pdo = eta_product_expand(kPdo, 80);
  const auto sq = pow(pdo, 2);
  for (std::size_t n = 0; n <= 40; ++n) EXPECT_EQ(sq[n], pdo[2 * n]) << n;
}

TEST(Inverse, ConstantOne) { EXPECT_EQ(inverse(TruncatedSeries::one(3)), TruncatedSeries::one(3)); }

TEST(Inverse, EtaGivesPartitionNumbers) {
  EXPECT_EQ(inverse(eta_factor(1, 6)), series({1, 1, 2, 3, 5, 7, 11}));
}

TEST(Inverse, GeometricSeries) { EXPECT_EQ(inverse(series({1, -1})), series({1, 1})); }

TEST(Inverse, NegativeUnitConstant) {
  const auto a = series({-1, 2, 0, 5, -3});
  EXPECT_EQ(mul(a, inverse(a)), TruncatedSeries::one(4));
}

TEST(Inverse, NonUnitThrows) {
  try {
    inverse(series({2, 1}));
    FAIL() << "expected throw";
  } catch (const std::domain_error& e) {
    EXPECT_STREQ(e.what(), "non-invertible series");
  }
  EXPECT_THROW(inverse(series({0, 1})), std::domain_error);
}

TEST(Inverse, RandomUnitSeriesRoundTrip) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_series(rng, 50);
    std::vector<BigInt> c(a.coeffs().begin(), a.coeffs().end());
    c[0] = trial % 2 ? 1 : -1;
    const TruncatedSeries u(std::move(c));
    EXPECT_EQ(mul(u, inverse(u)), TruncatedSeries::one(50));
  }
}

TEST(EtaFactor, PentagonalExpansion) {
  EXPECT_EQ(eta_factor(1, 7), series({1, -1, -1, 0, 0, 1, 0, 1}));
  EXPECT_EQ(eta_factor(2, 3), series({1, 0, -1, 0}));
  EXPECT_EQ(eta_factor(9, 5), TruncatedSeries::one(5));
}

TEST(EtaFactor, AgreesWithBruteForceProduct) {
  for (int level = 1; level <= 12; ++level) {
    const auto brute = brute_eta(level, 150);
    const auto fast = eta_factor(level, 150);
    for (std::size_t n = 0; n <= 150; ++n) ASSERT_EQ(fast[n], brute[n]) << "level " << level << " n " << n;
  }
}

TEST(EtaProduct, EmptySpecIsOne) { EXPECT_EQ(eta_product_expand(EtaProductSpec{}, 3), TruncatedSeries::one(3)); }

TEST(EtaProduct, PdoMatchesDesignatedSummandCount) {
  // PDO(n): partitions into odd parts with one copy of each distinct part
  // size marked, i.e. sum over odd-part partitions of the product of multiplicities.
  const auto pdo = eta_product_expand(kPdo, 13);
  for (long n = 0; n <= 13; ++n) {
    BigInt count = 0;
    for (const auto& pi : enumerate(SetSpec::Po(), n)) {
      BigInt marks = 1;
      for (const auto& [size, mult] : pi.multiplicities()) marks *= mult;
      count += marks;
    }
    EXPECT_EQ(pdo[static_cast<std::size_t>(n)], count) << n;
  }
  EXPECT_EQ(pdo[13], 98);
}

TEST(EtaProduct, InverseEtaIsPartitionCount) {
  const auto p = eta_product_expand(EtaProductSpec{{1, -1}}, 40);
  for (long n = 0; n <= 40; ++n) {
    EXPECT_EQ(p[static_cast<std::size_t>(n)], enumerate(SetSpec::P(), n).size()) << n;
  }
  EXPECT_EQ(p[40], 37338);
}

TEST(EtaProduct, FrozenPrefixes) {
  // Values from an independent pure-integer expansion.
  const auto a7096 = eta_product_expand(EtaProductSpec{{1, -4}, {2, 6}, {4, -2}}, 20);
  EXPECT_EQ(a7096, series({1, 4, 8, 16, 32, 56, 96, 160, 256, 404, 624, 944, 1408, 2072, 3008, 4320, 6144, 8648,
                           12072, 16720, 22976}));
  const auto a98151 = eta_product_expand(EtaProductSpec{{1, -2}, {2, 1}, {3, 2}, {6, -1}}, 15);
  EXPECT_EQ(a98151, series({1, 2, 4, 6, 10, 16, 24, 36, 52, 74, 104, 144, 198, 268, 360, 480}));
  const auto a385520 = eta_product_expand(EtaProductSpec{{1, -1}, {2, 1}, {3, -1}, {4, -1}, {6, 3}, {12, -1}}, 15);
  EXPECT_EQ(a385520, series({1, 1, 1, 3, 4, 5, 6, 9, 13, 16, 20, 27, 36, 44, 54, 69}));
  EXPECT_EQ(eta_product_expand(EtaProductSpec{{1, -4}, {2, 6}, {4, -2}}, 240)[240],
            BigInt("3941966139480981504"));
}

TEST(EtaProduct, NonPrimitiveSpecsAreAccepted) {
  const EtaProductSpec spec{{2, -1}};
  EXPECT_FALSE(spec.is_primitive());
  const auto s = eta_product_expand(spec, 10);
  EXPECT_EQ(s, series({1, 0, 1, 0, 2, 0, 3, 0, 5, 0, 7}));
}

TEST(EtaProductSpec, Validation) {
  EXPECT_THROW(EtaProductSpec({{0, 1}}), std::invalid_argument);
  EXPECT_THROW(EtaProductSpec({{2, 0}}), std::invalid_argument);
  EXPECT_TRUE((EtaProductSpec{{1, -1}, {3, -1}}).is_primitive());
  EXPECT_FALSE((EtaProductSpec{{2, 1}, {4, -1}}).is_primitive());
  EXPECT_FALSE(EtaProductSpec{}.is_primitive());
}

TEST(EtaProductSpec, ParseAndPrint) {
  EXPECT_EQ(parse_eta_spec("1^-1 3^-1 4^1 6^2 12^-1"), kPdo);
  EXPECT_EQ(kPdo.to_string(), "1^-1 3^-1 4^1 6^2 12^-1");
  EXPECT_EQ(parse_eta_spec("2"), (EtaProductSpec{{2, 1}}));
  EXPECT_EQ(parse_eta_spec("  "), EtaProductSpec{});
}

TEST(EtaProductSpec, ParseErrorsNameToken) {
  for (const char* bad : {"1^x", "a^2", "1^-1 1^2", "3^0", "0^1", "1^"}) {
    EXPECT_THROW(parse_eta_spec(bad), std::invalid_argument) << bad;
  }
  try {
    parse_eta_spec("1^-1 7^q");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("7^q"), std::string::npos) << e.what();
  }
}

TEST(Huff, SelectsEveryMthCoefficient) {
  EXPECT_EQ(huff(series({1, 2, 3, 4, 5}), 2), series({1, 3, 5}));
  const auto a = series({4, 4, 4, 1});
  EXPECT_EQ(huff(a, 1), a);
  EXPECT_EQ(huff(series({1, 2, 3, 4, 5, 6}), 4).order(), 1U);
  EXPECT_THROW(huff(a, 0), std::invalid_argument);
}

TEST(Huff, RandomSelection) {
  std::mt19937 rng(5);
  for (unsigned m = 2; m <= 6; ++m) {
    const auto a = random_series(rng, 61);
    const auto h = huff(a, m);
    EXPECT_EQ(h.order(), 61U / m);
    for (std::size_t n = 0; n <= h.order(); ++n) EXPECT_EQ(h[n], a[m * n]);
  }
}

TEST(Huff, PdoEvenPartIsSquare) {
  const auto pdo = eta_product_expand(kPdo, 120);
  EXPECT_EQ(huff(pdo, 2), pow(pdo, 2).truncated(60));
}

TEST(Convolutive, PdoHoldsAtTwo) {
  const auto v = is_m_convolutive(eta_product_expand(kPdo, 40), 2);
  EXPECT_TRUE(v.holds);
  EXPECT_FALSE(v.first_violation);
  EXPECT_EQ(v.m, 2U);
  EXPECT_EQ(v.terms_testable, 21U);
}

TEST(Convolutive, EtaFailsAtOne) {
  const auto v = is_m_convolutive(eta_factor(1, 2), 2);
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.first_violation);
  EXPECT_EQ(*v.first_violation, 1U);
}

TEST(Convolutive, A098151HoldsAtThree) {
  EXPECT_TRUE(is_m_convolutive(eta_product_expand(EtaProductSpec{{1, -2}, {2, 1}, {3, 2}, {6, -1}}, 200), 3).holds);
}

TEST(Convolutive, Preconditions) {
  EXPECT_THROW(is_m_convolutive(series({1, 2, 3}), 1), std::invalid_argument);
  try {
    is_m_convolutive(series({1, 2}), 2);
    FAIL();
  } catch (const std::domain_error& e) {
    EXPECT_STREQ(e.what(), "insufficient terms");
  }
}

TEST(Convolutive, AgreesWithHuffAndPowRoute) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const unsigned m = 2 + trial % 5;
    // Small alphabets make accidental agreement at the first few indices common.
    auto a = random_series(rng, 10 + trial % 50, -1, 1);
    const auto v = is_m_convolutive(a, m);
    const auto h = huff(a, m);
    const auto p = pow(a.truncated(h.order()), m);
    std::optional<std::size_t> first;
    for (std::size_t n = 0; n <= h.order(); ++n) {
      if (h[n] != p[n]) {
        first = n;
        break;
      }
    }
    EXPECT_EQ(v.holds, !first.has_value());
    EXPECT_EQ(v.first_violation, first);
    EXPECT_EQ(v.terms_testable, h.order() + 1);
    if (first) EXPECT_LE(m * *first, a.order());
  }
}

TEST(Convolutive, TableRowsHoldToOrder200) {
  for (const auto& row : known_convolutive_products()) {
    const auto s = eta_product_expand(row.spec, 200);
    EXPECT_TRUE(is_m_convolutive(s, row.m).holds) << row.a_number;
  }
}

TEST(Dual, Definition) {
  EXPECT_EQ(dual(series({1, 1, 2})), series({1, -1, 2}));
  const auto a = series({5, -3, 0, 8, 1});
  EXPECT_EQ(dual(dual(a)), a);
}

TEST(Dual, A098151StaysThreeConvolutive) {
  const auto d = dual(eta_product_expand(EtaProductSpec{{1, -2}, {2, 1}, {3, 2}, {6, -1}}, 150));
  EXPECT_EQ(d[1], -2);
  EXPECT_EQ(d[2], 4);
  EXPECT_TRUE(is_m_convolutive(d, 3).holds);
}

TEST(Dual, ThreeConvolutivityVerdictIsInvariant) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_series(rng, 4 + trial % 57, -1, 1);
    const auto v = is_m_convolutive(a, 3);
    const auto w = is_m_convolutive(dual(a), 3);
    EXPECT_EQ(v.holds, w.holds);
    EXPECT_EQ(v.first_violation, w.first_violation);
  }
  for (const auto& row : known_convolutive_products()) {
    if (row.m != 3) continue;
    const auto s = eta_product_expand(row.spec, 120);
    EXPECT_TRUE(is_m_convolutive(dual(s), 3).holds);
  }
}
