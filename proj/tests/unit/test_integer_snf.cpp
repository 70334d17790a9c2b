#include <random>

#include <gtest/gtest.h>

#include "lcss/integer.hpp"
#include "lcss/snf.hpp"
#include "oracles.hpp"

using namespace lcss;

TEST(Integer, Valuation)
{
    EXPECT_EQ(valuation(24, 2), 3);
    EXPECT_EQ(valuation(-24, 3), 1);
    EXPECT_EQ(valuation(7, 2), 0);
    EXPECT_EQ(valuation(0, 2), -1);
    EXPECT_EQ(power_of(3, 4), 81);
    EXPECT_EQ(prime_to_part(-40, 2), 5);
    EXPECT_EQ(prime_to_part(0, 5), 0);
}

TEST(Snf, HandExample)
{
    // diag(2, 6, 0) up to units: rows 2 4 4 / -6 6 12 / 10 -4 -16
    IntMatrix a{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
    const SnfResult s = smith_normal_form(a);
    ASSERT_EQ(s.diagonal.size(), 3u);
    EXPECT_EQ(s.diagonal[0], 2);
    EXPECT_EQ(s.diagonal[1], 6);
    EXPECT_EQ(s.diagonal[2], 12);
    EXPECT_EQ(s.rank, 3u);
}

TEST(Snf, ZeroAndEmpty)
{
    const SnfResult z = smith_normal_form(IntMatrix(2, 3));
    EXPECT_EQ(z.rank, 0u);
    EXPECT_EQ(z.left * IntMatrix(2, 3) * z.right, IntMatrix(2, 3));
    const SnfResult e = smith_normal_form(IntMatrix(0, 4));
    EXPECT_TRUE(e.diagonal.empty());
    EXPECT_EQ(e.right.rows(), 4u);
}

// Unimodular transforms, divisibility chain, and the determinantal divisor
// characterisation d_1 ... d_k = gcd of k x k minors.
TEST(Snf, RandomProperties)
{
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    int checked = 0;
    for (int trial = 0; trial < 1200; ++trial) {
        const std::size_t r = dim(rng), c = dim(rng);
        const IntMatrix a = oracle::random_matrix(rng, r, c, 50);
        const SnfResult s = smith_normal_form(a);
        ASSERT_EQ(s.left * a * s.right, s.diagonal_matrix()) << a.to_string();
        ASSERT_TRUE((s.left * s.left_inverse).is_identity());
        ASSERT_TRUE((s.right * s.right_inverse).is_identity());
        ASSERT_EQ(abs(oracle::det(s.left)), 1);
        ASSERT_EQ(abs(oracle::det(s.right)), 1);
        for (std::size_t i = 0; i < s.diagonal.size(); ++i) {
            ASSERT_GE(s.diagonal[i], 0);
            ASSERT_EQ(s.diagonal[i] != 0, i < s.rank);
            if (i + 1 < s.diagonal.size() && s.diagonal[i] != 0) {
                ASSERT_TRUE(mpz_divisible_p(s.diagonal[i + 1].get_mpz_t(), s.diagonal[i].get_mpz_t()));
            }
        }
        if (r <= 5 && c <= 5) {
            Integer prod = 1;
            for (std::size_t k = 1; k <= s.diagonal.size(); ++k) {
                prod *= s.diagonal[k - 1];
                ASSERT_EQ(prod, oracle::determinantal_divisor(a, k)) << a.to_string() << " k=" << k;
            }
        }
        ++checked;
    }
    EXPECT_GE(checked, 1000);
}
