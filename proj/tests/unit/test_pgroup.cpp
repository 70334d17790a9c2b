#include <random>

#include <gtest/gtest.h>

#include "lcss/pgroup.hpp"
#include "oracles.hpp"

using namespace lcss;

TEST(MixedGroup, FormatAndParse)
{
    const MixedGroup g(2, 2, 1, {3, 1, 1});
    EXPECT_EQ(g.to_string(), "Z_2^2 + Z/8 + (Z/2)^2 + Q_2/Z_2");
    EXPECT_EQ(MixedGroup::parse(g.to_string(), 2), g);
    EXPECT_EQ(MixedGroup::parse("0", 3), MixedGroup::zero(3));
    EXPECT_EQ(MixedGroup::parse("(Q_3/Z_3)^2", 3), MixedGroup::divisible(3, 2));
    EXPECT_EQ(MixedGroup::parse("Z_3 + Z/3", 3), MixedGroup(3, 1, 0, {1}));
    EXPECT_THROW(MixedGroup::parse("Z/6", 2), Error);
    EXPECT_THROW(MixedGroup::parse("Z/9", 2), Error);
    EXPECT_EQ(MixedGroup(2, 0, 0, {1, 3, 2}).torsion_exponents(), (std::vector<int>{3, 2, 1}));
    EXPECT_EQ(MixedGroup(2, 0, 0, {3, 2}).order(), 32);
}

TEST(Morphism, RejectsIllDefinedMaps)
{
    LabelledGroup z2(2, {Summand::cyclic(1, "a")});
    LabelledGroup z4(2, {Summand::cyclic(2, "b")});
    LabelledGroup free(2, {Summand::free("c")});
    EXPECT_THROW(GroupMorphism(z2, z4, IntMatrix{{1}}), Error);
    EXPECT_NO_THROW(GroupMorphism(z2, z4, IntMatrix{{2}}));
    EXPECT_THROW(GroupMorphism(z2, free, IntMatrix{{1}}), Error);
    EXPECT_NO_THROW(GroupMorphism(free, z2, IntMatrix{{1}}));
}

TEST(Morphism, KernelCokernelByHand)
{
    // Z_2 --8--> Z_2 : kernel 0, cokernel Z/8.
    LabelledGroup a(2, {Summand::free("x")});
    LabelledGroup b(2, {Summand::free("y")});
    GroupMorphism f(a, b, IntMatrix{{8}});
    EXPECT_TRUE(kernel(f).group.empty());
    const Quotient q = cokernel(f);
    EXPECT_EQ(q.group.group(), MixedGroup::cyclic(2, 3));

    // Z/8 --2--> Z/8 : kernel Z/2 generated by 4x, cokernel Z/2.
    LabelledGroup c(2, {Summand::cyclic(3, "x")});
    GroupMorphism g(c, c, IntMatrix{{2}});
    EXPECT_EQ(kernel(g).group.group(), MixedGroup::cyclic(2, 1));
    EXPECT_EQ(kernel(g).group[0].label, "4*x");
    EXPECT_EQ(cokernel(g).group.group(), MixedGroup::cyclic(2, 1));

    // Z_2 + Z/2 -> Z/2 summing both coordinates: kernel Z_2 (the element (1,1) has infinite order).
    LabelledGroup d(2, {Summand::free("u"), Summand::cyclic(1, "v")});
    LabelledGroup e(2, {Summand::cyclic(1, "w")});
    GroupMorphism h(d, e, IntMatrix{{1, 1}});
    EXPECT_EQ(kernel(h).group.group(), MixedGroup::free(2));
    EXPECT_TRUE(cokernel(h).group.empty());
}

TEST(Morphism, MonomialMapsKeepLabels)
{
    LabelledGroup a(2, {Summand::cyclic(3, "nu"), Summand::free("C")});
    LabelledGroup b(2, {Summand::free("C'"), Summand::cyclic(1, "e")});
    GroupMorphism f(a, b, IntMatrix{{0, 1}, {0, 0}});
    const Subgroup k = kernel(f);
    ASSERT_EQ(k.group.size(), 1u);
    EXPECT_EQ(k.group[0].label, "nu");
    const Quotient q = cokernel(f);
    ASSERT_EQ(q.group.size(), 1u);
    EXPECT_EQ(q.group[0].label, "e");
}

namespace {

oracle::FiniteGroup random_finite(std::mt19937_64& rng, int prime, int max_factors, long max_size)
{
    std::uniform_int_distribution<int> count(0, max_factors);
    std::uniform_int_distribution<int> exp(1, prime == 2 ? 3 : 2);
    oracle::FiniteGroup g;
    g.prime = prime;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        long o = 1;
        for (int k = exp(rng); k > 0; --k)
            o *= prime;
        if (g.size() * o > max_size)
            break;
        g.orders.push_back(o);
    }
    return g;
}

LabelledGroup to_labelled(const oracle::FiniteGroup& g)
{
    LabelledGroup out(g.prime);
    for (std::size_t i = 0; i < g.orders.size(); ++i) {
        int e = 0;
        for (long o = g.orders[i]; o > 1; o /= g.prime)
            ++e;
        out.add(Summand::cyclic(e, "g" + std::to_string(i)));
    }
    return out;
}

}  // namespace

// Kernels and cokernels of random maps between small finite groups, against
// element enumeration.
TEST(Morphism, RandomAgainstEnumeration)
{
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 1000; ++trial) {
        const int p = trial % 3 == 0 ? 3 : 2;
        const auto a = random_finite(rng, p, 3, 256);
        const auto c = random_finite(rng, p, 3, 256);
        // entries chosen so the map is well defined: column j scaled to kill ord(a_j)
        std::uniform_int_distribution<long> entry(-6, 6);
        std::vector<std::vector<long>> m(c.orders.size(), std::vector<long>(a.orders.size()));
        IntMatrix mat(c.orders.size(), a.orders.size());
        for (std::size_t i = 0; i < c.orders.size(); ++i)
            for (std::size_t j = 0; j < a.orders.size(); ++j) {
                long v = entry(rng);
                if (a.orders[j] < c.orders[i])
                    v *= c.orders[i] / a.orders[j];
                m[i][j] = v;
                mat(i, j) = v;
            }
        const GroupMorphism f(to_labelled(a), to_labelled(c), mat);
        ASSERT_EQ(kernel(f).group.group(), oracle::kernel_group(a, c, m)) << "trial " << trial;
        ASSERT_EQ(cokernel(f).group.group(), oracle::cokernel_group(a, c, m)) << "trial " << trial;
        ASSERT_EQ(image(f).group().order(), static_cast<long>(oracle::image_set(a, c, m).size()));
    }
}

TEST(Duals, HandValues)
{
    const MixedGroup g(2, 2, 0, {3, 1});
    EXPECT_EQ(hom_to_zp(g), MixedGroup::free(2, 2));
    EXPECT_EQ(ext_to_zp(g), MixedGroup(2, 0, 0, {3, 1}));
    EXPECT_EQ(pontryagin_dual(g), MixedGroup(2, 0, 2, {3, 1}));
    EXPECT_EQ(pontryagin_dual(MixedGroup(2, 0, 1, {2})), MixedGroup(2, 1, 0, {2}));
    EXPECT_THROW(hom_to_zp(MixedGroup::divisible(2)), Error);
}

TEST(Duals, PontryaginInvolution)
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> small(0, 3);
    for (int trial = 0; trial < 1000; ++trial) {
        const int p = trial % 2 == 0 ? 2 : 3;
        std::vector<int> tors;
        for (int i = small(rng); i > 0; --i)
            tors.push_back(1 + small(rng));
        const MixedGroup finite(p, 0, 0, tors);
        ASSERT_EQ(pontryagin_dual(finite), finite);
        ASSERT_EQ(pontryagin_dual(pontryagin_dual(finite)), finite);
        const MixedGroup mixed(p, small(rng), small(rng), tors);
        ASSERT_EQ(pontryagin_dual(pontryagin_dual(mixed)), mixed);
        ASSERT_EQ(pontryagin_dual(mixed).free_rank(), mixed.divisible_rank());
    }
}

TEST(Labels, Multiples)
{
    EXPECT_EQ(multiple_label(2, 0, "nu"), "nu");
    EXPECT_EQ(multiple_label(2, 2, "nu"), "4*nu");
    LabelledGroup g(2, {Summand::free("x"), Summand::cyclic(1, "y")});
    EXPECT_EQ(element_label(g, {1, 1}), "x+y");
    EXPECT_EQ(element_label(g, {0, 0}), "0");
}
