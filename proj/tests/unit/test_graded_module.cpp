#include <gtest/gtest.h>

#include "lcss/dataset.hpp"
#include "lcss/graded_group.hpp"
#include "lcss/module.hpp"

using namespace lcss;

namespace {

// Z_2[B]{g} + Z/2{h} with |B| = 2, g in degree 0, h in degree 1, B h = 0.
const char* toy_text = R"(module toy
prime 2
window 0 8
stability 2
operator B 2

gen g 0 inf
gen h 1 1
gen B*g 2 inf
gen B^2*g 4 inf
gen B^3*g 6 inf
gen B^4*g 8 inf

action B 0
1
action B 2
1
action B 4
1
action B 6
1
)";

}  // namespace

TEST(GradedGroup, KnownAndUnknownDegrees)
{
    GradedGroup g(2, 0, 3);
    g.set(1, LabelledGroup(2, {Summand::cyclic(2, "x")}));
    EXPECT_EQ(g.group_at(1), MixedGroup::cyclic(2, 2));
    EXPECT_TRUE(g.at(2).empty());
    EXPECT_THROW(g.at(4), Error);
    EXPECT_THROW(g.at(-1), Error);
    g.zero_above = true;
    EXPECT_TRUE(g.at(100).empty());
    EXPECT_EQ(g.support(), std::vector<int>{1});
    EXPECT_NE(g.to_table().find("Z/4"), std::string::npos);
}

TEST(GradedGroup, DirectSum)
{
    GradedGroup a(3, 0, 2), b(3, 0, 2);
    a.set(0, LabelledGroup(3, {Summand::free("x")}));
    b.set(0, LabelledGroup(3, {Summand::cyclic(1, "y")}));
    EXPECT_EQ(direct_sum(a, b).group_at(0), MixedGroup(3, 1, 0, {1}));
}

TEST(Presentation, SlicesAndActions)
{
    const auto m = parse_module(toy_text);
    EXPECT_EQ(m.slice(1).group(), MixedGroup::cyclic(2, 1));
    EXPECT_TRUE(m.slice(3).empty());
    EXPECT_TRUE(m.slice(-2).empty());
    EXPECT_TRUE(m.action("B", 1).is_zero());
    EXPECT_EQ(m.power("B", 0, 3).matrix(), (IntMatrix{{1}}));
    EXPECT_TRUE(validate_presentation(m).ok);
}

TEST(Presentation, ValidationCatchesBadData)
{
    auto m = parse_module(toy_text);
    m.stability = 7;  // needs hi >= 9
    EXPECT_FALSE(validate_presentation(m).ok);

    m = parse_module(toy_text);
    m.operators.at("B").matrices[2] = IntMatrix{{2}};  // B not onto in stable range
    Diagnostics d = validate_presentation(m);
    EXPECT_FALSE(d.ok);
    ASSERT_TRUE(d.first_failing_degree.has_value());
    EXPECT_EQ(*d.first_failing_degree, 2);

    m = parse_module(toy_text);
    m.prime = 4;
    EXPECT_FALSE(validate_presentation(m).ok);

    m = parse_module(toy_text);
    m.generators[1].exponent = 0;  // h free, B h = 0 is still fine; make g torsion so B*g is ill defined
    m.generators[0].exponent = 1;
    EXPECT_FALSE(validate_presentation(m).ok);

    EXPECT_FALSE(validate_presentation(parse_module(toy_text), "A").ok);
}

// Moving the claimed stability degree below the last torsion makes B fail to be
// bijective; the first bad degree is reported.
TEST(Presentation, EarlyStabilityIsRejected)
{
    auto m = load_builtin("tmf-N-p2").module;
    m.stability = 100;
    const Diagnostics d = validate_presentation(m);
    EXPECT_FALSE(d.ok);
    ASSERT_TRUE(d.first_failing_degree.has_value());
    EXPECT_EQ(*d.first_failing_degree, 100);
    EXPECT_FALSE(d.offending_matrix.empty());
}
