#include <numeric>

#include <gtest/gtest.h>

#include "lcss/dataset.hpp"
#include "lcss/local_cohomology.hpp"

using namespace lcss;

TEST(Datasets, LoadBuiltins)
{
    for (const auto& name : builtin_names()) {
        const Dataset d = load_builtin(name);
        EXPECT_EQ(d.name, name);
        EXPECT_TRUE(validate_presentation(d.module).ok) << name;
    }
    EXPECT_THROW(load_builtin("tmf-N-p5"), Error);
    const Dataset ko = load_builtin("ko-p2");
    EXPECT_EQ(ko.module.lo, 0);
    EXPECT_EQ(ko.module.hi, 28);
    EXPECT_EQ(ko.module.slice(4)[0].label, "A");
}

TEST(Datasets, SerializeRoundTrip)
{
    for (const auto& name : builtin_names()) {
        const auto m = load_builtin(name).module;
        const std::string text = serialize_module(m);
        EXPECT_EQ(parse_module(text), m) << name;
        EXPECT_EQ(serialize_module(parse_module(text)), text) << name;
        for (const auto& [key, rules] : load_builtin(name).rules)
            EXPECT_EQ(parse_rules(serialize_rules(rules)), rules) << name << " " << key;
    }
}

TEST(Datasets, ParseErrorsCarryLineNumbers)
{
    const std::string text = "module bad\nprime 2\nwindow 0 10\nstability 4\noperator B 2\n\ngen x 3 1\ngen y 12 1\n";
    try {
        parse_module(text);
        FAIL() << "expected a parse error";
    }
    catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 8);
        EXPECT_NE(std::string(e.what()).find("line 8"), std::string::npos);
    }
    EXPECT_THROW(parse_rules("d 2 a\n"), ParseError);
    try {
        parse_rules("ext a b 2\n\nbogus a b\n");
        FAIL();
    }
    catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3);
    }
}

TEST(Datasets, ToyModuleTorsion)
{
    const auto m = parse_module(R"(module toy
prime 2
window 0 6
stability 2
operator B 2
gen g 0 inf
gen h 1 1
gen B*g 2 inf
gen B^2*g 4 inf
gen B^3*g 6 inf
action B 0
1
action B 2
1
action B 4
1
)");
    const GradedGroup g = gamma_x(m, Multiplier::parse("B"), Window{0, 6});
    EXPECT_EQ(g.support(), std::vector<int>{1});
    ASSERT_EQ(g.at(1).size(), 1u);
    EXPECT_EQ(g.at(1)[0].label, "h");
    EXPECT_EQ(g.group_at(1), MixedGroup::cyclic(2, 1));
}

// Orders of nu_k in the torsion table against d_{7-k} = 8 / gcd(7 - k, 8).
TEST(Datasets, NuOrdersMatchFormula)
{
    const auto m = load_builtin("tmf-N-p2").module;
    const std::vector<std::string> nu = {"nu", "nu_1", "nu_2", "eta_1^3", "nu_4", "nu_5", "nu_6"};
    for (int k = 0; k < 7; ++k) {
        const auto it = std::find_if(m.generators.begin(), m.generators.end(),
                                     [&](const Generator& g) { return g.label == nu[k]; });
        ASSERT_NE(it, m.generators.end()) << nu[k];
        EXPECT_EQ(it->degree, 24 * k + 3);
        EXPECT_EQ(1 << it->exponent, 8 / std::gcd(7 - k, 8)) << nu[k];
    }
    EXPECT_TRUE(std::none_of(m.generators.begin(), m.generators.end(),
                             [](const Generator& g) { return g.label == "nu_7" || g.label == "nu_3"; }));
}

TEST(Datasets, AssumedEntriesAreMarked)
{
    const auto m = load_builtin("tmf-N-p2").module;
    const auto& assumed = m.op("B").assumed;
    EXPECT_TRUE(assumed.count("nu"));
    EXPECT_FALSE(assumed.count("kappa"));  // B kappa = eta^2 kappabar is stated
    EXPECT_TRUE(load_builtin("tmf-N-p3").module.op("B").assumed.empty());
}

TEST(Datasets, GoldenFilesParse)
{
    const auto dir = data_dir() / "golden";
    const auto t2 = parse_table(read_file(dir / "tmf-N-p2.gammaB.table"), 2, Window{0, 200});
    EXPECT_EQ(t2.support().size(), 70u);
    EXPECT_EQ(t2.group_at(65), MixedGroup(2, 0, 0, {1, 1}));
    EXPECT_EQ(t2.group_at(3), MixedGroup::cyclic(2, 3));
    EXPECT_EQ(t2.support().back(), 164);
    const auto t3 = parse_table(read_file(dir / "tmf-N-p3.gammaB.table"), 3, Window{0, 80});
    EXPECT_EQ(t3.support(), (std::vector<int>{3, 10, 13, 20, 27, 30, 37, 40}));

    const TowerFormula f = parse_towers(read_file(dir / "ko-p2.B.H1.towers"));
    const GradedGroup g = f.expand(2, Window{-16, 0});
    EXPECT_EQ(g.group_at(-8), MixedGroup::free(2));
    EXPECT_EQ(g.group_at(-7), MixedGroup::cyclic(2, 1));
    EXPECT_EQ(g.group_at(-12), MixedGroup::free(2));
    EXPECT_TRUE(g.at(-1).empty());
    EXPECT_THROW(parse_towers("step 8\nrelation X 2\n"), ParseError);
    EXPECT_THROW(parse_table("3 | Z/6 | x\n", 2, Window{0, 10}), ParseError);
    EXPECT_THROW(parse_table("3 | (Z/2)^2 | x\n", 2, Window{0, 10}), ParseError);
}
