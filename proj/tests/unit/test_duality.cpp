#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "lcss/duality.hpp"
#include "pipeline.hpp"

using namespace lcss;

namespace {

GradedGroup random_graded(std::mt19937_64& rng, int prime, bool noetherian)
{
    std::uniform_int_distribution<int> small(0, 2);
    GradedGroup g(prime, -6, 6);
    g.zero_below = g.zero_above = true;
    for (int n = -6; n <= 6; ++n) {
        LabelledGroup h(prime);
        for (int i = small(rng); i > 0; --i)
            h.add(Summand::cyclic(1 + small(rng), "t"));
        if (noetherian)
            for (int i = small(rng); i > 1; --i)
                h.add(Summand::free("f"));
        g.set(n, std::move(h));
    }
    return g;
}

}  // namespace

TEST(Anderson, HandValues)
{
    GradedGroup g(2, 0, 8);
    g.zero_below = g.zero_above = true;
    g.set(0, LabelledGroup(2, {Summand::free("1")}));
    g.set(5, LabelledGroup(2, {Summand::cyclic(3, "nu")}));
    const GradedGroup d = anderson_dual(g, Window{-10, 2});
    EXPECT_EQ(d.group_at(0), MixedGroup::free(2));
    EXPECT_EQ(d.group_at(-6), MixedGroup::cyclic(2, 3));
    EXPECT_TRUE(d.at(-5).empty());
    const GradedGroup bc = brown_comenetz_dual(g, Window{-10, 2});
    EXPECT_EQ(bc.group_at(0), MixedGroup::divisible(2));
    EXPECT_EQ(bc.group_at(-5), MixedGroup::cyclic(2, 3));
    const GradedGroup s = shift(d, 3);
    EXPECT_EQ(s.group_at(3), MixedGroup::free(2));
    EXPECT_EQ(s.group_at(-3), MixedGroup::cyclic(2, 3));
}

TEST(Anderson, DoubleDualOnRandomGroups)
{
    std::mt19937_64 rng(171);
    for (int trial = 0; trial < 1000; ++trial) {
        const int p = trial % 2 ? 3 : 2;
        const GradedGroup g = random_graded(rng, p, true);
        GradedGroup once = anderson_dual(g, Window{-8, 8});
        once.zero_below = once.zero_above = true;
        const GradedGroup twice = anderson_dual(once, Window{-6, 6});
        for (int n = -6; n <= 6; ++n)
            ASSERT_EQ(twice.group_at(n), g.group_at(n)) << "trial " << trial << " degree " << n;
    }
}

TEST(BrownComenetz, DoubleDualOnFiniteGroups)
{
    std::mt19937_64 rng(170);
    for (int trial = 0; trial < 1000; ++trial) {
        const GradedGroup g = random_graded(rng, 2, false);
        GradedGroup once = brown_comenetz_dual(g, Window{-6, 6});
        once.zero_below = once.zero_above = true;
        const GradedGroup twice = brown_comenetz_dual(once, Window{-6, 6});
        for (int n = -6; n <= 6; ++n)
            ASSERT_EQ(twice.group_at(n), g.group_at(n));
    }
}

// (Sigma^171 I N)_3 = Hom(N_168) + Ext(N_167); N_168 has eight free summands
// (B^21, B^{21-3k} B_k ... and D_7), N_167 = 0.
TEST(Anderson, OneDegreeByHand)
{
    const Dataset d = load_builtin("tmf-N-p2");
    const GradedGroup n = homotopy_of(d.module);
    EXPECT_EQ(n.group_at(168), MixedGroup::free(2, 8));
    EXPECT_TRUE(n.at(167).empty());
    const GradedGroup dual = shift(anderson_dual(n, Window{-200, 10}), 171);
    EXPECT_EQ(dual.group_at(3), MixedGroup::free(2, 8));
}

TEST(Verify, ShippedDatasets)
{
    struct Case {
        const char* name;
        const char* ideal;
        Window w;
        DualMode mode;
        int shift;
    };
    const Case cases[] = {
        {"tmf-N-p2", "B", {-20, 172}, DualMode::anderson, 171},
        {"tmf-N-p2", "2,B", {-20, 172}, DualMode::brown_comenetz, 170},
        {"tmf-N-p3", "B", {-10, 52}, DualMode::anderson, 51},
        {"tmf-N-p3", "3,B", {-10, 52}, DualMode::brown_comenetz, 50},
        {"ko-p2", "B", {-28, 0}, DualMode::anderson, -5},
        {"ko-p2", "2,B", {-28, 0}, DualMode::brown_comenetz, -6},
    };
    for (const auto& c : cases) {
        const Dataset d = load_builtin(c.name);
        const DualityReport ok = pipeline::verify(d, c.ideal, c.w, c.mode, c.shift);
        EXPECT_TRUE(ok.pass()) << c.name << " " << c.ideal << ": " << ok.to_table();
        EXPECT_EQ(ok.rows.size(), static_cast<std::size_t>(c.w.hi - c.w.lo + 1));
        for (int delta : {-1, 1})
            EXPECT_FALSE(pipeline::verify(d, c.ideal, c.w, c.mode, c.shift + delta).pass()) << c.name;
    }
}

TEST(Verify, WithoutRulesTheExtensionsAreMissed)
{
    Dataset d = load_builtin("tmf-N-p2");
    d.rules.clear();
    const DualityReport r = pipeline::verify(d, "B", Window{-20, 172}, DualMode::anderson, 171);
    EXPECT_FALSE(r.pass());
    const auto bad = r.mismatches();
    EXPECT_NE(std::find(bad.begin(), bad.end(), 3), bad.end());
}

TEST(Report, Rendering)
{
    const Dataset d = load_builtin("ko-p2");
    const DualityReport r = pipeline::verify(d, "B", Window{-28, 0}, DualMode::anderson, -5);
    const std::string table = r.to_table();
    EXPECT_NE(table.find("29 iso, 0 mismatch: PASS"), std::string::npos);
    const auto j = nlohmann::json::parse(r.to_json());
    EXPECT_EQ(j["shift"], -5);
    EXPECT_EQ(j["mode"], "anderson");
    EXPECT_EQ(j["rows"].size(), 29u);
    EXPECT_EQ(r.to_json(), pipeline::verify(d, "B", Window{-28, 0}, DualMode::anderson, -5).to_json());
    EXPECT_EQ(parse_dual_mode("bc"), DualMode::brown_comenetz);
    EXPECT_THROW(parse_dual_mode("serre"), Error);
}
